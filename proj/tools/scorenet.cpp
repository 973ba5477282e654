// scorenet: command-line front end for the score-network pipeline.
//
// Exit codes: 0 success, 1 runtime failure (one JSON line on stderr),
// 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scorenet/error.h"
#include "scorenet/export.h"
#include "scorenet/pipeline.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scorenet;

namespace {

// Values are collected as text and applied over the config file so that
// flags > config file > defaults.
class Settings {
 public:
  void option(CLI::App* app, const std::string& key, const std::string& help, const std::string& alias = "") {
    const std::string names = alias.empty() ? "--" + key : "--" + key + ",--" + alias;
    options_[key] = app->add_option(names, values_[key], help);
  }
  void flag(CLI::App* app, const std::string& key, const std::string& help) {
    options_[key] = app->add_flag("--" + key, flags_[key], help);
  }
  void config(CLI::App* app) {
    app->add_option("--config", config_path_, "key=value settings file (flags take precedence)")
        ->check(CLI::ExistingFile);
  }

  RunConfig resolve() const {
    RunConfig config;
    if (!config_path_.empty()) apply_config_file(config, config_path_);
    for (const auto& [key, opt] : options_) {
      if (opt->count() == 0) continue;
      if (const auto f = flags_.find(key); f != flags_.end()) {
        apply_setting(config, key, f->second ? "true" : "false");
      } else {
        apply_setting(config, key, values_.at(key));
      }
    }
    return config;
  }

 private:
  std::string config_path_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> flags_;
  std::map<std::string, CLI::Option*> options_;
};

void series_options(CLI::App* app, Settings& s) {
  s.config(app);
  s.option(app, "threshold", "occurrence filter, fraction of the most frequent pcset (0 disables)", "filter");
  s.flag(app, "keep-repeats", "keep consecutive identical chords as separate events");
}

void segment_options(CLI::App* app, Settings& s) {
  series_options(app, s);
  s.option(app, "penalty", "binary segmentation penalty");
  s.option(app, "min-size", "minimum segment length in events");
  s.option(app, "gamma", "rbf kernel bandwidth (default: median heuristic)");
}

void region_options(CLI::App* app, Settings& s) {
  segment_options(app, s);
  s.option(app, "seed", "seed for community detection");
  s.option(app, "spelling", "numeral overrides, e.g. 8=bVI,6=bV");
  s.option(app, "global-key", "global key instead of the prevalent chord's, e.g. Ebmajor");
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
}

template <typename F>
std::string render(F&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

void fail(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

// Output directory per input: the stem, suffixed when two inputs share one.
std::vector<fs::path> output_dirs(const fs::path& root, const std::vector<std::string>& inputs) {
  if (inputs.size() == 1) return {root};
  std::vector<fs::path> out;
  std::map<std::string, int> seen;
  for (const auto& in : inputs) {
    std::string stem = fs::path(in).stem().string();
    const int n = seen[stem]++;
    if (n > 0) stem += "_" + std::to_string(n + 1);
    out.push_back(root / stem);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score networks: chord time series, tonal regions and Eulerian circuits from MusicXML"};
  app.set_version_flag("--version", std::string(scorenet::version()));
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> files;
  std::string out_dir = "scorenet_out";
  std::string csv_path, graphml_path, dot_path, similarity_path;
  std::string format = "csv";
  std::string histogram_path;
  bool summary = false;
  std::map<std::string, Settings> per_command;

  auto* ingest = app.add_subcommand("ingest", "parse a score and report its chord events");
  ingest->add_option("file", file, "MusicXML or .mxl score")->required()->check(CLI::ExistingFile);
  series_options(ingest, per_command["ingest"]);
  ingest->add_option("--csv", csv_path, "write the chord sequence as CSV ('-' for stdout)");
  ingest->add_flag("--summary", summary, "print a JSON summary instead of JSON lines");

  auto* series = app.add_subcommand("series", "integer-encoded chord series after filtering");
  series->add_option("file", file)->required()->check(CLI::ExistingFile);
  series_options(series, per_command["series"]);
  series->add_option("--format", format, "csv (default) or json")->check(CLI::IsMember({"json", "csv"}));
  series->add_option("--histogram", histogram_path, "write the occurrence histogram CSV (unfiltered ids)");

  auto* segment = app.add_subcommand("segment", "kernel change-point segmentation");
  segment->add_option("file", file)->required()->check(CLI::ExistingFile);
  segment_options(segment, per_command["segment"]);

  auto* network = app.add_subcommand("network", "static score network, power law and communities");
  network->add_option("file", file)->required()->check(CLI::ExistingFile);
  series_options(network, per_command["network"]);
  per_command["network"].option(network, "seed", "seed for community detection");
  network->add_option("--graphml", graphml_path, "write GraphML ('-' for stdout)");
  network->add_option("--dot", dot_path, "write DOT ('-' for stdout)");

  auto* regions = app.add_subcommand("regions", "tonal region table as CSV");
  regions->add_option("file", file)->required()->check(CLI::ExistingFile);
  region_options(regions, per_command["regions"]);

  auto* euler = app.add_subcommand("euler", "optimal Eulerian circuit of the score network");
  euler->add_option("file", file)->required()->check(CLI::ExistingFile);
  series_options(euler, per_command["euler"]);
  per_command["euler"].flag(euler, "close-walk", "add the edge last -> first chord before Eulerizing");
  per_command["euler"].option(euler, "start", "series id to start the circuit from");
  euler->add_option("--csv", csv_path, "write the circuit as a CSV chord sequence");

  auto* generate = app.add_subcommand("generate", "scale-free surrogate network and its circuit");
  generate->add_option("file", file, "reference score")->required()->check(CLI::ExistingFile);
  series_options(generate, per_command["generate"]);
  per_command["generate"].option(generate, "seed", "generator seed");
  per_command["generate"].option(generate, "m", "attachment edges per node (default: edges / nodes)");
  per_command["generate"].flag(generate, "close-walk", "close the reference walk before Eulerizing it");
  generate->add_option("--graphml", graphml_path, "write the generated network as GraphML");

  auto* compare = app.add_subcommand("compare", "layer similarity and annotation agreement");
  compare->add_option("file", file)->required()->check(CLI::ExistingFile);
  region_options(compare, per_command["compare"]);
  per_command["compare"].option(compare, "annotations", "annotation CSV (global_key=... header)");
  compare->add_option("--similarity", similarity_path, "write the similarity matrix CSV");

  auto* analyze = app.add_subcommand("analyze", "full pipeline with every artifact and a manifest");
  analyze->add_option("files", files, "one or more scores")->required()->check(CLI::ExistingFile);
  region_options(analyze, per_command["analyze"]);
  per_command["analyze"].option(analyze, "annotations", "annotation CSV (global_key=... header)");
  per_command["analyze"].option(analyze, "formats", "graph formats: graphml,dot");
  analyze->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    const RunConfig config = per_command.at(chosen->get_name()).resolve();

    if (*ingest) {
      const PreparedScore p = prepare_score(file, config);
      if (!csv_path.empty()) {
        write_text(csv_path, render([&](std::ostream& o) {
                     o << "index,bar,pcset\n";
                     for (const ChordEvent& e : p.chords.events) {
                       o << e.index << ',' << e.bar << ",\"" << e.pcset.to_string() << "\"\n";
                     }
                   }));
      }
      if (summary) {
        print_json(ingest_report(p));
      } else if (csv_path != "-") {
        for (const ChordEvent& e : p.chords.events) {
          std::vector<int> pcs(e.pcset.pcs().begin(), e.pcset.pcs().end());
          std::cout << json{{"index", e.index}, {"bar", e.bar}, {"pcset", pcs}}.dump() << '\n';
        }
      }
    } else if (*series) {
      const PreparedScore p = prepare_score(file, config);
      if (!histogram_path.empty()) {
        write_text(histogram_path, render([&](std::ostream& o) { write_histogram_csv(o, p.raw); }));
      }
      if (format == "csv") {
        write_series_csv(std::cout, p.filtered);
      } else {
        print_json(series_report(p, config));
      }
    } else if (*segment) {
      const PreparedScore p = prepare_score(file, config);
      print_json(segmentation_report(segment_series(p.filtered, config), p.filtered));
    } else if (*network) {
      const Analysis a = analyze_score(file, config);
      if (!graphml_path.empty()) {
        write_text(graphml_path, render([&](std::ostream& o) { write_graphml(o, a.network, &a.communities.community); }));
      }
      if (!dot_path.empty()) {
        write_text(dot_path, render([&](std::ostream& o) { write_dot(o, a.network, &a.communities.community); }));
      }
      if (graphml_path != "-" && dot_path != "-") print_json(network_report(a));
    } else if (*regions) {
      const Analysis a = analyze_score(file, config);
      write_region_csv(std::cout, a.regions);
    } else if (*euler) {
      const PreparedScore p = prepare_score(file, config);
      const EulerResult r = run_euler(p.filtered, config);
      if (!csv_path.empty()) {
        write_text(csv_path, render([&](std::ostream& o) {
                     o << "step,id,pcset\n";
                     for (std::size_t i = 0; i < r.circuit.nodes.size(); ++i) {
                       const int id = r.circuit.nodes[i];
                       o << i << ',' << id << ",\"" << p.filtered.pcset(id).to_string() << "\"\n";
                     }
                   }));
      }
      if (csv_path != "-") print_json(euler_report(r, p.filtered));
    } else if (*generate) {
      const PreparedScore p = prepare_score(file, config);
      const GenerateResult r = run_generate(p.filtered, config);
      if (!graphml_path.empty()) {
        write_text(graphml_path, render([&](std::ostream& o) { write_graphml(o, r.generated); }));
      }
      if (graphml_path != "-") print_json(generate_report(r));
    } else if (*compare) {
      const Analysis a = analyze_score(file, config);
      if (!similarity_path.empty()) {
        write_text(similarity_path, render([&](std::ostream& o) { write_similarity_csv(o, a.similarity); }));
      }
      json out{{"layers", a.layers.size()},
               {"similarity", a.similarity},
               {"global_key", a.regions.global.to_string()},
               {"agreement", a.agreement ? json(*a.agreement) : json(nullptr)}};
      if (similarity_path != "-") print_json(out);
    } else if (*analyze) {
      const auto dirs = output_dirs(out_dir, files);
      std::vector<std::future<json>> jobs;
      for (std::size_t i = 0; i < files.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
          const Analysis a = analyze_score(files[i], config);
          return write_artifacts(a, config, dirs[i]);
        }));
      }
      json runs = json::array();
      std::optional<Error> first_error;
      std::string first_other;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
          jobs[i].get();
          runs.push_back({{"input", files[i]}, {"manifest", (dirs[i] / "manifest.json").generic_string()}});
        } catch (const Error& e) {
          if (!first_error && first_other.empty()) first_error = Error(e.code(), files[i] + ": " + e.what());
        } catch (const std::exception& e) {
          if (!first_error && first_other.empty()) first_other = files[i] + ": " + e.what();
        }
      }
      if (first_error) throw *first_error;
      if (!first_other.empty()) throw std::runtime_error(first_other);
      print_json(json{{"runs", runs}});
    }
  } catch (const Error& e) {
    fail(std::string(error_code_name(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    fail("internal", e.what());
    return 1;
  }
  return 0;
}
