#include "scorenet/pipeline.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scorenet/error.h"
#include "scorenet/export.h"

namespace scorenet {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Error bad_value(std::string_view key, std::string_view value) {
  return Error(ErrorCode::kInvalidArgument, "invalid value for " + std::string(key) + ": '" + std::string(value) + "'");
}

double to_double(std::string_view key, std::string_view value) {
  const std::string s(trim(value));
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw bad_value(key, value);
  }
  if (used != s.size()) throw bad_value(key, value);
  return x;
}

template <typename T>
T to_integer(std::string_view key, std::string_view value) {
  value = trim(value);
  T x{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) throw bad_value(key, value);
  return x;
}

bool to_bool(std::string_view key, std::string_view value) {
  std::string v(trim(value));
  for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw bad_value(key, value);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

template <typename F>
std::string render(F&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

std::string histogram_key(const std::vector<int>& steps) {
  std::string s = "(";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(steps[i]);
  }
  return s + ")";
}

json histogram_json(const OperatorHistogram& h) {
  json out = json::object();
  for (const auto& [key, p] : h) out[histogram_key(key)] = p;
  return out;
}

std::vector<PitchClassSet> walk_labels(const LabeledSeries& series, const std::vector<int>& ids) {
  std::vector<PitchClassSet> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(series.pcset(id));
  return out;
}

json labels_json(const std::vector<PitchClassSet>& labels) {
  json out = json::array();
  for (const auto& p : labels) out.push_back(p.to_string());
  return out;
}

json power_law_json(const Analysis& a) {
  if (!a.power_law) return json{{"fitted", false}, {"note", a.power_law_note}};
  const PowerLawFit& f = *a.power_law;
  return json{{"fitted", true},       {"alpha", f.alpha},   {"alpha_approx", f.alpha_approx},
              {"xmin", f.xmin},       {"ks", f.ks_stat},    {"n_tail", f.n_tail},
              {"degree", "total"}};
}

json region_rows_json(const RegionTable& table) {
  json rows = json::array();
  for (const RegionRow& r : table.rows) {
    rows.push_back({{"section", r.section},
                    {"measures", std::to_string(r.first_bar) + "-" + std::to_string(r.last_bar)},
                    {"owned_bars", {r.owned_begin, r.owned_end}},
                    {"prevalent_chord", r.prevalent.chord.to_string()},
                    {"prevalent_notes", pcset_note_names(r.prevalent.chord)},
                    {"classified", r.prevalent.classified()},
                    {"key", r.key ? json(r.key->to_string()) : json(nullptr)},
                    {"region", r.region}});
  }
  return rows;
}

}  // namespace

std::string_view version() { return SCORENET_VERSION; }

std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedInput, "config line " + std::to_string(line_no) + " is not key=value");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  if (key == "threshold" || key == "filter") {
    config.threshold = to_double(key, value);
    if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) throw bad_value(key, value);
  } else if (key == "penalty") {
    config.penalty = to_double(key, value);
    if (!(config.penalty > 0.0)) throw bad_value(key, value);
  } else if (key == "min-size") {
    config.min_size = to_integer<std::size_t>(key, value);
    if (config.min_size < 2) throw bad_value(key, value);
  } else if (key == "seed") {
    config.seed = to_integer<std::uint64_t>(key, value);
  } else if (key == "keep-repeats") {
    config.keep_repeats = to_bool(key, value);
  } else if (key == "gamma") {
    const double g = to_double(key, value);
    if (!(g > 0.0)) throw bad_value(key, value);
    config.gamma = g;
  } else if (key == "formats") {
    config.formats.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = std::min(rest.find(','), rest.size());
      const std::string f(trim(rest.substr(0, comma)));
      if (f != "graphml" && f != "dot") throw bad_value(key, value);
      config.formats.insert(f);
      rest = comma < rest.size() ? rest.substr(comma + 1) : std::string_view();
    }
  } else if (key == "annotations") {
    config.annotations = std::string(trim(value));
  } else if (key == "spelling") {
    SpellingTable::with_overrides(value);
    config.spelling = std::string(trim(value));
  } else if (key == "global-key") {
    parse_key(value);
    config.global_key = std::string(trim(value));
  } else if (key == "close-walk") {
    config.close_walk = to_bool(key, value);
  } else if (key == "m") {
    const auto m = to_integer<std::size_t>(key, value);
    if (m < 1) throw bad_value(key, value);
    config.m = m;
  } else if (key == "start") {
    config.euler_start = to_integer<int>(key, value);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown setting '" + std::string(key) + "'");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  for (const auto& [k, v] : parse_settings(buffer.str())) apply_setting(config, k, v);
}

json config_json(const RunConfig& c) {
  json out{{"threshold", c.threshold},
           {"penalty", c.penalty},
           {"min_size", c.min_size},
           {"seed", c.seed},
           {"keep_repeats", c.keep_repeats},
           {"gamma", c.gamma ? json(*c.gamma) : json(nullptr)},
           {"formats", json(std::vector<std::string>(c.formats.begin(), c.formats.end()))},
           {"annotations", c.annotations ? json(*c.annotations) : json(nullptr)},
           {"spelling", c.spelling},
           {"global_key", c.global_key ? json(*c.global_key) : json(nullptr)},
           {"close_walk", c.close_walk},
           {"m", c.m ? json(*c.m) : json(nullptr)},
           {"start", c.euler_start ? json(*c.euler_start) : json(nullptr)}};
  return out;
}

PreparedScore prepare_score(const std::filesystem::path& path, const RunConfig& config) {
  PreparedScore p;
  p.path = path;
  p.score = read_score_file(path);
  ChordifyOptions options;
  options.merge_repeats = !config.keep_repeats;
  p.chords = chordify(p.score, options);
  p.raw = build_series(p.chords);
  p.filtered = config.threshold > 0.0 ? filter_series(p.raw, config.threshold) : p.raw;
  return p;
}

Segmentation segment_series(const LabeledSeries& series, const RunConfig& config) {
  CostModel model;
  if (config.gamma) {
    model.gamma = *config.gamma;
  } else if (series.alphabet_size() > 1) {
    model = choose_gamma(series);
  }
  return binary_segmentation(series, config.penalty, model, config.min_size);
}

Analysis analyze_score(const std::filesystem::path& path, const RunConfig& config) {
  Analysis a;
  a.input = prepare_score(path, config);
  const LabeledSeries& s = a.input.filtered;
  a.segmentation = segment_series(s, config);
  a.breakpoint_bars = breakpoints_to_bars(a.segmentation, s);
  a.network = build_network(s);
  a.degrees = degree_stats(a.network);
  try {
    a.power_law = fit_power_law(a.degrees.degrees(DegreeKey::kTotal));
  } catch (const Error& e) {
    a.power_law_note = e.what();
  }
  a.communities = detect_communities(a.network, config.seed);
  a.layers = layer_networks(s, a.segmentation);
  a.similarity = similarity_matrix(a.layers);
  const Key global = config.global_key ? parse_key(*config.global_key) : global_key(a.network);
  a.regions = build_region_table(a.layers, s, global, SpellingTable::with_overrides(config.spelling));
  if (config.annotations) a.agreement = agreement(a.regions, read_annotations(*config.annotations));
  return a;
}

json ingest_report(const PreparedScore& input) {
  ChordifyOptions other;
  other.merge_repeats = false;
  const std::size_t slices = chordify(input.score, other).size();
  other.merge_repeats = true;
  const std::size_t merged = chordify(input.score, other).size();
  int last_bar = input.score.measures.empty() ? 0 : input.score.measures.back().bar;
  return json{{"title", input.score.title},
              {"movement", input.score.movement},
              {"streams", input.score.parts.size()},
              {"measures", input.score.measures.size()},
              {"last_bar", last_bar},
              {"note_events", input.score.note_event_count()},
              {"chord_events", input.chords.size()},
              {"chord_events_merged", merged},
              {"chord_slices_unmerged", slices},
              {"unique_pcsets", input.raw.alphabet_size()},
              {"warnings", input.score.warnings}};
}

json series_report(const PreparedScore& input, const RunConfig& config) {
  json dictionary = json::array();
  for (std::size_t id = 0; id < input.filtered.alphabet_size(); ++id) {
    dictionary.push_back({{"id", id},
                          {"pcset", input.filtered.dictionary[id].to_string()},
                          {"count", input.filtered.counts[id]}});
  }
  return json{{"threshold", config.threshold},
              {"raw", {{"events", input.raw.size()}, {"unique_pcsets", input.raw.alphabet_size()}}},
              {"filtered", {{"events", input.filtered.size()}, {"unique_pcsets", input.filtered.alphabet_size()}}},
              {"dictionary", dictionary},
              {"values", input.filtered.values},
              {"bars", input.filtered.bars}};
}

json segmentation_report(const Segmentation& seg, const LabeledSeries& series) {
  json segments = json::array();
  json costs = json::array();
  const CostModel model{seg.gamma};
  for (const auto& [b, e] : seg.segments()) {
    segments.push_back({{"begin", b}, {"end", e}, {"first_bar", series.bars[b]}, {"last_bar", series.bars[e - 1]}});
    costs.push_back(rbf_cost(series, b, e, model));
  }
  return json{{"penalty", seg.penalty},
              {"gamma", seg.gamma},
              {"min_size", seg.min_size},
              {"length", series.size()},
              {"breakpoints", seg.breakpoints},
              {"change_points", seg.change_points()},
              {"bar_breaks", breakpoints_to_bars(seg, series)},
              {"gains", seg.gains},
              {"costs", costs},
              {"segments", segments}};
}

json network_report(const Analysis& a) {
  std::size_t loops = 0;
  for (const auto& [e, w] : a.network.edges) loops += e.first == e.second;
  return json{{"nodes", a.network.node_count()},
              {"edges", a.network.edge_count()},
              {"self_loops", loops},
              {"total_weight", a.network.total_weight()},
              {"mean_degree", a.degrees.mean_degree},
              {"power_law", power_law_json(a)},
              {"modularity", a.communities.modularity},
              {"communities", a.communities.community_count}};
}

json write_artifacts(const Analysis& a, const RunConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json artifacts = json::array();
  const auto emit = [&](const std::string& name, const std::string& media, const std::string& content) {
    write_file(dir / name, content);
    artifacts.push_back({{"name", name}, {"path", name}, {"media_type", media}});
  };
  const LabeledSeries& s = a.input.filtered;
  emit("series.csv", "text/csv", render([&](std::ostream& o) { write_series_csv(o, s); }));
  emit("series_raw.csv", "text/csv", render([&](std::ostream& o) { write_series_csv(o, a.input.raw); }));
  emit("histogram.csv", "text/csv", render([&](std::ostream& o) { write_histogram_csv(o, a.input.raw); }));

  json seg = segmentation_report(a.segmentation, s);
  seg["layers"] = json::array();
  for (const LayerNetwork& layer : a.layers) {
    seg["layers"].push_back({{"segment", layer.segment},
                             {"nodes", layer.network.node_count()},
                             {"edges", layer.network.edge_count()},
                             {"first_bar", layer.first_bar},
                             {"last_bar", layer.last_bar}});
  }
  emit("segmentation.json", "application/json", seg.dump(2) + "\n");

  const std::map<int, int>* comm = &a.communities.community;
  if (config.formats.count("graphml")) {
    emit("network.graphml", "application/graphml+xml",
         render([&](std::ostream& o) { write_graphml(o, a.network, comm); }));
  }
  if (config.formats.count("dot")) {
    emit("network.dot", "text/vnd.graphviz", render([&](std::ostream& o) { write_dot(o, a.network, comm); }));
  }
  emit("degrees.csv", "text/csv", render([&](std::ostream& o) { write_degrees_csv(o, a.network); }));
  emit("degree_distribution.csv", "text/csv",
       render([&](std::ostream& o) { write_degree_distribution_csv(o, a.network); }));
  emit("similarity.csv", "text/csv", render([&](std::ostream& o) { write_similarity_csv(o, a.similarity); }));
  emit("regions.csv", "text/csv", render([&](std::ostream& o) { write_region_csv(o, a.regions); }));
  if (config.formats.count("graphml")) {
    std::filesystem::create_directories(dir / "layers");
    for (const LayerNetwork& layer : a.layers) {
      char name[32];
      std::snprintf(name, sizeof name, "layers/layer_%03zu.graphml", layer.segment);
      emit(name, "application/graphml+xml", render([&](std::ostream& o) { write_graphml(o, layer.network); }));
    }
  }

  json summary{{"events_raw", a.input.raw.size()},
               {"events_filtered", s.size()},
               {"unique_pcsets_raw", a.input.raw.alphabet_size()},
               {"unique_pcsets_filtered", s.alphabet_size()},
               {"segments", a.segmentation.segments().size()},
               {"breakpoint_bars", a.breakpoint_bars},
               {"gamma", a.segmentation.gamma},
               {"network", network_report(a)},
               {"global_key", a.regions.global.to_string()},
               {"regions", region_rows_json(a.regions)},
               {"agreement", a.agreement ? json(*a.agreement) : json(nullptr)}};

  json manifest{{"schema_version", 1},
                {"tool", "scorenet"},
                {"version", std::string(version())},
                {"input", {{"path", a.input.path.generic_string()},
                           {"title", a.input.score.title},
                           {"movement", a.input.score.movement}}},
                {"config", config_json(config)},
                {"summary", summary},
                {"warnings", a.input.score.warnings}};
  artifacts.push_back({{"name", "manifest.json"}, {"path", "manifest.json"}, {"media_type", "application/json"}});
  manifest["artifacts"] = artifacts;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

EulerResult run_euler(const LabeledSeries& series, const RunConfig& config) {
  if (series.size() < 2) throw Error(ErrorCode::kInvalidArgument, "walk needs at least two events");
  EulerResult r;
  r.walk = walk_stats(series);
  std::set<Edge> support;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) support.emplace(series.values[i], series.values[i + 1]);
  if (config.close_walk && series.values.back() != series.values.front()) {
    r.closing_edge_added = support.emplace(series.values.back(), series.values.front()).second;
  }
  r.graph = eulerize_directed(support);
  const int start = config.euler_start.value_or(series.values.front());
  r.circuit = euler_circuit(r.graph, start);
  return r;
}

json euler_report(const EulerResult& r, const LabeledSeries& series) {
  json dups = json::array();
  for (const auto& [e, k] : r.graph.duplications) {
    dups.push_back({{"source", e.first},
                    {"target", e.second},
                    {"source_pcset", series.pcset(e.first).to_string()},
                    {"target_pcset", series.pcset(e.second).to_string()},
                    {"count", k}});
  }
  std::vector<int> ids = r.circuit.nodes;
  return json{{"walk_stats",
               {{"nodes_visited", r.walk.nodes_visited},
                {"edges_traversed", r.walk.edges_traversed},
                {"distinct_edges", r.walk.distinct_edges},
                {"duplicated", r.walk.duplicated},
                {"self_loops", r.walk.self_loops}}},
              {"nodes", series.alphabet_size()},
              {"support_edges", r.graph.support.size()},
              {"closing_edge_added", r.closing_edge_added},
              {"duplications", dups},
              {"duplicated_edges", r.graph.total_duplications()},
              {"circuit", labels_json(walk_labels(series, ids))},
              {"circuit_ids", ids},
              {"lengths",
               {{"nodes_visited", r.circuit.nodes_visited()}, {"edges_traversed", r.circuit.edges_traversed()}}}};
}

GenerateResult run_generate(const LabeledSeries& series, const RunConfig& config) {
  const ScoreNetwork reference = build_network(series);
  GenerateResult r;
  r.seed = config.seed;
  r.m = config.m.value_or(choose_m(reference));
  const UndirectedGraph graph = barabasi_albert({reference.node_count(), r.m, config.seed});
  r.generated = assign_chords(graph, reference);
  r.eulerized = eulerize_undirected(graph);
  const int first = series.values.front();
  const auto start_it = std::find(r.generated.reference_ids.begin(), r.generated.reference_ids.end(), first);
  const auto start = static_cast<std::size_t>(start_it - r.generated.reference_ids.begin());
  r.circuit = undirected_euler_circuit(graph.node_count, r.eulerized.edges, start);

  std::vector<PitchClassSet> generated_walk;
  for (std::size_t v : r.circuit) generated_walk.push_back(r.generated.labels[v]);
  r.generated_histogram = vl_histogram(generated_walk);
  r.original_walk_histogram = vl_histogram(walk_labels(series, series.values));
  r.original_walk_edges = series.size() - 1;
  try {
    const EulerResult original = run_euler(series, config);
    r.original_circuit_histogram = vl_histogram(walk_labels(series, original.circuit.nodes));
    r.original_circuit_edges = original.circuit.edges_traversed();
  } catch (const Error& e) {
    r.original_circuit_note = e.what();
  }
  return r;
}

json generate_report(const GenerateResult& r) {
  std::vector<PitchClassSet> walk;
  for (std::size_t v : r.circuit) walk.push_back(r.generated.labels[v]);
  json lengths{{"original_walk", r.original_walk_edges}, {"generated_circuit", r.circuit.size() - 1}};
  json tv{{"generated_vs_original_walk", compare_histograms(r.generated_histogram, r.original_walk_histogram)}};
  json histograms{{"generated_circuit", histogram_json(r.generated_histogram)},
                  {"original_walk", histogram_json(r.original_walk_histogram)}};
  if (r.original_circuit_note.empty()) {
    lengths["original_circuit"] = r.original_circuit_edges;
    tv["generated_vs_original_circuit"] = compare_histograms(r.generated_histogram, r.original_circuit_histogram);
    tv["original_circuit_vs_original_walk"] =
        compare_histograms(r.original_circuit_histogram, r.original_walk_histogram);
    histograms["original_circuit"] = histogram_json(r.original_circuit_histogram);
  } else {
    lengths["original_circuit"] = nullptr;
  }
  json out{{"n", r.generated.graph.node_count},
           {"m", r.m},
           {"seed", r.seed},
           {"edges", r.generated.graph.edges.size()},
           {"exact_matching", r.eulerized.exact},
           {"duplicated_edges", r.eulerized.duplicated},
           {"circuit", labels_json(walk)},
           {"histograms", histograms},
           {"tv_distance_vs_original", tv["generated_vs_original_walk"]},
           {"tv_distances", tv},
           {"lengths", lengths}};
  if (!r.original_circuit_note.empty()) out["original_circuit_note"] = r.original_circuit_note;
  return out;
}

}  // namespace scorenet
