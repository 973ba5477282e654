#pragma once

// End-to-end analysis of one score: ingestion through region labelling, plus
// the report builders shared by the command-line subcommands.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scorenet/community.h"
#include "scorenet/euler.h"
#include "scorenet/generate.h"
#include "scorenet/network.h"
#include "scorenet/powerlaw.h"
#include "scorenet/score.h"
#include "scorenet/segmentation.h"
#include "scorenet/sequence.h"
#include "scorenet/tonal.h"

namespace scorenet {

std::string_view version();

struct RunConfig {
  double threshold = 0.10;
  double penalty = kDefaultPenalty;
  std::size_t min_size = 2;
  std::uint64_t seed = 0;
  bool keep_repeats = false;
  std::optional<double> gamma;             // chosen from the series when unset
  std::set<std::string> formats = {"graphml", "dot"};
  std::optional<std::string> annotations;  // annotation CSV path
  std::string spelling;                    // "d=LABEL,..." overrides
  std::optional<std::string> global_key;   // overrides the prevalent-chord key
  bool close_walk = false;                 // add last -> first before Eulerizing
  std::optional<std::size_t> m;            // Barabasi-Albert attachment count
  std::optional<int> euler_start;          // series id; defaults to the first chord
};

/// key=value lines; '#' starts a comment. Keys use the long flag names
/// (threshold, penalty, min-size, ...).
std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text);
/// Throws kInvalidArgument on an unknown key or a value out of range.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
nlohmann::json config_json(const RunConfig& config);

struct PreparedScore {
  std::filesystem::path path;
  ScoreDocument score;
  ChordSequence chords;
  LabeledSeries raw;
  LabeledSeries filtered;
};

PreparedScore prepare_score(const std::filesystem::path& path, const RunConfig& config);

Segmentation segment_series(const LabeledSeries& series, const RunConfig& config);

struct Analysis {
  PreparedScore input;
  Segmentation segmentation;
  std::vector<int> breakpoint_bars;
  ScoreNetwork network;
  DegreeStats degrees;
  std::optional<PowerLawFit> power_law;
  std::string power_law_note;  // why the fit is missing, if it is
  CommunityPartition communities;
  std::vector<LayerNetwork> layers;
  std::vector<std::vector<double>> similarity;
  RegionTable regions;
  std::optional<double> agreement;
};

Analysis analyze_score(const std::filesystem::path& path, const RunConfig& config);

/// Writes every artifact plus manifest.json into `dir` and returns the
/// manifest.
nlohmann::json write_artifacts(const Analysis& analysis, const RunConfig& config, const std::filesystem::path& dir);

nlohmann::json ingest_report(const PreparedScore& input);
nlohmann::json series_report(const PreparedScore& input, const RunConfig& config);
nlohmann::json segmentation_report(const Segmentation& segmentation, const LabeledSeries& series);
nlohmann::json network_report(const Analysis& analysis);

struct EulerResult {
  WalkStats walk;
  EulerizedGraph graph;
  Circuit circuit;
  bool closing_edge_added = false;
};

EulerResult run_euler(const LabeledSeries& series, const RunConfig& config);
nlohmann::json euler_report(const EulerResult& result, const LabeledSeries& series);

struct GenerateResult {
  std::size_t m = 1;
  std::uint64_t seed = 0;
  GeneratedScoreNetwork generated;
  UndirectedEulerization eulerized;
  std::vector<std::size_t> circuit;  // generated node ids
  OperatorHistogram generated_histogram;
  OperatorHistogram original_walk_histogram;
  OperatorHistogram original_circuit_histogram;
  std::size_t original_walk_edges = 0;
  std::size_t original_circuit_edges = 0;
  std::string original_circuit_note;  // why the original circuit is missing, if it is
};

GenerateResult run_generate(const LabeledSeries& series, const RunConfig& config);
nlohmann::json generate_report(const GenerateResult& result);

}  // namespace scorenet
