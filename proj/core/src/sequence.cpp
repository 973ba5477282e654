#include "scorenet/sequence.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scorenet/error.h"

namespace scorenet {
namespace {

// Builds a series from per-event pcsets, assigning ids by descending count
// with first appearance as the tie-break.
LabeledSeries encode(const std::vector<PitchClassSet>& events, std::vector<int> bars) {
  std::map<PitchClassSet, std::size_t> first_seen;
  std::map<PitchClassSet, std::size_t> count;
  for (std::size_t i = 0; i < events.size(); ++i) {
    first_seen.try_emplace(events[i], i);
    ++count[events[i]];
  }
  std::vector<PitchClassSet> order;
  order.reserve(first_seen.size());
  for (const auto& [pcset, unused] : first_seen) order.push_back(pcset);
  std::sort(order.begin(), order.end(), [&](const PitchClassSet& a, const PitchClassSet& b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return first_seen[a] < first_seen[b];
  });

  std::map<PitchClassSet, int> id;
  LabeledSeries out;
  for (const auto& pcset : order) {
    id[pcset] = static_cast<int>(out.dictionary.size());
    out.dictionary.push_back(pcset);
    out.counts.push_back(count[pcset]);
  }
  out.values.reserve(events.size());
  for (const auto& pcset : events) out.values.push_back(id[pcset]);
  out.bars = std::move(bars);
  out.origin.resize(out.dictionary.size());
  std::iota(out.origin.begin(), out.origin.end(), 0);
  out.source_dictionary = out.dictionary;
  return out;
}

}  // namespace

int LabeledSeries::id_of(const PitchClassSet& pcset) const {
  auto it = std::find(dictionary.begin(), dictionary.end(), pcset);
  if (it == dictionary.end()) {
    throw Error(ErrorCode::kInvalidArgument, "pcset " + pcset.to_string() + " not in series");
  }
  return static_cast<int>(it - dictionary.begin());
}

LabeledSeries build_series(const ChordSequence& sequence) {
  if (sequence.empty()) throw Error(ErrorCode::kEmptyInput, "empty chord sequence");
  std::vector<PitchClassSet> events;
  std::vector<int> bars;
  events.reserve(sequence.size());
  bars.reserve(sequence.size());
  for (const auto& e : sequence.events) {
    events.push_back(e.pcset);
    bars.push_back(e.bar);
  }
  return encode(events, std::move(bars));
}

std::map<int, std::size_t> occurrence_histogram(const LabeledSeries& series) {
  std::map<int, std::size_t> out;
  for (std::size_t id = 0; id < series.counts.size(); ++id) {
    out[static_cast<int>(id)] = series.counts[id];
  }
  return out;
}

LabeledSeries filter_series(const LabeledSeries& series, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "filter threshold must lie in [0, 1]");
  }
  if (series.values.empty()) throw Error(ErrorCode::kEmptyInput, "empty series");
  const std::size_t max_count = *std::max_element(series.counts.begin(), series.counts.end());
  // Relative slack absorbs rounding in threshold * max (0.1 * 10 must keep 1).
  const double cut = threshold * static_cast<double>(max_count) * (1.0 - 1e-12);

  std::vector<PitchClassSet> events;
  std::vector<int> bars;
  std::vector<int> old_ids;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const int id = series.values[i];
    if (static_cast<double>(series.counts[static_cast<std::size_t>(id)]) >= cut) {
      events.push_back(series.dictionary[static_cast<std::size_t>(id)]);
      bars.push_back(series.bars[i]);
      old_ids.push_back(id);
    }
  }
  if (events.empty()) throw Error(ErrorCode::kEmptyInput, "filter removed every event");

  LabeledSeries out = encode(events, std::move(bars));
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.origin[static_cast<std::size_t>(out.values[i])] =
        series.origin[static_cast<std::size_t>(old_ids[i])];
  }
  out.source_dictionary = series.source_dictionary;
  return out;
}

LabeledSeries slice_series(const LabeledSeries& series, std::size_t begin, std::size_t end) {
  if (begin > end || end > series.size()) {
    throw Error(ErrorCode::kInvalidArgument, "slice outside the series");
  }
  LabeledSeries out;
  out.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(begin),
                    series.values.begin() + static_cast<std::ptrdiff_t>(end));
  out.bars.assign(series.bars.begin() + static_cast<std::ptrdiff_t>(begin),
                  series.bars.begin() + static_cast<std::ptrdiff_t>(end));
  out.dictionary = series.dictionary;
  out.counts.assign(series.dictionary.size(), 0);
  for (int v : out.values) ++out.counts[static_cast<std::size_t>(v)];
  out.origin = series.origin;
  out.source_dictionary = series.source_dictionary;
  return out;
}

}  // namespace scorenet
