#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "scorenet/pcset.h"
#include "scorenet/score.h"

namespace scorenet {

/// Integer-encoded chord time series. Ids run 0..K-1 in order of descending
/// occurrence count (ties broken by first appearance), so id 0 is the most
/// frequent pcset.
struct LabeledSeries {
  std::vector<int> values;
  std::vector<int> bars;
  std::vector<PitchClassSet> dictionary;  // id -> pcset
  std::vector<std::size_t> counts;        // id -> occurrences
  /// id -> id in the series this one was filtered from (identity when unfiltered).
  std::vector<int> origin;
  /// Dictionary of the unfiltered series, kept for traceability.
  std::vector<PitchClassSet> source_dictionary;

  std::size_t size() const noexcept { return values.size(); }
  std::size_t alphabet_size() const noexcept { return dictionary.size(); }
  const PitchClassSet& pcset(int id) const { return dictionary.at(static_cast<std::size_t>(id)); }
  /// Throws when `pcset` is not in the dictionary.
  int id_of(const PitchClassSet& pcset) const;
};

/// Throws on an empty sequence.
LabeledSeries build_series(const ChordSequence& sequence);

std::map<int, std::size_t> occurrence_histogram(const LabeledSeries& series);

/// Keeps events whose pcset occurs at least `threshold` x (max count) times,
/// then re-indexes the survivors with the same descending-count rule.
LabeledSeries filter_series(const LabeledSeries& series, double threshold = 0.10);

/// Series restricted to the half-open event range [begin, end), with the
/// dictionary left unchanged.
LabeledSeries slice_series(const LabeledSeries& series, std::size_t begin, std::size_t end);

}  // namespace scorenet
