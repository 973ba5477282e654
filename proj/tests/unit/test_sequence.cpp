#include <gtest/gtest.h>

#include "scorenet/error.h"
#include "scorenet/sequence.h"

using scorenet::PitchClassSet;

namespace {

scorenet::ChordSequence sequence_of(const std::vector<PitchClassSet>& sets) {
  scorenet::ChordSequence seq;
  for (std::size_t i = 0; i < sets.size(); ++i) seq.events.push_back({i, 1 + static_cast<int>(i), sets[i]});
  return seq;
}

const PitchClassSet kA = PitchClassSet::from_pitches({0, 4, 7});
const PitchClassSet kB = PitchClassSet::from_pitches({7, 11, 2});
const PitchClassSet kC = PitchClassSet::from_pitches({5, 9, 0});

}  // namespace

TEST(Series, IdsByDescendingCount) {
  const auto s = scorenet::build_series(sequence_of({kA, kB, kA}));
  EXPECT_EQ(s.values, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(s.pcset(0), kA);
  EXPECT_EQ(s.counts, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(s.bars, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.id_of(kB), 1);
  EXPECT_THROW(s.id_of(kC), scorenet::Error);
}

TEST(Series, TiesByFirstAppearance) {
  const auto s = scorenet::build_series(sequence_of({kC, kB, kA, kA, kB, kC}));
  EXPECT_EQ(s.pcset(0), kC);
  EXPECT_EQ(s.pcset(1), kB);
  EXPECT_EQ(s.pcset(2), kA);
}

TEST(Series, EmptyThrows) { EXPECT_THROW(scorenet::build_series({}), scorenet::Error); }

TEST(Series, Histogram) {
  const auto h = scorenet::occurrence_histogram(scorenet::build_series(sequence_of({kA, kB, kA, kC, kA})));
  EXPECT_EQ(h.at(0), 3u);
  EXPECT_EQ(h.at(1), 1u);
  EXPECT_EQ(h.at(2), 1u);
}

TEST(Filter, KeepsAtThreshold) {
  std::vector<PitchClassSet> sets(10, kA);
  sets.push_back(kB);
  const auto s = scorenet::build_series(sequence_of(sets));
  EXPECT_EQ(scorenet::filter_series(s, 0.10).alphabet_size(), 2u);
  EXPECT_EQ(scorenet::filter_series(s, 0.11).alphabet_size(), 1u);
  EXPECT_EQ(scorenet::filter_series(s, 0.0).size(), s.size());
}

TEST(Filter, ReindexesAndTracesOrigin) {
  // counts: A 6, B 1, C 3
  std::vector<PitchClassSet> sets = {kA, kB, kC, kA, kC, kA, kC, kA, kA, kA};
  const auto s = scorenet::build_series(sequence_of(sets));
  const auto f = scorenet::filter_series(s, 0.2);
  EXPECT_EQ(f.size(), 9u);
  EXPECT_EQ(f.alphabet_size(), 2u);
  EXPECT_EQ(f.pcset(1), kC);
  EXPECT_EQ(f.origin[1], s.id_of(kC));
  EXPECT_EQ(f.source_dictionary, s.dictionary);
  EXPECT_EQ(f.bars.front(), 1);
  EXPECT_EQ(f.bars[1], 3);
}

TEST(Filter, RangeChecked) {
  const auto s = scorenet::build_series(sequence_of({kA, kB}));
  EXPECT_THROW(scorenet::filter_series(s, -0.1), scorenet::Error);
  EXPECT_THROW(scorenet::filter_series(s, 1.1), scorenet::Error);
}

TEST(Slice, KeepsDictionary) {
  const auto s = scorenet::build_series(sequence_of({kA, kB, kA, kC}));
  const auto t = scorenet::slice_series(s, 1, 3);
  EXPECT_EQ(t.values, (std::vector<int>{1, 0}));
  EXPECT_EQ(t.bars, (std::vector<int>{2, 3}));
  EXPECT_EQ(t.dictionary, s.dictionary);
  EXPECT_THROW(scorenet::slice_series(s, 2, 9), scorenet::Error);
}
