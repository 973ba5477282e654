#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "scorenet/pcset.h"

using scorenet::PitchClassSet;

namespace {

std::vector<int> pcs_of(const PitchClassSet& x) { return {x.pcs().begin(), x.pcs().end()}; }

}  // namespace

TEST(NormalOrder, RotatesToMostCompactForm) {
  EXPECT_EQ(pcs_of(PitchClassSet::from_pitches({7, 4, 0})), (std::vector<int>{0, 4, 7}));
  EXPECT_EQ(pcs_of(PitchClassSet::from_pitches({11, 2, 7})), (std::vector<int>{7, 11, 2}));
  EXPECT_EQ(pcs_of(PitchClassSet::from_pitches({0, 5, 7})), (std::vector<int>{5, 7, 0}));
  EXPECT_TRUE(PitchClassSet::from_pitches({}).empty());
}

TEST(NormalOrder, ReducesOctavesAndDuplicates) {
  EXPECT_EQ(PitchClassSet::from_pitches({60, 64, 67, 72}), PitchClassSet::from_pitches({0, 4, 7}));
  EXPECT_EQ(PitchClassSet::from_pitches({-1, 2}), PitchClassSet::from_pitches({11, 2}));
  EXPECT_EQ(PitchClassSet::from_pitches({0, 4, 7}).to_string(), "[0,4,7]");
}

TEST(NormalOrder, InvariantUnderInputPermutationAndIdempotent) {
  for (const auto& x : oracle::all_pcsets(1, 6)) {
    std::vector<int> pcs = pcs_of(x);
    std::reverse(pcs.begin(), pcs.end());
    EXPECT_EQ(PitchClassSet::from_pitches(pcs), x);
    EXPECT_EQ(scorenet::normal_order(pcs_of(x)), x);
  }
}

TEST(NormalOrder, RejectsBadTet) { EXPECT_THROW(PitchClassSet::from_pitches({0}, 0), std::exception); }

TEST(Transpose, ShiftsEveryPitchClass) {
  EXPECT_EQ(PitchClassSet::from_pitches({0, 4, 7}).transposed(3), PitchClassSet::from_pitches({3, 7, 10}));
  EXPECT_EQ(PitchClassSet::from_pitches({0, 4, 7}).transposed(-1), PitchClassSet::from_pitches({11, 3, 6}));
}

TEST(VoiceLeading, KnownPairs) {
  const auto c = PitchClassSet::from_pitches({0, 4, 7});
  const auto g = PitchClassSet::from_pitches({7, 11, 2});
  const auto cm = PitchClassSet::from_pitches({0, 3, 7});
  EXPECT_NEAR(scorenet::vl_distance(c, g), std::sqrt(5.0), 1e-12);
  EXPECT_EQ(scorenet::vl_operator_between(c, g).steps, (std::vector<int>{-1, -2, 0}));
  EXPECT_DOUBLE_EQ(scorenet::vl_distance(c, cm), 1.0);
  EXPECT_EQ(scorenet::vl_operator_between(c, cm).steps, (std::vector<int>{0, -1, 0}));
  EXPECT_DOUBLE_EQ(scorenet::vl_distance(c, c), 0.0);
}

TEST(VoiceLeading, DuplicatesTheSmallerSet) {
  const auto dyad = PitchClassSet::from_pitches({3, 7});
  const auto dom7 = PitchClassSet::from_pitches({7, 11, 2, 5});
  const auto op = scorenet::vl_operator_between(dyad, dom7);
  EXPECT_EQ(op.steps.size(), 4u);
  EXPECT_TRUE(oracle::is_voice_leading(dyad, dom7, op.voices, op.steps));
  EXPECT_NEAR(op.norm(), oracle::vl_distance(dyad, dom7), 1e-12);
}

TEST(VoiceLeading, MatchesExhaustiveSearchOnSampledPairs) {
  const auto sets = oracle::all_pcsets(1, 4);
  std::mt19937_64 engine(7);
  for (int i = 0; i < 2000; ++i) {
    const auto& x = sets[engine() % sets.size()];
    const auto& y = sets[engine() % sets.size()];
    const double expected = oracle::vl_distance(x, y);
    ASSERT_NEAR(scorenet::vl_distance(x, y), expected, 1e-12) << x.to_string() << " " << y.to_string();
    ASSERT_NEAR(scorenet::vl_distance(y, x), expected, 1e-12);
    const auto op = scorenet::vl_operator_between(x, y);
    ASSERT_NEAR(op.norm(), expected, 1e-12);
    ASSERT_TRUE(oracle::is_voice_leading(x, y, op.voices, op.steps)) << x.to_string() << " " << y.to_string();
  }
}

TEST(VoiceLeading, CanonicalFormSortsSteps) {
  scorenet::VoiceLeadingVector v{{0, 4, 7}, {0, -2, 1}};
  EXPECT_EQ(v.canonical(), (std::vector<int>{-2, 0, 1}));
  EXPECT_EQ(v.squared_norm(), 5);
}

TEST(DistanceOperator, SemitoneNeighboursOfCMajor) {
  const auto c = PitchClassSet::from_pitches({0, 4, 7});
  const std::vector<int> one = {1};
  const auto got = scorenet::apply_distance_operator(c, one);
  const std::set<PitchClassSet> expected = {
      PitchClassSet::from_pitches({0, 3, 7}), PitchClassSet::from_pitches({0, 4, 6}),
      PitchClassSet::from_pitches({0, 4, 8}), PitchClassSet::from_pitches({5, 7, 0}),
      PitchClassSet::from_pitches({1, 4, 7}), PitchClassSet::from_pitches({4, 7, 11})};
  EXPECT_EQ(got, expected);
}

TEST(DistanceOperator, ResultsAreAtTheOperatorDistanceOrCloser) {
  const auto c = PitchClassSet::from_pitches({0, 4, 7});
  const std::vector<int> mags = {1, 2};
  for (const auto& y : scorenet::apply_distance_operator(c, mags)) {
    EXPECT_LE(scorenet::vl_distance(c, y), std::sqrt(5.0) + 1e-12);
  }
}

TEST(Classify, Templates) {
  using scorenet::ChordQuality;
  const auto g = scorenet::classify_chord(PitchClassSet::from_pitches({7, 11, 2}));
  EXPECT_EQ(g.quality, ChordQuality::kMajorTriad);
  EXPECT_EQ(g.root, 7);
  const auto eb7 = scorenet::classify_chord(PitchClassSet::from_pitches({3, 7, 10, 1}));
  EXPECT_EQ(eb7.quality, ChordQuality::kDominantSeventh);
  EXPECT_EQ(eb7.root, 3);
  const auto gm = scorenet::classify_chord(PitchClassSet::from_pitches({7, 10, 2}));
  EXPECT_EQ(gm.quality, ChordQuality::kMinorTriad);
  EXPECT_EQ(gm.root, 7);
  EXPECT_EQ(scorenet::classify_chord(PitchClassSet::from_pitches({3, 7})).quality, ChordQuality::kMajorDyad);
  EXPECT_FALSE(scorenet::classify_chord(PitchClassSet::from_pitches({0, 1, 2})).classified());
}

TEST(Names, FlatSpelling) {
  EXPECT_EQ(scorenet::pitch_class_name(3), "Eb");
  EXPECT_EQ(scorenet::pcset_note_names(PitchClassSet::from_pitches({3, 7, 10})), "[Eb, G, Bb]");
}
