#include <gtest/gtest.h>

#include "fixtures.h"
#include "scorenet/error.h"
#include "scorenet/score.h"

using scorenet::PitchClassSet;

namespace {

scorenet::ChordSequence chords_of(const std::string& xml, bool merge = true) {
  return scorenet::chordify(scorenet::parse_musicxml(xml), {.merge_repeats = merge});
}

std::vector<PitchClassSet> pcsets(const scorenet::ChordSequence& seq) {
  std::vector<PitchClassSet> out;
  for (const auto& e : seq.events) out.push_back(e.pcset);
  return out;
}

scorenet::ErrorCode code_of(const std::string& xml) {
  try {
    chords_of(xml);
  } catch (const scorenet::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return scorenet::ErrorCode::kIo;
}

}  // namespace

TEST(Ingest, SingleChord) {
  fixture::ScoreWriter w;
  w.part("P1").note({60, 64, 67}, 4).end_measure();
  const auto seq = chords_of(w.xml());
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq.events[0].pcset, PitchClassSet::from_pitches({0, 4, 7}));
  EXPECT_EQ(seq.events[0].bar, 1);
  EXPECT_EQ(seq.title, "Fixture");
}

TEST(Ingest, SlicesAcrossParts) {
  fixture::ScoreWriter w;
  w.part("P1").note({60}, 4).end_measure();
  w.part("P2").note({64}, 2).note({65}, 2).end_measure();
  EXPECT_EQ(pcsets(chords_of(w.xml())),
            (std::vector<PitchClassSet>{PitchClassSet::from_pitches({0, 4}), PitchClassSet::from_pitches({0, 5})}));
}

TEST(Ingest, BackupStartsASecondVoice) {
  fixture::ScoreWriter w;
  w.part("P1").note({60}, 4).backup(4).note({64}, 2, {.voice = "2"}).note({67}, 2, {.voice = "2"}).end_measure();
  EXPECT_EQ(pcsets(chords_of(w.xml())),
            (std::vector<PitchClassSet>{PitchClassSet::from_pitches({0, 4}), PitchClassSet::from_pitches({0, 7})}));
}

TEST(Ingest, ForwardSkipsTime) {
  fixture::ScoreWriter w;
  w.part("P1").note({60}, 2).forward(1).note({62}, 1).end_measure();
  const auto seq = chords_of(w.xml());
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq.events[1].pcset, PitchClassSet::from_pitches({2}));
}

TEST(Ingest, TiedNotesSustain) {
  fixture::ScoreWriter tied;
  tied.part("P1").note({60}, 2, {.tie_start = true}).note({60}, 2, {.tie_stop = true}).end_measure();
  EXPECT_EQ(chords_of(tied.xml(), false).size(), 1u);

  fixture::ScoreWriter repeated;
  repeated.part("P1").note({60}, 2).note({60}, 2).end_measure();
  EXPECT_EQ(chords_of(repeated.xml(), false).size(), 2u);
  EXPECT_EQ(chords_of(repeated.xml(), true).size(), 1u);
}

TEST(Ingest, TieAcrossBarLine) {
  fixture::ScoreWriter w;
  w.part("P1").note({60}, 4, {.tie_start = true}).end_measure().note({60}, 2, {.tie_stop = true}).note({62}, 2)
      .end_measure();
  const auto seq = chords_of(w.xml(), false);
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq.events[0].bar, 1);
  EXPECT_EQ(seq.events[1].bar, 2);
}

TEST(Ingest, GraceNotesAndRestsAreDropped) {
  fixture::ScoreWriter w;
  w.part("P1").note({61}, 0, {.grace = true}).note({60, 64}, 1).rest(1).note({62}, 2).end_measure();
  EXPECT_EQ(pcsets(chords_of(w.xml())),
            (std::vector<PitchClassSet>{PitchClassSet::from_pitches({0, 4}), PitchClassSet::from_pitches({2})}));
}

TEST(Ingest, BarNumbersFollowMeasures) {
  const auto seq = chords_of(fixture::chord_score({{{60}, {62}}, {{64}}, {{65}, {67}}}));
  std::vector<int> bars;
  for (const auto& e : seq.events) bars.push_back(e.bar);
  EXPECT_EQ(bars, (std::vector<int>{1, 1, 2, 3, 3}));
  for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(seq.events[i].index, i);
}

TEST(Ingest, CompressedContainer) {
  const std::string xml = fixture::chord_score({{{60, 64, 67}, {67, 71, 74}}});
  const auto plain = pcsets(chords_of(xml));
  for (bool deflate : {true, false}) {
    const std::string mxl = fixture::make_mxl(xml, deflate);
    EXPECT_EQ(pcsets(chords_of(mxl)), plain);
    const auto path = fixture::write_temp(deflate ? "deflated.mxl" : "stored.mxl", mxl);
    EXPECT_EQ(pcsets(scorenet::chordify(scorenet::read_score_file(path))), plain);
  }
}

TEST(Ingest, MalformedInput) {
  const std::string xml = fixture::chord_score({{{60}}});
  try {
    chords_of(xml.substr(0, xml.size() / 2));
    FAIL() << "truncated XML accepted";
  } catch (const scorenet::Error& e) {
    EXPECT_EQ(e.code(), scorenet::ErrorCode::kMalformedInput);
    EXPECT_NE(std::string(e.what()).find("malformed XML"), std::string::npos);
  }
  EXPECT_EQ(code_of("<score-timewise version=\"3.1\"/>"), scorenet::ErrorCode::kUnsupported);
  EXPECT_EQ(code_of("<html/>"), scorenet::ErrorCode::kMalformedInput);
}

TEST(Ingest, AllRestScoreIsEmpty) {
  fixture::ScoreWriter w;
  w.part("P1").rest(4).end_measure();
  EXPECT_THROW(chords_of(w.xml()), scorenet::Error);
}

TEST(Ingest, MissingFile) {
  try {
    scorenet::read_score_file("/nonexistent/score.xml");
    FAIL();
  } catch (const scorenet::Error& e) {
    EXPECT_EQ(e.code(), scorenet::ErrorCode::kIo);
  }
}
