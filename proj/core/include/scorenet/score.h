#pragma once

// Score ingestion: MusicXML (plain or .mxl) into a note timeline, and
// chordification of that timeline into a sequence of normal-ordered pcsets.

#include <boost/rational.hpp>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scorenet/pcset.h"

namespace scorenet {

/// Quarter-note beats from the start of the score.
using Beats = boost::rational<std::int64_t>;

struct NoteEvent {
  Beats onset;
  Beats duration;
  std::vector<int> pitches;  // MIDI numbers, sorted, distinct
  /// Every pitch continues a tie from an earlier event of the same stream.
  bool tie_continuation = false;
};

/// One monophonic-or-chordal stream: a (part, voice) pair.
struct NoteStream {
  std::string part_id;
  std::string voice;
  std::vector<NoteEvent> events;  // sorted by onset
};

struct MeasureStart {
  Beats onset;
  int bar = 1;
};

struct ScoreDocument {
  std::string title;
  std::string movement;
  std::vector<NoteStream> parts;
  std::vector<MeasureStart> measures;  // sorted by onset, first at 0
  std::vector<std::string> warnings;

  /// Bar containing `onset` (the last measure starting at or before it).
  int bar_at(const Beats& onset) const;
  std::size_t note_event_count() const;
};

/// Parses MusicXML score-partwise from memory. Accepts the compressed .mxl
/// container as well (detected by its zip signature).
ScoreDocument parse_musicxml(std::span<const std::byte> document);
ScoreDocument parse_musicxml(std::string_view document);

ScoreDocument read_score_file(const std::filesystem::path& path);

struct ChordEvent {
  std::size_t index = 0;
  int bar = 1;
  PitchClassSet pcset;
};

struct ChordSequence {
  std::vector<ChordEvent> events;
  std::string title;
  std::string movement;

  std::size_t size() const noexcept { return events.size(); }
  bool empty() const noexcept { return events.empty(); }
};

struct ChordifyOptions {
  /// Collapse consecutive slices with identical pcsets into one event.
  bool merge_repeats = true;
  int tet = kDefaultTet;
};

/// Slices the score at every onset/offset boundary across all streams.
/// Tied continuations sustain; rests are dropped. Throws on an all-rest score.
ChordSequence chordify(const ScoreDocument& score, const ChordifyOptions& options = {});

}  // namespace scorenet
