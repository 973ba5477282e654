#include <algorithm>
#include <map>

#include "scorenet/error.h"
#include "scorenet/score.h"

namespace scorenet {
namespace {

struct Sounding {
  Beats start;
  Beats end;
  int pitch = 0;
};

// Flattens every stream into per-pitch sounding intervals, extending an
// interval in place whenever a tied continuation picks it up.
std::vector<Sounding> sounding_intervals(const ScoreDocument& score) {
  std::vector<Sounding> out;
  for (const auto& stream : score.parts) {
    std::map<int, std::size_t> open;  // pitch -> index in `out` of its latest interval
    for (const auto& event : stream.events) {
      const Beats end = event.onset + event.duration;
      for (int pitch : event.pitches) {
        auto it = open.find(pitch);
        if (event.tie_continuation && it != open.end() && out[it->second].end == event.onset) {
          out[it->second].end = end;
          continue;
        }
        open[pitch] = out.size();
        out.push_back(Sounding{event.onset, end, pitch});
      }
    }
  }
  return out;
}

}  // namespace

ChordSequence chordify(const ScoreDocument& score, const ChordifyOptions& options) {
  const auto intervals = sounding_intervals(score);

  // Sweep over boundaries; `changes` holds +1 at a start and -1 at an end.
  std::map<Beats, std::vector<std::pair<int, int>>> changes;
  for (const auto& s : intervals) {
    changes[s.start].emplace_back(s.pitch, 1);
    changes[s.end].emplace_back(s.pitch, -1);
  }

  ChordSequence seq;
  seq.title = score.title;
  seq.movement = score.movement;
  std::map<int, int> active;
  for (auto it = changes.begin(); it != changes.end(); ++it) {
    for (const auto& [pitch, delta] : it->second) {
      if ((active[pitch] += delta) == 0) active.erase(pitch);
    }
    if (active.empty() || std::next(it) == changes.end()) continue;

    std::vector<int> pitches;
    pitches.reserve(active.size());
    for (const auto& [pitch, count] : active) pitches.push_back(pitch);
    PitchClassSet pcset = PitchClassSet::from_pitches(pitches, options.tet);
    if (options.merge_repeats && !seq.events.empty() && seq.events.back().pcset == pcset) continue;
    seq.events.push_back(ChordEvent{seq.events.size(), score.bar_at(it->first), std::move(pcset)});
  }
  if (seq.events.empty()) throw Error(ErrorCode::kEmptyInput, "score has no sounding chords");
  return seq;
}

}  // namespace scorenet
