#pragma once

// Key assignment per layer from its prevalent chord, Roman-numeral regions
// relative to a global key, and bar-level agreement with annotations.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scorenet/network.h"
#include "scorenet/pcset.h"
#include "scorenet/sequence.h"

namespace scorenet {

enum class Mode { kMajor, kMinor };

struct Key {
  int tonic = 0;
  Mode mode = Mode::kMajor;

  /// "Ebmajor"
  std::string to_string() const;

  friend bool operator==(const Key&, const Key&) = default;
};

/// Accepts "Ebmajor", "Eb major", "eb_minor", "F#:min" and similar.
Key parse_key(std::string_view text);

inline constexpr std::string_view kNoRegion = "@none";

/// Semitone distance above the global tonic -> upper-case Roman numeral.
class SpellingTable {
 public:
  SpellingTable();

  /// Default table with "d=LABEL" entries replaced, comma separated, e.g.
  /// "8=bVI,6=bV".
  static SpellingTable with_overrides(std::string_view spec);

  const std::string& numeral(int distance) const;
  void set(int distance, std::string numeral);
  /// Lower-cased for minor keys.
  std::string label(int distance, Mode mode) const;

 private:
  std::array<std::string, 12> numerals_;
};

struct PrevalentChord {
  int id = -1;
  PitchClassSet chord;
  ChordClass chord_class;

  bool classified() const noexcept { return chord_class.classified(); }
};

/// Most visited classified node (ties: higher total degree, then lower id);
/// falls back to the most visited node overall. Throws on an empty network.
PrevalentChord prevalent_chord(const ScoreNetwork& network);

/// Throws when the chord is not a major/minor triad, dominant seventh or
/// major dyad.
Key chord_to_key(const PitchClassSet& chord);

std::string region_label(const Key& global, const Key& local,
                         const SpellingTable& spelling = SpellingTable());

Key global_key(const ScoreNetwork& network);

struct RegionRow {
  std::size_t section = 0;
  /// Displayed range: from this layer's first bar to the next layer's first
  /// bar, so neighbouring rows share their boundary bar.
  int first_bar = 1;
  int last_bar = 1;
  /// Bars owned for agreement, half-open [owned_begin, owned_end). A bar
  /// belongs to the layer containing its first event; may be empty.
  int owned_begin = 1;
  int owned_end = 1;
  PrevalentChord prevalent;
  std::optional<Key> key;
  std::string region;
};

struct RegionTable {
  Key global;
  std::vector<RegionRow> rows;
};

RegionTable build_region_table(const std::vector<LayerNetwork>& layers, const LabeledSeries& series,
                               const Key& global, const SpellingTable& spelling = SpellingTable());

/// Section, measures, prevalent chord (note names) and region.
void write_region_csv(std::ostream& out, const RegionTable& table);

struct AnnotationRow {
  int start_bar = 1;
  int end_bar = 1;  // inclusive
  std::string region;
};

struct AnnotationFile {
  Key global;
  std::vector<AnnotationRow> rows;
};

/// Header line "global_key=<tonic><mode>", then "start_bar,end_bar,region"
/// rows (an optional column-name line is skipped). Labels may carry a key
/// prefix ("Ab:V"); only the part after the last ':' is kept.
AnnotationFile parse_annotations(std::string_view text);
AnnotationFile read_annotations(const std::string& path);
void write_annotations(std::ostream& out, const AnnotationFile& file);

/// Owned bar ranges of the table as annotation rows (empty ranges dropped).
AnnotationFile to_annotations(const RegionTable& table);

/// Fraction of bars in the common bar domain with identical labels. A bar
/// takes the label of the last row starting at or before it. Throws when the
/// global keys differ or the domains do not overlap.
double agreement(const AnnotationFile& a, const AnnotationFile& b);
double agreement(const RegionTable& ours, const AnnotationFile& reference);

}  // namespace scorenet
