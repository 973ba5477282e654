#pragma once

// Pitch-class-set arithmetic: normal order, minimal voice-leading distance and
// the distance / voice-leading operators built on it.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace scorenet {

inline constexpr int kDefaultTet = 12;

/// A set of pitch classes stored in canonical normal order.
///
/// Construction always goes through normal_order(), so two sets with the same
/// pitch-class content compare equal regardless of the input spelling.
class PitchClassSet {
 public:
  PitchClassSet() = default;

  /// Reduces `pitches` modulo `tet`, drops duplicates and rotates the result
  /// into normal order. Throws on tet < 1.
  static PitchClassSet from_pitches(std::span<const int> pitches, int tet = kDefaultTet);
  static PitchClassSet from_pitches(std::initializer_list<int> pitches, int tet = kDefaultTet);

  std::span<const int> pcs() const noexcept { return pcs_; }
  int tet() const noexcept { return tet_; }
  std::size_t size() const noexcept { return pcs_.size(); }
  bool empty() const noexcept { return pcs_.empty(); }
  bool contains(int pc) const;

  /// Transposition by `k` semitones (mod tet), re-normalized.
  PitchClassSet transposed(int k) const;

  /// "[0,4,7]"
  std::string to_string() const;

  friend bool operator==(const PitchClassSet&, const PitchClassSet&) = default;
  friend auto operator<=>(const PitchClassSet&, const PitchClassSet&) = default;

 private:
  int tet_ = kDefaultTet;
  std::vector<int> pcs_;
};

PitchClassSet normal_order(std::span<const int> pitches, int tet = kDefaultTet);

/// Signed per-voice semitone steps taking a (possibly duplicated) source
/// pcset onto a target. `voices[i]` is the source pitch class moved by
/// `steps[i]`.
struct VoiceLeadingVector {
  std::vector<int> voices;
  std::vector<int> steps;

  std::int64_t squared_norm() const;
  double norm() const;
  /// Step multiset sorted ascending, signs kept: the histogram key.
  std::vector<int> canonical() const;
  std::string canonical_string() const;

  friend bool operator==(const VoiceLeadingVector&, const VoiceLeadingVector&) = default;
};

/// Minimal voice leading from `x` to `y`. The returned steps are aligned to
/// the normal order of `x`; when |x| < |y| the pitches of x are duplicated
/// (copies adjacent to the original) to match the cardinality of y.
VoiceLeadingVector vl_operator_between(const PitchClassSet& x, const PitchClassSet& y);

/// Minimal Euclidean voice-leading distance; equals the norm of
/// vl_operator_between(x, y). Symmetric.
double vl_distance(const PitchClassSet& x, const PitchClassSet& y);

/// Every distinct pcset reachable by adding each magnitude (with either sign)
/// to a distinct voice of `x`. Voices not named by a magnitude stay put.
std::set<PitchClassSet> apply_distance_operator(const PitchClassSet& x,
                                                std::span<const int> magnitudes);

enum class ChordQuality { kMajorTriad, kMinorTriad, kDominantSeventh, kMajorDyad, kOther };

std::string_view chord_quality_name(ChordQuality quality);

struct ChordClass {
  ChordQuality quality = ChordQuality::kOther;
  std::optional<int> root;

  bool classified() const noexcept { return quality != ChordQuality::kOther; }
};

/// Template match on pitch-class content (12-TET only).
ChordClass classify_chord(const PitchClassSet& x);

/// Note name for a 12-TET pitch class, flat spelling ("Eb", "Bb").
std::string_view pitch_class_name(int pc);

/// "[Eb, G, Bb]"
std::string pcset_note_names(const PitchClassSet& x);

}  // namespace scorenet
