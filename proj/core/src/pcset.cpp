#include "scorenet/pcset.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scorenet/error.h"

namespace scorenet {
namespace {

int mod(int value, int tet) {
  int r = value % tet;
  return r < 0 ? r + tet : r;
}

void require_tet(int tet) {
  if (tet < 1) throw Error(ErrorCode::kInvalidArgument, "tet must be >= 1");
}

// Compositions of `total` into `parts` non-negative integers, in
// lexicographic order.
void for_each_composition(int total, std::size_t parts, std::vector<int>& current,
                          const auto& visit) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    visit(current);
    current.pop_back();
    return;
  }
  for (int take = 0; take <= total; ++take) {
    current.push_back(take);
    for_each_composition(total - take, parts, current, visit);
    current.pop_back();
  }
}

// All multisets of size `target` drawn from `pcs` that use every element at
// least once. Copies are emitted adjacent to their original.
std::vector<std::vector<int>> duplications(std::span<const int> pcs, std::size_t target) {
  std::vector<std::vector<int>> out;
  if (pcs.size() >= target) {
    out.emplace_back(pcs.begin(), pcs.end());
    return out;
  }
  std::vector<int> extra;
  for_each_composition(static_cast<int>(target - pcs.size()), pcs.size(), extra,
                       [&](const std::vector<int>& counts) {
                         std::vector<int> voices;
                         voices.reserve(target);
                         for (std::size_t i = 0; i < pcs.size(); ++i) {
                           voices.insert(voices.end(), 1 + counts[i], pcs[i]);
                         }
                         out.push_back(std::move(voices));
                       });
  return out;
}

struct Alignment {
  std::int64_t squared = -1;
  std::vector<int> steps;
  std::vector<int> voices;
};

bool better(std::int64_t squared, const std::vector<int>& steps, const Alignment& best) {
  if (best.squared < 0) return true;
  if (squared != best.squared) return squared < best.squared;
  return steps < best.steps;
}

// Minimal bijective voice leading between equal-sized multisets. A
// crossing-free optimum always exists, so it suffices to pair the sorted
// source with every cyclic lift of the sorted target.
void align(const std::vector<int>& source, const std::vector<int>& target, int tet,
           Alignment& best) {
  const std::size_t n = source.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return source[a] < source[b]; });
  std::vector<int> sorted_target = target;
  std::sort(sorted_target.begin(), sorted_target.end());

  std::vector<int> steps(n);
  for (std::size_t rotation = 0; rotation < n; ++rotation) {
    for (int octave = -2; octave <= 1; ++octave) {
      std::int64_t squared = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = j + rotation;
        const int lifted = sorted_target[k % n] + tet * static_cast<int>(k / n) + octave * tet;
        const int step = lifted - source[order[j]];
        steps[order[j]] = step;
        squared += static_cast<std::int64_t>(step) * step;
      }
      if (better(squared, steps, best)) {
        best.squared = squared;
        best.steps = steps;
        best.voices = source;
      }
    }
  }
}

void check_operands(const PitchClassSet& x, const PitchClassSet& y) {
  if (x.tet() != y.tet()) {
    throw Error(ErrorCode::kInvalidArgument, "voice leading between pcsets of different tet");
  }
  if (x.empty() || y.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "voice leading to or from the empty pcset");
  }
}

}  // namespace

PitchClassSet normal_order(std::span<const int> pitches, int tet) {
  return PitchClassSet::from_pitches(pitches, tet);
}

PitchClassSet PitchClassSet::from_pitches(std::span<const int> pitches, int tet) {
  require_tet(tet);
  std::vector<int> pcs;
  pcs.reserve(pitches.size());
  for (int p : pitches) pcs.push_back(mod(p, tet));
  std::sort(pcs.begin(), pcs.end());
  pcs.erase(std::unique(pcs.begin(), pcs.end()), pcs.end());

  PitchClassSet out;
  out.tet_ = tet;
  const std::size_t n = pcs.size();
  if (n <= 1) {
    out.pcs_ = std::move(pcs);
    return out;
  }

  // Rotation key: interval from the first element to the last, then to the
  // second-to-last, and so on. Smallest key wins; remaining ties keep the
  // lowest first pitch class, which is the earliest rotation in sorted order.
  auto interval = [&](std::size_t rotation, std::size_t j) {
    return mod(pcs[(rotation + j) % n] - pcs[rotation], tet);
  };
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t j = n - 1; j >= 1; --j) {
      const int candidate = interval(r, j);
      const int current = interval(best, j);
      if (candidate != current) {
        if (candidate < current) best = r;
        break;
      }
    }
  }
  out.pcs_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.pcs_.push_back(pcs[(best + j) % n]);
  return out;
}

PitchClassSet PitchClassSet::from_pitches(std::initializer_list<int> pitches, int tet) {
  return from_pitches(std::span<const int>(pitches.begin(), pitches.size()), tet);
}

bool PitchClassSet::contains(int pc) const {
  return std::find(pcs_.begin(), pcs_.end(), mod(pc, tet_)) != pcs_.end();
}

PitchClassSet PitchClassSet::transposed(int k) const {
  std::vector<int> moved(pcs_);
  for (int& p : moved) p += k;
  return from_pitches(moved, tet_);
}

std::string PitchClassSet::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < pcs_.size(); ++i) {
    if (i) out << ',';
    out << pcs_[i];
  }
  out << ']';
  return out.str();
}

std::int64_t VoiceLeadingVector::squared_norm() const {
  std::int64_t total = 0;
  for (int s : steps) total += static_cast<std::int64_t>(s) * s;
  return total;
}

double VoiceLeadingVector::norm() const { return std::sqrt(static_cast<double>(squared_norm())); }

std::vector<int> VoiceLeadingVector::canonical() const {
  std::vector<int> out = steps;
  std::sort(out.begin(), out.end());
  return out;
}

std::string VoiceLeadingVector::canonical_string() const {
  std::ostringstream out;
  out << '(';
  const auto sorted = canonical();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i) out << ',';
    out << sorted[i];
  }
  out << ')';
  return out.str();
}

VoiceLeadingVector vl_operator_between(const PitchClassSet& x, const PitchClassSet& y) {
  check_operands(x, y);
  const std::size_t voices = std::max(x.size(), y.size());
  Alignment best;
  for (const auto& source : duplications(x.pcs(), voices)) {
    for (const auto& target : duplications(y.pcs(), voices)) {
      align(source, target, x.tet(), best);
    }
  }
  return VoiceLeadingVector{std::move(best.voices), std::move(best.steps)};
}

double vl_distance(const PitchClassSet& x, const PitchClassSet& y) {
  return vl_operator_between(x, y).norm();
}

std::set<PitchClassSet> apply_distance_operator(const PitchClassSet& x,
                                                std::span<const int> magnitudes) {
  if (x.empty()) throw Error(ErrorCode::kInvalidArgument, "distance operator on empty pcset");
  if (magnitudes.size() > x.size()) {
    throw Error(ErrorCode::kInvalidArgument, "more operator magnitudes than voices");
  }
  std::set<PitchClassSet> out;
  std::vector<int> pitches(x.pcs().begin(), x.pcs().end());
  std::vector<bool> used(pitches.size(), false);

  auto recurse = [&](auto&& self, std::size_t index) -> void {
    if (index == magnitudes.size()) {
      out.insert(PitchClassSet::from_pitches(pitches, x.tet()));
      return;
    }
    const int magnitude = magnitudes[index];
    for (std::size_t voice = 0; voice < pitches.size(); ++voice) {
      if (used[voice]) continue;
      used[voice] = true;
      for (int sign : {1, -1}) {
        if (magnitude == 0 && sign < 0) continue;
        pitches[voice] += sign * magnitude;
        self(self, index + 1);
        pitches[voice] -= sign * magnitude;
      }
      used[voice] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

std::string_view chord_quality_name(ChordQuality quality) {
  switch (quality) {
    case ChordQuality::kMajorTriad: return "major-triad";
    case ChordQuality::kMinorTriad: return "minor-triad";
    case ChordQuality::kDominantSeventh: return "dominant-seventh";
    case ChordQuality::kMajorDyad: return "major-dyad";
    case ChordQuality::kOther: return "other";
  }
  return "other";
}

ChordClass classify_chord(const PitchClassSet& x) {
  if (x.tet() != 12) throw Error(ErrorCode::kInvalidArgument, "chord classification needs 12-TET");
  struct Template {
    ChordQuality quality;
    std::vector<int> intervals;
  };
  static const std::array<Template, 4> kTemplates = {{
      {ChordQuality::kDominantSeventh, {0, 4, 7, 10}},
      {ChordQuality::kMajorTriad, {0, 4, 7}},
      {ChordQuality::kMinorTriad, {0, 3, 7}},
      {ChordQuality::kMajorDyad, {0, 4}},
  }};
  for (const auto& t : kTemplates) {
    if (t.intervals.size() != x.size()) continue;
    for (int root = 0; root < 12; ++root) {
      if (std::all_of(t.intervals.begin(), t.intervals.end(),
                      [&](int iv) { return x.contains(root + iv); })) {
        return ChordClass{t.quality, root};
      }
    }
  }
  return ChordClass{};
}

std::string_view pitch_class_name(int pc) {
  static constexpr std::array<std::string_view, 12> kNames = {
      "C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B"};
  return kNames[static_cast<std::size_t>(mod(pc, 12))];
}

std::string pcset_note_names(const PitchClassSet& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += x.tet() == 12 ? std::string(pitch_class_name(x.pcs()[i])) : std::to_string(x.pcs()[i]);
  }
  out += ']';
  return out;
}

}  // namespace scorenet
