#include "scorenet/tonal.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "scorenet/error.h"

namespace scorenet {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kMalformedInput, "bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string strip_key_prefix(std::string_view label) {
  label = trim(label);
  const auto colon = label.rfind(':');
  if (colon != std::string_view::npos) label.remove_prefix(colon + 1);
  return std::string(trim(label));
}

// Label of `bar` in a file whose rows are sorted by start.
const std::string& label_at(const AnnotationFile& file, int bar) {
  const auto it = std::upper_bound(file.rows.begin(), file.rows.end(), bar,
                                   [](int b, const AnnotationRow& r) { return b < r.start_bar; });
  return std::prev(it)->region;
}

}  // namespace

std::string Key::to_string() const {
  return std::string(pitch_class_name(tonic)) + (mode == Mode::kMajor ? "major" : "minor");
}

Key parse_key(std::string_view text) {
  const std::string_view s = trim(text);
  const auto fail = [&] { return Error(ErrorCode::kMalformedInput, "bad key: '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();
  static constexpr int kLetter[7] = {9, 11, 0, 2, 4, 5, 7};  // A..G
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (letter < 'A' || letter > 'G') throw fail();
  int tonic = kLetter[letter - 'A'];
  std::size_t i = 1;
  while (i < s.size() && (s[i] == 'b' || s[i] == '#')) {
    tonic += s[i] == '#' ? 1 : -1;
    ++i;
  }
  while (i < s.size() && (s[i] == ' ' || s[i] == '_' || s[i] == '-' || s[i] == ':')) ++i;
  const std::string mode = lower(s.substr(i));
  Key key;
  key.tonic = ((tonic % 12) + 12) % 12;
  if (mode == "major" || mode == "maj") {
    key.mode = Mode::kMajor;
  } else if (mode == "minor" || mode == "min") {
    key.mode = Mode::kMinor;
  } else if (mode.empty()) {
    key.mode = std::isupper(static_cast<unsigned char>(s[0])) ? Mode::kMajor : Mode::kMinor;
  } else {
    throw fail();
  }
  return key;
}

SpellingTable::SpellingTable()
    : numerals_{"I", "bII", "II", "bIII", "III", "IV", "#IV", "V", "#V", "VI", "bVII", "VII"} {}

SpellingTable SpellingTable::with_overrides(std::string_view spec) {
  SpellingTable table;
  for (std::string_view entry : split(spec, ',')) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, "spelling entry needs d=LABEL: '" + std::string(entry) + "'");
    }
    const int d = parse_int(entry.substr(0, eq), "spelling distance");
    const std::string_view numeral = trim(entry.substr(eq + 1));
    if (numeral.empty()) throw Error(ErrorCode::kInvalidArgument, "empty numeral in spelling table");
    table.set(d, std::string(numeral));
  }
  return table;
}

const std::string& SpellingTable::numeral(int distance) const {
  if (distance < 0 || distance >= 12) throw Error(ErrorCode::kInvalidArgument, "spelling distance outside 0..11");
  return numerals_[static_cast<std::size_t>(distance)];
}

void SpellingTable::set(int distance, std::string numeral) {
  if (distance < 0 || distance >= 12) throw Error(ErrorCode::kInvalidArgument, "spelling distance outside 0..11");
  numerals_[static_cast<std::size_t>(distance)] = std::move(numeral);
}

std::string SpellingTable::label(int distance, Mode mode) const {
  std::string out = numeral(distance);
  if (mode == Mode::kMinor) {
    for (char& c : out) {
      if (c == 'I' || c == 'V') c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

PrevalentChord prevalent_chord(const ScoreNetwork& network) {
  if (network.nodes.empty()) throw Error(ErrorCode::kInvalidArgument, "prevalent chord of an empty network");
  const DegreeStats stats = degree_stats(network);
  const auto better = [&](int a, int b) {
    const auto ca = network.nodes.at(a).count;
    const auto cb = network.nodes.at(b).count;
    if (ca != cb) return ca > cb;
    const auto da = stats.nodes.at(a).total();
    const auto db = stats.nodes.at(b).total();
    if (da != db) return da > db;
    return a < b;
  };
  std::optional<int> best_classified;
  std::optional<int> best_any;
  for (const auto& [id, node] : network.nodes) {
    if (!best_any || better(id, *best_any)) best_any = id;
    if (node.label.tet() == kDefaultTet && classify_chord(node.label).classified() &&
        (!best_classified || better(id, *best_classified))) {
      best_classified = id;
    }
  }
  PrevalentChord out;
  out.id = best_classified.value_or(*best_any);
  out.chord = network.nodes.at(out.id).label;
  if (best_classified) out.chord_class = classify_chord(out.chord);
  return out;
}

Key chord_to_key(const PitchClassSet& chord) {
  const ChordClass cls = classify_chord(chord);
  if (!cls.classified()) {
    throw Error(ErrorCode::kInvalidArgument, "chord " + chord.to_string() + " does not imply a key");
  }
  const int root = *cls.root;
  switch (cls.quality) {
    case ChordQuality::kMinorTriad: return Key{root, Mode::kMinor};
    case ChordQuality::kDominantSeventh: return Key{(root + 5) % 12, Mode::kMajor};
    default: return Key{root, Mode::kMajor};
  }
}

std::string region_label(const Key& global, const Key& local, const SpellingTable& spelling) {
  const int d = ((local.tonic - global.tonic) % 12 + 12) % 12;
  return spelling.label(d, local.mode);
}

Key global_key(const ScoreNetwork& network) {
  const PrevalentChord p = prevalent_chord(network);
  if (!p.classified()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prevalent chord " + p.chord.to_string() + " of the full network does not imply a key");
  }
  return chord_to_key(p.chord);
}

RegionTable build_region_table(const std::vector<LayerNetwork>& layers, const LabeledSeries& series,
                               const Key& global, const SpellingTable& spelling) {
  if (layers.empty()) throw Error(ErrorCode::kInvalidArgument, "region table needs at least one layer");
  if (series.bars.size() != series.size() || layers.back().end > series.size()) {
    throw Error(ErrorCode::kInvalidArgument, "layers do not match the series");
  }
  RegionTable table;
  table.global = global;
  const int last_bar = series.bars[layers.back().end - 1];

  // First owned bar per layer: bars whose first event falls in the layer.
  std::vector<std::optional<int>> owned_first(layers.size());
  std::size_t layer = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    while (layer < layers.size() && i >= layers[layer].end) ++layer;
    if (layer == layers.size()) break;
    if (i == 0 || series.bars[i] != series.bars[i - 1]) {
      if (!owned_first[layer]) owned_first[layer] = series.bars[i];
    }
  }

  int next_owned = last_bar + 1;
  std::vector<int> owned_end(layers.size());
  for (std::size_t s = layers.size(); s-- > 0;) {
    owned_end[s] = next_owned;
    if (owned_first[s]) next_owned = *owned_first[s];
  }

  for (std::size_t s = 0; s < layers.size(); ++s) {
    RegionRow row;
    row.section = s;
    row.first_bar = layers[s].first_bar;
    row.last_bar = s + 1 < layers.size() ? layers[s + 1].first_bar : last_bar;
    row.owned_begin = owned_first[s].value_or(owned_end[s]);
    row.owned_end = owned_end[s];
    row.prevalent = prevalent_chord(layers[s].network);
    if (row.prevalent.classified()) {
      row.key = chord_to_key(row.prevalent.chord);
      row.region = region_label(global, *row.key, spelling);
    } else {
      row.region = std::string(kNoRegion);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_region_csv(std::ostream& out, const RegionTable& table) {
  out << "section,measures,prevalent_chord,region\n";
  for (const RegionRow& row : table.rows) {
    out << row.section << ',' << row.first_bar << '-' << row.last_bar << ",\""
        << pcset_note_names(row.prevalent.chord) << "\"," << row.region << '\n';
  }
}

AnnotationFile parse_annotations(std::string_view text) {
  AnnotationFile file;
  bool have_key = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!have_key) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos || lower(trim(line.substr(0, eq))) != "global_key") {
        throw Error(ErrorCode::kMalformedInput, "annotation file must start with global_key=<key>");
      }
      file.global = parse_key(line.substr(eq + 1));
      have_key = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kMalformedInput,
                  "annotation line " + std::to_string(line_no) + " needs start_bar,end_bar,region");
    }
    if (file.rows.empty() && lower(trim(fields[0])) == "start_bar") continue;
    AnnotationRow row;
    row.start_bar = parse_int(fields[0], "start bar");
    row.end_bar = parse_int(fields[1], "end bar");
    row.region = strip_key_prefix(fields[2]);
    if (row.end_bar < row.start_bar || row.region.empty()) {
      throw Error(ErrorCode::kMalformedInput, "bad annotation row at line " + std::to_string(line_no));
    }
    if (!file.rows.empty() && row.start_bar <= file.rows.back().end_bar) {
      throw Error(ErrorCode::kMalformedInput,
                  "annotation rows must be sorted and non-overlapping (line " + std::to_string(line_no) + ")");
    }
    file.rows.push_back(std::move(row));
  }
  if (!have_key) throw Error(ErrorCode::kMalformedInput, "annotation file has no global_key line");
  if (file.rows.empty()) throw Error(ErrorCode::kEmptyInput, "annotation file has no rows");
  return file;
}

AnnotationFile read_annotations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_annotations(buffer.str());
}

void write_annotations(std::ostream& out, const AnnotationFile& file) {
  out << "global_key=" << file.global.to_string() << "\nstart_bar,end_bar,region\n";
  for (const AnnotationRow& row : file.rows) {
    out << row.start_bar << ',' << row.end_bar << ',' << row.region << '\n';
  }
}

AnnotationFile to_annotations(const RegionTable& table) {
  AnnotationFile file;
  file.global = table.global;
  for (const RegionRow& row : table.rows) {
    if (row.owned_end > row.owned_begin) {
      file.rows.push_back(AnnotationRow{row.owned_begin, row.owned_end - 1, row.region});
    }
  }
  return file;
}

double agreement(const AnnotationFile& a, const AnnotationFile& b) {
  if (a.rows.empty() || b.rows.empty()) throw Error(ErrorCode::kEmptyInput, "agreement of an empty table");
  if (!(a.global == b.global)) {
    throw Error(ErrorCode::kInvalidArgument,
                "global keys differ: " + a.global.to_string() + " vs " + b.global.to_string());
  }
  const int begin = std::max(a.rows.front().start_bar, b.rows.front().start_bar);
  const int end = std::min(a.rows.back().end_bar, b.rows.back().end_bar);
  if (end < begin) throw Error(ErrorCode::kInvalidArgument, "bar ranges do not overlap");
  std::size_t same = 0;
  for (int bar = begin; bar <= end; ++bar) {
    if (label_at(a, bar) == label_at(b, bar)) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(end - begin + 1);
}

double agreement(const RegionTable& ours, const AnnotationFile& reference) {
  return agreement(to_annotations(ours), reference);
}

}  // namespace scorenet
