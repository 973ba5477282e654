#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "scorenet/error.h"
#include "scorenet/score.h"
#include "zip_archive.h"

namespace scorenet {
namespace {

namespace pt = boost::property_tree;

struct LocalNote {
  Beats offset;
  Beats duration;
  int midi = 0;
  bool tie_stop = false;
  std::string voice;
};

struct LocalMeasure {
  Beats extent;
  std::vector<LocalNote> notes;
  std::string number;
};

struct LocalPart {
  std::string id;
  std::vector<LocalMeasure> measures;
};

pt::ptree parse_xml(const std::string& text) {
  std::string_view body = text;
  if (body.starts_with("\xEF\xBB\xBF")) body.remove_prefix(3);
  std::istringstream in{std::string(body)};
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("malformed XML: ") + e.message() +
                                                " (line " + std::to_string(e.line()) + ")");
  }
  return tree;
}

std::optional<long long> parse_int(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const long long value = std::stoll(text, &used);
    if (used != text.size()) return std::nullopt;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int step_pitch_class(const std::string& step) {
  static const std::map<std::string, int> kSteps = {{"C", 0}, {"D", 2}, {"E", 4}, {"F", 5},
                                                    {"G", 7}, {"A", 9}, {"B", 11}};
  auto it = kSteps.find(step);
  if (it == kSteps.end()) throw Error(ErrorCode::kMalformedInput, "bad pitch step '" + step + "'");
  return it->second;
}

int midi_number(const pt::ptree& pitch) {
  const int pc = step_pitch_class(pitch.get<std::string>("step", ""));
  const double alter = pitch.get<double>("alter", 0.0);
  const auto octave = pitch.get_optional<int>("octave");
  if (!octave) throw Error(ErrorCode::kMalformedInput, "pitch without octave");
  return 12 * (*octave + 1) + pc + static_cast<int>(std::lround(alter));
}

bool has_tie_stop(const pt::ptree& note) {
  for (const auto& [key, child] : note) {
    if (key == "tie" && child.get<std::string>("<xmlattr>.type", "") == "stop") return true;
  }
  if (auto notations = note.get_child_optional("notations")) {
    for (const auto& [key, child] : *notations) {
      if (key == "tied" && child.get<std::string>("<xmlattr>.type", "") == "stop") return true;
    }
  }
  return false;
}

Beats duration_of(const pt::ptree& node, std::int64_t divisions) {
  const auto raw = node.get_optional<std::int64_t>("duration");
  if (!raw) return Beats(0);
  if (*raw < 0) throw Error(ErrorCode::kMalformedInput, "negative duration");
  return Beats(*raw, divisions);
}

class PartReader {
 public:
  explicit PartReader(std::set<std::string>& warnings) : warnings_(warnings) {}

  LocalPart read(const pt::ptree& part) {
    LocalPart out;
    out.id = part.get<std::string>("<xmlattr>.id", "");
    for (const auto& [key, measure] : part) {
      if (key == "measure") out.measures.push_back(read_measure(measure));
    }
    return out;
  }

 private:
  LocalMeasure read_measure(const pt::ptree& measure) {
    LocalMeasure out;
    out.number = measure.get<std::string>("<xmlattr>.number", "");
    Beats cursor(0);
    Beats last_onset(0);
    for (const auto& [key, child] : measure) {
      if (key == "attributes") {
        if (auto d = child.get_optional<std::int64_t>("divisions")) {
          if (*d <= 0) throw Error(ErrorCode::kMalformedInput, "divisions must be positive");
          divisions_ = *d;
        }
      } else if (key == "backup") {
        cursor -= duration_of(child, divisions_);
        if (cursor < 0) cursor = 0;
      } else if (key == "forward") {
        cursor += duration_of(child, divisions_);
        out.extent = std::max(out.extent, cursor);
      } else if (key == "note") {
        read_note(child, cursor, last_onset, out);
      }
    }
    out.extent = std::max(out.extent, cursor);
    return out;
  }

  void read_note(const pt::ptree& note, Beats& cursor, Beats& last_onset, LocalMeasure& out) {
    if (note.get_child_optional("grace")) return;
    const bool chord = static_cast<bool>(note.get_child_optional("chord"));
    const Beats onset = chord ? last_onset : cursor;
    const Beats duration = duration_of(note, divisions_);
    if (!chord) {
      last_onset = onset;
      cursor += duration;
    }
    out.extent = std::max(out.extent, onset + duration);

    if (auto notations = note.get_child_optional("notations")) {
      if (auto ornaments = notations->get_child_optional("ornaments")) {
        for (const auto& [name, unused] : *ornaments) {
          if (name != "tremolo" && name != "<xmlattr>") warnings_.insert("ornament ignored: " + name);
        }
      }
    }

    const auto pitch = note.get_child_optional("pitch");
    if (!pitch || note.get_child_optional("rest") || note.get_child_optional("cue")) return;
    if (duration <= 0) {
      warnings_.insert("pitched note without duration ignored");
      return;
    }
    out.notes.push_back(LocalNote{onset, duration, midi_number(*pitch), has_tie_stop(note),
                                  note.get<std::string>("voice", "1")});
  }

  std::set<std::string>& warnings_;
  std::int64_t divisions_ = 1;
};

int bar_number(const std::string& text, int previous) {
  if (auto value = parse_int(text); value && *value >= 1 && *value >= previous) {
    return static_cast<int>(*value);
  }
  return previous + 1;
}

ScoreDocument assemble(const pt::ptree& root, std::string title, std::string movement) {
  std::set<std::string> warnings;
  std::vector<LocalPart> parts;
  PartReader reader(warnings);
  for (const auto& [key, part] : root) {
    if (key == "part") parts.push_back(reader.read(part));
  }
  if (parts.empty()) throw Error(ErrorCode::kEmptyInput, "score has no parts");

  std::size_t measure_count = 0;
  for (const auto& p : parts) measure_count = std::max(measure_count, p.measures.size());

  ScoreDocument doc;
  doc.title = std::move(title);
  doc.movement = std::move(movement);

  // Measure length is the longest extent across parts.
  std::vector<Beats> starts(measure_count);
  Beats clock(0);
  int bar = 0;
  for (std::size_t j = 0; j < measure_count; ++j) {
    starts[j] = clock;
    Beats length(0);
    std::string number;
    for (const auto& p : parts) {
      if (j < p.measures.size()) {
        length = std::max(length, p.measures[j].extent);
        if (number.empty()) number = p.measures[j].number;
      }
    }
    bar = bar_number(number, bar);
    doc.measures.push_back(MeasureStart{clock, bar});
    clock += length;
  }

  using StreamKey = std::pair<std::string, std::string>;
  std::map<StreamKey, std::vector<LocalNote>> streams;
  std::vector<StreamKey> order;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < p.measures.size(); ++j) {
      for (LocalNote note : p.measures[j].notes) {
        note.offset += starts[j];
        StreamKey key{p.id, note.voice};
        if (!streams.count(key)) order.push_back(key);
        streams[key].push_back(std::move(note));
      }
    }
  }

  std::size_t total = 0;
  for (const auto& key : order) {
    auto& notes = streams[key];
    std::stable_sort(notes.begin(), notes.end(), [](const LocalNote& a, const LocalNote& b) {
      return std::tie(a.offset, a.tie_stop, a.duration) < std::tie(b.offset, b.tie_stop, b.duration);
    });
    NoteStream stream{key.first, key.second, {}};
    for (const auto& note : notes) {
      auto& events = stream.events;
      if (!events.empty() && events.back().onset == note.offset &&
          events.back().duration == note.duration &&
          events.back().tie_continuation == note.tie_stop) {
        events.back().pitches.push_back(note.midi);
      } else {
        events.push_back(NoteEvent{note.offset, note.duration, {note.midi}, note.tie_stop});
      }
    }
    for (auto& e : stream.events) {
      std::sort(e.pitches.begin(), e.pitches.end());
      e.pitches.erase(std::unique(e.pitches.begin(), e.pitches.end()), e.pitches.end());
    }
    total += stream.events.size();
    doc.parts.push_back(std::move(stream));
  }
  if (total == 0) throw Error(ErrorCode::kEmptyInput, "score has no notes");
  doc.warnings.assign(warnings.begin(), warnings.end());
  return doc;
}

ScoreDocument parse_score_xml(const std::string& text) {
  const pt::ptree tree = parse_xml(text);
  if (tree.get_child_optional("score-timewise")) {
    throw Error(ErrorCode::kUnsupported, "score-timewise MusicXML is not supported");
  }
  const auto root = tree.get_child_optional("score-partwise");
  if (!root) throw Error(ErrorCode::kMalformedInput, "not a MusicXML score-partwise document");
  std::string title = root->get<std::string>("work.work-title", "");
  std::string movement = root->get<std::string>("movement-title", "");
  if (title.empty()) title = movement;
  return assemble(*root, std::move(title), std::move(movement));
}

std::string find_root_file(const detail::ZipArchive& archive) {
  if (auto container = archive.read("META-INF/container.xml")) {
    const pt::ptree tree = parse_xml(*container);
    if (auto rootfiles = tree.get_child_optional("container.rootfiles")) {
      for (const auto& [key, rootfile] : *rootfiles) {
        if (key != "rootfile") continue;
        const auto path = rootfile.get<std::string>("<xmlattr>.full-path", "");
        if (auto body = archive.read(path)) return *body;
      }
    }
  }
  for (const auto& entry : archive.entries()) {
    const bool xml = entry.name.ends_with(".xml") || entry.name.ends_with(".musicxml");
    if (xml && !entry.name.starts_with("META-INF/")) {
      if (auto body = archive.read(entry.name)) return *body;
    }
  }
  throw Error(ErrorCode::kMalformedInput, "compressed MusicXML has no score entry");
}

}  // namespace

int ScoreDocument::bar_at(const Beats& onset) const {
  if (measures.empty()) return 1;
  auto it = std::upper_bound(measures.begin(), measures.end(), onset,
                             [](const Beats& t, const MeasureStart& m) { return t < m.onset; });
  if (it == measures.begin()) return measures.front().bar;
  return std::prev(it)->bar;
}

std::size_t ScoreDocument::note_event_count() const {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.events.size();
  return total;
}

ScoreDocument parse_musicxml(std::span<const std::byte> document) {
  if (detail::looks_like_zip(document)) {
    detail::ZipArchive archive(document);
    return parse_score_xml(find_root_file(archive));
  }
  return parse_score_xml(std::string(reinterpret_cast<const char*>(document.data()), document.size()));
}

ScoreDocument parse_musicxml(std::string_view document) {
  return parse_musicxml(std::as_bytes(std::span<const char>(document.data(), document.size())));
}

ScoreDocument read_score_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  ScoreDocument doc = parse_musicxml(std::string_view(bytes));
  if (doc.title.empty()) doc.title = path.stem().string();
  return doc;
}

}  // namespace scorenet
