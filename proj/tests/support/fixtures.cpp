#include "fixtures.h"

#include <unistd.h>
#include <zlib.h>

#include <array>
#include <fstream>
#include <random>
#include <stdexcept>

namespace fixture {
namespace {

std::string pitch_xml(int midi) {
  static constexpr std::array<const char*, 12> kStep = {"C", "C", "D", "D", "E", "F", "F", "G", "G", "A", "A", "B"};
  static constexpr std::array<int, 12> kAlter = {0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0};
  const int pc = midi % 12;
  std::string out = "<pitch><step>" + std::string(kStep[pc]) + "</step>";
  if (kAlter[pc]) out += "<alter>1</alter>";
  out += "<octave>" + std::to_string(midi / 12 - 1) + "</octave></pitch>";
  return out;
}

void put16(std::string& s, unsigned v) {
  s += static_cast<char>(v & 0xff);
  s += static_cast<char>((v >> 8) & 0xff);
}
void put32(std::string& s, unsigned long v) {
  put16(s, static_cast<unsigned>(v & 0xffff));
  put16(s, static_cast<unsigned>((v >> 16) & 0xffff));
}

std::string raw_deflate(const std::string& data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, data.size()), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

}  // namespace

PartWriter& PartWriter::note(const std::vector<int>& midi, int duration, const NoteOptions& o) {
  for (std::size_t i = 0; i < midi.size(); ++i) {
    current_ += "<note>";
    if (o.grace) current_ += "<grace/>";
    if (i > 0) current_ += "<chord/>";
    current_ += pitch_xml(midi[i]);
    if (!o.grace) current_ += "<duration>" + std::to_string(duration) + "</duration>";
    if (o.tie_stop) current_ += "<tie type=\"stop\"/>";
    if (o.tie_start) current_ += "<tie type=\"start\"/>";
    current_ += "<voice>" + o.voice + "</voice><type>quarter</type>";
    if (o.tie_start || o.tie_stop) {
      current_ += "<notations>";
      if (o.tie_stop) current_ += "<tied type=\"stop\"/>";
      if (o.tie_start) current_ += "<tied type=\"start\"/>";
      current_ += "</notations>";
    }
    current_ += "</note>";
  }
  return *this;
}

PartWriter& PartWriter::rest(int duration, const std::string& voice) {
  current_ += "<note><rest/><duration>" + std::to_string(duration) + "</duration><voice>" + voice + "</voice></note>";
  return *this;
}

PartWriter& PartWriter::backup(int duration) {
  current_ += "<backup><duration>" + std::to_string(duration) + "</duration></backup>";
  return *this;
}

PartWriter& PartWriter::forward(int duration) {
  current_ += "<forward><duration>" + std::to_string(duration) + "</duration></forward>";
  return *this;
}

PartWriter& PartWriter::raw(const std::string& xml) {
  current_ += xml;
  return *this;
}

PartWriter& PartWriter::end_measure(const std::string& number) {
  const std::string n = number.empty() ? std::to_string(measures_.size() + 1) : number;
  measures_.push_back("<measure number=\"" + n + "\">" + current_ + "</measure>");
  current_.clear();
  return *this;
}

PartWriter& ScoreWriter::part(const std::string& id) {
  if (!parts_.count(id)) order_.push_back(id);
  return parts_[id];
}

std::string ScoreWriter::xml() const {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<!DOCTYPE score-partwise PUBLIC \"-//Recordare//DTD MusicXML 3.1 Partwise//EN\" "
      "\"http://www.musicxml.org/dtds/partwise.dtd\">\n"
      "<score-partwise version=\"3.1\"><work><work-title>" +
      title_ + "</work-title></work><part-list>";
  for (const auto& id : order_) out += "<score-part id=\"" + id + "\"><part-name>" + id + "</part-name></score-part>";
  out += "</part-list>";
  for (const auto& id : order_) {
    out += "<part id=\"" + id + "\">";
    const auto& measures = parts_.at(id).measures();
    for (std::size_t m = 0; m < measures.size(); ++m) {
      std::string measure = measures[m];
      if (m == 0) {
        const auto close = measure.find('>') + 1;
        measure.insert(close, "<attributes><divisions>" + std::to_string(divisions_) +
                                  "</divisions><time><beats>4</beats><beat-type>4</beat-type></time></attributes>");
      }
      out += measure;
    }
    out += "</part>";
  }
  out += "</score-partwise>\n";
  return out;
}

std::string chord_score(const std::vector<std::vector<std::vector<int>>>& bars) {
  ScoreWriter w;
  PartWriter& p = w.part("P1");
  for (const auto& bar : bars) {
    for (const auto& chord : bar) p.note(chord, 1);
    p.end_measure();
  }
  return w.xml();
}

std::string long_score(int bars, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  // Key tonics and modes visited in turn; chords as scale-degree triads.
  struct KeyPlan {
    int tonic;
    bool minor;
  };
  static constexpr std::array<KeyPlan, 5> kKeys = {{{3, false}, {10, false}, {0, true}, {8, false}, {3, false}}};
  static constexpr std::array<int, 7> kMajor = {0, 2, 4, 5, 7, 9, 11};
  static constexpr std::array<int, 7> kMinor = {0, 2, 3, 5, 7, 8, 11};
  static constexpr std::array<std::array<int, 4>, 6> kProgressions = {
      {{0, 3, 4, 0}, {0, 5, 3, 4}, {0, 1, 4, 0}, {0, 3, 0, 4}, {5, 3, 4, 0}, {0, 4, 0, 4}}};
  ScoreWriter w(2);
  std::array<PartWriter*, 4> parts = {&w.part("P1"), &w.part("P2"), &w.part("P3"), &w.part("P4")};
  const int section = std::max(1, bars / static_cast<int>(kKeys.size()));
  for (int b = 0; b < bars; ++b) {
    const KeyPlan key = kKeys[std::min<std::size_t>(static_cast<std::size_t>(b / section), kKeys.size() - 1)];
    const auto& scale = key.minor ? kMinor : kMajor;
    const auto& prog = kProgressions[engine() % kProgressions.size()];
    for (int beat = 0; beat < 4; ++beat) {
      const int degree = prog[static_cast<std::size_t>(beat)];
      std::array<int, 4> voice{};
      for (int v = 0; v < 3; ++v) {
        voice[static_cast<std::size_t>(v)] = key.tonic + scale[static_cast<std::size_t>((degree + 2 * v) % 7)];
      }
      const bool seventh = degree == 4 && beat == 3;
      voice[3] = seventh ? key.tonic + scale[(degree + 6) % 7] : voice[0];
      const std::array<int, 4> base = {36, 48, 55, 62};
      for (std::size_t v = 0; v < 4; ++v) {
        const int pc = ((voice[v] % 12) + 12) % 12;
        int midi = base[v] + ((pc - base[v] % 12) + 12) % 12;
        // Occasional eighth-note passing tone in the top voice.
        if (v == 3 && engine() % 5 == 0) {
          parts[v]->note({midi}, 1).note({midi + 2}, 1);
        } else {
          parts[v]->note({midi}, 2);
        }
      }
    }
    for (auto* p : parts) p->end_measure();
  }
  return w.xml();
}

std::string make_mxl(const std::string& score_xml, bool deflate) {
  const std::string container =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?><container><rootfiles>"
      "<rootfile full-path=\"score.xml\" media-type=\"application/vnd.recordare.musicxml+xml\"/>"
      "</rootfiles></container>";
  struct Entry {
    std::string name;
    std::string data;
  };
  const std::vector<Entry> entries = {{"META-INF/container.xml", container}, {"score.xml", score_xml}};
  std::string zip;
  std::string central;
  for (const Entry& e : entries) {
    const unsigned long crc = crc32(0L, reinterpret_cast<const Bytef*>(e.data.data()), static_cast<uInt>(e.data.size()));
    const std::string body = deflate ? raw_deflate(e.data) : e.data;
    const unsigned method = deflate ? 8 : 0;
    const auto offset = static_cast<unsigned long>(zip.size());
    put32(zip, 0x04034b50);
    put16(zip, 20);
    put16(zip, 0);
    put16(zip, method);
    put16(zip, 0);
    put16(zip, 0);
    put32(zip, crc);
    put32(zip, body.size());
    put32(zip, e.data.size());
    put16(zip, static_cast<unsigned>(e.name.size()));
    put16(zip, 0);
    zip += e.name + body;

    put32(central, 0x02014b50);
    put16(central, 20);
    put16(central, 20);
    put16(central, 0);
    put16(central, method);
    put16(central, 0);
    put16(central, 0);
    put32(central, crc);
    put32(central, body.size());
    put32(central, e.data.size());
    put16(central, static_cast<unsigned>(e.name.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, offset);
    central += e.name;
  }
  const auto cd_offset = static_cast<unsigned long>(zip.size());
  zip += central;
  put32(zip, 0x06054b50);
  put16(zip, 0);
  put16(zip, 0);
  put16(zip, static_cast<unsigned>(entries.size()));
  put16(zip, static_cast<unsigned>(entries.size()));
  put32(zip, central.size());
  put32(zip, cd_offset);
  put16(zip, 0);
  return zip;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "scorenet_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  // Written then renamed, so concurrent test processes never read a partial file.
  const auto tmp = dir / (name + "." + std::to_string(::getpid()) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
  }
  std::filesystem::rename(tmp, path);
  return path;
}

}  // namespace fixture
