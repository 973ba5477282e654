#pragma once

// Builders for MusicXML test scores and .mxl containers.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fixture {

struct NoteOptions {
  std::string voice = "1";
  bool tie_start = false;
  bool tie_stop = false;
  bool grace = false;
};

/// Writes the measures of one part; durations are in divisions.
class PartWriter {
 public:
  PartWriter& note(const std::vector<int>& midi, int duration, const NoteOptions& options = {});
  PartWriter& rest(int duration, const std::string& voice = "1");
  PartWriter& backup(int duration);
  PartWriter& forward(int duration);
  PartWriter& raw(const std::string& xml);
  /// Closes the current measure; `number` overrides the running bar number.
  PartWriter& end_measure(const std::string& number = "");

  const std::vector<std::string>& measures() const { return measures_; }

 private:
  std::string current_;
  std::vector<std::string> measures_;
};

class ScoreWriter {
 public:
  explicit ScoreWriter(int divisions = 1) : divisions_(divisions) {}

  PartWriter& part(const std::string& id);
  ScoreWriter& title(const std::string& t) {
    title_ = t;
    return *this;
  }
  std::string xml() const;

 private:
  int divisions_;
  std::string title_ = "Fixture";
  std::vector<std::string> order_;
  std::map<std::string, PartWriter> parts_;
};

/// One part, one quarter-note chord per entry; `bars[b]` lists the chords of
/// bar b + 1 as MIDI pitch lists.
std::string chord_score(const std::vector<std::vector<std::vector<int>>>& bars);

/// Four-part score of `bars` bars in 4/4 moving through a few diatonic keys;
/// deterministic per seed.
std::string long_score(int bars, std::uint64_t seed);

/// .mxl container (META-INF/container.xml plus the score), deflated or stored.
std::string make_mxl(const std::string& score_xml, bool deflate = true);

std::filesystem::path write_temp(const std::string& name, const std::string& content);

}  // namespace fixture
