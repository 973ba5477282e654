#pragma once

// Minimal read-only zip access for .mxl containers (stored and deflate).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scorenet::detail {

struct ZipEntry {
  std::string name;
  std::uint16_t method = 0;
  std::uint32_t compressed_size = 0;
  std::uint32_t uncompressed_size = 0;
  std::uint32_t local_header_offset = 0;
};

bool looks_like_zip(std::span<const std::byte> data);

class ZipArchive {
 public:
  explicit ZipArchive(std::span<const std::byte> data);

  const std::vector<ZipEntry>& entries() const noexcept { return entries_; }
  std::optional<std::string> read(const std::string& name) const;

 private:
  std::string extract(const ZipEntry& entry) const;

  std::span<const std::byte> data_;
  std::vector<ZipEntry> entries_;
};

}  // namespace scorenet::detail
