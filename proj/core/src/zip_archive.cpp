#include "zip_archive.h"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "scorenet/error.h"

namespace scorenet::detail {
namespace {

constexpr std::uint32_t kLocalHeader = 0x04034b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kEndOfCentral = 0x06054b50;

std::uint16_t u16(std::span<const std::byte> d, std::size_t at) {
  if (at + 2 > d.size()) throw Error(ErrorCode::kMalformedInput, "truncated zip container");
  return static_cast<std::uint16_t>(std::to_integer<unsigned>(d[at]) |
                                    (std::to_integer<unsigned>(d[at + 1]) << 8));
}

std::uint32_t u32(std::span<const std::byte> d, std::size_t at) {
  return static_cast<std::uint32_t>(u16(d, at)) |
         (static_cast<std::uint32_t>(u16(d, at + 2)) << 16);
}

}  // namespace

bool looks_like_zip(std::span<const std::byte> data) {
  return data.size() >= 4 && u32(data, 0) == kLocalHeader;
}

ZipArchive::ZipArchive(std::span<const std::byte> data) : data_(data) {
  if (data.size() < 22) throw Error(ErrorCode::kMalformedInput, "truncated zip container");
  // The end-of-central-directory record sits in the last 64 KiB + 22 bytes.
  std::size_t eocd = std::string::npos;
  const std::size_t lowest = data.size() > 65557 ? data.size() - 65557 : 0;
  for (std::size_t at = data.size() - 22 + 1; at-- > lowest;) {
    if (u32(data, at) == kEndOfCentral) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string::npos) {
    throw Error(ErrorCode::kMalformedInput, "zip container has no central directory");
  }
  const std::uint16_t count = u16(data, eocd + 10);
  std::size_t at = u32(data, eocd + 16);
  for (std::uint16_t i = 0; i < count; ++i) {
    if (u32(data, at) != kCentralHeader) {
      throw Error(ErrorCode::kMalformedInput, "corrupt zip central directory");
    }
    ZipEntry entry;
    entry.method = u16(data, at + 10);
    entry.compressed_size = u32(data, at + 20);
    entry.uncompressed_size = u32(data, at + 24);
    const std::uint16_t name_len = u16(data, at + 28);
    const std::uint16_t extra_len = u16(data, at + 30);
    const std::uint16_t comment_len = u16(data, at + 32);
    entry.local_header_offset = u32(data, at + 42);
    if (at + 46 + name_len > data.size()) {
      throw Error(ErrorCode::kMalformedInput, "truncated zip central directory");
    }
    entry.name.assign(reinterpret_cast<const char*>(data.data() + at + 46), name_len);
    entries_.push_back(std::move(entry));
    at += 46 + name_len + extra_len + comment_len;
  }
}

std::optional<std::string> ZipArchive::read(const std::string& name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ZipEntry& e) { return e.name == name; });
  if (it == entries_.end()) return std::nullopt;
  return extract(*it);
}

std::string ZipArchive::extract(const ZipEntry& entry) const {
  const std::size_t header = entry.local_header_offset;
  if (u32(data_, header) != kLocalHeader) {
    throw Error(ErrorCode::kMalformedInput, "corrupt zip local header for " + entry.name);
  }
  const std::size_t start = header + 30 + u16(data_, header + 26) + u16(data_, header + 28);
  if (start + entry.compressed_size > data_.size()) {
    throw Error(ErrorCode::kMalformedInput, "truncated zip entry " + entry.name);
  }
  const auto* src = reinterpret_cast<const Bytef*>(data_.data() + start);

  if (entry.method == 0) {
    return std::string(reinterpret_cast<const char*>(src), entry.compressed_size);
  }
  if (entry.method != 8) {
    throw Error(ErrorCode::kUnsupported, "zip compression method " + std::to_string(entry.method));
  }

  std::string out(entry.uncompressed_size, '\0');
  z_stream stream{};
  if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) {
    throw Error(ErrorCode::kMalformedInput, "cannot initialise inflate");
  }
  stream.next_in = const_cast<Bytef*>(src);
  stream.avail_in = entry.compressed_size;
  stream.next_out = reinterpret_cast<Bytef*>(out.data());
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&stream, Z_FINISH);
  inflateEnd(&stream);
  if (rc != Z_STREAM_END) {
    throw Error(ErrorCode::kMalformedInput, "corrupt deflate stream in " + entry.name);
  }
  return out;
}

}  // namespace scorenet::detail
