#pragma once

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "grasp/core/types.hpp"

namespace grasp {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

static_assert(std::endian::native == std::endian::little,
              "raster codecs assume a little-endian host");

}  // namespace detail

// Grayscale PFM, scale -1.0 (little-endian floats), rows stored bottom-up
// per the format convention. Lossless for float rasters.
inline std::string encode_pfm(const std::vector<float>& values, int width, int height) {
  std::string out = "Pf\n" + std::to_string(width) + " " + std::to_string(height) + "\n-1.0\n";
  out.reserve(out.size() + values.size() * sizeof(float));
  for (int r = height - 1; r >= 0; --r) {
    out.append(reinterpret_cast<const char*>(&values[static_cast<size_t>(r) * width]),
               static_cast<size_t>(width) * sizeof(float));
  }
  return out;
}

inline void decode_pfm(const std::string& bytes, std::vector<float>& values, int& width,
                       int& height) {
  if (bytes.size() < 3 || bytes[0] != 'P' || bytes[1] != 'f') {
    throw IoError("not a grayscale PFM");
  }
  size_t pos = 2;
  auto next_token = [&]() {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  width = std::stoi(next_token());
  height = std::stoi(next_token());
  double scale = std::stod(next_token());
  if (scale >= 0) throw IoError("big-endian PFM not supported");
  ++pos;  // single whitespace after the scale
  size_t need = static_cast<size_t>(width) * height * sizeof(float);
  if (bytes.size() - pos < need) throw IoError("truncated PFM payload");
  values.resize(static_cast<size_t>(width) * height);
  for (int r = height - 1; r >= 0; --r) {
    std::memcpy(&values[static_cast<size_t>(r) * width], bytes.data() + pos,
                static_cast<size_t>(width) * sizeof(float));
    pos += static_cast<size_t>(width) * sizeof(float);
  }
}

inline void write_pfm(const std::filesystem::path& path, const std::vector<float>& values,
                      int width, int height) {
  detail::write_file(path, encode_pfm(values, width, height));
}

inline void read_pfm(const std::filesystem::path& path, std::vector<float>& values, int& width,
                     int& height) {
  decode_pfm(detail::read_file(path), values, width, height);
}

// 16-bit binary PGM (maxval 65535, big-endian samples per the format).
inline std::string encode_pgm16(const std::vector<uint16_t>& values, int width, int height) {
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
  out.reserve(out.size() + values.size() * 2);
  for (uint16_t v : values) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

inline void decode_pgm16(const std::string& bytes, std::vector<uint16_t>& values, int& width,
                         int& height) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw IoError("not a binary PGM");
  size_t pos = 2;
  auto next_token = [&]() {
    while (pos < bytes.size() && (std::isspace(static_cast<unsigned char>(bytes[pos])) ||
                                  bytes[pos] == '#')) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        ++pos;
      }
    }
    size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  width = std::stoi(next_token());
  height = std::stoi(next_token());
  int maxval = std::stoi(next_token());
  if (maxval != 65535) throw IoError("expected 16-bit PGM");
  ++pos;
  size_t need = static_cast<size_t>(width) * height * 2;
  if (bytes.size() - pos < need) throw IoError("truncated PGM payload");
  values.resize(static_cast<size_t>(width) * height);
  for (size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<uint16_t>((static_cast<uint8_t>(bytes[pos]) << 8) |
                                      static_cast<uint8_t>(bytes[pos + 1]));
    pos += 2;
  }
}

inline void write_pgm16(const std::filesystem::path& path, const std::vector<uint16_t>& values,
                        int width, int height) {
  detail::write_file(path, encode_pgm16(values, width, height));
}

inline void read_pgm16(const std::filesystem::path& path, std::vector<uint16_t>& values,
                       int& width, int& height) {
  decode_pgm16(detail::read_file(path), values, width, height);
}

// 8-bit binary PGM for debug dumps of binary masks.
inline std::string encode_pgm8(const std::vector<uint8_t>& values, int width, int height) {
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(values.data()), values.size());
  return out;
}

// FNV-1a 64-bit content hash, hex-encoded; used for manifest content
// addressing.
inline std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string hash_file(const std::filesystem::path& path) {
  return fnv1a_hex(detail::read_file(path));
}

}  // namespace grasp
