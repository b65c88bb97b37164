#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hyx/core.hpp"

namespace hyx::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hyx-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::string random_ascii(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> ch(0x20, 0x7e);
  std::string s(len, ' ');
  for (auto& c : s) c = static_cast<char>(ch(rng));
  return s;
}

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t len) {
  std::uniform_int_distribution<int> byte(0, 255);
  Bytes b(len);
  for (auto& x : b) x = static_cast<std::uint8_t>(byte(rng));
  return b;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// A UTF-8 text kept as its list of characters, so slicing by character is
// plain vector slicing and independent of the library's offset mapping.
struct CharText {
  std::vector<std::string> chars;

  std::string join(std::size_t a, std::size_t b) const {
    std::string out;
    for (auto i = a; i < b; ++i) out += chars[i];
    return out;
  }
  std::string str() const { return join(0, chars.size()); }
};

inline CharText random_text(std::mt19937_64& rng, std::size_t max_len) {
  static const char* pool[] = {"a", "b", " ", "\n", "\xc3\xa9", "\xe2\x82\xac",
                               "\xf0\x9f\x98\x80", "Z", "0"};
  CharText t;
  auto n = pick(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i)
    t.chars.emplace_back(pool[pick(rng, 0, std::size(pool) - 1)]);
  return t;
}

}  // namespace hyx::testing
