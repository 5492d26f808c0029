#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace relgs {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key = value configuration with '#' comments. Keys are dotted paths
/// (problem.m, grid.n, ...); values stay strings until typed access.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// FNV-1a over the sorted normalized "key=value" lines; stable across
  /// reordering and comments.
  std::uint64_t hash() const;
  std::string hash_hex() const;

  /// Canonical "key = value" text, sorted by key.
  std::string canonical_text() const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace relgs
