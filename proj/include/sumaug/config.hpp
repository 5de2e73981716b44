// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace sumaug {

/// Flat `dotted.key = value` configuration. Blank lines and lines starting
/// with '#' are ignored. Later assignments win, which is how CLI overrides
/// are layered on top of a file.
class ConfigMap {
 public:
  static ConfigMap parse(std::istream& in, std::string_view source_name = "<config>");
  static ConfigMap load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  /// Parses "key=value"; throws ConfigError otherwise.
  void apply_override(std::string_view assignment);

  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) > 0; }
  [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] long long get_int(const std::string& key, long long fallback) const;
  [[nodiscard]] std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  [[nodiscard]] double get_double(const std::string& key, double fallback) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;

  /// Throws ConfigError naming the first key outside `known`.
  void reject_unknown(const std::set<std::string>& known) const;

  [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace sumaug
