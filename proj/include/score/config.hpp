// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace score {

// Key-value config files:
//
//   # comment
//   key = value
//   list = a, b, c
//
// One assignment per line. Keys are [A-Za-z0-9_]+. Values run to the end of
// the line (a trailing `# comment` is stripped) and may be wrapped in double
// quotes. Lists are comma separated, optionally wrapped in [ ].
class KeyValueConfig {
 public:
  /// Throws ParseError on malformed lines or repeated keys.
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.contains(key); }

  // Typed getters throw std::invalid_argument naming the key on bad values.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<double> get_number_list(const std::string& key) const;

  /// Resolves a path value relative to the directory of the loaded file.
  std::filesystem::path get_path(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_;
};

}  // namespace score
