// SPDX-License-Identifier: Apache-2.0
#include "score/config.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "score/core_model.hpp"
#include "score/text.hpp"

namespace score {

namespace {

std::string_view unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) {
    ++ln;
    auto line = text::trim(strip_comment(raw));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(ln, "expected key = value");
    auto key = text::trim(line.substr(0, eq));
    auto value = text::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(ln, "empty key");
    for (unsigned char c : key) {
      if (!std::isalnum(c) && c != '_') throw ParseError(ln, "bad key '" + std::string(key) + "'");
    }
    if (!cfg.values_.emplace(std::string(key), std::string(unquote(value))).second) {
      throw ParseError(ln, "key '" + std::string(key) + "' set twice");
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  auto cfg = parse(in);
  cfg.base_dir_ = path.parent_path();
  return cfg;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::invalid_argument("config key '" + key + "' missing");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) const {
  auto v = text::parse_int(get_string(key));
  if (!v) throw std::invalid_argument("config key '" + key + "' must be an integer");
  return *v;
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
  const std::string raw = get_string(key);
  std::string_view v = text::trim(raw);
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
  std::vector<std::string> out;
  if (text::trim(v).empty()) return out;
  for (auto item : text::split(v, ',')) {
    auto t = unquote(text::trim(item));
    if (t.empty()) throw std::invalid_argument("config key '" + key + "' has an empty item");
    out.emplace_back(t);
  }
  return out;
}

std::vector<double> KeyValueConfig::get_number_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : get_list(key)) {
    auto v = text::parse_double(item);
    if (!v) throw std::invalid_argument("config key '" + key + "': '" + item + "' not a number");
    out.push_back(*v);
  }
  return out;
}

std::filesystem::path KeyValueConfig::get_path(const std::string& key) const {
  std::filesystem::path p = get_string(key);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p;
}

}  // namespace score
