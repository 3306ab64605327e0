// SPDX-License-Identifier: Apache-2.0
#include "score/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

#include "score/text.hpp"

namespace score {

PacketError::PacketError(std::string field, const std::string& what)
    : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

namespace {

bool is_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return is_digits(s);
  return is_digits(s.substr(0, dot)) && is_digits(s.substr(dot + 1));
}

bool is_station(std::string_view s) {
  return !s.empty() && s.size() <= kMaxStationLength &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c); });
}

double decimal_field(std::string_view tok, const char* field, double lo, double hi) {
  if (!is_decimal(tok)) {
    throw PacketError(field, "'" + std::string(tok) + "' is not a decimal number");
  }
  auto v = text::parse_double(tok);
  if (!v || !(*v >= lo && *v <= hi)) {
    throw PacketError(field, "'" + std::string(tok) + "' outside [" + text::format_number(lo) +
                                 "," + text::format_number(hi) + "]");
  }
  return *v;
}

}  // namespace

IrradianceSample parse_packet(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  auto f = text::split(line, ' ');
  if (f.front() != kReportMagic) {
    throw PacketError("version", "unsupported version token '" + std::string(f.front()) + "'");
  }
  if (f.size() != 6) {
    throw PacketError("field_count", "expected 6 fields, got " + std::to_string(f.size()));
  }
  if (!is_station(f[1])) {
    throw PacketError("station", "'" + std::string(f[1]) + "' is not 1-16 alphanumerics");
  }
  IrradianceSample s;
  s.station = std::string(f[1]);
  s.position.lat = decimal_field(f[2], "lat", -90.0, 90.0);
  s.position.lon = decimal_field(f[3], "lon", -180.0, 180.0);
  s.irradiance = Irradiance(decimal_field(f[4], "irradiance", 0.0, 1.0));
  auto t = is_digits(f[5]) ? text::parse_int(f[5]) : std::nullopt;
  if (!t) {
    throw PacketError("timestamp", "'" + std::string(f[5]) + "' is not a non-negative integer");
  }
  s.measured_at.hours = *t;
  return s;
}

std::string format_packet(const IrradianceSample& s) {
  if (!is_station(s.station)) {
    throw std::invalid_argument("station '" + s.station + "' not expressible in a report");
  }
  if (!s.position.valid()) throw std::invalid_argument("position out of range");
  if (s.measured_at.hours < 0) throw std::invalid_argument("negative timestamp");
  std::string out(kReportMagic);
  out += ' ';
  out += s.station;
  out += ' ';
  out += text::format_fixed(s.position.lat);
  out += ' ';
  out += text::format_fixed(s.position.lon);
  out += ' ';
  out += text::format_fixed(s.irradiance.value());
  out += ' ';
  out += std::to_string(s.measured_at.hours);
  return out;
}

std::optional<NodeId> assign_node(const IrradianceSample& sample, const RoadGraph& graph,
                                  double max_radius_m) {
  std::optional<NodeId> best;
  double best_d = 0.0;
  for (const auto& n : graph.nodes) {
    const double d = great_circle_m(sample.position, n.position);
    if (!best || d < best_d) {
      best = n.id;
      best_d = d;
    }
  }
  if (!best || best_d > max_radius_m) return std::nullopt;
  return best;
}

IngestOutcome SampleStore::ingest(const IrradianceSample& sample, NodeId node) {
  std::unique_lock lock(mu_);
  auto it = latest_.find(node);
  if (it == latest_.end()) {
    latest_.emplace(node, sample);
    return IngestOutcome::Accepted;
  }
  if (supersedes(sample, it->second)) {
    it->second = sample;
    return IngestOutcome::Accepted;
  }
  return IngestOutcome::SupersededKept;
}

void SampleStore::log_line(std::string line) {
  std::unique_lock lock(mu_);
  log_.push_back(std::move(line));
}

LatestSamples SampleStore::snapshot() const {
  std::shared_lock lock(mu_);
  return latest_;
}

std::vector<std::string> SampleStore::raw_log() const {
  std::shared_lock lock(mu_);
  return log_;
}

std::optional<IrradianceSample> SampleStore::latest(NodeId node) const {
  std::shared_lock lock(mu_);
  auto it = latest_.find(node);
  if (it == latest_.end()) return std::nullopt;
  return it->second;
}

std::string ReportSummary::to_json() const {
  nlohmann::ordered_json j;
  j["accepted"] = accepted;
  j["rejected"] = rejected;
  j["superseded"] = superseded;
  j["dropped"] = dropped;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rejections) {
    arr.push_back({{"line", r.line}, {"field", r.field}, {"error", r.error}});
  }
  j["rejections"] = std::move(arr);
  return j.dump();
}

ReportSummary ingest_report(SampleStore& store, const RoadGraph& graph, std::string_view body,
                            double max_radius_m) {
  ReportSummary summary;
  if (body.empty()) return summary;
  if (body.back() == '\n') body.remove_suffix(1);
  auto lines = text::split(body, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    IrradianceSample s;
    try {
      s = parse_packet(lines[i]);
    } catch (const PacketError& e) {
      ++summary.rejected;
      summary.rejections.push_back({i + 1, e.field(), e.what()});
      continue;
    }
    auto node = assign_node(s, graph, max_radius_m);
    if (!node) {
      ++summary.dropped;
      continue;
    }
    store.log_line(std::string(lines[i]));
    ++summary.accepted;
    if (store.ingest(s, *node) == IngestOutcome::SupersededKept) ++summary.superseded;
  }
  return summary;
}

void replay(SampleStore& store, const RoadGraph& graph, const std::vector<std::string>& log,
            double max_radius_m) {
  for (const auto& line : log) {
    auto s = parse_packet(line);
    if (auto node = assign_node(s, graph, max_radius_m)) {
      store.log_line(line);
      store.ingest(s, *node);
    }
  }
}

}  // namespace score
