// SPDX-License-Identifier: Apache-2.0
#include "score/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "score/text.hpp"

namespace score {

namespace {

void require_non_negative(std::int64_t dt) {
  if (dt < 0) {
    throw std::invalid_argument("measurement age must be >= 0 hours, got " +
                                std::to_string(dt));
  }
}

}  // namespace

double weight_gaussian(std::int64_t dt_hours, double denominator) {
  require_non_negative(dt_hours);
  if (!(denominator > 0.0) || !std::isfinite(denominator)) {
    throw std::invalid_argument("gaussian denominator must be > 0");
  }
  const double dt = static_cast<double>(dt_hours);
  return std::exp(-(dt * dt) / denominator);
}

int wrap_mod24(std::int64_t dt_hours) {
  require_non_negative(dt_hours);
  const int m0 = static_cast<int>(dt_hours % 24);
  return m0 > 12 ? m0 - 24 : m0;
}

double weight_diurnal(std::int64_t dt_hours) {
  const int m = wrap_mod24(dt_hours);
  const double d = static_cast<double>(dt_hours / 24);
  return std::exp(-static_cast<double>(m * m) - d);
}

FusionModel FusionModel::gaussian(double denominator) {
  if (!(denominator > 0.0) || !std::isfinite(denominator)) {
    throw std::invalid_argument("gaussian denominator must be > 0");
  }
  return FusionModel(Kind::Gaussian, denominator);
}

FusionModel FusionModel::parse(std::string_view spec) {
  if (spec == "diurnal") return diurnal();
  constexpr std::string_view prefix = "gaussian:";
  if (spec.starts_with(prefix)) {
    auto d = text::parse_double(spec.substr(prefix.size()));
    if (d) return gaussian(*d);
  }
  throw std::invalid_argument("unknown fusion model '" + std::string(spec) +
                              "' (expected gaussian:<D> or diurnal)");
}

double FusionModel::weight(std::int64_t dt_hours) const {
  return kind_ == Kind::Gaussian ? weight_gaussian(dt_hours, denominator_)
                                 : weight_diurnal(dt_hours);
}

std::string FusionModel::name() const {
  return kind_ == Kind::Gaussian ? "gaussian:" + text::format_fixed(denominator_)
                                 : "diurnal";
}

Irradiance fuse(Irradiance online, Irradiance offline, double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("fusion weight outside [0,1]");
  }
  const double on = online.value();
  const double off = offline.value();
  const double r = a * on + (1.0 - a) * off;
  // Rounding can step one ulp outside the hull of the two inputs.
  return Irradiance(std::clamp(r, std::min(on, off), std::max(on, off)));
}

bool supersedes(const IrradianceSample& incoming, const IrradianceSample& existing) {
  if (incoming.measured_at != existing.measured_at) {
    return incoming.measured_at > existing.measured_at;
  }
  return incoming.station < existing.station;
}

void merge_latest(LatestSamples& into, NodeId node, const IrradianceSample& sample) {
  auto it = into.find(node);
  if (it == into.end()) {
    into.emplace(node, sample);
  } else if (supersedes(sample, it->second)) {
    it->second = sample;
  }
}

FusedGrid fuse_grid(const RoadGraph& graph, const LatestSamples& latest,
                    Timestamp t_curr, const FusionModel& model) {
  FusedGrid grid;
  grid.as_of = t_curr;
  grid.nodes.reserve(graph.size());
  for (const auto& node : graph.nodes) {
    grid.nodes.push_back({node.offline_at(t_curr), 0.0, std::nullopt});
  }
  for (const auto& [id, sample] : latest) {
    if (!graph.contains(id)) {
      throw std::invalid_argument("sample keyed by unknown node " + std::to_string(id));
    }
    if (sample.measured_at > t_curr) {
      throw std::invalid_argument("sample from station " + sample.station + " at hour " +
                                  std::to_string(sample.measured_at.hours) +
                                  " is newer than t=" + std::to_string(t_curr.hours));
    }
    const std::int64_t age = t_curr.hours - sample.measured_at.hours;
    const double a = model.weight(age);
    auto& out = grid.nodes[id];
    out.r = fuse(sample.irradiance, graph.nodes[id].offline_at(t_curr), a);
    out.a_used = a;
    out.sample_age_h = age;
  }
  return grid;
}

std::string FusedGrid::to_json() const {
  nlohmann::ordered_json j;
  j["as_of"] = as_of.hours;
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nlohmann::ordered_json n;
    n["id"] = i;
    n["r"] = nodes[i].r.value();
    n["a"] = nodes[i].a_used;
    if (nodes[i].sample_age_h) {
      n["age_h"] = *nodes[i].sample_age_h;
    } else {
      n["age_h"] = nullptr;
    }
    arr.push_back(std::move(n));
  }
  j["nodes"] = std::move(arr);
  return j.dump();
}

FusedGrid FusedGrid::from_json(std::string_view json) {
  try {
    auto j = nlohmann::json::parse(json);
    FusedGrid g;
    g.as_of.hours = j.at("as_of").get<std::int64_t>();
    if (g.as_of.hours < 0) throw std::invalid_argument("as_of must be >= 0");
    const auto& arr = j.at("nodes");
    g.nodes.resize(arr.size());
    std::vector<bool> seen(arr.size(), false);
    for (const auto& n : arr) {
      const auto id = n.at("id").get<std::int64_t>();
      if (id < 0 || static_cast<std::size_t>(id) >= arr.size() || seen[id]) {
        throw std::invalid_argument("node ids must be unique and contiguous");
      }
      seen[id] = true;
      FusedNode fn;
      fn.r = Irradiance(n.at("r").get<double>());
      fn.a_used = n.at("a").get<double>();
      if (!(fn.a_used >= 0.0 && fn.a_used <= 1.0)) {
        throw std::invalid_argument("a outside [0,1]");
      }
      if (!n.at("age_h").is_null()) fn.sample_age_h = n.at("age_h").get<std::int64_t>();
      g.nodes[id] = fn;
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad fused grid JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("bad fused grid JSON: ") + e.what());
  }
}

}  // namespace score
