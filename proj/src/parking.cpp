// SPDX-License-Identifier: Apache-2.0
#include "score/parking.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <stdexcept>

#include "score/text.hpp"

namespace score {

void ParkingParams::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("b must be > 0");
  if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("k must be >= 0");
}

double walking_distance(const GeoPoint& spot, const GeoPoint& target) {
  return great_circle_m(spot, target);
}

double parking_score(Irradiance r, double distance_m, const ParkingParams& p) {
  p.validate();
  if (!(distance_m >= 0.0) || !std::isfinite(distance_m)) {
    throw std::invalid_argument("walking distance must be finite and >= 0");
  }
  const double denom = std::pow(distance_m, p.b) + p.k;
  if (denom == 0.0) throw std::invalid_argument("score undefined for d = 0 with k = 0");
  return r.value() / denom;
}

ParkingChoice select_parking(std::span<const ParkingSpot> spots, const GeoPoint& target,
                             const ParkingParams& p) {
  if (spots.empty()) throw std::invalid_argument("no parking spots to choose from");
  ParkingChoice out;
  out.ranking.reserve(spots.size());
  for (const auto& s : spots) {
    const double d = walking_distance(s.position, target);
    out.ranking.push_back({s.id, d, parking_score(s.irradiance, d, p), 0});
  }
  std::sort(out.ranking.begin(), out.ranking.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  for (std::size_t i = 0; i < out.ranking.size(); ++i) {
    out.ranking[i].rank = static_cast<int>(i) + 1;
  }
  out.best = out.ranking.front().id;
  return out;
}

std::vector<ParkingSpot> load_spots(std::istream& in) {
  std::vector<ParkingSpot> spots;
  std::set<std::string> ids;
  std::string line;
  std::size_t ln = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++ln;
    auto content = text::chomp_cr(line);
    if (text::trim(content).empty()) continue;
    if (!header) {
      if (content != "id,lat,lon,r") throw ParseError(ln, "spots header must be 'id,lat,lon,r'");
      header = true;
      continue;
    }
    auto f = text::split(content, ',');
    if (f.size() != 4) throw ParseError(ln, "expected 4 fields");
    ParkingSpot s;
    s.id = std::string(f[0]);
    if (s.id.empty()) throw ParseError(ln, "empty spot id");
    if (!ids.insert(s.id).second) throw ParseError(ln, "duplicate spot id " + s.id);
    auto lat = text::parse_double(f[1]);
    auto lon = text::parse_double(f[2]);
    auto r = text::parse_double(f[3]);
    if (!lat || !lon) throw ParseError(ln, "bad coordinates");
    s.position = {*lat, *lon};
    if (!s.position.valid()) throw ParseError(ln, "position out of range");
    if (!r || !(*r >= 0.0 && *r <= 1.0)) throw ParseError(ln, "r must be in [0,1]");
    s.irradiance = Irradiance(*r);
    spots.push_back(std::move(s));
  }
  if (!header) throw ParseError(0, "empty spots file");
  return spots;
}

std::string ranking_csv(const ParkingChoice& choice) {
  std::string out = "id,d_m,score,rank\n";
  for (const auto& r : choice.ranking) {
    out += r.id + ',' + text::format_number(r.distance_m) + ',' +
           text::format_number(r.score) + ',' + std::to_string(r.rank) + '\n';
  }
  return out;
}

}  // namespace score
