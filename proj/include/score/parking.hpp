// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "score/core_model.hpp"

namespace score {

struct ParkingSpot {
  std::string id;
  GeoPoint position;
  Irradiance irradiance;  // fused, at the start of the stay
};

/// Score f = r / (d^b + k), d in meters.
struct ParkingParams {
  double b{1.0};    // distance exponent, > 0
  double k{200.0};  // length offset in meters, >= 0

  void validate() const;
};

/// Great-circle distance in meters.
double walking_distance(const GeoPoint& spot, const GeoPoint& target);

/// Throws std::invalid_argument for d < 0, bad params, or d = 0 with k = 0.
double parking_score(Irradiance r, double distance_m, const ParkingParams& p);

struct RankedSpot {
  std::string id;
  double distance_m{0.0};
  double score{0.0};
  int rank{0};  // 1 = best
};

struct ParkingChoice {
  std::string best;
  std::vector<RankedSpot> ranking;  // best first, ties by smaller id
};

/// Throws std::invalid_argument on an empty spot list.
ParkingChoice select_parking(std::span<const ParkingSpot> spots, const GeoPoint& target,
                             const ParkingParams& p);

/// Reads `id,lat,lon,r`. Throws ParseError.
std::vector<ParkingSpot> load_spots(std::istream& in);

/// Writes `id,d_m,score,rank`.
std::string ranking_csv(const ParkingChoice& choice);

}  // namespace score
