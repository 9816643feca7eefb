// Height-function analysis in a fixed direction: up/down valences, net
// local maxima, multiplicity, and its Monte-Carlo sphere integral.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netcurv/graph.hpp"
#include "netcurv/half_integer.hpp"

namespace netcurv {

struct DirectionRow {
  std::string point_id;
  double height = 0.0;
  int d_plus = 0;
  int d_minus = 0;
  HalfInteger nlm;
};

struct DirectionReport {
  Vec3 direction;
  std::vector<DirectionRow> rows;  // points with nlm != 0 only
  HalfInteger mu;
};

// A direction is degenerate for the graph when some straight piece is
// nearly perpendicular to it, or two neighboring analysis points nearly tie
// in height (tolerance relative to the graph diameter).
bool is_degenerate(const SpatialGraph& g, const UnitVector& e, double tol = tol::kDegenerate);
bool is_degenerate(const AnalysisGraph& a, const Vec3& e, double tol = tol::kDegenerate);

// Counts of incident straight pieces strictly above / below the point.
std::pair<int, int> up_down_valence(const SpatialGraph& g, const UnitVector& e,
                                    const PointRef& point);

// (d_minus - d_plus) / 2, exactly.
HalfInteger nlm_at(const SpatialGraph& g, const UnitVector& e, const PointRef& point);

DirectionReport mu_of_direction(const SpatialGraph& g, const UnitVector& e);

// Multiplicity as an exact half-integer, for callers that do not need rows.
HalfInteger mu_value(const AnalysisGraph& a, const Vec3& e);

struct MuIntegral {
  double N_estimate = 0.0;
  double stderr_ = 0.0;
  std::int64_t samples = 0;
  std::int64_t rejected = 0;
  std::uint64_t seed = 0;
};

// (1/2) * 4*pi * mean(mu) over accepted uniform directions; degenerate draws
// are resampled deterministically and counted.  Throws TooManyRejections
// when more than 1% of draws are rejected.
MuIntegral integrate_mu(const SpatialGraph& g, std::int64_t samples, std::uint64_t seed);

struct SphereSample {
  Vec3 direction;
  HalfInteger mu;
  bool degenerate = false;
};

// Multiplicity sampled on a Fibonacci lattice (for export and plotting).
std::vector<SphereSample> sphere_map(const SpatialGraph& g, std::int64_t lattice);

std::string direction_report_to_json(const DirectionReport& report);
std::string mu_integral_to_json(const MuIntegral& r);
std::string sphere_map_to_csv(const std::vector<SphereSample>& samples);

}  // namespace netcurv
