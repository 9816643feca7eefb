// Theta-graph recognition and the 3*pi / 4*pi curvature bound checks.
#pragma once

#include <cstdint>
#include <string>

#include "netcurv/graph.hpp"
#include "netcurv/half_integer.hpp"

namespace netcurv {

// True iff the graph is exactly two valence-3 vertices joined by three
// edges.  Arc geometry lives in the edge polylines; a theta represented
// with valence-2 chain vertices is not recognized.
bool is_theta(const SpatialGraph& g);

struct ThetaReport {
  double N = 0.0;
  HalfInteger min_mu_sampled;
  bool passes_3pi = false;       // N >= 3*pi - 1e-6
  bool below_4pi = false;        // N < 4*pi + 1e-6
  bool equality_witness = false; // |N - 3*pi| <= equality_tol
  double equality_tol = 0.0;
  std::int64_t samples = 0;
  std::int64_t rejected = 0;
  std::uint64_t seed = 0;
};

// Exact N plus the minimum multiplicity over sampled directions.
// Throws NotTheta when is_theta fails.
ThetaReport check_theta_bounds(const SpatialGraph& g, std::int64_t samples, std::uint64_t seed,
                               double equality_tol = 0.01);

std::string theta_report_to_json(const ThetaReport& r);

}  // namespace netcurv
