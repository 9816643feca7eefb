// Arrangement of the great circles orthogonal to a vertex star's tangents.
// The sphere decomposes into cells on which the signed hemisphere count
// sum_i chi_i is constant; each cell carries its exact spherical area.
#pragma once

#include <vector>

#include "netcurv/graph.hpp"

namespace netcurv {

struct ArrangementCircle {
  UnitVector normal;   // representative tangent direction for the circle
  int plus_count = 0;  // tangents equal to +normal (within merge tolerance)
  int minus_count = 0; // tangents equal to -normal
};

struct ArrangementCell {
  std::vector<Vec3> boundary;  // corner points in traversal order (empty for a hemisphere)
  double area = 0.0;           // steradians, by angular excess
  int value = 0;               // sum_i chi_i on the cell interior
  Vec3 witness;                // interior point the value was evaluated at
};

struct SphericalArrangement {
  std::vector<ArrangementCircle> circles;
  std::vector<ArrangementCell> cells;
};

// Throws DegenerateStar when the star has no tangents.  Coincident and
// antipodal tangents share one circle.  Cell areas always sum to 4*pi.
SphericalArrangement build_arrangement(const VertexStar& star);

// (1/4) * sum over cells of area * max(value, 0).
double nc_from_arrangement(const SphericalArrangement& arr);

}  // namespace netcurv
