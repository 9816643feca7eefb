// Continuous graphs realized as parametric samplers, their nested polygonal
// inscriptions, and coarsening/refinement edits of polygonal graphs.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netcurv/graph.hpp"

namespace netcurv {

struct ParametricEdge {
  std::string id;
  std::string from;
  std::string to;
  std::function<Point3(double)> sample;  // t in [0,1], sample(0)/sample(1) = endpoints
};

struct ParametricGraph {
  std::vector<Vertex> vertices;
  std::vector<ParametricEdge> edges;

  const Vertex& vertex(const std::string& id) const;
  void validate() const;  // endpoint agreement within 1e-12
};

// Built-ins: circle_diameter_theta, trefoil_theta, twisted_two_chord.
ParametricGraph make_parametric_example(const std::string& name);

// Piecewise-linear sampler over an existing polygonal graph (parameter
// uniform per segment), so it re-inscribes to itself at its breakpoints.
ParametricGraph parametric_from_polyline(const SpatialGraph& g);

// A polygonal graph inscribed in a parametric one, with the parameter of
// every breakpoint remembered per edge (sorted, including 0 and 1).
struct Inscription {
  SpatialGraph graph;
  std::vector<std::vector<double>> edge_params;
};

// Dyadic inscription: each edge sampled at the 2^level + 1 dyadic
// parameters.  Level k's breakpoints are a subset of level k+1's.
Inscription inscribe(const ParametricGraph& pg, int level);

struct LevelCurvature {
  int level = 0;
  std::int64_t vertex_count = 0;  // graph vertices plus breakpoints
  double N = 0.0;
};

// Net total curvature of the nested inscriptions, levels 0..max_level;
// non-decreasing in the level.
std::vector<LevelCurvature> approximate_net_curvature(const ParametricGraph& pg, int max_level);

// Adds, per edge interval, the parameters where the height <e, .> attains
// an interior extremum over the corresponding parametric arc (dense scan
// plus ternary refinement).  At most 2 new points per existing interval.
Inscription direction_refinement(const ParametricGraph& pg, const Inscription& p,
                                 const UnitVector& e);

// Removes a valence-2 point, replacing its two incident segments by the
// straight chord between its neighbors.  Breakpoints are dropped from their
// edge; a valence-2 graph vertex merges its two edges.  Throws NotRemovable
// for topological vertices (valence != 2) and for loop vertices.
SpatialGraph straighten_vertex(const SpatialGraph& g, const PointRef& point);

std::string levels_to_csv(const std::vector<LevelCurvature>& rows);

}  // namespace netcurv
