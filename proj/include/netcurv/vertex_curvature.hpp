// Per-vertex curvature contributions (nc, tc, mc) and whole-graph totals.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netcurv/arrangement.hpp"
#include "netcurv/graph.hpp"

namespace netcurv {

// Net curvature contribution of a vertex star.  Closed forms for valence
// 1..3, exact cell decomposition otherwise:
//   d = 1 -> pi/2
//   d = 2 -> exterior angle
//   d = 3 -> (3*pi - a12 - a23 - a31) / 2, a_ij the angle between tangents
double nc_exact(const VertexStar& star);

// The valence-3 closed form on its own (cross-check target for the
// arrangement route).
double nc_closed_form_d3(const VertexStar& star);

struct QuadratureEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

// Monte-Carlo evaluation of the sphere integral behind nc; unbiased,
// deterministic for a fixed seed, parallel-safe.
QuadratureEstimate nc_quadrature(const VertexStar& star, std::int64_t samples, std::uint64_t seed);

// Lower bound for the cone curvature supremum: nested low-discrepancy scan
// of `grid` directions followed by local ascent from the `restarts` best.
// Non-decreasing in both parameters.
double tc_optimize(const VertexStar& star, int grid = 20000, int restarts = 16);

// Pairwise exterior-angle sum over the star's tangents; 0 for valence 1.
double mc_sum(const VertexStar& star);

enum class CurvatureMethod { exact, quadrature };

// Net total curvature of the graph: vertex contributions at every graph
// vertex and interior polyline point (edges are straight in between).
double net_total_curvature(const SpatialGraph& g, CurvatureMethod method = CurvatureMethod::exact,
                           std::int64_t samples = 1000000, std::uint64_t seed = 1);

struct VertexCurvatures {
  std::string id;
  int valence = 0;
  double nc = 0.0;
  double tc = 0.0;
  double mc = 0.0;
  std::string nc_method;  // exact | quadrature
  std::string tc_method;  // optimized
  std::string mc_method;  // exact
};

struct CurvatureReport {
  std::vector<VertexCurvatures> rows;  // one per graph vertex
  double edge_interior = 0.0;          // turning at interior polyline points
  double N = 0.0;                      // net total curvature
  double Ctot_lower = 0.0;             // cone total curvature lower bound
  double MC = 0.0;                     // maximal total curvature
};

CurvatureReport graph_curvature_report(const SpatialGraph& g);

std::string report_to_json(const CurvatureReport& report);
std::string report_to_csv(const CurvatureReport& report);

}  // namespace netcurv
