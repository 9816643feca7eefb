#include "netcurv/vertex_curvature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "netcurv/io_util.hpp"
#include "netcurv/parallel.hpp"
#include "netcurv/rng.hpp"

namespace netcurv {

double nc_closed_form_d3(const VertexStar& star) {
  if (star.valence() != 3) throw BadParameter("nc_closed_form_d3: valence must be 3");
  const Vec3& t1 = star.tangents[0].vec();
  const Vec3& t2 = star.tangents[1].vec();
  const Vec3& t3 = star.tangents[2].vec();
  const double sum = angle_between(t1, t2) + angle_between(t2, t3) + angle_between(t3, t1);
  return 0.5 * (3.0 * M_PI - sum);
}

double nc_exact(const VertexStar& star) {
  switch (star.valence()) {
    case 0:
      throw DegenerateStar("vertex star has no tangents");
    case 1:
      return 0.5 * M_PI;
    case 2:
      return exterior_angle(star.tangents[0], star.tangents[1]);
    case 3:
      return nc_closed_form_d3(star);
    default:
      return nc_from_arrangement(build_arrangement(star));
  }
}

QuadratureEstimate nc_quadrature(const VertexStar& star, std::int64_t samples,
                                 std::uint64_t seed) {
  if (star.valence() == 0) throw DegenerateStar("vertex star has no tangents");
  if (samples < 1000) throw BadParameter("nc_quadrature: samples must be >= 1000");

  // The integrand [sum chi_i]^+ is a small integer at every sample, so the
  // accumulators are exact and the result is thread-count independent.
  std::atomic<std::int64_t> sum{0}, sum_sq{0};
  parallel_ranges(samples, [&](std::int64_t begin, std::int64_t end) {
    std::int64_t s = 0, s2 = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      const Vec3 e = sphere_direction(seed, static_cast<std::uint64_t>(i));
      int v = 0;
      for (const UnitVector& t : star.tangents) v += dot(e, t.vec()) > 0.0 ? -1 : +1;
      const int g = v > 0 ? v : 0;
      s += g;
      s2 += static_cast<std::int64_t>(g) * g;
    }
    sum += s;
    sum_sq += s2;
  });

  const double n = static_cast<double>(samples);
  const double mean = static_cast<double>(sum.load()) / n;
  const double var = (static_cast<double>(sum_sq.load()) - n * mean * mean) / (n - 1.0);
  QuadratureEstimate out;
  out.estimate = M_PI * mean;
  out.stderr_ = M_PI * std::sqrt(std::max(0.0, var) / n);
  return out;
}

namespace {

double cone_excess(const VertexStar& star, const Vec3& e) {
  double f = 0.0;
  for (const UnitVector& t : star.tangents) f += 0.5 * M_PI - angle_between(t.vec(), e);
  return f;
}

// One-dimensional golden-section maximization on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, int iters) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int k = 0; k < iters; ++k) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double tc_optimize(const VertexStar& star, int grid, int restarts) {
  if (star.valence() == 0) throw DegenerateStar("vertex star has no tangents");
  if (grid < 1) throw BadParameter("tc_optimize: grid must be >= 1");
  if (restarts < 1) throw BadParameter("tc_optimize: restarts must be >= 1");

  // Scan a prefix-nested direction sequence; growing the grid only extends
  // the scanned set, so the returned bound cannot decrease.
  std::vector<std::pair<double, Vec3>> best;
  for (int i = 0; i < grid; ++i) {
    const Vec3 e = nested_sphere_point(static_cast<std::uint64_t>(i));
    best.emplace_back(cone_excess(star, e), e);
  }
  std::sort(best.begin(), best.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  best.resize(std::min<std::size_t>(best.size(), static_cast<std::size_t>(restarts)));

  double result = best.front().first;
  for (const auto& [score0, e0] : best) {
    // Local ascent on a 2-parameter chart: alternating golden-section line
    // searches in a shrinking trust region around the current point.
    Vec3 e = e0;
    const double h0 = 2.0 * std::sqrt(4.0 * M_PI / grid);
    double h = h0;
    double current = cone_excess(star, e);
    for (int round = 0; round < 240 && h > 1e-13; ++round) {
      // rotate the search axes every round; fixed axes can stall against a
      // kink of the piecewise-smooth objective
      const Vec3 b1 = orthonormal_to(e);
      const Vec3 b2 = cross(e, b1);
      const double phi = 2.39996322972865332 * round;
      const Vec3 u = b1 * std::cos(phi) + b2 * std::sin(phi);
      const Vec3 v = cross(e, u);
      auto along_u = [&](double a) {
        const Vec3 p = e + a * u;
        return cone_excess(star, p / norm(p));
      };
      const double a = golden_max(along_u, -h, h, 60);
      e = e + a * u;
      e = e / norm(e);
      auto along_v = [&](double b) {
        const Vec3 p = e + b * v;
        return cone_excess(star, p / norm(p));
      };
      const double b = golden_max(along_v, -h, h, 60);
      e = e + b * v;
      e = e / norm(e);
      const double improved = cone_excess(star, e);
      // shrink the trust region only once a round stops paying off, so a
      // long ridge can be followed at full step length
      if (improved - current < 1e-13)
        h *= 0.5;
      else
        h = std::min(1.5 * h, h0);
      current = improved;
    }
    result = std::max(result, current);
  }
  return result;
}

double mc_sum(const VertexStar& star) {
  if (star.valence() == 0) throw DegenerateStar("vertex star has no tangents");
  double acc = 0.0;
  for (std::size_t i = 0; i < star.tangents.size(); ++i)
    for (std::size_t j = i + 1; j < star.tangents.size(); ++j)
      acc += exterior_angle(star.tangents[i], star.tangents[j]);
  return acc;
}

double net_total_curvature(const SpatialGraph& g, CurvatureMethod method, std::int64_t samples,
                           std::uint64_t seed) {
  const AnalysisGraph a = AnalysisGraph::build(g);
  double total = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const VertexStar star = a.star(static_cast<int>(i));
    if (method == CurvatureMethod::exact)
      total += nc_exact(star);
    else
      total += nc_quadrature(star, samples, hash_combine(seed, i)).estimate;
  }
  return total;
}

CurvatureReport graph_curvature_report(const SpatialGraph& g) {
  CurvatureReport report;
  for (const Vertex& v : g.vertices()) {
    const VertexStar star = vertex_star(g, v.id);
    VertexCurvatures row;
    row.id = v.id;
    row.valence = star.valence();
    row.nc = nc_exact(star);
    row.tc = tc_optimize(star);
    row.mc = mc_sum(star);
    row.nc_method = "exact";
    row.tc_method = "optimized";
    row.mc_method = "exact";
    report.rows.push_back(std::move(row));
  }
  for (const Edge& e : g.edges()) report.edge_interior += edge_interior_curvature(g, e.id);
  for (const VertexCurvatures& row : report.rows) {
    report.N += row.nc;
    report.Ctot_lower += row.tc;
    report.MC += row.mc;
  }
  report.N += report.edge_interior;
  report.Ctot_lower += report.edge_interior;
  report.MC += report.edge_interior;
  return report;
}

std::string report_to_json(const CurvatureReport& report) {
  std::ostringstream out;
  out << "{\"vertices\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const VertexCurvatures& r = report.rows[i];
    if (i) out << ',';
    out << "{\"id\":\"" << json_escape(r.id) << "\",\"valence\":" << r.valence
        << ",\"nc\":" << fmt17(r.nc) << ",\"tc\":" << fmt17(r.tc) << ",\"mc\":" << fmt17(r.mc)
        << ",\"nc_method\":\"" << r.nc_method << "\",\"tc_method\":\"" << r.tc_method
        << "\",\"mc_method\":\"" << r.mc_method << "\"}";
  }
  out << "],\"edge_interior\":" << fmt17(report.edge_interior) << ",\"N\":" << fmt17(report.N)
      << ",\"Ctot_lower_bound\":" << fmt17(report.Ctot_lower) << ",\"MC\":" << fmt17(report.MC)
      << "}\n";
  return out.str();
}

std::string report_to_csv(const CurvatureReport& report) {
  std::ostringstream out;
  out << "vertex,valence,nc,tc,mc,method\n";
  for (const VertexCurvatures& r : report.rows)
    out << r.id << ',' << r.valence << ',' << fmt17(r.nc) << ',' << fmt17(r.tc) << ','
        << fmt17(r.mc) << ',' << r.nc_method << '\n';
  return out.str();
}

}  // namespace netcurv
