#include "netcurv/direction.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "netcurv/io_util.hpp"
#include "netcurv/parallel.hpp"
#include "netcurv/rng.hpp"

namespace netcurv {

namespace {

constexpr std::uint32_t kMaxAttemptsPerSlot = 1000;

std::vector<double> heights(const AnalysisGraph& a, const Vec3& e) {
  std::vector<double> h(a.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) h[i] = dot(e, a.points[i].pos);
  return h;
}

std::pair<int, int> up_down_at(const AnalysisGraph& a, const std::vector<double>& h, int point) {
  int up = 0, down = 0;
  const AnalysisPoint& p = a.points[static_cast<std::size_t>(point)];
  for (int nb : p.adj) {
    if (h[static_cast<std::size_t>(nb)] > h[static_cast<std::size_t>(point)])
      ++up;
    else
      ++down;
  }
  return {up, down};
}

}  // namespace

bool is_degenerate(const AnalysisGraph& a, const Vec3& e, double tol) {
  const double height_tol = tol * a.diameter;
  for (std::size_t s = 0; s < a.segments.size(); ++s) {
    if (std::fabs(dot(e, a.segment_dir[s])) <= tol) return true;
    const auto [u, w] = a.segments[s];
    const double hu = dot(e, a.points[static_cast<std::size_t>(u)].pos);
    const double hw = dot(e, a.points[static_cast<std::size_t>(w)].pos);
    if (std::fabs(hu - hw) <= height_tol) return true;
  }
  return false;
}

bool is_degenerate(const SpatialGraph& g, const UnitVector& e, double tol) {
  return is_degenerate(AnalysisGraph::build(g), e.vec(), tol);
}

std::pair<int, int> up_down_valence(const SpatialGraph& g, const UnitVector& e,
                                    const PointRef& point) {
  const AnalysisGraph a = AnalysisGraph::build(g);
  if (is_degenerate(a, e.vec())) throw DegenerateDirection("direction is degenerate for graph");
  const int idx = a.index_of(point);
  if (idx < 0) {
    if (point.is_vertex()) throw UnknownVertex(point.str());
    throw UnknownEdge(point.str());
  }
  const std::vector<double> h = heights(a, e.vec());
  return up_down_at(a, h, idx);
}

HalfInteger nlm_at(const SpatialGraph& g, const UnitVector& e, const PointRef& point) {
  const auto [up, down] = up_down_valence(g, e, point);
  return HalfInteger::from_doubled(down - up);
}

HalfInteger mu_value(const AnalysisGraph& a, const Vec3& e) {
  const std::vector<double> h = heights(a, e);
  std::int64_t mu_doubled = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto [up, down] = up_down_at(a, h, static_cast<int>(i));
    if (down > up) mu_doubled += down - up;
  }
  return HalfInteger::from_doubled(mu_doubled);
}

DirectionReport mu_of_direction(const SpatialGraph& g, const UnitVector& e) {
  const AnalysisGraph a = AnalysisGraph::build(g);
  if (is_degenerate(a, e.vec())) throw DegenerateDirection("direction is degenerate for graph");
  const std::vector<double> h = heights(a, e.vec());

  DirectionReport report;
  report.direction = e.vec();
  std::int64_t mu_doubled = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto [up, down] = up_down_at(a, h, static_cast<int>(i));
    if (down == up) continue;
    DirectionRow row;
    row.point_id = a.points[i].ref.str();
    row.height = h[i];
    row.d_plus = up;
    row.d_minus = down;
    row.nlm = HalfInteger::from_doubled(down - up);
    report.rows.push_back(std::move(row));
    if (down > up) mu_doubled += down - up;
  }
  report.mu = HalfInteger::from_doubled(mu_doubled);
  return report;
}

MuIntegral integrate_mu(const SpatialGraph& g, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1000) throw BadParameter("integrate_mu: samples must be >= 1000");
  const AnalysisGraph a = AnalysisGraph::build(g);

  // mu is a half-integer, so sums of 2*mu are exact; results do not depend
  // on how the index range is split across threads.
  std::atomic<std::int64_t> sum{0}, sum_sq{0}, rejected{0};
  std::atomic<bool> exhausted{false};
  parallel_ranges(samples, [&](std::int64_t begin, std::int64_t end) {
    std::int64_t s = 0, s2 = 0, rej = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      std::uint32_t attempt = 0;
      for (; attempt < kMaxAttemptsPerSlot; ++attempt) {
        const Vec3 e = sphere_direction(seed, static_cast<std::uint64_t>(i), attempt);
        if (!is_degenerate(a, e)) break;
      }
      if (attempt == kMaxAttemptsPerSlot) {
        exhausted = true;
        return;
      }
      rej += attempt;
      const Vec3 e = sphere_direction(seed, static_cast<std::uint64_t>(i), attempt);
      const std::int64_t m2 = mu_value(a, e).doubled();
      s += m2;
      s2 += m2 * m2;
    }
    sum += s;
    sum_sq += s2;
    rejected += rej;
  });
  if (exhausted)
    throw TooManyRejections("a sample slot exhausted " + std::to_string(kMaxAttemptsPerSlot) +
                            " direction attempts");
  if (rejected.load() * 100 > samples)
    throw TooManyRejections(std::to_string(rejected.load()) + " rejections for " +
                            std::to_string(samples) +
                            " samples; graph looks axis-aligned, jitter it");

  const double n = static_cast<double>(samples);
  const double mean2 = static_cast<double>(sum.load()) / n;          // mean of 2*mu
  const double var2 = (static_cast<double>(sum_sq.load()) - n * mean2 * mean2) / (n - 1.0);
  MuIntegral out;
  out.N_estimate = M_PI * mean2;  // (1/2) * 4*pi * mean(mu)
  out.stderr_ = M_PI * std::sqrt(std::max(0.0, var2) / n);
  out.samples = samples;
  out.rejected = rejected.load();
  out.seed = seed;
  return out;
}

std::vector<SphereSample> sphere_map(const SpatialGraph& g, std::int64_t lattice) {
  if (lattice < 100) throw BadParameter("sphere_map: lattice must be >= 100");
  const AnalysisGraph a = AnalysisGraph::build(g);
  std::vector<SphereSample> out(static_cast<std::size_t>(lattice));
  parallel_ranges(lattice, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      SphereSample& s = out[static_cast<std::size_t>(i)];
      s.direction = fibonacci_sphere_point(i, lattice);
      s.degenerate = is_degenerate(a, s.direction);
      if (!s.degenerate) s.mu = mu_value(a, s.direction);
    }
  });
  return out;
}

std::string direction_report_to_json(const DirectionReport& report) {
  std::ostringstream out;
  out << "{\"direction\":[" << fmt17(report.direction.x) << ',' << fmt17(report.direction.y)
      << ',' << fmt17(report.direction.z) << "],\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const DirectionRow& r = report.rows[i];
    if (i) out << ',';
    out << "{\"point\":\"" << json_escape(r.point_id) << "\",\"height\":" << fmt17(r.height)
        << ",\"d_plus\":" << r.d_plus << ",\"d_minus\":" << r.d_minus
        << ",\"nlm_doubled\":" << r.nlm.doubled() << '}';
  }
  out << "],\"mu_doubled\":" << report.mu.doubled() << "}\n";
  return out.str();
}

std::string mu_integral_to_json(const MuIntegral& r) {
  std::ostringstream out;
  out << "{\"N_estimate\":" << fmt17(r.N_estimate) << ",\"stderr\":" << fmt17(r.stderr_)
      << ",\"samples\":" << r.samples << ",\"rejected\":" << r.rejected << ",\"seed\":" << r.seed
      << "}\n";
  return out.str();
}

std::string sphere_map_to_csv(const std::vector<SphereSample>& samples) {
  std::ostringstream out;
  out << "x,y,z,mu_doubled,flag\n";
  for (const SphereSample& s : samples)
    out << fmt17(s.direction.x) << ',' << fmt17(s.direction.y) << ',' << fmt17(s.direction.z)
        << ',' << s.mu.doubled() << ',' << (s.degenerate ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace netcurv
