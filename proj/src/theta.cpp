#include "netcurv/theta.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "netcurv/direction.hpp"
#include "netcurv/io_util.hpp"
#include "netcurv/parallel.hpp"
#include "netcurv/rng.hpp"
#include "netcurv/vertex_curvature.hpp"

namespace netcurv {

namespace {
constexpr double kThresholdTol = 1e-6;
constexpr std::uint32_t kMaxAttemptsPerSlot = 1000;
}  // namespace

bool is_theta(const SpatialGraph& g) {
  const std::vector<std::string> tops = topological_vertices(g);
  if (tops.size() != 2 || g.edges().size() != 3) return false;
  if (g.valence(tops[0]) != 3 || g.valence(tops[1]) != 3) return false;
  for (const Edge& e : g.edges()) {
    const bool joins = (e.from == tops[0] && e.to == tops[1]) ||
                       (e.from == tops[1] && e.to == tops[0]);
    if (!joins) return false;
  }
  return true;
}

ThetaReport check_theta_bounds(const SpatialGraph& g, std::int64_t samples, std::uint64_t seed,
                               double equality_tol) {
  if (!is_theta(g)) throw NotTheta("graph is not a theta graph");
  if (samples < 1) throw BadParameter("check_theta_bounds: samples must be >= 1");

  ThetaReport report;
  report.N = net_total_curvature(g);
  report.equality_tol = equality_tol;
  report.samples = samples;
  report.seed = seed;
  report.passes_3pi = report.N >= 3.0 * M_PI - kThresholdTol;
  report.below_4pi = report.N < 4.0 * M_PI + kThresholdTol;
  report.equality_witness = std::fabs(report.N - 3.0 * M_PI) <= equality_tol;

  const AnalysisGraph a = AnalysisGraph::build(g);
  std::atomic<std::int64_t> min_mu_doubled{std::numeric_limits<std::int64_t>::max()};
  std::atomic<std::int64_t> rejected{0};
  std::atomic<bool> exhausted{false};
  parallel_ranges(samples, [&](std::int64_t begin, std::int64_t end) {
    std::int64_t local_min = std::numeric_limits<std::int64_t>::max();
    std::int64_t rej = 0;
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
      local_min = std::min(local_min, mu_value(a, e).doubled());
    }
    rejected += rej;
    std::int64_t cur = min_mu_doubled.load();
    while (local_min < cur && !min_mu_doubled.compare_exchange_weak(cur, local_min)) {
    }
  });
  if (exhausted) throw TooManyRejections("direction sampling exhausted its attempts");
  report.rejected = rejected.load();
  report.min_mu_sampled = HalfInteger::from_doubled(min_mu_doubled.load());
  return report;
}

std::string theta_report_to_json(const ThetaReport& r) {
  std::ostringstream out;
  out << "{\"N\":" << fmt17(r.N) << ",\"min_mu_doubled\":" << r.min_mu_sampled.doubled()
      << ",\"passes_3pi\":" << (r.passes_3pi ? "true" : "false")
      << ",\"below_4pi\":" << (r.below_4pi ? "true" : "false")
      << ",\"equality_witness\":" << (r.equality_witness ? "true" : "false")
      << ",\"equality_tol\":" << fmt17(r.equality_tol) << ",\"samples\":" << r.samples
      << ",\"rejected\":" << r.rejected << ",\"seed\":" << r.seed << "}\n";
  return out.str();
}

}  // namespace netcurv
