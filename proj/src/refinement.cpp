#include "netcurv/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "netcurv/io_util.hpp"
#include "netcurv/vertex_curvature.hpp"

namespace netcurv {

namespace {
constexpr double kParamTol = 1e-10;   // extremum location tolerance in parameter space
constexpr double kMergeTol = 1e-12;   // duplicate breakpoints closer than this merge
}  // namespace

const Vertex& ParametricGraph::vertex(const std::string& id) const {
  for (const Vertex& v : vertices)
    if (v.id == id) return v;
  throw UnknownVertex(id);
}

void ParametricGraph::validate() const {
  for (const ParametricEdge& e : edges) {
    if (dist(e.sample(0.0), vertex(e.from).p) > 1e-12)
      throw ValidationError("edge '" + e.id + "': sample(0) does not match vertex '" + e.from + "'");
    if (dist(e.sample(1.0), vertex(e.to).p) > 1e-12)
      throw ValidationError("edge '" + e.id + "': sample(1) does not match vertex '" + e.to + "'");
  }
}

// ---------------------------------------------------------------------------
// Built-in parametric graphs

namespace {

Vec3 trefoil_curve(double t) {
  return {std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t),
          -std::sin(3.0 * t)};
}

Point3 lerp(const Point3& a, const Point3& b, double t) { return a + (b - a) * t; }

// Smooth version of the knotted chord used by the knotted theta example:
// connector down from q+, vertical stub, trefoil arc, stub, connector to q-.
Point3 trefoil_chord(double t) {
  const double gap = 0.15;
  const double stub_height = 4.0;
  const double scale = 0.11;
  const Vec3 center{0, 0, -2};
  auto place = [&](const Vec3& raw) { return center + scale * Vec3{raw.x, -raw.z, raw.y}; };
  const Vec3 p_in = trefoil_curve(gap);
  const Vec3 p_out = trefoil_curve(2.0 * M_PI - gap);
  const Vec3 enter = place(p_in + Vec3{0, stub_height, 0});
  const Vec3 exit = place(p_out + Vec3{0, stub_height, 0});
  if (t < 0.1) return lerp({1, 0, 0}, enter, t / 0.1);
  if (t < 0.2) return lerp(enter, place(p_in), (t - 0.1) / 0.1);
  if (t < 0.8) {
    const double u = gap + (2.0 * M_PI - 2.0 * gap) * (t - 0.2) / 0.6;
    return place(trefoil_curve(u));
  }
  if (t < 0.9) return lerp(place(p_out), exit, (t - 0.8) / 0.1);
  return lerp(exit, {-1, 0, 0}, (t - 0.9) / 0.1);
}

ParametricGraph make_circle_diameter_theta() {
  ParametricGraph pg;
  pg.vertices = {{"q+", {1, 0, 0}}, {"q-", {-1, 0, 0}}};
  pg.edges.push_back({"arc_top", "q+", "q-",
                      [](double t) -> Point3 { return {std::cos(M_PI * t), std::sin(M_PI * t), 0}; }});
  pg.edges.push_back({"arc_bot", "q+", "q-", [](double t) -> Point3 {
                        return {std::cos(M_PI * t), -std::sin(M_PI * t), 0};
                      }});
  pg.edges.push_back({"chord", "q+", "q-", [](double t) -> Point3 { return {1 - 2 * t, 0, 0}; }});
  return pg;
}

ParametricGraph make_trefoil_theta() {
  ParametricGraph pg = make_circle_diameter_theta();
  pg.edges[2].sample = trefoil_chord;
  return pg;
}

ParametricGraph make_twisted_two_chord() {
  const double ca = 0.52, cb = -0.44;
  const double sa = std::sqrt(1.0 - ca * ca), sb = std::sqrt(1.0 - cb * cb);
  const double ta = std::atan2(ca, sa), tb = std::atan2(cb, sb);
  const double w = 0.5 * std::min(sa, sb);
  const double mid = 0.5 * (ca + cb);
  const double rmax = 0.5 * (ca - cb);
  const double rmin = 0.10;
  const int twists = 1;

  auto arc = [](double from, double to) {
    return [from, to](double t) -> Point3 {
      const double u = from + (to - from) * t;
      return {std::cos(u), std::sin(u), 0};
    };
  };
  auto chord = [=](double span, bool first) {
    return [=](double t) -> Point3 {
      const double x = -span + 2.0 * span * t;
      if (std::fabs(x) >= w) return {x, first ? ca : cb, 0.0};
      const double r = rmin + (rmax - rmin) * (x / w) * (x / w);
      const double phi = 2.0 * M_PI * twists * (x + w) / (2.0 * w);
      const double sgn = first ? 1.0 : -1.0;
      return {x, mid + sgn * r * std::cos(phi), sgn * r * std::sin(phi)};
    };
  };

  ParametricGraph pg;
  pg.vertices = {{"aR", {sa, ca, 0}}, {"aL", {-sa, ca, 0}}, {"bR", {sb, cb, 0}}, {"bL", {-sb, cb, 0}}};
  pg.edges.push_back({"arc_top", "aR", "aL", arc(ta, M_PI - ta)});
  pg.edges.push_back({"arc_left", "aL", "bL", arc(M_PI - ta, M_PI - tb)});
  pg.edges.push_back({"arc_bot", "bL", "bR", arc(M_PI - tb, 2.0 * M_PI + tb)});
  pg.edges.push_back({"arc_right", "bR", "aR", arc(tb, ta)});
  pg.edges.push_back({"chord_a", "aL", "aR", chord(sa, true)});
  pg.edges.push_back({"chord_b", "bL", "bR", chord(sb, false)});
  return pg;
}

}  // namespace

ParametricGraph make_parametric_example(const std::string& name) {
  ParametricGraph pg;
  if (name == "circle_diameter_theta")
    pg = make_circle_diameter_theta();
  else if (name == "trefoil_theta")
    pg = make_trefoil_theta();
  else if (name == "twisted_two_chord")
    pg = make_twisted_two_chord();
  else
    throw BadParameter("unknown parametric example: " + name);
  pg.validate();
  return pg;
}

ParametricGraph parametric_from_polyline(const SpatialGraph& g) {
  ParametricGraph pg;
  pg.vertices = g.vertices();
  for (const Edge& e : g.edges()) {
    auto pts = std::make_shared<std::vector<Point3>>(g.edge_points(e));
    pg.edges.push_back({e.id, e.from, e.to, [pts](double t) -> Point3 {
                          const double m = static_cast<double>(pts->size() - 1);
                          const double s = std::clamp(t, 0.0, 1.0) * m;
                          const std::size_t k =
                              std::min(static_cast<std::size_t>(s), pts->size() - 2);
                          return lerp((*pts)[k], (*pts)[k + 1], s - static_cast<double>(k));
                        }});
  }
  pg.validate();
  return pg;
}

// ---------------------------------------------------------------------------

namespace {

Inscription inscribe_at_params(const ParametricGraph& pg,
                               const std::vector<std::vector<double>>& params) {
  std::vector<Edge> edges;
  std::vector<std::vector<double>> kept(pg.edges.size());
  for (std::size_t e = 0; e < pg.edges.size(); ++e) {
    const ParametricEdge& pe = pg.edges[e];
    Edge edge{pe.id, pe.from, pe.to, {}};
    Point3 prev = pg.vertex(pe.from).p;
    kept[e].push_back(0.0);
    for (double t : params[e]) {
      if (t <= 0.0 || t >= 1.0) continue;
      const Point3 p = pe.sample(t);
      if (dist(p, prev) < kMergeTol) continue;
      edge.polyline.push_back(p);
      kept[e].push_back(t);
      prev = p;
    }
    if (!edge.polyline.empty() && dist(edge.polyline.back(), pg.vertex(pe.to).p) < kMergeTol) {
      edge.polyline.pop_back();
      kept[e].pop_back();
    }
    if (edge.polyline.empty() && pe.from == pe.to) {
      // a loop needs at least one interior point to stay a valid polyline;
      // t = 1/2 is dyadic, so nesting with finer levels is preserved
      edge.polyline.push_back(pe.sample(0.5));
      kept[e].push_back(0.5);
    }
    kept[e].push_back(1.0);
    edges.push_back(std::move(edge));
  }
  return {SpatialGraph(pg.vertices, std::move(edges)), std::move(kept)};
}

}  // namespace

Inscription inscribe(const ParametricGraph& pg, int level) {
  if (level < 0 || level > 20) throw BadParameter("inscribe: level must be in [0, 20]");
  std::vector<std::vector<double>> params(pg.edges.size());
  const std::int64_t n = std::int64_t{1} << level;
  for (auto& p : params)
    for (std::int64_t k = 1; k < n; ++k) p.push_back(static_cast<double>(k) / static_cast<double>(n));
  return inscribe_at_params(pg, params);
}

std::vector<LevelCurvature> approximate_net_curvature(const ParametricGraph& pg, int max_level) {
  if (max_level < 0 || max_level > 20)
    throw BadParameter("approximate_net_curvature: max_level must be in [0, 20]");
  std::vector<LevelCurvature> rows;
  for (int level = 0; level <= max_level; ++level) {
    const Inscription insc = inscribe(pg, level);
    std::int64_t count = static_cast<std::int64_t>(insc.graph.vertices().size());
    for (const Edge& e : insc.graph.edges()) count += static_cast<std::int64_t>(e.polyline.size());
    rows.push_back({level, count, net_total_curvature(insc.graph)});
  }
  return rows;
}

namespace {

// Ternary search for an extremum of h(sample(t)) on [lo, hi] (sign = +1 for
// maxima, -1 for minima); assumes the bracket isolates one extremum.
double refine_extremum(const std::function<Point3(double)>& sample, const Vec3& e, double lo,
                       double hi, double sign) {
  while (hi - lo > kParamTol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (sign * dot(e, sample(m1)) < sign * dot(e, sample(m2)))
      lo = m1;
    else
      hi = m2;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Inscription direction_refinement(const ParametricGraph& pg, const Inscription& p,
                                 const UnitVector& e) {
  if (p.edge_params.size() != pg.edges.size())
    throw BadParameter("inscription does not match the parametric graph");

  constexpr int kScan = 64;
  std::vector<std::vector<double>> params(pg.edges.size());
  for (std::size_t ei = 0; ei < pg.edges.size(); ++ei) {
    const auto& sample = pg.edges[ei].sample;
    std::vector<double> out(p.edge_params[ei].begin(), p.edge_params[ei].end());

    const std::vector<double>& base = p.edge_params[ei];
    for (std::size_t k = 0; k + 1 < base.size(); ++k) {
      const double lo = base[k], hi = base[k + 1];
      double h[kScan + 1];
      for (int j = 0; j <= kScan; ++j)
        h[j] = dot(e.vec(), sample(lo + (hi - lo) * j / kScan));
      for (double sign : {1.0, -1.0}) {
        int jbest = 0;
        for (int j = 1; j <= kScan; ++j)
          if (sign * h[j] > sign * h[jbest]) jbest = j;
        if (jbest == 0 || jbest == kScan) continue;  // extremum at an existing breakpoint
        const double step = (hi - lo) / kScan;
        const double t = refine_extremum(sample, e.vec(), lo + (jbest - 1) * step,
                                         lo + (jbest + 1) * step, sign);
        out.push_back(t);
      }
    }
    std::sort(out.begin(), out.end());
    params[ei] = std::move(out);
  }
  return inscribe_at_params(pg, params);
}

// ---------------------------------------------------------------------------

SpatialGraph straighten_vertex(const SpatialGraph& g, const PointRef& point) {
  if (!point.is_vertex()) {
    const Edge& e = g.edge(point.edge_id);
    if (point.breakpoint_index >= e.polyline.size())
      throw BadParameter("breakpoint index out of range: " + point.str());
    std::vector<Edge> edges = g.edges();
    for (Edge& ee : edges)
      if (ee.id == point.edge_id)
        ee.polyline.erase(ee.polyline.begin() +
                          static_cast<std::ptrdiff_t>(point.breakpoint_index));
    return SpatialGraph(g.vertices(), std::move(edges));
  }

  const std::string& vid = point.vertex_id;
  if (g.valence(vid) != 2)
    throw NotRemovable("vertex '" + vid + "' has valence " + std::to_string(g.valence(vid)));

  // The two incident edge-ends.
  std::vector<std::pair<std::size_t, int>> ends;  // (edge index, side)
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (g.edges()[i].from == vid) ends.emplace_back(i, 0);
    if (g.edges()[i].to == vid) ends.emplace_back(i, 1);
  }
  if (ends.size() != 2) throw Error("valence bookkeeping mismatch at '" + vid + "'");
  if (ends[0].first == ends[1].first)
    throw NotRemovable("vertex '" + vid + "' carries a loop");

  const Edge& e1 = g.edges()[ends[0].first];
  const Edge& e2 = g.edges()[ends[1].first];

  // Walk far-end of e1 -> v (exclusive) -> far-end of e2.
  Edge merged;
  merged.id = e1.id;
  merged.from = ends[0].second == 0 ? e1.to : e1.from;
  merged.to = ends[1].second == 0 ? e2.to : e2.from;
  std::vector<Point3> pts = e1.polyline;
  if (ends[0].second == 0) std::reverse(pts.begin(), pts.end());
  std::vector<Point3> pts2 = e2.polyline;
  if (ends[1].second == 1) std::reverse(pts2.begin(), pts2.end());
  pts.insert(pts.end(), pts2.begin(), pts2.end());
  merged.polyline = std::move(pts);

  std::vector<Vertex> vertices;
  for (const Vertex& v : g.vertices())
    if (v.id != vid) vertices.push_back(v);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (i == ends[0].first) {
      edges.push_back(merged);
      continue;
    }
    if (i == ends[1].first) continue;
    edges.push_back(g.edges()[i]);
  }
  return SpatialGraph(std::move(vertices), std::move(edges));
}

std::string levels_to_csv(const std::vector<LevelCurvature>& rows) {
  std::ostringstream out;
  out << "level,vertex_count,N\n";
  for (const LevelCurvature& r : rows)
    out << r.level << ',' << r.vertex_count << ',' << fmt17(r.N) << '\n';
  return out.str();
}

}  // namespace netcurv
