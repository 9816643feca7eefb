#include "netcurv/examples.hpp"

#include <cmath>

namespace netcurv {

namespace {

// Deterministic sub-half wiggle applied to interior arc samples so that no
// two sample heights coincide for the axis-aligned probe directions.
double wiggle(int j) { return 0.2 * std::sin(2.39996322972865332 * (j + 1)); }

std::vector<Point3> circle_arc_points(double theta_from, double theta_to, int segments) {
  // interior points only, angles strictly between the ends
  std::vector<Point3> pts;
  const double span = theta_to - theta_from;
  for (int j = 1; j < segments; ++j) {
    const double t = theta_from + span * (static_cast<double>(j) + wiggle(j)) / segments;
    pts.push_back({std::cos(t), std::sin(t), 0.0});
  }
  return pts;
}

}  // namespace

SpatialGraph make_butterfly() {
  std::vector<Vertex> vertices = {
      {"q0+", {0, 1, 0}},  {"q0-", {0, -1, 0}}, {"q1+", {1, 3, 0}},
      {"q1-", {1, -3, 0}}, {"q2+", {-1, 3, 0}}, {"q2-", {-1, -3, 0}},
  };
  std::vector<Edge> edges = {
      {"L0", "q0-", "q0+", {}}, {"L1", "q1-", "q1+", {}}, {"L2", "q2-", "q2+", {}},
      {"s1+", "q0+", "q1+", {}}, {"s2+", "q0+", "q2+", {}},
      {"s1-", "q0-", "q1-", {}}, {"s2-", "q0-", "q2-", {}},
  };
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph make_coplanar_star(int d) {
  if (d < 1) throw BadParameter("coplanar_star: d must be >= 1");
  std::vector<Vertex> vertices = {{"c", {0, 0, 0}}};
  std::vector<Edge> edges;
  for (int k = 0; k < d; ++k) {
    const double t = 2.0 * M_PI * k / d;
    vertices.push_back({"r" + std::to_string(k), {std::cos(t), std::sin(t), 0.0}});
    edges.push_back({"e" + std::to_string(k), "c", "r" + std::to_string(k), {}});
  }
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph make_x_crossing() {
  std::vector<Vertex> vertices = {
      {"c", {0, 0, 0}}, {"px", {1, 0, 0}}, {"mx", {-1, 0, 0}}, {"py", {0, 1, 0}}, {"my", {0, -1, 0}},
  };
  std::vector<Edge> edges = {
      {"e0", "c", "px", {}}, {"e1", "c", "py", {}}, {"e2", "c", "mx", {}}, {"e3", "c", "my", {}}};
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph make_standard_theta(int n) {
  if (n < 3) throw BadParameter("standard_theta: n must be >= 3");
  const int m = std::max(2, (n + 1) / 2);  // segments per semicircular arc
  std::vector<Vertex> vertices = {{"q+", {1, 0, 0}}, {"q-", {-1, 0, 0}}};
  std::vector<Edge> edges;
  edges.push_back({"arc_top", "q+", "q-", circle_arc_points(0.0, M_PI, m)});
  edges.push_back({"arc_bot", "q+", "q-", circle_arc_points(0.0, -M_PI, m)});
  edges.push_back({"chord", "q+", "q-", {{0, 0, 0}}});
  return SpatialGraph(std::move(vertices), std::move(edges));
}

namespace {

// Classic (2,3) torus knot curve; embedded, radius <= 3.
Vec3 trefoil_curve(double t) {
  return {std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t),
          -std::sin(3.0 * t)};
}

}  // namespace

SpatialGraph make_knotted_theta(int n) {
  if (n < 16) throw BadParameter("knotted_theta: n must be >= 16");
  const int m = std::max(2, (n + 1) / 2);
  std::vector<Vertex> vertices = {{"q+", {1, 0, 0}}, {"q-", {-1, 0, 0}}};
  std::vector<Edge> edges;
  edges.push_back({"arc_top", "q+", "q-", circle_arc_points(0.0, M_PI, m)});
  edges.push_back({"arc_bot", "q+", "q-", circle_arc_points(0.0, -M_PI, m)});

  // The chord dives below the circle plane and ties an overhand knot inside
  // a small ball centered at (0, 0, -2).  The knotted piece is a trefoil
  // with a short parameter gap; the rope enters and leaves the ball through
  // two vertical stubs rising from the gap ends (the vertical line above
  // the gap meets no other strand of this curve).
  const double gap = 0.15;
  const double stub_height = 4.0;
  const double scale = 0.11;
  const Vec3 center{0, 0, -2};
  auto place = [&](const Vec3& raw) {
    // rotate raw +y to world +z, then scale and translate
    return center + scale * Vec3{raw.x, -raw.z, raw.y};
  };

  std::vector<Point3> chord;
  const Vec3 enter_raw = trefoil_curve(gap) + Vec3{0, stub_height, 0};
  const Vec3 exit_raw = trefoil_curve(2.0 * M_PI - gap) + Vec3{0, stub_height, 0};
  chord.push_back(place(enter_raw));
  for (int j = 0; j <= n; ++j) {
    const double t = gap + (2.0 * M_PI - 2.0 * gap) * j / n;
    chord.push_back(place(trefoil_curve(t)));
  }
  chord.push_back(place(exit_raw));
  edges.push_back({"chord", "q+", "q-", std::move(chord)});
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph make_two_chord(int n, int twists) {
  if (n < 8) throw BadParameter("two_chord: n must be >= 8");
  if (twists < 0) throw BadParameter("two_chord: twists must be >= 0");

  const double ca = 0.52, cb = -0.44;
  const double sa = std::sqrt(1.0 - ca * ca), sb = std::sqrt(1.0 - cb * cb);
  std::vector<Vertex> vertices = {
      {"aR", {sa, ca, 0}}, {"aL", {-sa, ca, 0}}, {"bR", {sb, cb, 0}}, {"bL", {-sb, cb, 0}}};

  const double ta = std::atan2(ca, sa);        // junction angles on the circle
  const double tb = std::atan2(cb, sb);        // negative
  std::vector<Edge> edges;
  const int arc_segs = std::max(2, n / 4);
  edges.push_back({"arc_top", "aR", "aL", circle_arc_points(ta, M_PI - ta, arc_segs)});
  edges.push_back({"arc_left", "aL", "bL", circle_arc_points(M_PI - ta, M_PI - tb, arc_segs)});
  edges.push_back({"arc_bot", "bL", "bR", circle_arc_points(M_PI - tb, 2.0 * M_PI + tb, arc_segs)});
  edges.push_back({"arc_right", "bR", "aR", circle_arc_points(tb, ta, arc_segs)});

  // Chords run left to right, strictly monotone in x.  With twists > 0 the
  // two strands wind about their common midline inside |x| <= w.
  const double w = 0.5 * std::min(sa, sb);
  const double mid = 0.5 * (ca + cb);
  const double rmax = 0.5 * (ca - cb);
  const double rmin = 0.10;
  auto strand = [&](double x, bool first) -> Point3 {
    if (twists == 0 || std::fabs(x) >= w) return {x, first ? ca : cb, 0.0};
    const double r = rmin + (rmax - rmin) * (x / w) * (x / w);
    const double phi = 2.0 * M_PI * twists * (x + w) / (2.0 * w);
    const double sgn = first ? 1.0 : -1.0;
    return {x, mid + sgn * r * std::cos(phi), sgn * r * std::sin(phi)};
  };
  auto build_chord = [&](double span, bool first) {
    std::vector<Point3> pts;
    const int k_out = std::max(2, n / 8);
    const int k_in = std::max(16 * std::max(twists, 1), n / 2);
    for (int j = 1; j < k_out; ++j) pts.push_back(strand(-span + (span - w) * j / k_out, first));
    for (int j = 0; j <= k_in; ++j) pts.push_back(strand(-w + 2.0 * w * j / k_in, first));
    for (int j = 1; j < k_out; ++j) pts.push_back(strand(w + (span - w) * j / k_out, first));
    return pts;
  };
  edges.push_back({"chord_a", "aL", "aR", build_chord(sa, true)});
  edges.push_back({"chord_b", "bL", "bR", build_chord(sb, false)});
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph make_convex_polygon(int n) {
  if (n < 3) throw BadParameter("convex_polygon: n must be >= 3");
  std::vector<Vertex> vertices = {{"v0", {1, 0, 0}}};
  std::vector<Point3> interior;
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    interior.push_back({std::cos(t), std::sin(t), 0.0});
  }
  std::vector<Edge> edges = {{"loop", "v0", "v0", std::move(interior)}};
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph make_valence4_star(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw BadParameter("valence4_star: need 0 < alpha <= 1");
  const double c = std::cos(alpha), s = std::sin(alpha);
  std::vector<Vertex> vertices = {
      {"c", {0, 0, 0}}, {"t1", {1, 0, 0}}, {"t2", {0, 1, 0}}, {"t3", {-c, 0, s}}, {"t4", {0, -c, -s}}};
  std::vector<Edge> edges = {
      {"e1", "c", "t1", {}}, {"e2", "c", "t2", {}}, {"e3", "c", "t3", {}}, {"e4", "c", "t4", {}}};
  return SpatialGraph(std::move(vertices), std::move(edges));
}

SpatialGraph generate_example(const std::string& name, const ExampleParams& params) {
  if (name == "butterfly") return make_butterfly();
  if (name == "coplanar_star") return make_coplanar_star(params.d);
  if (name == "x_crossing") return make_x_crossing();
  if (name == "standard_theta") return make_standard_theta(params.n);
  if (name == "knotted_theta") return make_knotted_theta(params.n);
  if (name == "two_chord") return make_two_chord(params.n, params.twists);
  if (name == "convex_polygon") return make_convex_polygon(params.n);
  if (name == "valence4_star") return make_valence4_star(params.alpha);
  throw BadParameter("unknown example: " + name);
}

}  // namespace netcurv
