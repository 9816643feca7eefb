// Shared generators and independent oracles for the test suites.  All
// randomness is mt19937_64 with fixed seeds, separate from the library's
// counter-based sampling.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "netcurv/graph.hpp"

namespace testutil {

using netcurv::Edge;
using netcurv::Point3;
using netcurv::SpatialGraph;
using netcurv::UnitVector;
using netcurv::Vec3;
using netcurv::Vertex;
using netcurv::VertexStar;

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  while (true) {
    Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    const double n = norm(v);
    if (n > 1e-6) return v / n;
  }
}

inline VertexStar random_star(int d, std::mt19937_64& rng) {
  VertexStar star;
  star.position = {0, 0, 0};
  for (int i = 0; i < d; ++i) star.tangents.push_back(UnitVector(random_unit(rng)));
  return star;
}

inline Point3 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

// Connected random graph: spanning tree plus extra edges, valences capped,
// a few polyline breakpoints sprinkled in.
inline SpatialGraph random_graph(std::mt19937_64& rng, int max_vertices = 12,
                                 int valence_cap = 4, int extra_edges = 3,
                                 int breakpoints = 3) {
  std::uniform_int_distribution<int> nv_dist(4, max_vertices);
  const int nv = nv_dist(rng);
  std::vector<Vertex> vertices;
  std::vector<int> valence(static_cast<std::size_t>(nv), 0);
  for (int i = 0; i < nv; ++i)
    vertices.push_back({"v" + std::to_string(i), random_point(rng)});

  std::vector<Edge> edges;
  auto add_edge = [&](int a, int b) {
    valence[static_cast<std::size_t>(a)] += 1;
    valence[static_cast<std::size_t>(b)] += 1;
    edges.push_back({"e" + std::to_string(edges.size()), "v" + std::to_string(a),
                     "v" + std::to_string(b), {}});
  };
  for (int i = 1; i < nv; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    int j = pick(rng);
    for (int tries = 0; valence[static_cast<std::size_t>(j)] >= valence_cap && tries < 32; ++tries)
      j = pick(rng);
    add_edge(j, i);
  }
  std::uniform_int_distribution<int> pick(0, nv - 1);
  for (int k = 0; k < extra_edges; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (valence[static_cast<std::size_t>(a)] >= valence_cap ||
        valence[static_cast<std::size_t>(b)] >= valence_cap)
      continue;
    add_edge(a, b);
  }

  SpatialGraph g(vertices, edges);
  for (int k = 0; k < breakpoints; ++k) {
    std::uniform_int_distribution<int> epick(0, static_cast<int>(g.edges().size()) - 1);
    const Edge& e = g.edges()[static_cast<std::size_t>(epick(rng))];
    const std::vector<Point3> pts = g.edge_points(e);
    std::uniform_int_distribution<int> spick(0, static_cast<int>(pts.size()) - 2);
    const int s = spick(rng);
    std::normal_distribution<double> jitter(0.0, 0.05);
    const Point3 mid = (pts[static_cast<std::size_t>(s)] + pts[static_cast<std::size_t>(s) + 1]) *
                           0.5 +
                       Vec3{jitter(rng), jitter(rng), jitter(rng)};
    g = insert_breakpoint(g, e.id, static_cast<std::size_t>(s), mid);
  }
  return g;
}

// Random graph with every valence in {2, 3}: a polygon cycle plus up to two
// chords (keeps the pairing enumeration small).
inline SpatialGraph random_23_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv_dist(4, 8);
  const int nv = nv_dist(rng);
  std::vector<Vertex> vertices;
  for (int i = 0; i < nv; ++i)
    vertices.push_back({"v" + std::to_string(i), random_point(rng)});
  std::vector<Edge> edges;
  for (int i = 0; i < nv; ++i)
    edges.push_back({"e" + std::to_string(i), "v" + std::to_string(i),
                     "v" + std::to_string((i + 1) % nv), {}});
  std::uniform_int_distribution<int> chords_dist(1, 2);
  std::vector<int> valence(static_cast<std::size_t>(nv), 2);
  const int chords = chords_dist(rng);
  std::uniform_int_distribution<int> pick(0, nv - 1);
  for (int c = 0; c < chords; ++c) {
    const int a = pick(rng), b = pick(rng);
    if (a == b || valence[static_cast<std::size_t>(a)] > 2 ||
        valence[static_cast<std::size_t>(b)] > 2)
      continue;
    valence[static_cast<std::size_t>(a)] += 1;
    valence[static_cast<std::size_t>(b)] += 1;
    edges.push_back({"c" + std::to_string(c), "v" + std::to_string(a), "v" + std::to_string(b),
                     {random_point(rng)}});
  }
  return SpatialGraph(vertices, edges);
}

// Closed random polygon stored as one loop edge.
inline SpatialGraph random_closed_polygon(std::mt19937_64& rng, int n = 8) {
  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_point(rng));
  std::vector<Vertex> vertices = {{"v0", pts[0]}};
  std::vector<Point3> interior(pts.begin() + 1, pts.end());
  std::vector<Edge> edges = {{"loop", "v0", "v0", interior}};
  return SpatialGraph(vertices, edges);
}

// Convex planar polygon in a random plane: sorted angles on an ellipse.
inline SpatialGraph random_convex_polygon(std::mt19937_64& rng, int n = 10) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(2.0 * M_PI * u01(rng));
  std::sort(angles.begin(), angles.end());
  const double a = 0.5 + u01(rng), b = 0.5 + u01(rng);
  const Vec3 ex = random_unit(rng);
  Vec3 ey = cross(ex, random_unit(rng));
  ey = ey / norm(ey);
  const Point3 origin = random_point(rng);

  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) {
    // merge near-duplicate angles rather than emitting zero-length segments
    if (i > 0 && angles[static_cast<std::size_t>(i)] - angles[static_cast<std::size_t>(i) - 1] < 1e-3)
      continue;
    pts.push_back(origin + ex * (a * std::cos(angles[static_cast<std::size_t>(i)])) +
                  ey * (b * std::sin(angles[static_cast<std::size_t>(i)])));
  }
  if (pts.size() < 3) return random_convex_polygon(rng, n);
  std::vector<Vertex> vertices = {{"v0", pts[0]}};
  std::vector<Point3> interior(pts.begin() + 1, pts.end());
  std::vector<Edge> edges = {{"loop", "v0", "v0", interior}};
  return SpatialGraph(vertices, edges);
}

// Refinement of g: k breakpoints inserted at arbitrary nearby positions
// (the inserted vertex need not lie on the old segment).
inline SpatialGraph random_refinement(const SpatialGraph& g, int k, std::mt19937_64& rng) {
  SpatialGraph out = g;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> epick(0, static_cast<int>(out.edges().size()) - 1);
    const Edge& e = out.edges()[static_cast<std::size_t>(epick(rng))];
    std::uniform_int_distribution<int> spick(0, static_cast<int>(e.polyline.size()));
    const int s = spick(rng);
    const std::vector<Point3> pts = out.edge_points(e);
    std::normal_distribution<double> jitter(0.0, 0.15);
    const Point3 p = (pts[static_cast<std::size_t>(s)] + pts[static_cast<std::size_t>(s) + 1]) * 0.5 +
                     Vec3{jitter(rng), jitter(rng), jitter(rng)};
    out = insert_breakpoint(out, e.id, static_cast<std::size_t>(s), p);
  }
  return out;
}

// Brute-force count of perfect matchings of the elements 0..2m-1, where
// elements 2k and 2k+1 are the two copies of end k (a "self" pair).
inline void count_matchings(std::vector<char>& used, bool allow_self, long long& total) {
  int first = -1;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) {
    ++total;
    return;
  }
  used[static_cast<std::size_t>(first)] = 1;
  for (std::size_t j = static_cast<std::size_t>(first) + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    if (!allow_self && (first / 2 == static_cast<int>(j) / 2)) continue;
    used[j] = 1;
    count_matchings(used, allow_self, total);
    used[j] = 0;
  }
  used[static_cast<std::size_t>(first)] = 0;
}

inline long long brute_matching_count(int d, bool allow_self) {
  std::vector<char> used(static_cast<std::size_t>(2 * d), 0);
  long long total = 0;
  count_matchings(used, allow_self, total);
  return total;
}

}  // namespace testutil
