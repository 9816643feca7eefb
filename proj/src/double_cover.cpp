#include "netcurv/double_cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "netcurv/io_util.hpp"

namespace netcurv {

namespace {

// Unit directions into an edge from each of its two endpoints.
struct EdgeTangents {
  Vec3 at_side[2];
};

std::vector<EdgeTangents> edge_tangents(const SpatialGraph& g) {
  std::vector<EdgeTangents> out;
  for (const Edge& e : g.edges()) {
    const std::vector<Point3> pts = g.edge_points(e);
    EdgeTangents t;
    t.at_side[0] = UnitVector::normalize(pts[1] - pts[0]).vec();
    t.at_side[1] = UnitVector::normalize(pts[pts.size() - 2] - pts.back()).vec();
    out.push_back(t);
  }
  return out;
}

bool is_self_pair(const std::vector<CopyEnd>& ends, int a, int b) {
  const CopyEnd& x = ends[static_cast<std::size_t>(a)];
  const CopyEnd& y = ends[static_cast<std::size_t>(b)];
  return x.edge == y.edge && x.side == y.side;
}

// All perfect matchings of `ends`, first unmatched element paired with each
// later one; emission order is lexicographic in the pair encoding.
void matchings_of_vertex(const std::vector<CopyEnd>& ends, bool allow_self,
                         std::vector<std::pair<int, int>>& current, std::vector<char>& used,
                         const std::function<bool()>& emit, bool& keep_going) {
  if (!keep_going) return;
  int first = -1;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) {
    keep_going = emit();
    return;
  }
  used[static_cast<std::size_t>(first)] = 1;
  for (std::size_t j = static_cast<std::size_t>(first) + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    if (!allow_self && ends.size() > 2 && is_self_pair(ends, first, static_cast<int>(j)))
      continue;
    used[j] = 1;
    current.emplace_back(first, static_cast<int>(j));
    matchings_of_vertex(ends, allow_self, current, used, emit, keep_going);
    current.pop_back();
    used[j] = 0;
    if (!keep_going) break;
  }
  used[static_cast<std::size_t>(first)] = 0;
}

}  // namespace

int DoubledGraph::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertex_ids.size(); ++i)
    if (vertex_ids[i] == id) return static_cast<int>(i);
  throw UnknownVertex(id);
}

DoubledGraph double_graph(const SpatialGraph& g) {
  DoubledGraph d;
  d.base = &g;
  for (const Vertex& v : g.vertices()) d.vertex_ids.push_back(v.id);
  d.ends_at.resize(g.vertices().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    for (int side = 0; side < 2; ++side) {
      const std::string& vid = side == 0 ? edge.from : edge.to;
      const int v = d.vertex_index(vid);
      for (int copy = 0; copy < 2; ++copy)
        d.ends_at[static_cast<std::size_t>(v)].push_back(
            {static_cast<int>(e), side, copy});
    }
  }
  return d;
}

Parameterization euler_circuit(const DoubledGraph& d) {
  const SpatialGraph& g = *d.base;
  const int ne = static_cast<int>(g.edges().size());
  std::vector<std::array<char, 2>> used(static_cast<std::size_t>(ne), {0, 0});
  auto vertex_of_side = [&](int edge, int side) {
    const Edge& e = g.edges()[static_cast<std::size_t>(edge)];
    return d.vertex_index(side == 0 ? e.from : e.to);
  };

  auto next_unused_at = [&](int v) -> int {
    const auto& ends = d.ends_at[static_cast<std::size_t>(v)];
    for (std::size_t k = 0; k < ends.size(); ++k)
      if (!used[static_cast<std::size_t>(ends[k].edge)][static_cast<std::size_t>(ends[k].copy)])
        return static_cast<int>(k);
    return -1;
  };

  // Greedy closed subtour from v; with all valences even it ends back at v.
  auto subtour = [&](int v_start) {
    std::vector<WalkStep> steps;
    int v = v_start;
    while (true) {
      const int k = next_unused_at(v);
      if (k < 0) break;
      const CopyEnd end = d.ends_at[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
      used[static_cast<std::size_t>(end.edge)][static_cast<std::size_t>(end.copy)] = 1;
      steps.push_back({end.edge, end.copy, end.side});
      v = vertex_of_side(end.edge, 1 - end.side);
    }
    return steps;
  };

  std::vector<WalkStep> tour = subtour(0);
  bool spliced = true;
  while (spliced) {
    spliced = false;
    for (std::size_t k = 0; k < tour.size(); ++k) {
      const int v = vertex_of_side(tour[k].edge, tour[k].from_side);
      if (next_unused_at(v) < 0) continue;
      std::vector<WalkStep> sub = subtour(v);
      tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(k), sub.begin(), sub.end());
      spliced = true;
      break;
    }
  }

  // Pairing induced by the traversal: at each vertex the arriving end is
  // matched with the next departing end.
  VertexPairing pairing;
  pairing.pairs.resize(d.ends_at.size());
  auto end_index = [&](int v, int edge, int side, int copy) {
    const auto& ends = d.ends_at[static_cast<std::size_t>(v)];
    for (std::size_t k = 0; k < ends.size(); ++k)
      if (ends[k].edge == edge && ends[k].side == side && ends[k].copy == copy)
        return static_cast<int>(k);
    throw Error("end lookup failed");
  };
  for (std::size_t k = 0; k < tour.size(); ++k) {
    const WalkStep& in = tour[k];
    const WalkStep& out = tour[(k + 1) % tour.size()];
    const int v = vertex_of_side(in.edge, 1 - in.from_side);
    const int a = end_index(v, in.edge, 1 - in.from_side, in.copy);
    const int b = end_index(v, out.edge, out.from_side, out.copy);
    pairing.pairs[static_cast<std::size_t>(v)].emplace_back(std::min(a, b), std::max(a, b));
  }
  for (auto& pp : pairing.pairs) std::sort(pp.begin(), pp.end());

  Parameterization param = parameterization_curvature(g, pairing);
  return param;
}

void enumerate_pairings(const DoubledGraph& d, bool allow_self,
                        const std::function<bool(const VertexPairing&)>& visit, int max_valence) {
  for (std::size_t v = 0; v < d.ends_at.size(); ++v)
    if (d.ends_at[v].size() > 2 * static_cast<std::size_t>(max_valence))
      throw ValenceTooLarge("vertex '" + d.vertex_ids[v] + "' has valence " +
                            std::to_string(d.ends_at[v].size() / 2) + " > " +
                            std::to_string(max_valence));

  VertexPairing pairing;
  pairing.pairs.resize(d.ends_at.size());
  bool keep_going = true;

  std::function<void(std::size_t)> recurse = [&](std::size_t v) {
    if (!keep_going) return;
    if (v == d.ends_at.size()) {
      keep_going = visit(pairing);
      return;
    }
    std::vector<char> used(d.ends_at[v].size(), 0);
    std::vector<std::pair<int, int>>& current = pairing.pairs[v];
    matchings_of_vertex(
        d.ends_at[v], allow_self, current, used,
        [&]() {
          recurse(v + 1);
          return keep_going;
        },
        keep_going);
  };
  recurse(0);
}

Parameterization parameterization_curvature(const SpatialGraph& g, const VertexPairing& pairing) {
  const DoubledGraph d = double_graph(g);
  if (pairing.pairs.size() != d.ends_at.size())
    throw IncompletePairing("pairing covers " + std::to_string(pairing.pairs.size()) +
                            " vertices, graph has " + std::to_string(d.ends_at.size()));

  // partner[v][k] = index of the end matched with ends_at[v][k]
  std::vector<std::vector<int>> partner(d.ends_at.size());
  for (std::size_t v = 0; v < d.ends_at.size(); ++v) {
    partner[v].assign(d.ends_at[v].size(), -1);
    for (const auto& [a, b] : pairing.pairs[v]) {
      if (a < 0 || b < 0 || a == b ||
          static_cast<std::size_t>(std::max(a, b)) >= d.ends_at[v].size())
        throw IncompletePairing("bad pair at vertex '" + d.vertex_ids[v] + "'");
      if (partner[v][static_cast<std::size_t>(a)] != -1 ||
          partner[v][static_cast<std::size_t>(b)] != -1)
        throw IncompletePairing("end matched twice at vertex '" + d.vertex_ids[v] + "'");
      partner[v][static_cast<std::size_t>(a)] = b;
      partner[v][static_cast<std::size_t>(b)] = a;
    }
    for (int p : partner[v])
      if (p < 0) throw IncompletePairing("unmatched end at vertex '" + d.vertex_ids[v] + "'");
  }

  auto vertex_of_side = [&](int edge, int side) {
    const Edge& e = g.edges()[static_cast<std::size_t>(edge)];
    return d.vertex_index(side == 0 ? e.from : e.to);
  };
  auto end_index = [&](int v, int edge, int side, int copy) {
    const auto& ends = d.ends_at[static_cast<std::size_t>(v)];
    for (std::size_t k = 0; k < ends.size(); ++k)
      if (ends[k].edge == edge && ends[k].side == side && ends[k].copy == copy)
        return static_cast<int>(k);
    throw Error("end lookup failed");
  };

  Parameterization param;
  param.pairing = pairing;

  // Assemble the closed walks by following pairs through the vertices.
  std::vector<std::array<char, 2>> seen(g.edges().size(), {0, 0});
  for (std::size_t e0 = 0; e0 < g.edges().size(); ++e0)
    for (int c0 = 0; c0 < 2; ++c0) {
      if (seen[e0][static_cast<std::size_t>(c0)]) continue;
      std::vector<WalkStep> walk;
      int edge = static_cast<int>(e0), copy = c0, from_side = 0;
      do {
        seen[static_cast<std::size_t>(edge)][static_cast<std::size_t>(copy)] = 1;
        walk.push_back({edge, copy, from_side});
        const int arrive_side = 1 - from_side;
        const int v = vertex_of_side(edge, arrive_side);
        const int k = end_index(v, edge, arrive_side, copy);
        const int pk = partner[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
        const CopyEnd nxt = d.ends_at[static_cast<std::size_t>(v)][static_cast<std::size_t>(pk)];
        edge = nxt.edge;
        copy = nxt.copy;
        from_side = nxt.side;
      } while (!(edge == static_cast<int>(e0) && copy == c0 && from_side == 0));
      param.walks.push_back(std::move(walk));
    }

  // Curvature: doubled interior turning plus matched-pair angles.
  const std::vector<EdgeTangents> tangents = edge_tangents(g);
  double total = 0.0;
  for (const Edge& e : g.edges()) total += 2.0 * edge_interior_curvature(g, e.id);
  for (std::size_t v = 0; v < d.ends_at.size(); ++v) {
    if (d.ends_at[v].size() <= 2) continue;  // valence-1: free boundary, no turn
    for (const auto& [a, b] : pairing.pairs[v]) {
      const CopyEnd& x = d.ends_at[v][static_cast<std::size_t>(a)];
      const CopyEnd& y = d.ends_at[v][static_cast<std::size_t>(b)];
      const Vec3& tx = tangents[static_cast<std::size_t>(x.edge)].at_side[x.side];
      const Vec3& ty = tangents[static_cast<std::size_t>(y.edge)].at_side[y.side];
      total += angle_between(tx, -ty);
    }
  }
  param.total_curvature = total;
  return param;
}

MinHalfCurvature min_half_curvature(const SpatialGraph& g, bool allow_self, int max_valence) {
  const DoubledGraph d = double_graph(g);
  MinHalfCurvature best;
  bool have = false;
  enumerate_pairings(
      d, allow_self,
      [&](const VertexPairing& pairing) {
        const Parameterization p = parameterization_curvature(g, pairing);
        if (!have || p.total_curvature < best.value * 2.0) {
          best.value = 0.5 * p.total_curvature;
          best.witness = pairing;
          have = true;
        }
        return true;
      },
      max_valence);
  if (!have) throw Error("no admissible pairing");
  return best;
}

std::string pairing_to_json(const DoubledGraph& d, const VertexPairing& pairing) {
  std::ostringstream out;
  out << "{\"vertices\":[";
  for (std::size_t v = 0; v < pairing.pairs.size(); ++v) {
    if (v) out << ',';
    out << "{\"vertex\":\"" << json_escape(d.vertex_ids[v]) << "\",\"pairs\":[";
    for (std::size_t k = 0; k < pairing.pairs[v].size(); ++k) {
      const auto& [a, b] = pairing.pairs[v][k];
      const CopyEnd& x = d.ends_at[v][static_cast<std::size_t>(a)];
      const CopyEnd& y = d.ends_at[v][static_cast<std::size_t>(b)];
      if (k) out << ',';
      out << "[{\"edge\":\"" << json_escape(d.base->edges()[static_cast<std::size_t>(x.edge)].id)
          << "\",\"side\":" << x.side << ",\"copy\":" << x.copy << "},{\"edge\":\""
          << json_escape(d.base->edges()[static_cast<std::size_t>(y.edge)].id)
          << "\",\"side\":" << y.side << ",\"copy\":" << y.copy << "}]";
    }
    out << "]}";
  }
  out << "]}\n";
  return out.str();
}

}  // namespace netcurv
