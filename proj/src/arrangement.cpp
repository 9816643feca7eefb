#include "netcurv/arrangement.hpp"

#include <algorithm>
#include <cmath>

#include "netcurv/rng.hpp"

namespace netcurv {

namespace {

struct Circle {
  Vec3 n;        // unit normal; the circle is {p : <p, n> = 0}
  Vec3 a, b;     // orthonormal frame of the circle plane, b = n x a
  std::vector<int> pts;       // indices of arrangement vertices on the circle
  std::vector<double> phis;   // their angles, sorted together with pts
};

struct HalfEdge {
  int from = -1, to = -1;     // arrangement vertex indices
  Vec3 t_from, t_to;          // motion tangents at the two ends
  Vec3 midpoint;              // midpoint of the underlying arc
  int twin = -1;
  int next = -1;
  int pos_in_outgoing = -1;   // position in from-vertex's angular order
};

int find_or_add_vertex(std::vector<Vec3>& verts, const Vec3& p) {
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (dist(verts[i], p) < tol::kVertexMerge) return static_cast<int>(i);
  verts.push_back(p);
  return static_cast<int>(verts.size()) - 1;
}

int chi_sum(const VertexStar& star, const Vec3& e) {
  int v = 0;
  for (const UnitVector& t : star.tangents) v += dot(e, t.vec()) > 0.0 ? -1 : +1;
  return v;
}

// Value sum of signed turning angles around the cell, faces kept to the left
// of each directed arc; cell area is 2*pi minus that total.
double signed_turn(const Vec3& t_in, const Vec3& t_out, const Vec3& corner) {
  return std::atan2(dot(cross(t_in, t_out), corner), dot(t_in, t_out));
}

}  // namespace

SphericalArrangement build_arrangement(const VertexStar& star) {
  const int d = star.valence();
  if (d == 0) throw DegenerateStar("vertex star has no tangents");

  SphericalArrangement arr;

  // Group tangents into circles; coincident or antipodal tangents share one.
  std::vector<Circle> circles;
  for (const UnitVector& t : star.tangents) {
    bool merged = false;
    for (std::size_t c = 0; c < circles.size(); ++c) {
      const double s = norm(cross(t.vec(), circles[c].n));
      if (s < tol::kCircleMerge) {
        if (dot(t.vec(), circles[c].n) > 0)
          arr.circles[c].plus_count += 1;
        else
          arr.circles[c].minus_count += 1;
        merged = true;
        break;
      }
    }
    if (merged) continue;
    Circle c;
    c.n = t.vec();
    c.a = orthonormal_to(c.n);
    c.b = cross(c.n, c.a);
    circles.push_back(c);
    arr.circles.push_back({t, 1, 0});
  }

  if (circles.size() == 1) {
    // Two hemispheres split by the single circle.
    const Vec3 n = circles[0].n;
    for (int side = 0; side < 2; ++side) {
      ArrangementCell cell;
      cell.witness = side == 0 ? n : -n;
      cell.area = 2.0 * M_PI;
      cell.value = chi_sum(star, cell.witness);
      arr.cells.push_back(cell);
    }
    return arr;
  }

  // Arrangement vertices: pairwise circle intersections (two antipodal each).
  std::vector<Vec3> verts;
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const Vec3 v = cross(circles[i].n, circles[j].n);
      const double nv = norm(v);
      const Vec3 p = v / nv;
      for (const Vec3& q : {p, -p}) {
        const int idx = find_or_add_vertex(verts, q);
        for (std::size_t c : {i, j}) {
          auto& pts = circles[c].pts;
          if (std::find(pts.begin(), pts.end(), idx) == pts.end()) pts.push_back(idx);
        }
      }
    }

  // Sort the vertices angularly along each circle and emit twin half-edges
  // for every arc between consecutive ones.
  std::vector<HalfEdge> hes;
  for (Circle& c : circles) {
    c.phis.resize(c.pts.size());
    std::vector<std::size_t> order(c.pts.size());
    for (std::size_t k = 0; k < c.pts.size(); ++k) {
      const Vec3& p = verts[static_cast<std::size_t>(c.pts[k])];
      c.phis[k] = std::atan2(dot(p, c.b), dot(p, c.a));
      order[k] = k;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return c.phis[x] < c.phis[y]; });
    std::vector<int> pts_sorted;
    std::vector<double> phis_sorted;
    for (std::size_t k : order) {
      pts_sorted.push_back(c.pts[k]);
      phis_sorted.push_back(c.phis[k]);
    }
    c.pts = pts_sorted;
    c.phis = phis_sorted;

    const std::size_t m = c.pts.size();
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t k2 = (k + 1) % m;
      const double phi0 = c.phis[k];
      const double phi1 = c.phis[k2] + (k2 == 0 ? 2.0 * M_PI : 0.0);
      const double phim = 0.5 * (phi0 + phi1);
      const Vec3 p0 = verts[static_cast<std::size_t>(c.pts[k])];
      const Vec3 p1 = verts[static_cast<std::size_t>(c.pts[k2])];
      const Vec3 mid = std::cos(phim) * c.a + std::sin(phim) * c.b;

      HalfEdge fwd, bwd;
      fwd.from = c.pts[k];
      fwd.to = c.pts[k2];
      fwd.t_from = cross(c.n, p0);
      fwd.t_to = cross(c.n, p1);
      fwd.midpoint = mid;
      bwd.from = c.pts[k2];
      bwd.to = c.pts[k];
      bwd.t_from = -cross(c.n, p1);
      bwd.t_to = -cross(c.n, p0);
      bwd.midpoint = mid;
      const int fi = static_cast<int>(hes.size());
      fwd.twin = fi + 1;
      bwd.twin = fi;
      hes.push_back(fwd);
      hes.push_back(bwd);
    }
  }

  // Counterclockwise angular order of outgoing half-edges at each vertex
  // (as seen from outside the sphere).
  std::vector<std::vector<int>> outgoing(verts.size());
  for (std::size_t h = 0; h < hes.size(); ++h)
    outgoing[static_cast<std::size_t>(hes[h].from)].push_back(static_cast<int>(h));
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const Vec3 b1 = orthonormal_to(verts[v]);
    const Vec3 b2 = cross(verts[v], b1);
    std::sort(outgoing[v].begin(), outgoing[v].end(), [&](int x, int y) {
      const double ax = std::atan2(dot(hes[static_cast<std::size_t>(x)].t_from, b2),
                                   dot(hes[static_cast<std::size_t>(x)].t_from, b1));
      const double ay = std::atan2(dot(hes[static_cast<std::size_t>(y)].t_from, b2),
                                   dot(hes[static_cast<std::size_t>(y)].t_from, b1));
      return ax < ay;
    });
    for (std::size_t k = 0; k < outgoing[v].size(); ++k)
      hes[static_cast<std::size_t>(outgoing[v][k])].pos_in_outgoing = static_cast<int>(k);
  }

  // next(h) = clockwise neighbor of twin(h) at the head vertex.
  for (std::size_t h = 0; h < hes.size(); ++h) {
    const HalfEdge& tw = hes[static_cast<std::size_t>(hes[h].twin)];
    const auto& out = outgoing[static_cast<std::size_t>(hes[h].to)];
    const int pos = tw.pos_in_outgoing;
    hes[h].next = out[static_cast<std::size_t>((pos + static_cast<int>(out.size()) - 1) %
                                               static_cast<int>(out.size()))];
  }

  // Walk the faces.
  std::vector<char> visited(hes.size(), 0);
  for (std::size_t h0 = 0; h0 < hes.size(); ++h0) {
    if (visited[h0]) continue;
    ArrangementCell cell;
    double turn_sum = 0.0;
    Vec3 witness_acc{0, 0, 0};
    int h = static_cast<int>(h0);
    do {
      visited[static_cast<std::size_t>(h)] = 1;
      const HalfEdge& e = hes[static_cast<std::size_t>(h)];
      cell.boundary.push_back(verts[static_cast<std::size_t>(e.from)]);
      witness_acc += verts[static_cast<std::size_t>(e.from)];
      witness_acc += e.midpoint;
      const HalfEdge& f = hes[static_cast<std::size_t>(e.next)];
      turn_sum += signed_turn(e.t_to, f.t_from, verts[static_cast<std::size_t>(e.to)]);
      h = e.next;
    } while (h != static_cast<int>(h0));
    cell.area = 2.0 * M_PI - turn_sum;

    // Interior witness: normalized boundary average, nudged deterministically
    // if it lands too close to one of the circles.
    Vec3 w = witness_acc / norm(witness_acc);
    auto clear_of_circles = [&](const Vec3& p, double margin) {
      for (const Circle& c : circles)
        if (std::fabs(dot(p, c.n)) < margin) return false;
      return true;
    };
    if (!clear_of_circles(w, tol::kCellWitness)) {
      for (std::uint64_t attempt = 1; attempt <= 256 && !clear_of_circles(w, tol::kCellWitness);
           ++attempt) {
        Vec3 acc{0, 0, 0};
        std::size_t idx = 0;
        int hh = static_cast<int>(h0);
        do {
          const HalfEdge& e = hes[static_cast<std::size_t>(hh)];
          acc += (0.5 + uniform01_at(0x9e3779b9, attempt, static_cast<std::uint32_t>(idx++))) *
                 e.midpoint;
          hh = e.next;
        } while (hh != static_cast<int>(h0));
        w = acc / norm(acc);
      }
    }
    cell.witness = w;
    cell.value = chi_sum(star, w);
    arr.cells.push_back(std::move(cell));
  }

  // Internal consistency: spherical areas must tile the sphere.
  double total = 0.0;
  for (const ArrangementCell& c : arr.cells) total += c.area;
  if (std::fabs(total - 4.0 * M_PI) > 1e-6)
    throw Error("arrangement areas sum to " + std::to_string(total) + ", expected 4*pi");

  return arr;
}

double nc_from_arrangement(const SphericalArrangement& arr) {
  double acc = 0.0;
  for (const ArrangementCell& c : arr.cells)
    if (c.value > 0) acc += c.area * c.value;
  return 0.25 * acc;
}

}  // namespace netcurv
