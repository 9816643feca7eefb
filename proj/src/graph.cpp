#include "netcurv/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "netcurv/io_util.hpp"

namespace netcurv {

namespace {

std::string seg_path(const std::string& edge_id, std::size_t i) {
  return "edge '" + edge_id + "' segment " + std::to_string(i);
}

}  // namespace

SpatialGraph::SpatialGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw ValidationError("vertices: graph has no vertices");

  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vertex& v = vertices_[i];
    if (v.id.empty()) throw ValidationError("vertices[" + std::to_string(i) + "].id: empty label");
    if (!v.p.finite())
      throw ValidationError("vertices[" + std::to_string(i) + "].p: non-finite coordinate");
    if (!vertex_index_.emplace(v.id, i).second)
      throw ValidationError("vertices[" + std::to_string(i) + "].id: duplicate label '" + v.id + "'");
  }

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    const std::string path = "edges[" + std::to_string(i) + "]";
    if (e.id.empty()) throw ValidationError(path + ".id: empty label");
    if (!edge_index_.emplace(e.id, i).second)
      throw ValidationError(path + ".id: duplicate label '" + e.id + "'");
    if (!vertex_index_.count(e.from))
      throw ValidationError(path + ".from: unknown vertex '" + e.from + "'");
    if (!vertex_index_.count(e.to))
      throw ValidationError(path + ".to: unknown vertex '" + e.to + "'");
    for (std::size_t k = 0; k < e.polyline.size(); ++k)
      if (!e.polyline[k].finite())
        throw ValidationError(path + ".polyline[" + std::to_string(k) + "]: non-finite coordinate");

    const std::vector<Point3> pts = edge_points(e);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
      if (dist(pts[k], pts[k + 1]) <= tol::kMinSegment)
        throw ValidationError(path + ".polyline: zero-length segment (" + seg_path(e.id, k) + ")");

    valence_[e.from] += 1;
    valence_[e.to] += 1;
  }

  // Connectivity over vertices via edges.
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::vector<std::vector<std::size_t>> adj(vertices_.size());
  for (const Edge& e : edges_) {
    adj[vertex_index_.at(e.from)].push_back(vertex_index_.at(e.to));
    adj[vertex_index_.at(e.to)].push_back(vertex_index_.at(e.from));
  }
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!seen[i])
      throw ValidationError("graph is not connected (vertex '" + vertices_[i].id +
                            "' unreachable from '" + vertices_[0].id + "')");
}

const Vertex& SpatialGraph::vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) throw UnknownVertex(id);
  return vertices_[it->second];
}

const Edge& SpatialGraph::edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) throw UnknownEdge(id);
  return edges_[it->second];
}

int SpatialGraph::valence(const std::string& vertex_id) const {
  vertex(vertex_id);  // throw on unknown
  auto it = valence_.find(vertex_id);
  return it == valence_.end() ? 0 : it->second;
}

std::vector<Point3> SpatialGraph::edge_points(const Edge& e) const {
  std::vector<Point3> pts;
  pts.reserve(e.polyline.size() + 2);
  pts.push_back(vertex(e.from).p);
  pts.insert(pts.end(), e.polyline.begin(), e.polyline.end());
  pts.push_back(vertex(e.to).p);
  return pts;
}

// ---------------------------------------------------------------------------
// JSON input

namespace {

Point3 parse_point(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(path + ": expected [x, y, z]");
  for (int k = 0; k < 3; ++k)
    if (!j[k].is_number()) throw ParseError(path + "[" + std::to_string(k) + "]: expected number");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

SpatialGraph load_graph_string(const std::string& text, GraphFormat format) {
  std::istringstream in(text);
  return load_graph(in, format);
}

SpatialGraph load_graph_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return load_graph(in, format);
}

SpatialGraph load_graph(std::istream& in, GraphFormat format) {
  if (format != GraphFormat::json) throw BadParameter("unsupported graph format");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw ParseError("document must be an object with 'vertices' and 'edges'");
  if (!doc["vertices"].is_array() || !doc["edges"].is_array())
    throw ParseError("'vertices' and 'edges' must be arrays");

  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
    const auto& jv = doc["vertices"][i];
    const std::string path = "vertices[" + std::to_string(i) + "]";
    if (!jv.is_object() || !jv.contains("id") || !jv.contains("p"))
      throw ParseError(path + ": expected {id, p}");
    if (!jv["id"].is_string()) throw ParseError(path + ".id: expected string");
    vertices.push_back({jv["id"].get<std::string>(), parse_point(jv["p"], path + ".p")});
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    const auto& je = doc["edges"][i];
    const std::string path = "edges[" + std::to_string(i) + "]";
    if (!je.is_object() || !je.contains("id") || !je.contains("from") || !je.contains("to"))
      throw ParseError(path + ": expected {id, from, to, polyline?}");
    if (!je["id"].is_string() || !je["from"].is_string() || !je["to"].is_string())
      throw ParseError(path + ": id/from/to must be strings");
    Edge e;
    e.id = je["id"].get<std::string>();
    e.from = je["from"].get<std::string>();
    e.to = je["to"].get<std::string>();
    if (je.contains("polyline")) {
      if (!je["polyline"].is_array()) throw ParseError(path + ".polyline: expected array");
      for (std::size_t k = 0; k < je["polyline"].size(); ++k)
        e.polyline.push_back(
            parse_point(je["polyline"][k], path + ".polyline[" + std::to_string(k) + "]"));
    }
    edges.push_back(std::move(e));
  }

  return SpatialGraph(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Canonical JSON output

namespace {

void write_point(std::ostream& out, const Point3& p) {
  out << '[' << fmt17(p.x) << ',' << fmt17(p.y) << ',' << fmt17(p.z) << ']';
}

}  // namespace

void save_graph(const SpatialGraph& g, std::ostream& out) {
  out << "{\"vertices\":[";
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    const Vertex& v = g.vertices()[i];
    if (i) out << ',';
    out << "{\"id\":\"" << json_escape(v.id) << "\",\"p\":";
    write_point(out, v.p);
    out << '}';
  }
  out << "],\"edges\":[";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    if (i) out << ',';
    out << "{\"id\":\"" << json_escape(e.id) << "\",\"from\":\"" << json_escape(e.from)
        << "\",\"to\":\"" << json_escape(e.to) << "\",\"polyline\":[";
    for (std::size_t k = 0; k < e.polyline.size(); ++k) {
      if (k) out << ',';
      write_point(out, e.polyline[k]);
    }
    out << "]}";
  }
  out << "]}\n";
}

std::string save_graph_string(const SpatialGraph& g) {
  std::ostringstream out;
  save_graph(g, out);
  return out.str();
}

void save_graph_file(const SpatialGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  save_graph(g, out);
}

// ---------------------------------------------------------------------------
// Derived views

VertexStar vertex_star(const SpatialGraph& g, const std::string& vertex_id) {
  const Vertex& v = g.vertex(vertex_id);
  VertexStar star;
  star.position = v.p;
  for (const Edge& e : g.edges()) {
    if (e.from == vertex_id) {
      const Point3 next = e.polyline.empty() ? g.vertex(e.to).p : e.polyline.front();
      star.tangents.push_back(UnitVector::normalize(next - v.p));
    }
    if (e.to == vertex_id) {
      const Point3 prev = e.polyline.empty() ? g.vertex(e.from).p : e.polyline.back();
      star.tangents.push_back(UnitVector::normalize(prev - v.p));
    }
  }
  return star;
}

double edge_interior_curvature(const SpatialGraph& g, const std::string& edge_id) {
  const Edge& e = g.edge(edge_id);
  const std::vector<Point3> pts = g.edge_points(e);
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const UnitVector in = UnitVector::normalize(pts[k - 1] - pts[k]);
    const UnitVector out = UnitVector::normalize(pts[k + 1] - pts[k]);
    total += exterior_angle(in, out);
  }
  return total;
}

std::vector<std::string> topological_vertices(const SpatialGraph& g) {
  std::vector<std::string> out;
  for (const Vertex& v : g.vertices())
    if (g.valence(v.id) != 2) out.push_back(v.id);
  std::sort(out.begin(), out.end());
  return out;
}

SpatialGraph remove_edge(const SpatialGraph& g, const std::string& edge_id) {
  g.edge(edge_id);  // throw on unknown
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (e.id != edge_id) edges.push_back(e);
  return SpatialGraph(g.vertices(), std::move(edges));
}

SpatialGraph insert_breakpoint(const SpatialGraph& g, const std::string& edge_id,
                               std::size_t index, const Point3& p) {
  const Edge& target = g.edge(edge_id);
  if (index > target.polyline.size())
    throw BadParameter("breakpoint index " + std::to_string(index) + " out of range for edge '" +
                       edge_id + "'");
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges)
    if (e.id == edge_id)
      e.polyline.insert(e.polyline.begin() + static_cast<std::ptrdiff_t>(index), p);
  return SpatialGraph(g.vertices(), std::move(edges));
}

// ---------------------------------------------------------------------------
// AnalysisGraph

AnalysisGraph AnalysisGraph::build(const SpatialGraph& g) {
  AnalysisGraph a;
  std::unordered_map<std::string, int> vertex_point;
  for (const Vertex& v : g.vertices()) {
    vertex_point[v.id] = static_cast<int>(a.points.size());
    a.points.push_back({PointRef::vertex(v.id), v.p, {}});
  }
  a.num_graph_vertices = static_cast<int>(a.points.size());

  for (const Edge& e : g.edges()) {
    std::vector<int> chain;
    chain.push_back(vertex_point.at(e.from));
    for (std::size_t k = 0; k < e.polyline.size(); ++k) {
      chain.push_back(static_cast<int>(a.points.size()));
      a.points.push_back({PointRef::breakpoint(e.id, k), e.polyline[k], {}});
    }
    chain.push_back(vertex_point.at(e.to));
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const int u = chain[k], w = chain[k + 1];
      a.points[static_cast<std::size_t>(u)].adj.push_back(w);
      a.points[static_cast<std::size_t>(w)].adj.push_back(u);
      a.segments.emplace_back(u, w);
      a.segment_dir.push_back(
          UnitVector::normalize(a.points[static_cast<std::size_t>(w)].pos -
                                a.points[static_cast<std::size_t>(u)].pos)
              .vec());
    }
  }

  Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::max()};
  Vec3 hi = -lo;
  for (const AnalysisPoint& p : a.points) {
    lo = {std::min(lo.x, p.pos.x), std::min(lo.y, p.pos.y), std::min(lo.z, p.pos.z)};
    hi = {std::max(hi.x, p.pos.x), std::max(hi.y, p.pos.y), std::max(hi.z, p.pos.z)};
  }
  a.diameter = dist(lo, hi);
  return a;
}

int AnalysisGraph::index_of(const PointRef& ref) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointRef& r = points[i].ref;
    if (r.is_vertex() != ref.is_vertex()) continue;
    if (ref.is_vertex() ? r.vertex_id == ref.vertex_id
                        : (r.edge_id == ref.edge_id && r.breakpoint_index == ref.breakpoint_index))
      return static_cast<int>(i);
  }
  return -1;
}

VertexStar AnalysisGraph::star(int point) const {
  const AnalysisPoint& p = points[static_cast<std::size_t>(point)];
  VertexStar star;
  star.position = p.pos;
  for (int n : p.adj)
    star.tangents.push_back(
        UnitVector::normalize(points[static_cast<std::size_t>(n)].pos - p.pos));
  return star;
}

}  // namespace netcurv
