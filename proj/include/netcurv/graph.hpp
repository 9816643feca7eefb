// Embedded piecewise-linear spatial graphs: labeled vertices in R^3 joined
// by edges that may carry an interior polyline.  Valence-2 bend points are
// stored inside edges, not as graph vertices; analysis code expands them on
// demand (see AnalysisGraph).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "netcurv/geom.hpp"

namespace netcurv {

struct Vertex {
  std::string id;
  Point3 p;
};

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  std::vector<Point3> polyline;  // interior points only, may be empty
};

// Immutable after construction; all member queries are const and
// thread-safe.  The constructor validates every model invariant and throws
// ValidationError with a path to the offending element.
class SpatialGraph {
 public:
  SpatialGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Vertex& vertex(const std::string& id) const;
  const Edge& edge(const std::string& id) const;
  bool has_vertex(const std::string& id) const { return vertex_index_.count(id) != 0; }

  // Number of edge-ends at the vertex; a loop counts twice.
  int valence(const std::string& vertex_id) const;

  // Ordered positions along an edge: from-vertex, interior polyline, to-vertex.
  std::vector<Point3> edge_points(const Edge& e) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  std::unordered_map<std::string, int> valence_;
};

enum class GraphFormat { json };

SpatialGraph load_graph(std::istream& in, GraphFormat format = GraphFormat::json);
SpatialGraph load_graph_string(const std::string& text, GraphFormat format = GraphFormat::json);
SpatialGraph load_graph_file(const std::string& path, GraphFormat format = GraphFormat::json);

// Canonical serialization: stored order, doubles with 17 significant digits.
// load(save(g)) reproduces g bit-identically.
void save_graph(const SpatialGraph& g, std::ostream& out);
std::string save_graph_string(const SpatialGraph& g);
void save_graph_file(const SpatialGraph& g, const std::string& path);

// A vertex position with the unit tangents into its incident edge-ends
// (one per end; a loop contributes two).
struct VertexStar {
  Point3 position;
  std::vector<UnitVector> tangents;
  int valence() const { return static_cast<int>(tangents.size()); }
};

// Tangents are the directions of the first polyline segment leaving the
// vertex, in edge-storage order (loops: from-end then to-end).
VertexStar vertex_star(const SpatialGraph& g, const std::string& vertex_id);

// Sum of turning angles at the interior polyline points of an edge;
// endpoints contribute nothing.
double edge_interior_curvature(const SpatialGraph& g, const std::string& edge_id);

// Labels of vertices with valence != 2, sorted.
std::vector<std::string> topological_vertices(const SpatialGraph& g);

// Drops an edge and revalidates (connectivity included).
SpatialGraph remove_edge(const SpatialGraph& g, const std::string& edge_id);

// Inserts an interior point into an edge before polyline position `index`
// (0 = right after the from-vertex, polyline.size() = right before the
// to-vertex).  Used to build refinements.
SpatialGraph insert_breakpoint(const SpatialGraph& g, const std::string& edge_id,
                               std::size_t index, const Point3& p);

// Identifies either a graph vertex or an interior polyline point.
struct PointRef {
  std::string vertex_id;              // set when referring to a vertex
  std::string edge_id;                // set when referring to a breakpoint
  std::size_t breakpoint_index = 0;   // index into Edge::polyline
  bool is_vertex() const { return !vertex_id.empty(); }

  static PointRef vertex(std::string id) {
    PointRef r;
    r.vertex_id = std::move(id);
    return r;
  }
  static PointRef breakpoint(std::string edge, std::size_t index) {
    PointRef r;
    r.edge_id = std::move(edge);
    r.breakpoint_index = index;
    return r;
  }
  std::string str() const {
    return is_vertex() ? vertex_id : edge_id + "[" + std::to_string(breakpoint_index) + "]";
  }
};

// Expansion of a graph into its analysis points: graph vertices plus all
// interior polyline points, with straight segments between neighbors.
struct AnalysisPoint {
  PointRef ref;
  Point3 pos;
  std::vector<int> adj;  // neighbor indices, one entry per incident segment
};

struct AnalysisGraph {
  std::vector<AnalysisPoint> points;
  std::vector<std::pair<int, int>> segments;  // each straight piece once
  std::vector<Vec3> segment_dir;              // unit direction per segment
  double diameter = 0.0;                      // bounding-box diagonal
  int num_graph_vertices = 0;                 // points[0..n) are graph vertices

  static AnalysisGraph build(const SpatialGraph& g);

  int index_of(const PointRef& ref) const;
  VertexStar star(int point) const;
};

}  // namespace netcurv
