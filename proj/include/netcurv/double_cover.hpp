// The edge-doubled graph, its closed traversals, and curvature of those
// traversals.  A traversal is encoded by a per-vertex perfect matching of
// the 2*d incident edge-copy ends; gluing matched ends yields closed walks
// covering every edge copy once.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "netcurv/graph.hpp"

namespace netcurv {

// One end of one copy of a base edge: side 0 sits at the edge's from-vertex,
// side 1 at its to-vertex.
struct CopyEnd {
  int edge = 0;
  int side = 0;
  int copy = 0;
};

struct DoubledGraph {
  const SpatialGraph* base = nullptr;
  std::vector<std::string> vertex_ids;          // base storage order
  std::vector<std::vector<CopyEnd>> ends_at;    // canonical incident list per vertex

  int vertex_index(const std::string& id) const;
};

// Every vertex of the double has valence 2*d(q).
DoubledGraph double_graph(const SpatialGraph& g);

// Per vertex, matched pairs of indices into DoubledGraph::ends_at[v].
struct VertexPairing {
  std::vector<std::vector<std::pair<int, int>>> pairs;
};

struct WalkStep {
  int edge = 0;
  int copy = 0;
  int from_side = 0;  // walk enters the copy at this side
};

struct Parameterization {
  std::vector<std::vector<WalkStep>> walks;
  double total_curvature = 0.0;
  VertexPairing pairing;
};

// Single closed walk over all edge copies (hierholzer splicing); the
// traversal's induced pairing is recorded.
Parameterization euler_circuit(const DoubledGraph& d);

// Streams the cartesian product of per-vertex perfect matchings, in
// lexicographic order of their index encoding; (2d-1)!! matchings per
// vertex.  With allow_self = false, matchings pairing the two copies of one
// edge-end are skipped, except at valence-1 vertices where that pair is the
// only option.  The visitor returns false to stop early.
void enumerate_pairings(const DoubledGraph& d, bool allow_self,
                        const std::function<bool(const VertexPairing&)>& visit,
                        int max_valence = 6);

// Walks assembled from the pairing, plus their total curvature:
// 2 * (edge interior turning) + matched-pair exterior angles at vertices of
// valence >= 2.  A self-pair turns back on itself and charges pi; the
// forced pair at a valence-1 vertex is a free boundary and charges nothing.
Parameterization parameterization_curvature(const SpatialGraph& g, const VertexPairing& pairing);

struct MinHalfCurvature {
  double value = 0.0;
  VertexPairing witness;
};

// Minimum of (1/2) * total curvature over all enumerated pairings; ties are
// broken toward the lexicographically smallest pairing.
MinHalfCurvature min_half_curvature(const SpatialGraph& g, bool allow_self,
                                    int max_valence = 6);

std::string pairing_to_json(const DoubledGraph& d, const VertexPairing& pairing);

}  // namespace netcurv
