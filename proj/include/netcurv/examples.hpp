// Deterministic generators for the reference graph family used throughout
// the tests and the CLI.
#pragma once

#include <string>

#include "netcurv/graph.hpp"

namespace netcurv {

struct ExampleParams {
  int n = 64;           // sampling density (polygons, thetas, chords)
  int d = 3;            // ray count for coplanar stars
  double alpha = 0.5;   // tilt angle for the valence-4 star, radians
  int twists = 1;       // full turns of the two-chord braid
};

// Planar six-vertex graph: three vertical segments whose endpoints are
// joined through the two central valence-3 vertices.
SpatialGraph make_butterfly();

// Central vertex with d coplanar unit rays at equal angles 2*pi/d.
SpatialGraph make_coplanar_star(int d);

// Two orthogonal straight lines crossing at the origin (valence 4).
SpatialGraph make_x_crossing();

// Plane circle plus a diameter: two valence-3 junctions at (+-1, 0, 0),
// two semicircular arcs sampled as polylines, and the chord subdivided once.
SpatialGraph make_standard_theta(int n);

// Standard theta with the chord replaced by a polygonal arc tying an
// overhand (trefoil) knot inside the circle.
SpatialGraph make_knotted_theta(int n);

// Circle with two disjoint chords; for twists > 0 the chords wind about
// each other 2*twists half-turns while staying monotone in x.
SpatialGraph make_two_chord(int n, int twists);

// Closed planar regular n-gon stored as a single loop edge.
SpatialGraph make_convex_polygon(int n);

// Four unit rays T1 = (1,0,0), T2 = (0,1,0), T3 = (-cos a, 0, sin a),
// T4 = (0, -cos a, -sin a) from a central vertex.
SpatialGraph make_valence4_star(double alpha);

// Dispatch by name: butterfly, coplanar_star, x_crossing, standard_theta,
// knotted_theta, two_chord, convex_polygon, valence4_star.
SpatialGraph generate_example(const std::string& name, const ExampleParams& params = {});

}  // namespace netcurv
