#pragma once

#include <stdexcept>
#include <string>

namespace netcurv {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input document could not be parsed at all.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Structurally parsed input violates a model invariant.  The message carries
// a path to the offending element, e.g. "edges[3].polyline[2]".
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

struct UnknownVertex : Error {
  explicit UnknownVertex(const std::string& id) : Error("unknown vertex: " + id) {}
};

struct UnknownEdge : Error {
  explicit UnknownEdge(const std::string& id) : Error("unknown edge: " + id) {}
};

struct BadParameter : Error {
  explicit BadParameter(const std::string& msg) : Error("bad parameter: " + msg) {}
};

// Vertex star with no tangents.
struct DegenerateStar : Error {
  explicit DegenerateStar(const std::string& msg) : Error("degenerate star: " + msg) {}
};

// Direction too close to a measure-zero bad set for this graph.
struct DegenerateDirection : Error {
  explicit DegenerateDirection(const std::string& msg) : Error("degenerate direction: " + msg) {}
};

struct TooManyRejections : Error {
  explicit TooManyRejections(const std::string& msg) : Error("too many rejections: " + msg) {}
};

struct ValenceTooLarge : Error {
  explicit ValenceTooLarge(const std::string& msg) : Error("valence too large: " + msg) {}
};

struct IncompletePairing : Error {
  explicit IncompletePairing(const std::string& msg) : Error("incomplete pairing: " + msg) {}
};

struct NotTheta : Error {
  explicit NotTheta(const std::string& msg) : Error("not a theta graph: " + msg) {}
};

struct NotRemovable : Error {
  explicit NotRemovable(const std::string& msg) : Error("not removable: " + msg) {}
};

}  // namespace netcurv
