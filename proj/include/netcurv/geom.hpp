// Basic 3-vector arithmetic and the numeric tolerances shared across the
// library.  Everything downstream works with plain doubles; the tolerances
// here are the only magic numbers.
#pragma once

#include <cmath>
#include <string>

#include "netcurv/errors.hpp"

namespace netcurv {

namespace tol {
// |norm - 1| bound for a vector to count as unit.
inline constexpr double kUnitNorm = 1e-12;
// Shortest admissible polyline segment.
inline constexpr double kMinSegment = 1e-12;
// Angle tolerance for coplanarity / clamping decisions.
inline constexpr double kAngle = 1e-12;
// Direction degeneracy threshold, relative to the graph diameter.
inline constexpr double kDegenerate = 1e-9;
// Two great circles closer than this (sin of angle between normals) merge.
inline constexpr double kCircleMerge = 1e-9;
// Arrangement vertices closer than this (euclidean) are identified.
inline constexpr double kVertexMerge = 1e-10;
// Minimum distance of a cell witness point from every circle.
inline constexpr double kCellWitness = 1e-9;
}  // namespace tol

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

using Point3 = Vec3;

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline double clamp_unit(double t) { return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t); }

// Unit direction in S^2.  Construction checks the norm; normalize() rescales.
class UnitVector {
 public:
  explicit UnitVector(const Vec3& v) : v_(v) {
    if (!v.finite() || std::fabs(norm(v) - 1.0) > tol::kUnitNorm)
      throw ValidationError("vector is not unit length (|v| = " + std::to_string(norm(v)) + ")");
  }

  static UnitVector normalize(const Vec3& v) {
    const double n = norm(v);
    if (!(n > tol::kMinSegment)) throw ValidationError("cannot normalize near-zero vector");
    return UnitVector(v / n, 0);
  }

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  UnitVector operator-() const { return UnitVector(-v_, 0); }

 private:
  UnitVector(const Vec3& v, int) : v_(v) {}  // no re-check
  Vec3 v_;
};

// Angle between two unit vectors, in [0, pi].  The atan2 form stays
// accurate near 0 and pi, where acos of a rounded dot product loses half
// the significant digits.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// Turning angle between consecutive tangents: arccos<t1, -t2>, in [0, pi].
// Straight continuation (t2 = -t1) gives 0, doubling back gives pi.
inline double exterior_angle(const UnitVector& t1, const UnitVector& t2) {
  return angle_between(t1.vec(), -t2.vec());
}

// Any unit vector orthogonal to v (|v| = 1).
inline Vec3 orthonormal_to(const Vec3& v) {
  const Vec3 trial = std::fabs(v.x) < 0.7 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = cross(v, trial);
  return u / norm(u);
}

}  // namespace netcurv
