#pragma once

#include <string>

#include "endonav/geometry.hpp"

namespace endonav {

/// Parametric tubular phantom descriptor. Centerlines are built by
/// integrating a smooth curvature profile, so curvature is continuous
/// everywhere (no straight-to-arc jumps).
struct PhantomSpec {
  enum class Kind { Straight, SCurve, MultiBend };

  Kind kind = Kind::Straight;
  double length_mm = 1200.0;
  double radius_mm = 25.0;
  double centerline_spacing_mm = 5.0;
  /// Peak in-plane centerline curvature (1/mm) for the curved phantoms.
  double bend_curvature = 0.0025;
  /// Peak out-of-plane curvature (1/mm), multi-bend only.
  double secondary_curvature = 0.0015;

  static Kind parse_kind(const std::string& name);
};

/// Constant-radius tube around a polyline centerline. The interior is the set
/// of points within `radius` of the centerline, i.e. a chain of capsules, so
/// distance and ray queries are exact.
class Lumen {
public:
  Lumen() = default;
  Lumen(ArcShape centerline, double radius_mm);

  const ArcShape& centerline() const { return centerline_; }
  double radius() const { return radius_; }

  /// Negative strictly inside, zero on the wall, positive outside.
  double signed_distance(const Vec3& p) const;

  /// Closest point on the centerline polyline.
  Vec3 closest_centerline_point(const Vec3& p) const;

  /// Identity for interior points; exterior points are pulled to the nearest
  /// wall point.
  Vec3 project_inside(const Vec3& p) const;

  /// Distance along the ray (unit `dir`) from an interior `origin` to the
  /// first wall crossing. Exact: per-segment capsule intervals are merged and
  /// the end of the interval containing t=0 is returned.
  double ray_exit_distance(const Vec3& origin, const Vec3& dir) const;

private:
  ArcShape centerline_;
  double radius_ = 0.0;
};

/// Builds one of the parametric phantoms. Lengths below 1 m or non-positive
/// dimensions are rejected with ConfigError.
Lumen make_phantom(const PhantomSpec& spec);

}  // namespace endonav
