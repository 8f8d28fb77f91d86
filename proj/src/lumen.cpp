#include "endonav/lumen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "endonav/errors.hpp"

namespace endonav {

namespace {

double point_segment_dist2(const Vec3& p, const Vec3& a, const Vec3& b, Vec3* closest = nullptr) {
  const Vec3 d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec3 c = a + t * d;
  if (closest) *closest = c;
  return (p - c).squaredNorm();
}

// Ray vs capsule(a, b, r). A capsule is convex, so the boundary is crossed at
// most twice; returns the crossing parameters (possibly negative) when the
// ray's line intersects the capsule.
bool ray_capsule_interval(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b, double r,
                          double* t0, double* t1) {
  const Vec3 axis = b - a;
  const double len = axis.norm();
  double roots[6];
  int nroots = 0;

  auto sphere_roots = [&](const Vec3& c, bool near_a) {
    const Vec3 m = o - c;
    const double B = 2.0 * m.dot(d);
    const double C = m.squaredNorm() - r * r;
    const double disc = B * B - 4.0 * C;  // |d| = 1
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    for (const double t : {(-B - sq) * 0.5, (-B + sq) * 0.5}) {
      const double s = len > 0.0 ? (o + t * d - a).dot(axis) / len : 0.0;
      if (near_a ? (s <= 0.0) : (s >= len)) {
        if (nroots < 6) roots[nroots++] = t;
      }
    }
  };

  if (len > 0.0) {
    const Vec3 u = axis / len;
    const Vec3 m = o - a;
    const Vec3 dp = d - d.dot(u) * u;
    const Vec3 mp = m - m.dot(u) * u;
    const double A = dp.squaredNorm();
    if (A > 1e-14) {
      const double B = 2.0 * dp.dot(mp);
      const double C = mp.squaredNorm() - r * r;
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (const double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
          const double s = (o + t * d - a).dot(u);
          if (s >= 0.0 && s <= len) {
            if (nroots < 6) roots[nroots++] = t;
          }
        }
      }
    }
  }
  sphere_roots(a, true);
  sphere_roots(b, false);

  if (nroots < 2) return false;
  double lo = roots[0], hi = roots[0];
  for (int i = 1; i < nroots; ++i) {
    lo = std::min(lo, roots[i]);
    hi = std::max(hi, roots[i]);
  }
  if (hi - lo < 1e-12) return false;  // tangential graze
  *t0 = lo;
  *t1 = hi;
  return true;
}

}  // namespace

PhantomSpec::Kind PhantomSpec::parse_kind(const std::string& name) {
  if (name == "straight") return Kind::Straight;
  if (name == "s_curve") return Kind::SCurve;
  if (name == "multi_bend") return Kind::MultiBend;
  throw ConfigError("unknown phantom kind: " + name);
}

Lumen::Lumen(ArcShape centerline, double radius_mm)
    : centerline_(std::move(centerline)), radius_(radius_mm) {
  if (!(radius_ > 0.0)) throw ConfigError("lumen radius must be positive");
  if (!(centerline_.polyline_length() > 0.0)) throw ConfigError("lumen centerline has zero length");
}

double Lumen::signed_distance(const Vec3& p) const {
  const std::vector<Vec3>& c = centerline_.samples();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    best = std::min(best, point_segment_dist2(p, c[i], c[i + 1], nullptr));
  }
  return std::sqrt(best) - radius_;
}

Vec3 Lumen::closest_centerline_point(const Vec3& p) const {
  const std::vector<Vec3>& c = centerline_.samples();
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_point = c.front();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    Vec3 cand;
    const double d2 = point_segment_dist2(p, c[i], c[i + 1], &cand);
    if (d2 < best) {
      best = d2;
      best_point = cand;
    }
  }
  return best_point;
}

Vec3 Lumen::project_inside(const Vec3& p) const {
  const Vec3 c = closest_centerline_point(p);
  const double d = (p - c).norm();
  if (d <= radius_) return p;
  return c + (radius_ / d) * (p - c);
}

double Lumen::ray_exit_distance(const Vec3& origin, const Vec3& dir) const {
  const std::vector<Vec3>& c = centerline_.samples();
  const Vec3 d = dir.normalized();

  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(c.size());
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    double t0, t1;
    if (ray_capsule_interval(origin, d, c[i], c[i + 1], radius_, &t0, &t1)) {
      if (t1 > 0.0) intervals.emplace_back(t0, t1);
    }
  }
  if (intervals.empty()) throw RenderError("ray origin outside the lumen");

  std::sort(intervals.begin(), intervals.end());
  double covered = 0.0;
  bool started = false;
  for (const auto& [t0, t1] : intervals) {
    if (t0 > covered + 1e-9) break;
    covered = std::max(covered, t1);
    started = started || t0 <= 1e-9;
  }
  if (!started || covered <= 0.0) throw RenderError("ray origin outside the lumen");
  return covered;
}

Lumen make_phantom(const PhantomSpec& spec) {
  if (!(spec.radius_mm > 0.0)) throw ConfigError("phantom radius must be positive");
  if (!(spec.length_mm > 0.0)) throw ConfigError("phantom length must be positive");
  if (spec.length_mm < 1000.0) throw ConfigError("phantom length must be at least 1000 mm");
  if (!(spec.centerline_spacing_mm > 0.0)) throw ConfigError("phantom spacing must be positive");

  const double L = spec.length_mm;
  auto curvature_profile = [&](double s, double* k1, double* k2) {
    switch (spec.kind) {
      case PhantomSpec::Kind::Straight:
        *k1 = 0.0;
        *k2 = 0.0;
        break;
      case PhantomSpec::Kind::SCurve:
        *k1 = spec.bend_curvature * std::sin(2.0 * M_PI * s / L);
        *k2 = 0.0;
        break;
      case PhantomSpec::Kind::MultiBend:
        *k1 = spec.bend_curvature * std::sin(2.0 * M_PI * s / L);
        *k2 = spec.secondary_curvature * std::sin(4.0 * M_PI * s / L + M_PI / 3.0);
        break;
    }
  };

  // Integrate position + frame (tangent, two transported normals) with RK4 at
  // a fine step; renormalize the frame after every step.
  struct FrameState {
    Vec3 p, t, n1, n2;
  };
  auto deriv = [&](const FrameState& f, double s) {
    double k1, k2;
    curvature_profile(s, &k1, &k2);
    FrameState d;
    d.p = f.t;
    d.t = k1 * f.n1 + k2 * f.n2;
    d.n1 = -k1 * f.t;
    d.n2 = -k2 * f.t;
    return d;
  };
  auto advance = [](const FrameState& f, const FrameState& d, double h) {
    FrameState r;
    r.p = f.p + h * d.p;
    r.t = f.t + h * d.t;
    r.n1 = f.n1 + h * d.n1;
    r.n2 = f.n2 + h * d.n2;
    return r;
  };

  FrameState f{Vec3::Zero(), Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  const double h = 0.5;
  std::vector<Vec3> samples;
  samples.reserve(static_cast<std::size_t>(L / spec.centerline_spacing_mm) + 2);
  samples.push_back(f.p);
  double next_sample = spec.centerline_spacing_mm;
  for (double s = 0.0; s < L - 1e-9;) {
    const double step = std::min({h, L - s, std::max(next_sample - s, 1e-6)});
    const FrameState k1 = deriv(f, s);
    const FrameState k2 = deriv(advance(f, k1, step / 2), s + step / 2);
    const FrameState k3 = deriv(advance(f, k2, step / 2), s + step / 2);
    const FrameState k4 = deriv(advance(f, k3, step), s + step);
    FrameState sum;
    sum.p = (k1.p + 2 * k2.p + 2 * k3.p + k4.p) / 6.0;
    sum.t = (k1.t + 2 * k2.t + 2 * k3.t + k4.t) / 6.0;
    sum.n1 = (k1.n1 + 2 * k2.n1 + 2 * k3.n1 + k4.n1) / 6.0;
    sum.n2 = (k1.n2 + 2 * k2.n2 + 2 * k3.n2 + k4.n2) / 6.0;
    f = advance(f, sum, step);
    f.t.normalize();
    f.n1 = (f.n1 - f.n1.dot(f.t) * f.t).normalized();
    f.n2 = f.t.cross(f.n1);
    s += step;
    if (s + 1e-9 >= next_sample) {
      samples.push_back(f.p);
      next_sample += spec.centerline_spacing_mm;
    }
  }

  return Lumen(ArcShape::from_samples(std::move(samples), spec.centerline_spacing_mm), spec.radius_mm);
}

}  // namespace endonav
