#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace endonav {

using Vec3 = Eigen::Vector3d;

/// Uniformly arc-length-sampled 3-D curve. All coordinates in millimetres.
///
/// `spacing` is the nominal distance between consecutive samples. Shapes built
/// through from_uniform_samples are checked against it; shapes carrying sensor
/// noise keep the nominal spacing but are constructed through from_samples,
/// which only enforces finiteness.
class ArcShape {
public:
  ArcShape() = default;

  /// Strict construction: >= 3 samples, equal consecutive distances within
  /// rel_tol, finite coordinates. Spacing is taken from the samples.
  static ArcShape from_uniform_samples(std::vector<Vec3> samples, double rel_tol = 1e-6);

  /// Relaxed construction for measured/perturbed curves: finite coordinates,
  /// >= 2 samples, caller-supplied nominal spacing.
  static ArcShape from_samples(std::vector<Vec3> samples, double nominal_spacing);

  int sample_count() const { return static_cast<int>(samples_.size()); }
  double spacing() const { return spacing_; }
  /// Nominal arc length, (n-1) * spacing.
  double length() const { return spacing_ * (sample_count() - 1); }
  /// Sum of consecutive chord lengths.
  double polyline_length() const;

  const std::vector<Vec3>& samples() const { return samples_; }
  const Vec3& operator[](int i) const { return samples_[static_cast<std::size_t>(i)]; }
  const Vec3& front() const { return samples_.front(); }
  const Vec3& back() const { return samples_.back(); }

  /// Samples flattened to (x0,y0,z0,x1,...), length 3*n.
  Eigen::VectorXd flattened() const;

private:
  std::vector<Vec3> samples_;
  double spacing_ = 0.0;
};

/// Per-sample discrete curvature (>= 0) and signed torsion, both 1/mm.
struct CurvatureProfile {
  std::vector<double> kappa;
  std::vector<double> torsion;
};

/// Resample to a new uniform spacing by equal-chord stepping along the
/// polyline. Endpoints are preserved within new_spacing/2 and total length
/// within 1% for spacings small relative to the curve.
ArcShape resample(const ArcShape& shape, double new_spacing);

/// Discrete Frenet estimates: curvature from the circumscribed circle of
/// three consecutive samples, torsion from the binormal rotation rate.
/// Endpoint values are copied from the nearest interior estimate.
/// Requires >= 5 samples; throws InvalidShapeError on degenerate input.
CurvatureProfile curvature_torsion(const ArcShape& shape);

// CSV with header s_mm,x_mm,y_mm,z_mm, one row per sample.
void save_shape_csv(const std::string& path, const ArcShape& shape);
ArcShape load_shape_csv(const std::string& path);

}  // namespace endonav
