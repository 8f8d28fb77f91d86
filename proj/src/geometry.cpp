#include "endonav/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "endonav/errors.hpp"

namespace endonav {

namespace {

void check_finite(const std::vector<Vec3>& pts) {
  for (const Vec3& p : pts) {
    if (!p.allFinite()) throw InvalidShapeError("shape contains non-finite coordinates");
  }
}

}  // namespace

ArcShape ArcShape::from_uniform_samples(std::vector<Vec3> samples, double rel_tol) {
  if (samples.size() < 3) throw InvalidShapeError("shape needs at least 3 samples");
  check_finite(samples);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) total += (samples[i + 1] - samples[i]).norm();
  const double ds = total / static_cast<double>(samples.size() - 1);
  if (!(ds > 0.0)) throw InvalidShapeError("shape has zero spacing");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double d = (samples[i + 1] - samples[i]).norm();
    if (std::abs(d - ds) > rel_tol * ds) {
      throw InvalidShapeError("samples are not uniformly spaced");
    }
  }
  ArcShape s;
  s.samples_ = std::move(samples);
  s.spacing_ = ds;
  return s;
}

ArcShape ArcShape::from_samples(std::vector<Vec3> samples, double nominal_spacing) {
  if (samples.size() < 2) throw InvalidShapeError("shape needs at least 2 samples");
  if (!(nominal_spacing > 0.0)) throw InvalidShapeError("spacing must be positive");
  check_finite(samples);
  ArcShape s;
  s.samples_ = std::move(samples);
  s.spacing_ = nominal_spacing;
  return s;
}

double ArcShape::polyline_length() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) total += (samples_[i + 1] - samples_[i]).norm();
  return total;
}

Eigen::VectorXd ArcShape::flattened() const {
  Eigen::VectorXd v(3 * sample_count());
  for (int i = 0; i < sample_count(); ++i) v.segment<3>(3 * i) = samples_[static_cast<std::size_t>(i)];
  return v;
}

ArcShape resample(const ArcShape& shape, double new_spacing) {
  if (!(new_spacing > 0.0)) throw InvalidShapeError("resample spacing must be positive");
  const std::vector<Vec3>& src = shape.samples();
  check_finite(src);
  if (src.size() < 2) throw InvalidShapeError("resample needs at least 2 samples");

  const double h = new_spacing;
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(shape.polyline_length() / h) + 2);
  out.push_back(src.front());

  // Walk the polyline placing each point exactly h (chord distance) from the
  // previous one. Within a segment a + t*(b-a) the step solves
  // |a + t d - p|^2 = h^2 for the smallest admissible t.
  std::size_t seg = 0;
  double seg_t = 0.0;  // parameter of the current position within segment seg
  while (seg + 1 < src.size()) {
    const Vec3& p = out.back();
    bool placed = false;
    while (seg + 1 < src.size()) {
      const Vec3 a = src[seg];
      const Vec3 d = src[seg + 1] - src[seg];
      const Vec3 m = a - p;
      const double A = d.squaredNorm();
      const double B = 2.0 * m.dot(d);
      const double C = m.squaredNorm() - h * h;
      double t_hit = -1.0;
      if (A > 0.0) {
        const double disc = B * B - 4.0 * A * C;
        if (disc >= 0.0) {
          const double root = (-B + std::sqrt(disc)) / (2.0 * A);  // forward solution
          if (root >= seg_t - 1e-12 && root <= 1.0 + 1e-12) t_hit = std::min(root, 1.0);
        }
      }
      if (t_hit >= 0.0 && (a + t_hit * d - p).norm() >= h * (1.0 - 1e-9)) {
        out.push_back(a + t_hit * d);
        seg_t = t_hit;
        if (seg_t >= 1.0 - 1e-15) {
          ++seg;
          seg_t = 0.0;
        }
        placed = true;
        break;
      }
      ++seg;
      seg_t = 0.0;
    }
    if (!placed) break;
  }

  // Leftover shorter than h/2 is dropped; otherwise extend one spacing toward
  // the original endpoint so the end is preserved within h/2.
  const double leftover = (src.back() - out.back()).norm();
  if (leftover >= 0.5 * h && leftover > 1e-12) {
    const Vec3 dir = (src.back() - out.back()).normalized();
    out.push_back(out.back() + h * dir);
  }
  if (out.size() < 3) throw InvalidShapeError("resample spacing too coarse for this curve");
  return ArcShape::from_samples(std::move(out), h);
}

CurvatureProfile curvature_torsion(const ArcShape& shape) {
  const std::vector<Vec3>& p = shape.samples();
  const int n = shape.sample_count();
  if (n < 5) throw InvalidShapeError("curvature needs at least 5 samples");

  std::vector<Vec3> edge(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    edge[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i + 1)] - p[static_cast<std::size_t>(i)];
    if (edge[static_cast<std::size_t>(i)].norm() < 1e-12) {
      throw InvalidShapeError("repeated points in shape");
    }
  }

  CurvatureProfile prof;
  prof.kappa.assign(static_cast<std::size_t>(n), 0.0);
  prof.torsion.assign(static_cast<std::size_t>(n), 0.0);

  // Menger curvature at interior vertices.
  for (int i = 1; i + 1 < n; ++i) {
    const Vec3& a = edge[static_cast<std::size_t>(i - 1)];
    const Vec3& b = edge[static_cast<std::size_t>(i)];
    const Vec3 c = p[static_cast<std::size_t>(i + 1)] - p[static_cast<std::size_t>(i - 1)];
    const double den = a.norm() * b.norm() * c.norm();
    prof.kappa[static_cast<std::size_t>(i)] = den > 0.0 ? 2.0 * a.cross(b).norm() / den : 0.0;
  }
  prof.kappa[0] = prof.kappa[1];
  prof.kappa[static_cast<std::size_t>(n - 1)] = prof.kappa[static_cast<std::size_t>(n - 2)];

  // Binormal per interior vertex; undefined on locally straight runs.
  std::vector<Vec3> binormal(static_cast<std::size_t>(n), Vec3::Zero());
  std::vector<Vec3> tangent(static_cast<std::size_t>(n), Vec3::Zero());
  std::vector<bool> frame_ok(static_cast<std::size_t>(n), false);
  for (int i = 1; i + 1 < n; ++i) {
    const Vec3& a = edge[static_cast<std::size_t>(i - 1)];
    const Vec3& b = edge[static_cast<std::size_t>(i)];
    const Vec3 cr = a.cross(b);
    const double ncr = cr.norm();
    if (ncr > 1e-10 * a.norm() * b.norm()) {
      binormal[static_cast<std::size_t>(i)] = cr / ncr;
      tangent[static_cast<std::size_t>(i)] = (a + b).normalized();
      frame_ok[static_cast<std::size_t>(i)] = true;
    }
  }

  // Torsion from the binormal rotation rate: b' = -tau * normal.
  int first_valid = -1;
  int last_valid = -1;
  for (int i = 1; i + 2 < n; ++i) {
    if (!frame_ok[static_cast<std::size_t>(i)] || !frame_ok[static_cast<std::size_t>(i + 1)]) continue;
    const double ds_local = 0.5 * (edge[static_cast<std::size_t>(i - 1)].norm() + edge[static_cast<std::size_t>(i)].norm());
    const Vec3 normal = binormal[static_cast<std::size_t>(i)].cross(tangent[static_cast<std::size_t>(i)]);
    const double tau =
        -(binormal[static_cast<std::size_t>(i + 1)] - binormal[static_cast<std::size_t>(i)]).dot(normal) / ds_local;
    prof.torsion[static_cast<std::size_t>(i)] = tau;
    if (first_valid < 0) first_valid = i;
    last_valid = i;
  }
  if (first_valid >= 0) {
    for (int i = 0; i < first_valid; ++i) prof.torsion[static_cast<std::size_t>(i)] = prof.torsion[static_cast<std::size_t>(first_valid)];
    for (int i = last_valid + 1; i < n; ++i) prof.torsion[static_cast<std::size_t>(i)] = prof.torsion[static_cast<std::size_t>(last_valid)];
  }
  return prof;
}

void save_shape_csv(const std::string& path, const ArcShape& shape) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  out << "s_mm,x_mm,y_mm,z_mm\n";
  char line[160];
  for (int i = 0; i < shape.sample_count(); ++i) {
    const Vec3& p = shape[i];
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g\n", shape.spacing() * i, p.x(), p.y(), p.z());
    out << line;
  }
}

ArcShape load_shape_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty shape file " + path);
  if (header != "s_mm,x_mm,y_mm,z_mm") throw FormatError("bad shape header in " + path);
  std::vector<Vec3> pts;
  std::vector<double> arc;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double s, x, y, z;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &x, &y, &z) != 4) {
      throw FormatError("bad shape row in " + path + ": " + line);
    }
    arc.push_back(s);
    pts.emplace_back(x, y, z);
  }
  if (pts.size() < 2) throw FormatError("shape file " + path + " has fewer than 2 rows");
  const double ds = arc.size() > 1 ? arc[1] - arc[0] : 1.0;
  if (!(ds > 0.0)) throw FormatError("non-increasing arc column in " + path);
  return ArcShape::from_samples(std::move(pts), ds);
}

}  // namespace endonav
