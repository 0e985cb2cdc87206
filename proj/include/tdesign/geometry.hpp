#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tdesign/errors.hpp"
#include "tdesign/vec3.hpp"

namespace tdesign {

/// Unit-norm tolerance enforced on point-set construction.
inline constexpr double kUnitNormTol = 1e-12;

/// An ordered set of N unit vectors on S^2. Point order is significant:
/// index i identifies x_i throughout the library. Immutable after
/// construction.
class CartesianPointSet {
 public:
  /// Throws NormError if any point deviates from unit norm by more than
  /// 1e-12, std::invalid_argument if empty.
  explicit CartesianPointSet(std::vector<Vec3> points);

  /// Normalizes each input vector before constructing; convenient for
  /// low-precision external data.
  static CartesianPointSet normalized(std::vector<Vec3> raw);

  int size() const { return static_cast<int>(points_.size()); }
  const Vec3& operator[](int i) const { return points_[static_cast<size_t>(i)]; }
  const std::vector<Vec3>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<Vec3> points_;
};

/// A point set in the canonical frame: x_1 at the north pole (0,0,1) and
/// x_2 on the prime meridian (y = 0, x >= 0).
class GaugeFixedPointSet {
 public:
  /// Validates the gauge invariants (1e-12 tolerances); throws
  /// std::invalid_argument on violation.
  explicit GaugeFixedPointSet(CartesianPointSet points);

  const CartesianPointSet& as_point_set() const { return points_; }
  int size() const { return points_.size(); }
  const Vec3& operator[](int i) const { return points_[i]; }

 private:
  CartesianPointSet points_;
};

/// The 2N-3 free spherical coordinates of a gauge-fixed N-point set:
/// theta_2..theta_N and phi_3..phi_N. theta_1 = 0 and phi_1 = phi_2 = 0 are
/// fixed by the gauge. Canonical ranges are theta in [0, pi] and phi in
/// [0, 2pi); only the lengths are enforced, so the vector can also carry
/// unwrapped optimizer iterates.
struct AngleVector {
  std::vector<double> theta;  // size N-1
  std::vector<double> phi;    // size N-2

  AngleVector(std::vector<double> theta_in, std::vector<double> phi_in);

  int n_points() const { return static_cast<int>(theta.size()) + 1; }
  int dof() const { return 2 * n_points() - 3; }

  /// Flat layout (theta_2..theta_N, phi_3..phi_N) used by the optimizer
  /// and by GradientVector.
  std::vector<double> flat() const;
  static AngleVector from_flat(const std::vector<double>& flat, int n_points);
};

/// Rotates the whole configuration by a single R in SO(3) so that the gauge
/// invariants hold. All pairwise inner products are preserved (within
/// rounding); the set's geometry is untouched.
///
/// Throws DegenerateGauge when x_2 is (anti)parallel to x_1 and the meridian
/// rotation is undefined.
GaugeFixedPointSet gauge_fix(const CartesianPointSet& points);

/// Cartesian -> spherical chart (the map eta). theta_i = arccos(z_i)
/// evaluated stably as atan2(hypot(x,y), z); phi_i = atan2(y, x) wrapped to
/// [0, 2pi). Points with sin(theta) < 1e-14 get phi := 0, so the map is
/// total.
AngleVector to_angles(const GaugeFixedPointSet& points);

/// Spherical chart -> Cartesian (the map mu):
/// x_i = (sin t_i cos p_i, sin t_i sin p_i, cos t_i), with theta_1 = 0 and
/// phi_2 = 0 fixed.
GaugeFixedPointSet from_angles(const AngleVector& angles);

/// Deterministic generalized-spiral configuration: z_k = 1 - (2k-1)/n and
/// azimuth phi_k = 1.8*sqrt(n)*arccos(z_k), k = 1..n.
CartesianPointSet spiral_points(int n);

/// n i.i.d. uniform points on S^2 (normalized Gaussian triples),
/// reproducible for a fixed seed.
CartesianPointSet random_points(int n, std::uint64_t seed);

/// Text format: one point per line, three numbers separated by single
/// spaces, 17 significant digits, LF line endings, no header.
void write_points(std::ostream& out, const CartesianPointSet& points);
void write_points_file(const std::filesystem::path& path,
                       const CartesianPointSet& points);

/// Accepts arbitrary whitespace separation and CRLF. Throws FileFormatError
/// (carrying the 1-based line number) on malformed or non-unit rows.
CartesianPointSet read_points(std::istream& in);
CartesianPointSet read_points_file(const std::filesystem::path& path);

}  // namespace tdesign
