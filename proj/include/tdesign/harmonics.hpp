#pragma once

#include <span>
#include <vector>

#include "tdesign/geometry.hpp"
#include "tdesign/vec3.hpp"

namespace tdesign {

/// All real orthonormal spherical harmonics up to degree t evaluated at one
/// point. Ordering: degree n = 0..t, and within each degree the order index
/// k = 1..2n+1 with k = m + n + 1, i.e. sine terms (m < 0) first, the zonal
/// harmonic (m = 0) in the middle, cosine terms (m > 0) last.
struct HarmonicVector {
  int degree = 0;
  std::vector<double> coeffs;  // size (degree+1)^2

  /// Value of harmonic (n, k), k = 1..2n+1.
  double at(int n, int k) const { return coeffs[static_cast<size_t>(n) * n + k - 1]; }
};

/// The (t+1)^2 x N matrix of harmonics evaluated at a point set: row r holds
/// harmonic r (in HarmonicVector order) at all N points. Row 0 is the
/// constant 1/sqrt(4 pi). Stored row-major.
struct BasisMatrix {
  int degree = 0;
  int n_points = 0;
  std::vector<double> entries;

  int rows() const { return (degree + 1) * (degree + 1); }
  int cols() const { return n_points; }
  double at(int r, int c) const {
    return entries[static_cast<size_t>(r) * n_points + c];
  }
};

/// Evaluates the fully normalized real basis at p. Requires ||p|| within
/// 1e-6 of 1 (throws NormError); the direction is normalized internally, so
/// harmonics never inherit chart pole conventions.
HarmonicVector eval_harmonics(int t, const Vec3& p);

/// Writes the (t+1)^2 values into out without allocating. Preconditions as
/// eval_harmonics.
void eval_harmonics_into(int t, const Vec3& p, std::span<double> out);

/// Column i is eval_harmonics(t, x_i). Deterministic column by column.
BasisMatrix basis_matrix(int t, const CartesianPointSet& points);

}  // namespace tdesign
