#pragma once

#include <span>
#include <vector>

#include "tdesign/geometry.hpp"

namespace tdesign {

/// Value of the variational quantity A_{N,t}. Nonnegative up to rounding
/// (compensated sums of ~N^2 t mixed-sign terms can land a few ulp below
/// zero at a converged design); construction tolerates value >= -1e-9.
struct ObjectiveValue {
  double value = 0.0;
  int degree = 0;
  int n_points = 0;
};

/// Gradient of A_{N,t} in the 2N-3 chart, ordered (theta_2..theta_N,
/// phi_3..phi_N), with cached norms.
class GradientVector {
 public:
  explicit GradientVector(std::vector<double> entries);

  const std::vector<double>& entries() const { return entries_; }
  double inf_norm() const { return inf_norm_; }
  double two_norm() const { return two_norm_; }
  int size() const { return static_cast<int>(entries_.size()); }
  int n_points() const { return (size() + 3) / 2; }

 private:
  std::vector<double> entries_;
  double inf_norm_ = 0.0;
  double two_norm_ = 0.0;
};

/// A_{N,t} via the Legendre-kernel double sum over ordered pairs,
/// (1/N^2) sum_{i,j} sum_{n=1}^t (2n+1) P_n(<x_i, x_j>).
/// The N diagonal terms equal (t+1)^2 - 1 each and are added in closed
/// form; the off-diagonal sum runs over i < j once (shared P_n value) with
/// compensated summation. Cost O(N^2 t).
ObjectiveValue a_value_kernel(const CartesianPointSet& points, int t);

/// A_{N,t} via harmonic row sums,
/// (4 pi / N^2) sum_{n=1}^t sum_k (sum_i Y_n^k(x_i))^2.
/// Compensated summation on the row sums and the final accumulation.
/// Cost O(N t^2).
ObjectiveValue a_value_harmonic(const CartesianPointSet& points, int t);

/// Analytic gradient of a_value_kernel composed with from_angles, by the
/// chain rule through x_j(theta_j, phi_j). Rows at a chart pole produce
/// exact-zero phi derivatives since d x / d phi vanishes there.
GradientVector gradient(const AngleVector& angles, int t);

/// Minimal admissible N for a degree-t design:
/// (t+1)(t+3)/4 for odd t, (t+2)^2/4 for even t (both integral).
int lower_bound_points(int t);

namespace detail {

/// Chart-space evaluation on a flat iterate (theta_2..theta_N,
/// phi_3..phi_N) with no invariant checks; used by the optimizer hot loop.
double objective_flat(std::span<const double> x, int n_points, int t);

/// Objective and gradient together; grad_out.size() == 2*n_points - 3.
/// The returned value is bitwise identical to objective_flat at the same
/// iterate (same summation order).
double objective_gradient_flat(std::span<const double> x, int n_points, int t,
                               std::span<double> grad_out);

/// mu on a flat iterate: points[0] = (0,0,1), points[1] on the prime
/// meridian, no range checks.
void points_from_flat(std::span<const double> x, int n_points,
                      std::vector<Vec3>& out);

}  // namespace detail

}  // namespace tdesign
