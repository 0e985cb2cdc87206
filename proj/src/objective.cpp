#include "tdesign/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "tdesign/harmonics.hpp"
#include "tdesign/legendre.hpp"

namespace tdesign {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

double clamp_inner(double c) {
  if (c > 1.0) return 1.0;
  if (c < -1.0) return -1.0;
  return c;
}

// Kahan compensated accumulator.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void check_degree(int t) {
  if (t < 1) throw std::invalid_argument("objective degree must be >= 1");
}

}  // namespace

GradientVector::GradientVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() % 2 == 0)
    throw std::invalid_argument("gradient must have 2N-3 entries");
  double sq = 0.0;
  for (double v : entries_) {
    inf_norm_ = std::max(inf_norm_, std::abs(v));
    sq += v * v;
  }
  two_norm_ = std::sqrt(sq);
}

ObjectiveValue a_value_kernel(const CartesianPointSet& points, int t) {
  check_degree(t);
  const int n = points.size();
  // Diagonal terms: P_m(1) = 1, so each contributes sum_{m=1}^t (2m+1)
  // = (t+1)^2 - 1.
  const double diag = (static_cast<double>(t + 1) * (t + 1) - 1.0) / n;
  Kahan off;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      off.add(design_kernel(t, clamp_inner(dot(points[i], points[j]))));
  const double value =
      diag + 2.0 * off.sum / (static_cast<double>(n) * n);
  return {value, t, n};
}

ObjectiveValue a_value_harmonic(const CartesianPointSet& points, int t) {
  check_degree(t);
  const int n = points.size();
  const size_t rows = static_cast<size_t>(t + 1) * (t + 1);
  std::vector<double> sums(rows, 0.0), comps(rows, 0.0);
  std::vector<double> column(rows);
  for (int i = 0; i < n; ++i) {
    eval_harmonics_into(t, points[i], column);
    for (size_t r = 0; r < rows; ++r) {
      const double y = column[r] - comps[r];
      const double s = sums[r] + y;
      comps[r] = (s - sums[r]) - y;
      sums[r] = s;
    }
  }
  Kahan acc;
  for (size_t r = 1; r < rows; ++r) acc.add(sums[r] * sums[r]);  // degrees >= 1
  const double value = kFourPi * acc.sum / (static_cast<double>(n) * n);
  return {value, t, n};
}

int lower_bound_points(int t) {
  if (t < 1) throw std::invalid_argument("degree must be >= 1");
  return t % 2 == 1 ? (t + 1) * (t + 3) / 4 : (t + 2) * (t + 2) / 4;
}

namespace detail {

void points_from_flat(std::span<const double> x, int n_points,
                      std::vector<Vec3>& out) {
  out.resize(n_points);
  out[0] = {0.0, 0.0, 1.0};
  for (int i = 1; i < n_points; ++i) {
    const double t = x[i - 1];
    const double p = i >= 2 ? x[n_points - 1 + (i - 2)] : 0.0;
    const double st = std::sin(t);
    out[i] = {st * std::cos(p), st * std::sin(p), std::cos(t)};
  }
}

double objective_flat(std::span<const double> x, int n_points, int t) {
  std::vector<Vec3> pts;
  points_from_flat(x, n_points, pts);
  const double diag =
      (static_cast<double>(t + 1) * (t + 1) - 1.0) / n_points;
  Kahan off;
  for (int j = 1; j < n_points; ++j)
    for (int i = 0; i < j; ++i)
      off.add(design_kernel(t, clamp_inner(dot(pts[i], pts[j]))));
  return diag + 2.0 * off.sum / (static_cast<double>(n_points) * n_points);
}

double objective_gradient_flat(std::span<const double> x, int n_points, int t,
                               std::span<double> grad_out) {
  const int dof = 2 * n_points - 3;
  if (grad_out.size() != static_cast<size_t>(dof))
    throw std::invalid_argument("gradient span has wrong size");

  std::vector<Vec3> pts;
  points_from_flat(x, n_points, pts);

  // Tangent vectors of the chart at each point.
  std::vector<Vec3> d_theta(n_points), d_phi(n_points);
  for (int i = 1; i < n_points; ++i) {
    const double th = x[i - 1];
    const double ph = i >= 2 ? x[n_points - 1 + (i - 2)] : 0.0;
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    d_theta[i] = {ct * cp, ct * sp, -st};
    d_phi[i] = {-st * sp, st * cp, 0.0};
  }

  for (auto& g : grad_out) g = 0.0;
  const double scale =
      2.0 / (static_cast<double>(n_points) * n_points);
  Kahan off;
  for (int j = 1; j < n_points; ++j) {
    for (int i = 0; i < j; ++i) {
      const double c = clamp_inner(dot(pts[i], pts[j]));
      const KernelValue k = design_kernel_with_deriv(t, c);
      off.add(k.value);
      const double w = scale * k.deriv;
      // point j always owns a theta dof; point i does for i >= 1
      grad_out[j - 1] += w * dot(d_theta[j], pts[i]);
      if (j >= 2) grad_out[n_points - 1 + (j - 2)] += w * dot(d_phi[j], pts[i]);
      if (i >= 1) {
        grad_out[i - 1] += w * dot(d_theta[i], pts[j]);
        if (i >= 2)
          grad_out[n_points - 1 + (i - 2)] += w * dot(d_phi[i], pts[j]);
      }
    }
  }
  const double diag =
      (static_cast<double>(t + 1) * (t + 1) - 1.0) / n_points;
  return diag + 2.0 * off.sum / (static_cast<double>(n_points) * n_points);
}

}  // namespace detail

GradientVector gradient(const AngleVector& angles, int t) {
  check_degree(t);
  const int n = angles.n_points();
  const std::vector<double> x = angles.flat();
  std::vector<double> g(2 * n - 3);
  detail::objective_gradient_flat(x, n, t, g);
  return GradientVector(std::move(g));
}

}  // namespace tdesign
