#include "tdesign/legendre.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tdesign {

namespace {

// Inner products of unit vectors drift past +-1 by rounding; clamp such
// inputs, reject anything further out.
double checked_clamp(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-9))
    throw DomainError("Legendre argument " + std::to_string(x) +
                      " outside [-1, 1]");
  if (x > 1.0) return 1.0;
  if (x < -1.0) return -1.0;
  return x;
}

void check_degree(int t) {
  if (t < 0) throw std::invalid_argument("Legendre degree must be >= 0");
}

}  // namespace

LegendreTable legendre_all(int t, double x) {
  check_degree(t);
  x = checked_clamp(x);
  LegendreTable table;
  table.degree = t;
  table.argument = x;
  table.values.resize(t + 1);
  table.values[0] = 1.0;
  if (t >= 1) table.values[1] = x;
  for (int n = 1; n < t; ++n)
    table.values[n + 1] =
        ((2 * n + 1) * x * table.values[n] - n * table.values[n - 1]) / (n + 1);
  return table;
}

LegendreTable legendre_with_derivatives(int t, double x) {
  LegendreTable table = legendre_all(t, x);
  x = table.argument;
  table.derivs.resize(t + 1);
  table.derivs[0] = 0.0;
  if (std::abs(x) < 1.0 - 1e-10) {
    const double denom = x * x - 1.0;
    for (int n = 1; n <= t; ++n)
      table.derivs[n] =
          n * (x * table.values[n] - table.values[n - 1]) / denom;
  } else {
    // Endpoint limit P_n'(+-1) = (+-1)^{n+1} n(n+1)/2.
    const double sign = x > 0.0 ? 1.0 : -1.0;
    double alt = 1.0;  // sign^{n+1} for n = 1
    for (int n = 1; n <= t; ++n) {
      table.derivs[n] = alt * 0.5 * n * (n + 1);
      alt *= sign;
    }
  }
  return table;
}

double design_kernel(int t, double x) noexcept {
  double p_prev = 1.0;  // P_0
  double p = x;         // P_1
  double acc = 3.0 * x;
  for (int n = 1; n < t; ++n) {
    const double p_next = ((2 * n + 1) * x * p - n * p_prev) / (n + 1);
    p_prev = p;
    p = p_next;
    acc += (2 * n + 3) * p;
  }
  return t >= 1 ? acc : 0.0;
}

KernelValue design_kernel_with_deriv(int t, double x) noexcept {
  double p_prev = 1.0, p = x;    // P_0, P_1
  double d_prev = 0.0, d = 1.0;  // P_0', P_1'
  KernelValue out{3.0 * x, 3.0};
  for (int n = 1; n < t; ++n) {
    const double p_next = ((2 * n + 1) * x * p - n * p_prev) / (n + 1);
    const double d_next = d_prev + (2 * n + 1) * p;  // P'_{n+1} = P'_{n-1} + (2n+1) P_n
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    out.value += (2 * n + 3) * p;
    out.deriv += (2 * n + 3) * d;
  }
  if (t < 1) return {0.0, 0.0};
  return out;
}

}  // namespace tdesign
