#pragma once

#include <vector>

#include "tdesign/errors.hpp"

namespace tdesign {

/// Legendre polynomial values P_0(x)..P_t(x) and, optionally, their
/// derivatives, all at one argument.
struct LegendreTable {
  int degree = 0;
  double argument = 0.0;        // the (possibly clamped) evaluation point
  std::vector<double> values;   // size degree+1
  std::vector<double> derivs;   // size degree+1, or empty if not computed
};

/// All P_0..P_t at x by the three-term recurrence
/// (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
///
/// Inputs within 1e-9 of [-1, 1] are clamped (inner products of unit
/// vectors drift past +-1 by rounding); beyond that throws DomainError.
LegendreTable legendre_all(int t, double x);

/// As legendre_all, but also fills derivs. P_n'(x) is evaluated as
/// n (x P_n - P_{n-1}) / (x^2 - 1) for |x| < 1 - 1e-10 and by the endpoint
/// limit P_n'(+-1) = (+-1)^{n+1} n(n+1)/2 otherwise.
LegendreTable legendre_with_derivatives(int t, double x);

/// sum_{n=1}^{t} (2n+1) P_n(x): the kernel that the pairwise objective sums
/// over all inner products. Assumes x already in [-1, 1].
double design_kernel(int t, double x) noexcept;

struct KernelValue {
  double value = 0.0;  // sum_{n=1}^t (2n+1) P_n(x)
  double deriv = 0.0;  // sum_{n=1}^t (2n+1) P_n'(x)
};

/// Kernel and its derivative in one recurrence pass. Derivatives use
/// P'_{n+1} = P'_{n-1} + (2n+1) P_n, which is division-free and exact at
/// the endpoints.
KernelValue design_kernel_with_deriv(int t, double x) noexcept;

}  // namespace tdesign
