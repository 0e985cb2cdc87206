#pragma once

#include <string>

#include "tdesign/geometry.hpp"
#include "tdesign/harmonics.hpp"

namespace tdesign {

enum class Verdict {
  certified_design,
  stationary_but_rank_deficient,
  not_stationary,
};

const char* to_string(Verdict v);

/// First-order certificate for a candidate degree-t design: the objective
/// value, the chart-gradient norm, and the minimal singular value of the
/// degree-(t+1) basis matrix. The verdict is advisory; the raw numbers are
/// reported so callers can re-judge with their own tolerances.
struct DesignCertificate {
  int t = 0;
  int n_points = 0;
  double a_value = 0.0;        // A_{N,t}, clamped at 0
  double grad_inf_norm = 0.0;  // ||g||_inf of the chart gradient
  double sigma_min = 0.0;      // smallest of the min(rows, cols) singular
                               // values of Y_{t+1}(X_N)
  bool is_fundamental = false;  // sigma_min > rank_tol * sigma_max
  bool is_stationary = false;   // grad_inf_norm <= stat_tol
  Verdict verdict = Verdict::not_stationary;
  bool pole_warning = false;   // some point with index >= 3 within 1e-6 of a
                               // pole, where the chart's phi-gradient
                               // vanishes identically
  bool n_meets_bound = false;  // N >= (t+2)^2
};

/// Smallest singular value via a dense SVD. When rows > cols the row space
/// cannot have full rank and 0 is returned without decomposition. Throws
/// ConvergenceError if the decomposition fails.
double min_singular_value(const BasisMatrix& m);

/// rank_tol is relative: the rank test is sigma_min > rank_tol * sigma_max.
/// When N < (t+1)^2 the answer is false by counting, without decomposition.
bool is_fundamental_system(const CartesianPointSet& points, int t,
                           double rank_tol = 1e-8);

/// Evaluates A_{N,t} (kernel form), the chart gradient at
/// to_angles(gauge_fix(points)), and sigma_min of Y_{t+1}. stat_tol applies
/// to ||g||_inf; rank_tol is relative to sigma_max. Propagates
/// DegenerateGauge and ConvergenceError. n_meets_bound reports whether the
/// N >= (t+2)^2 hypothesis holds; it is reported, not enforced.
DesignCertificate verify_design(const CartesianPointSet& points, int t,
                                double stat_tol = 1e-7,
                                double rank_tol = 1e-8);

/// JSON object with all certificate fields, numbers at 17 significant
/// digits.
std::string certificate_to_json(const DesignCertificate& cert);

}  // namespace tdesign
