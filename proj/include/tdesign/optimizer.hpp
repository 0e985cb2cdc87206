#pragma once

#include <span>
#include <string>
#include <vector>

#include "tdesign/geometry.hpp"
#include "tdesign/objective.hpp"

namespace tdesign {

struct BBConfig {
  int k_max = 20000;               // maximum iterations (K_max)
  double eps1 = 1e-16;             // tolerance on ||g_{k+1} - g_k||_2
  double eps2 = 1e-16;             // tolerance on function/parameter change
  double rho = 0.1;                // Armijo-Goldstein parameter, in (0, 1/2)
  double tau = 0.5;                // backtracking factor, in (0, 1)
  double alpha_clamp_low = 1e-10;  // BB quotient reset guard (lower)
  double alpha_clamp_high = 1e10;  // BB quotient reset guard (upper)
  double grad_tol = 1e-8;          // practical stop on ||g||_inf
  int max_backtracks = 50;

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

/// How an iterate was accepted: the two-sided Armijo-Goldstein test at the
/// proposed step, the sufficient-decrease test inside the backtracking
/// loop, or the reset fallback (initial record k=1, or a backtracking
/// exhaustion that took the best finite trial / a zero step).
enum class AcceptedBy { armijo_goldstein, backtracking, reset };

enum class Termination {
  grad_change_small,  // ||g_{k+1} - g_k||_2 <= eps1
  progress_small,     // |f_{k+1} - f_k| <= eps2 and ||x_{k+1} - x_k||_2 <= eps2
  grad_tol_reached,   // ||g||_inf <= grad_tol
  max_iterations,
};

const char* to_string(AcceptedBy a);
const char* to_string(Termination t);

/// One row of the optimization trace. Record k = 1 is the evaluation of the
/// initial point (alpha is the initialization value 1); records k >= 2
/// describe the step that produced iterate k.
struct IterationRecord {
  int k = 0;
  double f = 0.0;
  double grad_inf_norm = 0.0;
  double grad_two_norm = 0.0;
  double alpha = 1.0;
  int backtracks = 0;
  AcceptedBy accepted_by = AcceptedBy::reset;
};

struct OptimizeResult {
  AngleVector final_angles;
  GaugeFixedPointSet final_points;
  std::vector<IterationRecord> trace;
  Termination termination;
  int iterations = 0;   // index of the last evaluated iterate (= trace size)
  double wall_time = 0.0;  // seconds
};

/// Barzilai-Borwein step size s's / s'y, reset to 1 when s'y = 0, when the
/// quotient is non-finite, or when it falls outside (clamp_low, clamp_high).
double bb_step_size(std::span<const double> s, std::span<const double> y,
                    double clamp_low = 1e-10, double clamp_high = 1e10);

/// Two-sided acceptance test:
///   f_trial <= f_curr - alpha rho g'g  and
///   f_trial >= f_curr - alpha (1-rho) g'g.
/// g_dot_g is the directional derivative magnitude g'd (= g'g for steepest
/// descent). Expects alpha > 0, 0 < rho < 1/2, g_dot_g >= 0.
bool armijo_goldstein_accept(double f_curr, double f_trial, double g_dot_g,
                             double alpha, double rho);

/// Barzilai-Borwein descent on A_{N,t} in the 2N-3 chart. Iterates
/// x_{k+1} = x_k - alpha_k g_k with the BB step filtered through the
/// Armijo-Goldstein rule and backtracking (sufficient decrease only inside
/// the backtracking loop). Iterates are not wrapped into canonical angle
/// ranges during iteration; the final configuration is re-canonicalized
/// once at output. Throws LineSearchStall if max_backtracks consecutive
/// shrinks fail to produce a finite objective.
OptimizeResult bb_minimize(const AngleVector& initial, int t,
                           const BBConfig& cfg = {});

/// Same contract, termination tests and trace schema as bb_minimize, with
/// the search direction from a limited-memory inverse-Hessian approximation
/// (history 10, curvature-violating pairs skipped, steepest-descent
/// fallback when the direction is not a descent direction).
OptimizeResult qn_minimize(const AngleVector& initial, int t,
                           const BBConfig& cfg = {});

/// JSON array of the trace records, numbers at 17 significant digits.
/// Field names: k, f, grad_inf, grad_2, alpha, backtracks, accepted_by.
std::string trace_to_json(std::span<const IterationRecord> trace);

}  // namespace tdesign
