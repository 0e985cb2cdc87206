#include "tdesign/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <optional>
#include <stdexcept>

namespace tdesign {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct LineSearchResult {
  std::vector<double> x;
  double f = 0.0;
  double alpha = 0.0;
  int backtracks = 0;
  AcceptedBy accepted_by = AcceptedBy::reset;
};

// Trial steps x - alpha d. The proposed alpha faces the two-sided
// Armijo-Goldstein test; the backtracking loop re-tests only sufficient
// decrease (repeated shrinking can legitimately overshoot the Goldstein
// lower bound). On exhaustion the best finite non-increasing trial is
// taken, or a zero step if every finite trial ascended; if no trial was
// finite at all, the search has stalled.
LineSearchResult line_search(std::span<const double> x, double f,
                             std::span<const double> d, double g_dot_d,
                             double alpha0, int n_points, int t,
                             const BBConfig& cfg) {
  const size_t dim = x.size();
  std::vector<double> trial(dim);
  auto eval_at = [&](double alpha) {
    for (size_t i = 0; i < dim; ++i) trial[i] = x[i] - alpha * d[i];
    return detail::objective_flat(trial, n_points, t);
  };

  double alpha = alpha0;
  double ft = eval_at(alpha);
  if (std::isfinite(ft) &&
      armijo_goldstein_accept(f, ft, g_dot_d, alpha, cfg.rho))
    return {std::move(trial), ft, alpha, 0, AcceptedBy::armijo_goldstein};

  std::optional<LineSearchResult> best;
  if (std::isfinite(ft))
    best = LineSearchResult{trial, ft, alpha, 0, AcceptedBy::reset};

  for (int b = 1; b <= cfg.max_backtracks; ++b) {
    alpha *= cfg.tau;
    ft = eval_at(alpha);
    if (!std::isfinite(ft)) continue;
    if (ft <= f - alpha * cfg.rho * g_dot_d)
      return {std::move(trial), ft, alpha, b, AcceptedBy::backtracking};
    if (!best || ft < best->f)
      best = LineSearchResult{trial, ft, alpha, b, AcceptedBy::reset};
  }

  if (!best)
    throw LineSearchStall(
        "no finite objective value after " +
        std::to_string(cfg.max_backtracks) + " backtracking steps");
  if (best->f <= f) {
    best->backtracks = cfg.max_backtracks;
    return std::move(*best);
  }
  // Zero step: every finite trial ascended. The change tests terminate the
  // outer loop on the next check.
  LineSearchResult stay;
  stay.x.assign(x.begin(), x.end());
  stay.f = f;
  stay.alpha = alpha;
  stay.backtracks = cfg.max_backtracks;
  stay.accepted_by = AcceptedBy::reset;
  return stay;
}

enum class Method { bb, lbfgs };

OptimizeResult minimize_impl(const AngleVector& initial, int t,
                             const BBConfig& cfg, Method method) {
  cfg.validate();
  if (t < 1) throw std::invalid_argument("design degree must be >= 1");
  const auto t_start = std::chrono::steady_clock::now();
  const int n_points = initial.n_points();
  const int dim = initial.dof();

  std::vector<double> x = initial.flat();
  std::vector<double> g(dim);
  double f = detail::objective_gradient_flat(x, n_points, t, g);
  if (!std::isfinite(f))
    throw LineSearchStall("objective is not finite at the initial point");

  std::vector<IterationRecord> trace;
  trace.push_back({1, f, inf_norm(g), norm2(g), 1.0, 0, AcceptedBy::reset});

  // L-BFGS history (unused by the BB method).
  std::deque<std::vector<double>> hist_s, hist_y;
  std::deque<double> hist_rho;
  constexpr int kMemory = 10;

  std::vector<double> x_prev, g_prev, direction(dim), scratch(dim);
  Termination termination = Termination::max_iterations;

  auto finalize = [&](Termination why) {
    std::vector<Vec3> pts;
    detail::points_from_flat(x, n_points, pts);
    // Re-canonicalize once at output: iterates are never wrapped, so x_2
    // may have drifted across the prime meridian (sin theta_2 < 0). A
    // half-turn about the z axis restores the gauge exactly.
    if (pts[1].x < 0.0)
      for (auto& p : pts) {
        p.x = -p.x;
        p.y = -p.y;
      }
    GaugeFixedPointSet final_points{CartesianPointSet(std::move(pts))};
    AngleVector final_angles = to_angles(final_points);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      t_start)
            .count();
    const int iterations = static_cast<int>(trace.size());
    return OptimizeResult{std::move(final_angles), std::move(final_points),
                          std::move(trace), why, iterations, elapsed};
  };

  if (inf_norm(g) <= cfg.grad_tol)
    return finalize(Termination::grad_tol_reached);

  for (int step = 1; step <= cfg.k_max; ++step) {
    double alpha0 = 1.0;
    std::span<const double> d;
    if (method == Method::bb) {
      if (!x_prev.empty()) {
        for (int i = 0; i < dim; ++i) {
          direction[i] = x[i] - x_prev[i];  // s_k, reused as scratch
          scratch[i] = g[i] - g_prev[i];    // y_k
        }
        alpha0 = bb_step_size(direction, scratch, cfg.alpha_clamp_low,
                              cfg.alpha_clamp_high);
      }
      d = g;
    } else {
      // Two-loop recursion over the stored curvature pairs.
      direction.assign(g.begin(), g.end());
      if (!hist_s.empty()) {
        const size_t m = hist_s.size();
        std::vector<double> coeff(m);
        for (size_t i = m; i-- > 0;) {
          coeff[i] = hist_rho[i] * dot(hist_s[i], direction);
          for (int j = 0; j < dim; ++j)
            direction[j] -= coeff[i] * hist_y[i][j];
        }
        const double gamma =
            dot(hist_s.back(), hist_y.back()) / dot(hist_y.back(), hist_y.back());
        for (auto& v : direction) v *= gamma;
        for (size_t i = 0; i < m; ++i) {
          const double beta = hist_rho[i] * dot(hist_y[i], direction);
          for (int j = 0; j < dim; ++j)
            direction[j] += (coeff[i] - beta) * hist_s[i][j];
        }
      }
      if (dot(direction, g) <= 0.0) direction.assign(g.begin(), g.end());
      d = direction;
    }

    const double g_dot_d = dot(g, d);
    LineSearchResult ls =
        line_search(x, f, d, g_dot_d, alpha0, n_points, t, cfg);

    x_prev = std::move(x);
    g_prev = g;
    x = std::move(ls.x);
    f = ls.f;
    detail::objective_gradient_flat(x, n_points, t, g);

    if (method == Method::lbfgs) {
      std::vector<double> s(dim), yv(dim);
      for (int i = 0; i < dim; ++i) {
        s[i] = x[i] - x_prev[i];
        yv[i] = g[i] - g_prev[i];
      }
      const double sy = dot(s, yv);
      if (sy > 0.0) {  // keep only curvature-consistent pairs
        hist_rho.push_back(1.0 / sy);
        hist_s.push_back(std::move(s));
        hist_y.push_back(std::move(yv));
        if (static_cast<int>(hist_s.size()) > kMemory) {
          hist_s.pop_front();
          hist_y.pop_front();
          hist_rho.pop_front();
        }
      }
    }

    const double ginf = inf_norm(g);
    const double g2 = norm2(g);
    trace.push_back({static_cast<int>(trace.size()) + 1, f, ginf, g2,
                     ls.alpha, ls.backtracks, ls.accepted_by});

    double dg_sq = 0.0, dx_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
      dg_sq += (g[i] - g_prev[i]) * (g[i] - g_prev[i]);
      dx_sq += (x[i] - x_prev[i]) * (x[i] - x_prev[i]);
    }
    const double f_prev = trace[trace.size() - 2].f;
    if (std::sqrt(dg_sq) <= cfg.eps1) {
      termination = Termination::grad_change_small;
      break;
    }
    if (std::abs(f - f_prev) <= cfg.eps2 && std::sqrt(dx_sq) <= cfg.eps2) {
      termination = Termination::progress_small;
      break;
    }
    if (ginf <= cfg.grad_tol) {
      termination = Termination::grad_tol_reached;
      break;
    }
  }
  return finalize(termination);
}

}  // namespace

void BBConfig::validate() const {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (!(rho > 0.0 && rho < 0.5))
    throw std::invalid_argument("rho must lie in (0, 1/2)");
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("tau must lie in (0, 1)");
  if (!(alpha_clamp_low > 0.0 && alpha_clamp_low < alpha_clamp_high))
    throw std::invalid_argument("require 0 < alpha_clamp_low < alpha_clamp_high");
  if (!(eps1 >= 0.0 && eps2 >= 0.0 && grad_tol >= 0.0))
    throw std::invalid_argument("tolerances must be nonnegative");
  if (max_backtracks < 1)
    throw std::invalid_argument("max_backtracks must be >= 1");
}

const char* to_string(AcceptedBy a) {
  switch (a) {
    case AcceptedBy::armijo_goldstein: return "armijo_goldstein";
    case AcceptedBy::backtracking: return "backtracking";
    case AcceptedBy::reset: return "reset";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::grad_change_small: return "grad_change_small";
    case Termination::progress_small: return "progress_small";
    case Termination::grad_tol_reached: return "grad_tol_reached";
    case Termination::max_iterations: return "max_iterations";
  }
  return "?";
}

double bb_step_size(std::span<const double> s, std::span<const double> y,
                    double clamp_low, double clamp_high) {
  const double sy = dot(s, y);
  if (sy == 0.0) return 1.0;
  const double q = dot(s, s) / sy;
  if (!std::isfinite(q) || q <= clamp_low || q >= clamp_high) return 1.0;
  return q;
}

bool armijo_goldstein_accept(double f_curr, double f_trial, double g_dot_g,
                             double alpha, double rho) {
  return f_trial <= f_curr - alpha * rho * g_dot_g &&
         f_trial >= f_curr - alpha * (1.0 - rho) * g_dot_g;
}

OptimizeResult bb_minimize(const AngleVector& initial, int t,
                           const BBConfig& cfg) {
  return minimize_impl(initial, t, cfg, Method::bb);
}

OptimizeResult qn_minimize(const AngleVector& initial, int t,
                           const BBConfig& cfg) {
  return minimize_impl(initial, t, cfg, Method::lbfgs);
}

std::string trace_to_json(std::span<const IterationRecord> trace) {
  std::string out = "[";
  char buf[256];
  for (size_t i = 0; i < trace.size(); ++i) {
    const IterationRecord& r = trace[i];
    std::snprintf(buf, sizeof(buf),
                  "%s\n  {\"k\": %d, \"f\": %.17g, \"grad_inf\": %.17g, "
                  "\"grad_2\": %.17g, \"alpha\": %.17g, \"backtracks\": %d, "
                  "\"accepted_by\": \"%s\"}",
                  i == 0 ? "" : ",", r.k, r.f, r.grad_inf_norm,
                  r.grad_two_norm, r.alpha, r.backtracks,
                  to_string(r.accepted_by));
    out += buf;
  }
  out += "\n]\n";
  return out;
}

}  // namespace tdesign
