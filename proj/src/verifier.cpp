#include "tdesign/verifier.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tdesign/objective.hpp"

namespace tdesign {

namespace {

// Smallest and largest of the min(rows, cols) singular values.
std::pair<double, double> singular_extremes(const BasisMatrix& m) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      mat(m.entries.data(), m.rows(), m.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(mat);
  if (svd.info() != Eigen::Success)
    throw ConvergenceError("singular value decomposition did not converge");
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_design: return "certified_design";
    case Verdict::stationary_but_rank_deficient:
      return "stationary_but_rank_deficient";
    case Verdict::not_stationary: return "not_stationary";
  }
  return "?";
}

double min_singular_value(const BasisMatrix& m) {
  if (m.rows() > m.cols()) return 0.0;  // short of full row rank by counting
  return singular_extremes(m).first;
}

bool is_fundamental_system(const CartesianPointSet& points, int t,
                           double rank_tol) {
  if (!(rank_tol > 0.0))
    throw std::invalid_argument("rank_tol must be positive");
  const int rows = (t + 1) * (t + 1);
  if (points.size() < rows) return false;  // row rank cannot be full
  const auto [smin, smax] = singular_extremes(basis_matrix(t, points));
  return smin > rank_tol * smax;
}

DesignCertificate verify_design(const CartesianPointSet& points, int t,
                                double stat_tol, double rank_tol) {
  if (t < 1) throw std::invalid_argument("design degree must be >= 1");
  if (!(stat_tol > 0.0 && rank_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");

  DesignCertificate cert;
  cert.t = t;
  cert.n_points = points.size();
  cert.a_value = std::max(0.0, a_value_kernel(points, t).value);
  cert.n_meets_bound = points.size() >= (t + 2) * (t + 2);

  if (points.size() >= 2) {
    const GaugeFixedPointSet fixed = gauge_fix(points);
    cert.grad_inf_norm = gradient(to_angles(fixed), t).inf_norm();
    for (int i = 2; i < fixed.size(); ++i)
      if (std::hypot(fixed[i].x, fixed[i].y) < 1e-6) cert.pole_warning = true;
  } else {
    cert.grad_inf_norm = 0.0;  // one point: the chart has no free parameters
  }
  cert.is_stationary = cert.grad_inf_norm <= stat_tol;

  // The certificate reports the smallest of the min(rows, cols) singular
  // values of Y_{t+1}. When N < (t+2)^2 this is a conditioning statement
  // about the columns rather than the full-row-rank hypothesis; the
  // n_meets_bound flag records which regime applies.
  const auto [smin, smax] = singular_extremes(basis_matrix(t + 1, points));
  cert.sigma_min = smin;
  cert.is_fundamental = smin > rank_tol * smax;

  if (!cert.is_stationary)
    cert.verdict = Verdict::not_stationary;
  else if (cert.is_fundamental)
    cert.verdict = Verdict::certified_design;
  else
    cert.verdict = Verdict::stationary_but_rank_deficient;
  return cert;
}

std::string certificate_to_json(const DesignCertificate& cert) {
  char buf[640];
  std::snprintf(
      buf, sizeof(buf),
      "{\n"
      "  \"t\": %d,\n"
      "  \"n_points\": %d,\n"
      "  \"a_value\": %.17g,\n"
      "  \"grad_inf_norm\": %.17g,\n"
      "  \"sigma_min\": %.17g,\n"
      "  \"is_fundamental\": %s,\n"
      "  \"is_stationary\": %s,\n"
      "  \"verdict\": \"%s\",\n"
      "  \"pole_warning\": %s,\n"
      "  \"n_meets_bound\": %s\n"
      "}\n",
      cert.t, cert.n_points, cert.a_value, cert.grad_inf_norm, cert.sigma_min,
      cert.is_fundamental ? "true" : "false",
      cert.is_stationary ? "true" : "false", to_string(cert.verdict),
      cert.pole_warning ? "true" : "false",
      cert.n_meets_bound ? "true" : "false");
  return buf;
}

}  // namespace tdesign
