#include "tdesign/harmonics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tdesign {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;
constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace

void eval_harmonics_into(int t, const Vec3& p, std::span<double> out) {
  if (t < 0) throw std::invalid_argument("harmonic degree must be >= 0");
  const size_t count = static_cast<size_t>(t + 1) * (t + 1);
  if (out.size() != count)
    throw std::invalid_argument("harmonic output span has wrong size");

  const double len = norm(p);
  if (!(std::abs(len - 1.0) <= 1e-6))
    throw NormError("harmonic evaluation point has norm " +
                    std::to_string(len));

  // Normalize the direction so the basis never sees norm drift.
  const double x = p.x / len, y = p.y / len, z = p.z / len;
  const double st = std::hypot(x, y);
  const double ct = z;
  double cphi = 1.0, sphi = 0.0;
  if (st > 0.0) {
    cphi = x / st;
    sphi = y / st;
  }

  // Fully normalized associated Legendre recurrences (no Condon-Shortley
  // phase): diagonal in m, then upward in n. Entry (n, m) lands at flat
  // offsets n^2 + n + m (cosine/zonal) and n^2 + n - m (sine).
  const double y00 = 1.0 / std::sqrt(kFourPi);
  double pmm = y00;
  double cm = 1.0, sm = 0.0;  // cos(m phi), sin(m phi)
  for (int m = 0; m <= t; ++m) {
    if (m > 0) {
      pmm *= st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      const double c_next = cm * cphi - sm * sphi;
      sm = sm * cphi + cm * sphi;
      cm = c_next;
    }
    const double cos_w = m == 0 ? 1.0 : kSqrt2 * cm;
    const double sin_w = kSqrt2 * sm;

    double p_prev = pmm;
    out[static_cast<size_t>(m) * m + 2 * m] = cos_w * p_prev;
    if (m > 0) out[static_cast<size_t>(m) * m] = sin_w * p_prev;
    if (m == t) break;

    double p_curr = std::sqrt(2.0 * m + 3.0) * ct * pmm;
    out[static_cast<size_t>(m + 1) * (m + 1) + (m + 1) + m] = cos_w * p_curr;
    if (m > 0)
      out[static_cast<size_t>(m + 1) * (m + 1) + (m + 1) - m] = sin_w * p_curr;

    for (int n = m + 2; n <= t; ++n) {
      const double a =
          std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
      const double b = std::sqrt(
          ((static_cast<double>(n - 1)) * (n - 1) - static_cast<double>(m) * m) /
          (4.0 * (static_cast<double>(n - 1)) * (n - 1) - 1.0));
      const double p_next = a * (ct * p_curr - b * p_prev);
      p_prev = p_curr;
      p_curr = p_next;
      out[static_cast<size_t>(n) * n + n + m] = cos_w * p_curr;
      if (m > 0) out[static_cast<size_t>(n) * n + n - m] = sin_w * p_curr;
    }
  }
}

HarmonicVector eval_harmonics(int t, const Vec3& p) {
  HarmonicVector h;
  h.degree = t;
  h.coeffs.resize(static_cast<size_t>(t + 1) * (t + 1));
  eval_harmonics_into(t, p, h.coeffs);
  return h;
}

BasisMatrix basis_matrix(int t, const CartesianPointSet& points) {
  const int n = points.size();
  const int rows = (t + 1) * (t + 1);
  BasisMatrix m;
  m.degree = t;
  m.n_points = n;
  m.entries.resize(static_cast<size_t>(rows) * n);
  std::vector<double> column(rows);
  for (int i = 0; i < n; ++i) {
    eval_harmonics_into(t, points[i], column);
    for (int r = 0; r < rows; ++r)
      m.entries[static_cast<size_t>(r) * n + i] = column[r];
  }
  return m;
}

}  // namespace tdesign
