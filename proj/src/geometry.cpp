#include "tdesign/geometry.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tdesign {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Azimuth convention: phi := 0 whenever sin(theta) < 1e-14.
constexpr double kPoleTol = 1e-14;

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}};
}

Vec3 rotate(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 compose(const Mat3& a, const Mat3& b) {  // a * b
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

double wrap_azimuth(double phi) {
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi -= kTwoPi;
  return phi;
}

}  // namespace

CartesianPointSet::CartesianPointSet(std::vector<Vec3> points)
    : points_(std::move(points)) {
  if (points_.empty())
    throw std::invalid_argument("point set must contain at least one point");
  for (size_t i = 0; i < points_.size(); ++i) {
    const double dev = std::abs(norm(points_[i]) - 1.0);
    if (!(dev <= kUnitNormTol))
      throw NormError("point " + std::to_string(i + 1) +
                      " deviates from unit norm by " + std::to_string(dev));
  }
}

CartesianPointSet CartesianPointSet::normalized(std::vector<Vec3> raw) {
  for (auto& p : raw) {
    const double n = norm(p);
    if (!(n > 0.0) || !std::isfinite(n))
      throw NormError("cannot normalize a zero or non-finite vector");
    p = {p.x / n, p.y / n, p.z / n};
  }
  return CartesianPointSet(std::move(raw));
}

GaugeFixedPointSet::GaugeFixedPointSet(CartesianPointSet points)
    : points_(std::move(points)) {
  const Vec3& x1 = points_[0];
  if (std::abs(x1.x) > kUnitNormTol || std::abs(x1.y) > kUnitNormTol ||
      std::abs(x1.z - 1.0) > kUnitNormTol)
    throw std::invalid_argument("gauge violation: x_1 is not the north pole");
  if (points_.size() >= 2) {
    const Vec3& x2 = points_[1];
    if (std::abs(x2.y) > kUnitNormTol || x2.x < -kUnitNormTol)
      throw std::invalid_argument(
          "gauge violation: x_2 is not on the prime meridian");
  }
}

AngleVector::AngleVector(std::vector<double> theta_in,
                         std::vector<double> phi_in)
    : theta(std::move(theta_in)), phi(std::move(phi_in)) {
  if (theta.empty())
    throw std::invalid_argument("angle vector needs at least two points");
  if (phi.size() + 1 != theta.size())
    throw std::invalid_argument(
        "angle vector sizes must be N-1 thetas and N-2 phis");
}

std::vector<double> AngleVector::flat() const {
  std::vector<double> out;
  out.reserve(dof());
  out.insert(out.end(), theta.begin(), theta.end());
  out.insert(out.end(), phi.begin(), phi.end());
  return out;
}

AngleVector AngleVector::from_flat(const std::vector<double>& flat,
                                   int n_points) {
  if (n_points < 2 ||
      flat.size() != static_cast<size_t>(2 * n_points - 3))
    throw std::invalid_argument("flat angle vector has wrong length");
  return AngleVector(
      std::vector<double>(flat.begin(), flat.begin() + (n_points - 1)),
      std::vector<double>(flat.begin() + (n_points - 1), flat.end()));
}

GaugeFixedPointSet gauge_fix(const CartesianPointSet& points) {
  if (points.size() < 2)
    throw std::invalid_argument("gauge fixing needs at least two points");

  // Two rotations move x_1 to the pole, a third aligns x_2's azimuth.
  const Vec3& x1 = points[0];
  const double phi1 = std::atan2(x1.y, x1.x);
  const double theta1 = std::atan2(std::hypot(x1.x, x1.y), x1.z);
  Mat3 r = compose(rot_y(-theta1), rot_z(-phi1));

  const Vec3 x2 = rotate(r, points[1]);
  if (std::hypot(x2.x, x2.y) <= 1e-12)
    throw DegenerateGauge(
        "x_2 is (anti)parallel to x_1; its azimuth is undefined");
  r = compose(rot_z(-std::atan2(x2.y, x2.x)), r);

  std::vector<Vec3> rotated;
  rotated.reserve(points.size());
  for (const Vec3& p : points) rotated.push_back(rotate(r, p));
  return GaugeFixedPointSet(CartesianPointSet(std::move(rotated)));
}

AngleVector to_angles(const GaugeFixedPointSet& points) {
  const int n = points.size();
  std::vector<double> theta, phi;
  theta.reserve(n - 1);
  phi.reserve(n >= 2 ? n - 2 : 0);
  for (int i = 1; i < n; ++i) {
    const Vec3& p = points[i];
    const double st = std::hypot(p.x, p.y);
    theta.push_back(std::atan2(st, p.z));
    if (i >= 2)
      phi.push_back(st < kPoleTol ? 0.0 : wrap_azimuth(std::atan2(p.y, p.x)));
  }
  return AngleVector(std::move(theta), std::move(phi));
}

GaugeFixedPointSet from_angles(const AngleVector& angles) {
  const int n = angles.n_points();
  std::vector<Vec3> pts;
  pts.reserve(n);
  pts.push_back({0.0, 0.0, 1.0});
  for (int i = 1; i < n; ++i) {
    const double t = angles.theta[i - 1];
    const double p = i >= 2 ? angles.phi[i - 2] : 0.0;
    const double st = std::sin(t);
    pts.push_back({st * std::cos(p), st * std::sin(p), std::cos(t)});
  }
  return GaugeFixedPointSet(CartesianPointSet(std::move(pts)));
}

CartesianPointSet spiral_points(int n) {
  if (n < 1) throw std::invalid_argument("spiral_points: n must be >= 1");
  const double rate = 1.8 * std::sqrt(static_cast<double>(n));
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int k = 1; k <= n; ++k) {
    const double z = 1.0 - (2.0 * k - 1.0) / n;
    const double theta = std::acos(z);
    const double phi = rate * theta;
    const double s = std::sin(theta);
    pts.push_back({s * std::cos(phi), s * std::sin(phi), z});
  }
  return CartesianPointSet(std::move(pts));
}

CartesianPointSet random_points(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_points: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec3> pts;
  pts.reserve(n);
  while (static_cast<int>(pts.size()) < n) {
    const Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    const double len = norm(v);
    if (len < 1e-8) continue;  // resample degenerate draws
    pts.push_back({v.x / len, v.y / len, v.z / len});
  }
  return CartesianPointSet(std::move(pts));
}

void write_points(std::ostream& out, const CartesianPointSet& points) {
  char buf[128];
  for (const Vec3& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << buf;
  }
}

void write_points_file(const std::filesystem::path& path,
                       const CartesianPointSet& points) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on all hosts
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_points(out, points);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

CartesianPointSet read_points(std::istream& in) {
  std::vector<Vec3> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    Vec3 p;
    if (!(ls >> p.x >> p.y >> p.z))
      throw FileFormatError(line_no, "expected three numbers");
    std::string rest;
    if (ls >> rest)
      throw FileFormatError(line_no, "trailing content '" + rest + "'");
    const double dev = std::abs(norm(p) - 1.0);
    if (!(dev <= kUnitNormTol))
      throw FileFormatError(line_no, "point is not unit norm (deviation " +
                                         std::to_string(dev) + ")");
    pts.push_back(p);
  }
  if (pts.empty()) throw FileFormatError(line_no, "no points in input");
  return CartesianPointSet(std::move(pts));
}

CartesianPointSet read_points_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_points(in);
}

}  // namespace tdesign
