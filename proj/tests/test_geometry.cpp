#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tdesign/geometry.hpp"

using namespace tdesign;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Example-1 initial spiral configuration as printed in the source data
// (four significant decimals).
const std::vector<Vec3> kSpiral4Printed = {
    {0.0, 0.0, 1.0},
    {0.9872, 0.0, -0.1595},
    {-0.3977, 0.6727, -0.6239},
    {-0.6533, -0.7455, -0.1318},
};

double max_gram_deviation(const CartesianPointSet& a,
                          const CartesianPointSet& b) {
  double dev = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      dev = std::max(dev, std::abs(dot(a[i], a[j]) - dot(b[i], b[j])));
  return dev;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("point set construction enforces unit norms") {
  CHECK_THROWS_AS(CartesianPointSet({{1.0, 1.0, 0.0}}), NormError);
  CHECK_THROWS_AS(CartesianPointSet({}), std::invalid_argument);
  const CartesianPointSet normalized =
      CartesianPointSet::normalized({{1.0, 1.0, 0.0}});
  CHECK(normalized[0].x == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("gauge_fix of an already fixed set is the identity") {
  const CartesianPointSet tetra{oracles::tetrahedron()};
  const GaugeFixedPointSet fixed = gauge_fix(tetra);
  for (int i = 0; i < tetra.size(); ++i) {
    CHECK(fixed[i].x == tetra[i].x);
    CHECK(fixed[i].y == tetra[i].y);
    CHECK(fixed[i].z == tetra[i].z);
  }
}

TEST_CASE("gauge_fix moves x1 to the pole and preserves orthogonality") {
  const CartesianPointSet pts({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const GaugeFixedPointSet fixed = gauge_fix(pts);
  CHECK(std::abs(fixed[0].x) <= 1e-12);
  CHECK(std::abs(fixed[0].y) <= 1e-12);
  CHECK(fixed[0].z == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(fixed[1].y) <= 1e-12);
  CHECK(fixed[1].x >= 0.0);
  CHECK(std::abs(dot(fixed[0], fixed[1])) <= 1e-12);
}

TEST_CASE("gauge_fix preserves the full Gram matrix on random sets") {
  oracles::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CartesianPointSet pts{rng.unit_vectors(5)};
    const GaugeFixedPointSet fixed = gauge_fix(pts);
    CHECK(max_gram_deviation(pts, fixed.as_point_set()) <= 1e-12);
  }
}

TEST_CASE("gauge_fix rejects antiparallel leading points") {
  const CartesianPointSet pts(
      {{0.6, 0.8, 0.0}, {-0.6, -0.8, 0.0}, {0.0, 0.0, 1.0}});
  CHECK_THROWS_AS(gauge_fix(pts), DegenerateGauge);
}

TEST_CASE("to_angles conventions at the poles and the equator") {
  const GaugeFixedPointSet pts{CartesianPointSet(
      {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, -1.0}})};
  const AngleVector angles = to_angles(pts);
  CHECK(angles.theta[0] == doctest::Approx(kPi / 2));  // equator
  CHECK(angles.theta[1] == doctest::Approx(kPi));      // south pole
  CHECK(angles.phi[0] == 0.0);                         // pole convention
}

TEST_CASE("to_angles of the printed final tetrahedron") {
  const GaugeFixedPointSet pts{CartesianPointSet::normalized({
      {0.0, 0.0, 1.0},
      {0.9428, 0.0, -0.3333},
      {-0.4714, 0.8165, -0.3333},
      {-0.4714, -0.8165, -0.3333},
  })};
  const AngleVector angles = to_angles(pts);
  // Inputs carry four decimals, hence the 1e-3 tolerance.
  CHECK(angles.theta[0] ==
        doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-3));
  CHECK(angles.phi[0] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-3));
}

TEST_CASE("from_angles places the antipodal pair") {
  const GaugeFixedPointSet pts = from_angles(AngleVector({kPi}, {}));
  CHECK(std::abs(pts[0].z - 1.0) <= 1e-12);
  CHECK(std::abs(pts[1].x) <= 1e-12);
  CHECK(std::abs(pts[1].y) <= 1e-12);
  CHECK(std::abs(pts[1].z + 1.0) <= 1e-12);
}

TEST_CASE("angle round trips are the identity") {
  oracles::Rng rng(23);
  SUBCASE("angles -> points -> angles, away from the poles") {
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 2 + static_cast<int>(rng.uniform(0.0, 9.0));
      std::vector<double> theta, phi;
      for (int i = 0; i < n - 1; ++i)
        theta.push_back(rng.uniform(0.05, kPi - 0.05));
      for (int i = 0; i < n - 2; ++i)
        phi.push_back(rng.uniform(0.0, 2.0 * kPi - 1e-9));
      const AngleVector angles(theta, phi);
      const AngleVector back = to_angles(from_angles(angles));
      for (int i = 0; i < n - 1; ++i)
        CHECK(back.theta[i] == doctest::Approx(theta[i]).epsilon(1e-12));
      for (int i = 0; i < n - 2; ++i)
        CHECK(back.phi[i] == doctest::Approx(phi[i]).epsilon(1e-12));
    }
  }
  SUBCASE("points -> angles -> points on gauge-fixed sets") {
    for (int trial = 0; trial < 25; ++trial) {
      const GaugeFixedPointSet pts = gauge_fix(
          CartesianPointSet{rng.unit_vectors(6)});
      const GaugeFixedPointSet back = from_angles(to_angles(pts));
      for (int i = 0; i < pts.size(); ++i)
        CHECK(distance(pts[i], back[i]) <= 1e-12);
    }
  }
}

TEST_CASE("spiral_points reproduces the published 4-point configuration") {
  const GaugeFixedPointSet fixed = gauge_fix(spiral_points(4));
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(fixed[i].x - kSpiral4Printed[i].x) < 5e-4);
    CHECK(std::abs(fixed[i].y - kSpiral4Printed[i].y) < 5e-4);
    CHECK(std::abs(fixed[i].z - kSpiral4Printed[i].z) < 5e-4);
  }
}

TEST_CASE("spiral_points basics") {
  CHECK(spiral_points(1).size() == 1);
  CHECK(norm(spiral_points(1)[0]) == doctest::Approx(1.0));

  const CartesianPointSet pts = spiral_points(100);
  double min_dist = 10.0;
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(norm(pts[i]) - 1.0) <= 1e-12);
    for (int j = i + 1; j < 100; ++j)
      min_dist = std::min(min_dist, distance(pts[i], pts[j]));
  }
  CHECK(min_dist > 0.0);

  // Deterministic.
  const CartesianPointSet again = spiral_points(100);
  for (int i = 0; i < 100; ++i) CHECK(distance(pts[i], again[i]) == 0.0);
}

TEST_CASE("random_points is seeded and uniform-ish") {
  const CartesianPointSet a = random_points(50, 7);
  const CartesianPointSet b = random_points(50, 7);
  for (int i = 0; i < 50; ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(std::abs(norm(a[i]) - 1.0) <= 1e-12);
  }
  CHECK(random_points(50, 8)[0].x != a[0].x);

  const int n = 100000;
  const CartesianPointSet big = random_points(n, 123);
  double mean_z = 0.0;
  for (const Vec3& p : big) mean_z += p.z;
  mean_z /= n;
  CHECK(std::abs(mean_z) < 0.02);  // ~3/sqrt(n) Monte-Carlo bound
}

TEST_CASE("point file round trip and reader tolerance") {
  const CartesianPointSet pts{oracles::tetrahedron()};
  std::ostringstream out;
  write_points(out, pts);

  SUBCASE("written text round-trips exactly") {
    std::istringstream in(out.str());
    const CartesianPointSet back = read_points(in);
    REQUIRE(back.size() == pts.size());
    for (int i = 0; i < pts.size(); ++i) {
      CHECK(back[i].x == pts[i].x);
      CHECK(back[i].y == pts[i].y);
      CHECK(back[i].z == pts[i].z);
    }
  }
  SUBCASE("reader accepts CRLF and extra whitespace") {
    std::string text = out.str();
    std::string crlf;
    for (char c : text) {
      if (c == '\n') crlf += "\r\n";
      else if (c == ' ') crlf += "\t  ";
      else crlf += c;
    }
    std::istringstream in(crlf);
    CHECK(read_points(in).size() == 4);
  }
  SUBCASE("malformed line is reported with its number") {
    std::istringstream in("0 0 1\n0.1 oops 0.2\n");
    try {
      read_points(in);
      FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
      CHECK(e.line == 2);
    }
  }
  SUBCASE("non-unit row is rejected") {
    std::istringstream in("0 0 1\n0.5 0.5 0.5\n");
    try {
      read_points(in);
      FAIL("expected FileFormatError");
    } catch (const FileFormatError& e) {
      CHECK(e.line == 2);
    }
  }
}

TEST_SUITE_END();
