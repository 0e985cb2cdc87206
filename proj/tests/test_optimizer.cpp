#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <limits>

#include "oracles.hpp"
#include "tdesign/objective.hpp"
#include "tdesign/optimizer.hpp"

using namespace tdesign;

namespace {

AngleVector spiral_start(int n) { return to_angles(gauge_fix(spiral_points(n))); }

void check_trace_contract(const OptimizeResult& result, const BBConfig& cfg) {
  const auto& trace = result.trace;
  REQUIRE(!trace.empty());
  CHECK(result.iterations == static_cast<int>(trace.size()));
  const double alpha_floor =
      cfg.alpha_clamp_low * std::pow(cfg.tau, cfg.max_backtracks);
  for (size_t i = 0; i < trace.size(); ++i) {
    CHECK(trace[i].k == static_cast<int>(i) + 1);
    CHECK(trace[i].f >= -1e-9);  // tiny negatives are rounding at a design
    CHECK(trace[i].alpha > 0.0);
    CHECK(trace[i].alpha >= alpha_floor);
    CHECK(trace[i].alpha <= cfg.alpha_clamp_high);
    if (i > 0) {
      CHECK(trace[i].f <= trace[i - 1].f);  // monotone descent
      if (trace[i].accepted_by != AcceptedBy::reset) {
        // Sufficient decrease as recorded (g'g from the cached 2-norm).
        const double gg =
            trace[i - 1].grad_two_norm * trace[i - 1].grad_two_norm;
        CHECK(trace[i].f <= trace[i - 1].f - trace[i].alpha * cfg.rho * gg +
                                1e-15 * std::max(1.0, trace[i - 1].f));
      }
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("optimizer");

TEST_CASE("bb_step_size quotient and reset branches") {
  CHECK(bb_step_size(std::vector{1.0, 0.0}, std::vector{2.0, 0.0}) == 0.5);
  CHECK(bb_step_size(std::vector{1.0, 0.0}, std::vector{0.0, 1.0}) == 1.0);
  CHECK(bb_step_size(std::vector{1e-6, 0.0}, std::vector{1e6, 0.0}) == 1.0);
  CHECK(bb_step_size(std::vector{1.0}, std::vector{-2.0}) == 1.0);  // negative
  CHECK(bb_step_size(std::vector{2.0}, std::vector{1e-12}) == 1.0);  // huge
}

TEST_CASE("armijo_goldstein_accept brackets the decrease") {
  CHECK(armijo_goldstein_accept(1.0, 0.8, 1.0, 0.5, 0.25));
  CHECK_FALSE(armijo_goldstein_accept(1.0, 0.9, 1.0, 0.5, 0.25));
  CHECK_FALSE(armijo_goldstein_accept(1.0, 0.5, 1.0, 0.5, 0.25));
}

TEST_CASE("config validation") {
  BBConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rho = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.tau = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.alpha_clamp_low = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("four spiral points descend to the tetrahedron") {
  const BBConfig cfg;
  const OptimizeResult result = bb_minimize(spiral_start(4), 2, cfg);
  CHECK(result.iterations <= 200);
  CHECK(result.termination == Termination::grad_tol_reached);
  CHECK(std::abs(a_value_kernel(result.final_points.as_point_set(), 2).value) <
        1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(dot(result.final_points[i], result.final_points[j]) ==
            doctest::Approx(-1.0 / 3.0).epsilon(1e-5));
  check_trace_contract(result, cfg);
}

TEST_CASE("quasi-Newton reaches the same design") {
  const BBConfig cfg;
  const OptimizeResult result = qn_minimize(spiral_start(4), 2, cfg);
  CHECK(std::abs(a_value_kernel(result.final_points.as_point_set(), 2).value) <
        1e-12);
  check_trace_contract(result, cfg);
}

TEST_CASE("a stationary start terminates immediately") {
  const AngleVector start =
      to_angles(GaugeFixedPointSet{CartesianPointSet{oracles::tetrahedron()}});
  for (auto* minimize : {bb_minimize, qn_minimize}) {
    const OptimizeResult result = minimize(start, 2, {});
    CHECK(result.iterations == 1);
    CHECK(result.termination == Termination::grad_tol_reached);
    for (int i = 0; i < 4; ++i)
      CHECK(distance(result.final_points[i], oracles::tetrahedron()[i]) <=
            1e-14);
  }
}

TEST_CASE("identical inputs produce identical traces") {
  const OptimizeResult a = bb_minimize(spiral_start(9), 3, {});
  const OptimizeResult b = bb_minimize(spiral_start(9), 3, {});
  REQUIRE(a.trace.size() == b.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].f == b.trace[i].f);
    CHECK(a.trace[i].alpha == b.trace[i].alpha);
    CHECK(a.trace[i].grad_two_norm == b.trace[i].grad_two_norm);
    CHECK(a.trace[i].backtracks == b.trace[i].backtracks);
  }
}

TEST_CASE("final configuration is gauge-fixed and on the sphere") {
  const OptimizeResult result = bb_minimize(spiral_start(12), 3, {});
  const auto& pts = result.final_points;
  CHECK(std::abs(pts[0].z - 1.0) <= 1e-12);
  CHECK(std::abs(pts[1].y) <= 1e-12);
  CHECK(pts[1].x >= 0.0);
  for (int i = 0; i < pts.size(); ++i)
    CHECK(std::abs(norm(pts[i]) - 1.0) <= 1e-12);
  // Wrapped output angles reproduce the final points.
  const GaugeFixedPointSet back = from_angles(result.final_angles);
  for (int i = 0; i < pts.size(); ++i)
    CHECK(distance(back[i], pts[i]) <= 1e-12);
}

TEST_CASE("non-finite initial data stalls the line search") {
  AngleVector bad({std::numeric_limits<double>::quiet_NaN()}, {});
  CHECK_THROWS_AS(bb_minimize(bad, 1, {}), LineSearchStall);
}

TEST_CASE("trace export carries full precision and field names") {
  const OptimizeResult result = bb_minimize(spiral_start(4), 2, {});
  const nlohmann::json parsed = nlohmann::json::parse(trace_to_json(result.trace));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == result.trace.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    const auto& row = parsed[i];
    CHECK(row["k"] == result.trace[i].k);
    CHECK(row["f"].get<double>() == result.trace[i].f);
    CHECK(row["grad_inf"].get<double>() == result.trace[i].grad_inf_norm);
    CHECK(row["grad_2"].get<double>() == result.trace[i].grad_two_norm);
    CHECK(row["alpha"].get<double>() == result.trace[i].alpha);
    CHECK(row["backtracks"] == result.trace[i].backtracks);
    CHECK(row["accepted_by"].get<std::string>() ==
          to_string(result.trace[i].accepted_by));
  }
  CHECK(parsed[0]["accepted_by"] == "reset");  // the initial record
}

TEST_SUITE_END();
