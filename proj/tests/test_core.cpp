#include "aplab/core.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

using namespace aplab;

TEST_CASE("domain kinds and membership") {
  auto line = Domain::real_line();
  CHECK(line.kind() == Domain::Kind::FullSpace);
  CHECK(line.contains(Pt{1e9}));

  auto quadrant = Domain::product({{0.0, kInf}, {0.0, kInf}});
  CHECK(quadrant.kind() == Domain::Kind::Orthant);
  CHECK(quadrant.contains(Pt{1.0, 2.0}));
  CHECK_FALSE(quadrant.contains(Pt{-1.0, 2.0}));

  auto box = Domain::product({{0.0, 1.0}, {-2.0, 2.0}});
  CHECK(box.kind() == Domain::Kind::Box);

  auto cone = Domain::polyhedral({{1.0, 0.0}, {1.0, 1.0}});
  CHECK(cone.contains(Pt{3.0, 1.0}));       // 2*(1,0) + 1*(1,1)
  CHECK_FALSE(cone.contains(Pt{0.0, 1.0})); // needs negative first coordinate

  CHECK_THROWS_AS(Domain::polyhedral({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("shift cones") {
  auto half = Domain::half_line(0.0);
  auto cone = half.shift_cone();
  CHECK(cone.contains(Pt{3.0}));
  CHECK_FALSE(cone.contains(Pt{-0.5}));
  CHECK(Domain::real_line().shift_cone().contains(Pt{-17.0}));
}

TEST_CASE("window sweep examples") {
  // real line, cube, t = 1
  auto w1 = make_window_sweep(Domain::real_line(), WindowShape::Cube, {1.0}).front();
  CHECK(w1.measure() == doctest::Approx(2.0));

  // first quadrant, cube, t = 3
  auto w2 = make_window_sweep(Domain::product({{0.0, kInf}, {0.0, kInf}}), WindowShape::Cube, {3.0})
                .front();
  CHECK(w2.measure() == doctest::Approx(9.0));

  // plane, ball, t = 2: area 4 pi, cross-checked by Monte Carlo
  auto w3 = make_window_sweep(Domain::full_space(2), WindowShape::Ball, {2.0}).front();
  CHECK(w3.measure() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  long hits = 0;
  const long samples = 4'000'000;
  for (long i = 0; i < samples; ++i) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y <= 4.0) ++hits;
  }
  const double mc = 16.0 * static_cast<double>(hits) / static_cast<double>(samples);
  CHECK(std::abs(w3.measure() - mc) / w3.measure() < 1e-3);
}

TEST_CASE("degenerate window is rejected") {
  auto shifted_box = Domain::product({{10.0, 20.0}});
  CHECK_THROWS_WITH_AS(make_window_sweep(shifted_box, WindowShape::Cube, {1.0}),
                       "degenerate window", std::invalid_argument);
}

TEST_CASE("disc-box intersection areas") {
  // half disc and quarter disc
  Window half{Domain::product({{0.0, kInf}, {-kInf, kInf}}), WindowShape::Ball, 2.0};
  CHECK(half.measure() == doctest::Approx(2.0 * std::numbers::pi));
  Window quarter{Domain::product({{0.0, kInf}, {0.0, kInf}}), WindowShape::Ball, 2.0};
  CHECK(quarter.measure() == doctest::Approx(std::numbers::pi));
  // box strictly inside the disc
  Window inner{Domain::product({{-0.5, 0.5}, {-0.5, 0.5}}), WindowShape::Ball, 2.0};
  CHECK(inner.measure() == doctest::Approx(1.0));
}

TEST_CASE("window monotonicity") {
  auto dom = Domain::product({{0.0, kInf}, {-kInf, kInf}});
  Window small{dom, WindowShape::Ball, 5.0};
  Window big{dom, WindowShape::Ball, 9.0};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 10'000; ++i) {
    Pt t{u(rng), u(rng)};
    if (small.contains(t)) CHECK(big.contains(t));
  }
}

TEST_CASE("translation closure on orthants") {
  auto dom = Domain::product({{0.0, kInf}, {1.0, kInf}});
  auto cone = dom.shift_cone();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int i = 0; i < 10'000; ++i) {
    Pt t{u(rng), 1.0 + u(rng)};
    Pt tau{u(rng), u(rng)};
    REQUIRE(dom.contains(t));
    REQUIRE(cone.contains(tau));
    CHECK(dom.contains(t + tau));
  }
}

namespace {

std::vector<std::pair<double, double>> sweep_of(const std::function<double(double)>& f) {
  std::vector<std::pair<double, double>> s;
  for (double t = 8.0; t <= 8192.0; t *= 2.0) s.emplace_back(t, f(t));
  return s;
}

}  // namespace

TEST_CASE("limsup estimator trends") {
  auto flat = limsup_estimate(sweep_of([](double) { return 5.0; }));
  CHECK(flat.estimate == doctest::Approx(5.0));
  CHECK(flat.trend == Trend::Bounded);

  auto decay = limsup_estimate(sweep_of([](double t) { return 1.0 / t; }));
  CHECK(decay.trend == Trend::ConvergingToZero);
  CHECK(decay.vanishing());

  auto grow = limsup_estimate(sweep_of([](double t) { return std::pow(t, 0.25); }));
  CHECK(grow.trend == Trend::Diverging);
  // least-squares slope on synthetic data recovers the exponent
  CHECK(grow.tail_slope == doctest::Approx(0.25).epsilon(1e-6));

  // slow logarithmic growth is still flagged as divergence
  auto logs = limsup_estimate(sweep_of([](double t) { return std::log(std::log(t) + 1.0) + 1.0; }));
  CHECK(logs.trend == Trend::Diverging);

  // saturating curves are bounded, not diverging
  std::vector<std::pair<double, double>> sat_samples;
  for (double t = 64.0; t <= 65536.0; t *= 2.0) sat_samples.emplace_back(t, 2.0 - 64.0 / t);
  auto sat = limsup_estimate(sat_samples);
  CHECK(sat.trend == Trend::Bounded);
}

TEST_CASE("limsup estimator guards") {
  CHECK_THROWS_AS(limsup_estimate({{1.0, 1.0}, {2.0, 1.0}}), std::invalid_argument);
  auto bad = sweep_of([](double) { return 1.0; });
  bad[3].second = std::nan("");
  CHECK_THROWS_AS(limsup_estimate(bad), std::invalid_argument);
}

TEST_CASE("limsup estimate dominates the tail and scales") {
  auto samples = sweep_of([](double t) { return 1.0 + std::sin(t); });
  auto est = limsup_estimate(samples);
  const int n = static_cast<int>(samples.size());
  for (int i = n - est.tail_len; i < n; ++i) CHECK(est.estimate >= samples[i].second);

  for (double c : {0.25, 3.0, 1e6}) {
    auto scaled = samples;
    for (auto& [t, v] : scaled) v *= c;
    auto est2 = limsup_estimate(scaled);
    CHECK(est2.estimate == doctest::Approx(c * est.estimate));
    CHECK(est2.trend == est.trend);
  }
}

TEST_CASE("field combinators") {
  auto f = scalar_field_1d([](double t) { return complexd(t, 0); });
  auto g = scalar_field_1d([](double t) { return complexd(2 * t, 0); });
  CHECK(field_sum(f, g)(Pt{3.0}).scalar().real() == doctest::Approx(9.0));
  CHECK(field_difference(f, g)(Pt{3.0}).scalar().real() == doctest::Approx(-3.0));
  CHECK(field_product(f, g)(Pt{3.0}).scalar().real() == doctest::Approx(18.0));
  CHECK(f.shifted(Pt{1.0})(Pt{3.0}).scalar().real() == doctest::Approx(4.0));
  const complexd m = f.modulated(Pt{2.0})(Pt{3.0}).scalar();
  CHECK(std::abs(m) == doctest::Approx(3.0));
  CHECK(std::arg(m) == doctest::Approx(6.0 - 2 * std::numbers::pi));
}
