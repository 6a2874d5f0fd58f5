#include "aplab/seminorm.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "aplab/gallery.hpp"

using namespace aplab;

namespace {

std::vector<Window> line_windows(double t0, double tmax) {
  std::vector<double> sched;
  for (double t = t0; t <= tmax * (1 + 1e-9); t *= 2.0) sched.push_back(t);
  return make_window_sweep(Domain::real_line(), WindowShape::Cube, sched);
}

// Exact integral over [0, t] of |brick-power(zeta)|^q: bricks [m^2, m^2+sqrt m)
// of height m^zeta, so the integrand contributes m^{zeta q} per unit length.
double brick_integral(double zeta_q, double t) {
  double s = 0;
  for (double m = 1;; ++m) {
    const double lo = m * m;
    if (lo >= t) break;
    s += std::pow(m, zeta_q) * std::min(std::sqrt(m), t - lo);
  }
  return s;
}

WeightProfile make_profile(GaugePhi phi, WindowWeight w, double p) {
  WeightProfile prof;
  prof.phi = std::move(phi);
  prof.weight = std::move(w);
  prof.p = VariableExponent::constant(p);
  return prof;
}

Field random_poly(std::mt19937& rng, int terms = 4) {
  std::uniform_real_distribution<double> freq(-4.0, 4.0);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  // separated frequencies keep the beat period well inside the window range
  std::vector<double> lam;
  while (static_cast<int>(lam.size()) < terms) {
    const double cand = freq(rng);
    bool ok = true;
    for (double l : lam)
      if (std::abs(l - cand) < 0.5) ok = false;
    if (ok) lam.push_back(cand);
  }
  std::vector<complexd> c(terms);
  for (int i = 0; i < terms; ++i) c[i] = complexd(coef(rng), coef(rng));
  Field f = scalar_field_1d([lam, c, terms](double t) {
    complexd acc = 0;
    for (int i = 0; i < terms; ++i) acc += c[i] * std::exp(complexd(0, lam[i] * t));
    return acc;
  });
  f.osc_freq = 4.0;
  return f;
}

}  // namespace

TEST_CASE("m_p seminorm on constants and waves") {
  auto windows = line_windows(8, 512);
  auto rep = m_p_seminorm(constant_field(Domain::real_line(), complexd(0, -3.0)), 2.0, windows);
  for (const auto& [t, v] : rep.estimate.samples) CHECK(v == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.estimate.trend == Trend::Bounded);

  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, 2.5 * t)); });
  wave.osc_freq = 2.5;
  auto rep2 = m_p_seminorm(wave, 3.0, windows);
  CHECK(rep2.estimate.estimate == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("m_p seminorm divergence of the tall bricks") {
  Field f = brick_power_field(1.0);
  auto windows = line_windows(64, 1 << 20);
  auto rep = m_p_seminorm(f, 1.0, windows);
  CHECK(rep.estimate.trend == Trend::Diverging);
  CHECK(rep.estimate.tail_slope == doctest::Approx(0.25).epsilon(0.15));
  // window values agree with the exact lacunary sums
  for (const auto& [t, v] : rep.estimate.samples)
    CHECK(v == doctest::Approx(brick_integral(1.0, t) / (2.0 * t)).epsilon(1e-6));
}

TEST_CASE("weighted residual basics") {
  auto windows = line_windows(8, 512);
  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);

  auto self = weighted_residual(wave, wave, prof, windows);
  CHECK(self.estimate.estimate <= 1e-10);
  CHECK(self.estimate.trend == Trend::ConvergingToZero);

  auto vs_zero = weighted_residual(wave, constant_field(wave.domain, 0.0), prof, windows);
  for (const auto& [t, v] : vs_zero.estimate.samples) CHECK(v == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(vs_zero.estimate.trend == Trend::Bounded);
}

TEST_CASE("gauge-damped bricks vanish at the documented rate") {
  Field f = brick_power_field(1.0);
  auto prof = make_profile(GaugePhi::power(0.25), WindowWeight::power_decay(1.0), 1.0);
  // deep, cheap schedule: the bricks integrate by closed-form panel splits
  auto windows = line_windows(64.0, std::pow(2.0, 36));
  auto rep = weighted_residual(f, constant_field(f.domain, 0.0), prof, windows);
  CHECK(rep.estimate.trend == Trend::ConvergingToZero);
  CHECK(rep.estimate.tail_slope == doctest::Approx(-0.125).epsilon(0.2));
  for (const auto& [t, v] : rep.estimate.samples)
    CHECK(v == doctest::Approx(brick_integral(0.25, t) / t).epsilon(1e-6));
}

TEST_CASE("boundedness verdicts") {
  auto windows = line_windows(8, 8192);
  auto rep = besicovitch_bounded(constant_field(Domain::real_line(), 1.0),
                                 make_profile(GaugePhi::identity(), WindowWeight::power_decay(0.5), 2.0),
                                 windows);
  CHECK(rep.verdict == BoundedVerdict::Bounded);
  CHECK(rep.bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  // slow logarithmic growth is recognized as unbounded
  auto hwindows = line_windows(8, 32768);
  auto hrep = besicovitch_bounded(haraux_souplet_field(),
                                  make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0),
                                  hwindows);
  CHECK(hrep.verdict == BoundedVerdict::Unbounded);

  // the critical-exponent brick family is bounded with the predicted constant
  Field fam = brick_family_field(2.0);
  auto frep = besicovitch_bounded(
      fam, make_profile(GaugePhi::identity(), WindowWeight::power_decay(0.5), 2.0),
      line_windows(64, 1 << 20));
  CHECK(frep.verdict == BoundedVerdict::Bounded);
  const double t_last = frep.sweep.estimate.samples.back().first;
  const double oracle = std::pow(brick_integral(0.5, t_last) / t_last, 0.5);
  CHECK(frep.sweep.estimate.samples.back().second == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("pseudometric") {
  auto windows = line_windows(8, 512);
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;

  CHECK(pseudometric_d(wave, wave, prof, windows) <= 1e-10);

  Field shifted = field_sum(wave, constant_field(wave.domain, 1.0));
  CHECK(pseudometric_d(wave, shifted, prof, windows) == doctest::Approx(2.0).epsilon(1e-6));

  std::mt19937 rng(3);
  Field a = random_poly(rng), b = random_poly(rng);
  const double dab = pseudometric_d(a, b, prof, windows);
  const double dba = pseudometric_d(b, a, prof, windows);
  CHECK(dab == doctest::Approx(dba).epsilon(1e-9));

  Field ramp = scalar_field_1d([](double t) { return complexd(t, 0); });
  CHECK_THROWS_WITH_AS(pseudometric_d(ramp, wave, prof, windows), "outside pseudometric space",
                       std::invalid_argument);
}

TEST_CASE("seminorm axioms at window resolution") {
  auto windows = line_windows(8, 256);
  std::mt19937 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    Field f = random_poly(rng);
    auto base = m_p_seminorm(f, 2.0, windows);
    auto scaled = m_p_seminorm(f.scaled(complexd(0, 2.0)), 2.0, windows);
    for (size_t i = 0; i < base.estimate.samples.size(); ++i)
      CHECK(scaled.estimate.samples[i].second ==
            doctest::Approx(2.0 * base.estimate.samples[i].second).epsilon(1e-6));

    Field g = random_poly(rng);
    auto fs = m_p_seminorm(f, 2.0, windows);
    auto gs = m_p_seminorm(g, 2.0, windows);
    auto sum = m_p_seminorm(field_sum(f, g), 2.0, windows);
    for (size_t i = 0; i < sum.estimate.samples.size(); ++i)
      CHECK(sum.estimate.samples[i].second <=
            fs.estimate.samples[i].second + gs.estimate.samples[i].second + 1e-9);
  }
}

TEST_CASE("modulation invariance is exact per window") {
  auto windows = line_windows(8, 256);
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  std::mt19937 rng(29);
  Field f = random_poly(rng), g = random_poly(rng);
  const Pt lambda{1.7};
  auto plain = weighted_residual(f, g, prof, windows);
  auto mod = weighted_residual(f.modulated(lambda), g.modulated(lambda), prof, windows);
  for (size_t i = 0; i < plain.estimate.samples.size(); ++i)
    CHECK(mod.estimate.samples[i].second ==
          doctest::Approx(plain.estimate.samples[i].second).epsilon(1e-9));
}

TEST_CASE("pseudometric quasi-triangle inequality") {
  auto windows = line_windows(8, 256);
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  const double c = prof.validate(windows).quasi_c;
  CHECK(c == doctest::Approx(1.0).epsilon(1e-9));
  std::mt19937 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    Field f = random_poly(rng), g = random_poly(rng), h = random_poly(rng);
    const double dfh = pseudometric_d(f, h, prof, windows);
    const double dfg = pseudometric_d(f, g, prof, windows);
    const double dgh = pseudometric_d(g, h, prof, windows);
    CHECK(dfh <= c * (dfg + dgh) + 1e-8);
  }
}

TEST_CASE("products of bounded fields stay bounded at the combined exponent") {
  // 1/r = 1/p + 1/q with p = q = 2, r = 1
  Field fam = brick_family_field(2.0);
  Field prod = field_product(fam, fam);
  auto rep = besicovitch_bounded(
      prod, make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0),
      line_windows(64, 1 << 18));
  CHECK(rep.verdict == BoundedVerdict::Bounded);
}

TEST_CASE("profile condition flags") {
  auto windows = line_windows(8, 512);
  auto id_prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  auto v = id_prof.validate(windows);
  CHECK(v.cond_I);
  CHECK(v.cond_II);
  CHECK(v.quasi_c == doctest::Approx(1.0));
  CHECK(v.companion_D == doctest::Approx(1.0));
  CHECK(v.cond_III);

  // x^{1/4}: subadditive with c = 1 but the companion multiplier blows up
  auto quarter = make_profile(GaugePhi::power(0.25), WindowWeight::power_decay(1.0), 1.0);
  auto v2 = quarter.validate(windows);
  CHECK(v2.cond_I);
  CHECK_FALSE(v2.cond_II);

  // x^2: bounded companion but no quasi-subadditivity constant within (0,1]
  auto square = make_profile(GaugePhi::power(2.0), WindowWeight::power_decay(1.0), 1.0);
  auto v3 = square.validate(windows);
  CHECK(v3.quasi_c > 1.0);
  CHECK_FALSE(v3.cond_II);

  // weight decaying too slowly for (III)
  auto heavy = make_profile(GaugePhi::identity(), WindowWeight::power_decay(0.25), 1.0);
  CHECK_FALSE(heavy.validate(windows).cond_III);
}
