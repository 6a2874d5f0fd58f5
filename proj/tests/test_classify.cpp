#include "aplab/classify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "aplab/gallery.hpp"

using namespace aplab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Window> line_windows(double t0, double tmax) {
  std::vector<double> sched;
  for (double t = t0; t <= tmax * (1 + 1e-9); t *= 2.0) sched.push_back(t);
  return make_window_sweep(Domain::real_line(), WindowShape::Cube, sched);
}

WeightProfile make_profile(GaugePhi phi, WindowWeight w, double p) {
  WeightProfile prof;
  prof.phi = std::move(phi);
  prof.weight = std::move(w);
  prof.p = VariableExponent::constant(p);
  return prof;
}

}  // namespace

TEST_CASE("pure polynomials are certified with a vanishing residual") {
  Field f = scalar_field_1d([](double t) {
    return 2.0 * std::exp(complexd(0, 1.5 * t)) + std::exp(complexd(0, -0.5 * t)) + 0.5;
  });
  f.osc_freq = 1.5;
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(0.5), 2.0);
  auto windows = line_windows(8, 1024);
  auto rep = classify_besicovitch(f, prof, 3, {Pt{1.5}, Pt{-0.5}, Pt{0.0}}, windows);
  CHECK(rep.verdict == ClassVerdict::MemberEvidence);
  // fitted coefficients carry O(1/t) windowing error
  CHECK(rep.residual_tails.back() <= 2e-3);
  CHECK(rep.witnesses.back().terms().size() == 3);
  // the report serializes
  CHECK(rep.to_json().find("member-evidence") != std::string::npos);
}

TEST_CASE("brick family below and above its critical exponent") {
  Field fam = brick_family_field(2.0);
  auto windows = line_windows(64, 1 << 18);

  auto below = classify_besicovitch(
      fam, make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0), 2, {},
      windows);
  CHECK(below.verdict == ClassVerdict::MemberEvidence);

  auto above = classify_besicovitch(
      fam, make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0 / 3.0), 3.0), 2, {},
      windows);
  CHECK(above.verdict == ClassVerdict::NonMemberEvidence);
}

TEST_CASE("doss residuals") {
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  auto windows = line_windows(8, 1024);

  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;
  CHECK(doss_residual(wave, Pt{2.0 * kPi}, prof, windows).estimate <= 1e-9);

  Field ramp = scalar_field_1d([](double t) { return complexd(t, 0); });
  for (double tau : {0.5, 2.0})
    CHECK(doss_residual(ramp, Pt{tau}, prof, windows).estimate ==
          doctest::Approx(2.0 * tau).epsilon(1e-6));

  Field half = constant_field(Domain::half_line(0.0), 1.0);
  CHECK_THROWS_AS(doss_residual(half, Pt{-1.0}, prof, windows), std::invalid_argument);
}

TEST_CASE("almost period search") {
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  auto windows = line_windows(8, 512);

  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;
  auto rep = almost_period_search(wave, 0.1, prof, Pt{1.0}, 20.0, 0.05, windows);
  REQUIRE(rep.any);
  for (double tau : rep.periods) {
    const double dist = std::abs(tau - 2.0 * kPi * std::round(tau / (2.0 * kPi)));
    CHECK(dist < 0.06);
  }
  CHECK(rep.relative_density == doctest::Approx(2.0 * kPi).epsilon(0.05));

  auto flat = almost_period_search(constant_field(Domain::real_line(), 2.0), 0.1, prof, Pt{1.0},
                                   5.0, 0.5, windows);
  CHECK(flat.periods.size() == 10);
  CHECK(flat.relative_density == doctest::Approx(0.5));

  CHECK_THROWS_AS(almost_period_search(wave, 0.1, prof, Pt{1.0}, 1.0, 0.5, windows),
                  std::invalid_argument);
}

TEST_CASE("besicovitch continuity") {
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  auto windows = line_windows(8, 1024);

  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;
  auto rep = besicovitch_continuity(wave, prof, Pt{1.0}, {0.64, 0.32, 0.16, 0.08, 0.04, 0.02, 0.01},
                                    windows);
  CHECK(rep.trend == Trend::ConvergingToZero);
  // closed-form rate: residual(tau) = 2 |e^{i tau} - 1|
  for (size_t i = 0; i < rep.taus.size(); ++i) {
    const double expect = 2.0 * std::abs(std::exp(complexd(0, rep.taus[i])) - 1.0);
    CHECK(rep.residuals[i].estimate == doctest::Approx(expect).epsilon(1e-5));
  }

  // jump function: per-tau residual 2 tau / t vanishes along the sweep
  Field sgn = scalar_field_1d([](double t) { return complexd(t >= 0 ? 1.0 : -1.0, 0); });
  sgn.breakpoints = [](double a, double b, int axis, std::vector<double>& out) {
    if (axis == 0 && a < 0 && b > 0) out.push_back(0.0);
  };
  auto rep2 = besicovitch_continuity(sgn, prof, Pt{1.0}, {0.8, 0.4, 0.2, 0.1, 0.05, 0.025, 0.0125},
                                     windows);
  for (const auto& sweep : rep2.residuals) CHECK(sweep.vanishing());
}

TEST_CASE("normality over shift sequences") {
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
  auto windows = line_windows(8, 512);

  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;
  ShiftSequenceSet resonant;
  std::vector<Pt> seq;
  for (int k = 1; k <= 8; ++k) seq.push_back(Pt{2.0 * kPi * k});
  resonant.sequences.push_back(seq);
  auto rep = normality_check(wave, resonant, prof, {0.5, 0.1, 0.01}, windows);
  CHECK(rep.normal_evidence);
  CHECK(rep.per_sequence[0].chain.size() == 8);

  // pseudo-noise: independent signs on unit cells never come close
  Field noise = scalar_field_1d([](double t) {
    unsigned long long h = static_cast<unsigned long long>(std::llround(std::floor(t)));
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return complexd((h & 1) ? 1.0 : -1.0, 0);
  });
  noise.breakpoints = [](double a, double b, int axis, std::vector<double>& out) {
    if (axis != 0) return;
    for (double x = std::ceil(a); x <= std::floor(b); x += 1.0) out.push_back(x);
  };
  ShiftSequenceSet shifts;
  std::vector<Pt> iseq;
  for (int k = 1; k <= 8; ++k) iseq.push_back(Pt{static_cast<double>(k)});
  shifts.sequences.push_back(iseq);
  auto rep2 = normality_check(noise, shifts, prof, {0.5, 0.25}, windows);
  CHECK_FALSE(rep2.normal_evidence);

  CHECK_THROWS_AS(normality_check(wave, ShiftSequenceSet{{{Pt{1.0}}}, true}, prof, {0.5}, windows),
                  std::invalid_argument);
}

TEST_CASE("nemytskii composition") {
  Field wave = scalar_field_1d([](double t) { return std::exp(complexd(0, t)); });
  wave.osc_freq = 1.0;

  SuperpositionOperator identity;
  identity.eval = [](const Pt&, const CVal& y) { return y; };
  Field w1 = nemytskii(wave, identity);
  for (double t : {0.0, 1.3}) CHECK(std::abs(w1(Pt{t}).scalar() - wave(Pt{t}).scalar()) < 1e-15);

  SuperpositionOperator damped;
  damped.eval = [](const Pt& t, const CVal& y) {
    return CVal(std::exp(complexd(0, t[0])) * std::sin(y.scalar().real()));
  };
  Field w2 = nemytskii(wave, damped);
  for (double t = -10; t <= 10; t += 0.37) CHECK(std::abs(w2(Pt{t}).scalar()) <= 1.0 + 1e-12);

  SuperpositionOperator narrow;
  narrow.eval = [](const Pt&, const CVal& y) { return y; };
  narrow.y_radius = 0.5;
  CHECK_THROWS_AS(nemytskii(wave, narrow), std::invalid_argument);

  // composing a certified field with the desk nonlinearity stays certified
  SuperpositionOperator desk;
  desk.eval = [](const Pt& t, const CVal& y) {
    return CVal(0.25 * std::sin(y.scalar()) + std::cos(t[0]));
  };
  desk.lipschitz = 0.25;
  Field w3 = nemytskii(wave, desk);
  w3.osc_freq = 5.0;
  auto prof = make_profile(GaugePhi::identity(), WindowWeight::power_decay(0.5), 2.0);
  auto windows = line_windows(8, 1024);
  // spectrum of sin(e^{it}): odd frequencies with 1/(2j+1)! coefficients
  std::vector<Pt> freqs = {Pt{1.0}, Pt{-1.0}, Pt{3.0}, Pt{5.0}};
  auto rep = classify_besicovitch(w3, prof, 4, freqs, windows);
  CHECK(rep.verdict == ClassVerdict::MemberEvidence);
}

TEST_CASE("verdicts respect shifts and modulation") {
  Field f = brick_power_field(1.0);
  auto prof = make_profile(GaugePhi::power(0.25), WindowWeight::power_decay(1.0), 1.0);
  auto windows = line_windows(64, 1 << 18);

  auto base = classify_besicovitch(f, prof, 2, {}, windows);
  CHECK(base.verdict == ClassVerdict::MemberEvidence);

  auto shifted = classify_besicovitch(f.shifted(Pt{5.0}), prof, 2, {}, windows);
  CHECK(shifted.verdict == base.verdict);

  auto modulated = classify_besicovitch(f.modulated(Pt{2.3}), prof, 2, {}, windows);
  CHECK(modulated.verdict == base.verdict);
  for (size_t i = 0; i < base.residual_tails.size(); ++i)
    CHECK(modulated.residual_tails[i] == doctest::Approx(base.residual_tails[i]).epsilon(1e-8));
}

TEST_CASE("membership begets almost periods and normality") {
  Field f = brick_power_field(1.0);
  auto prof = make_profile(GaugePhi::power(0.25), WindowWeight::power_decay(1.0), 1.0);
  auto windows = line_windows(64, 1 << 16);
  auto rep = classify_besicovitch(f, prof, 2, {}, windows);
  REQUIRE(rep.verdict == ClassVerdict::MemberEvidence);

  // with eps = 3x the final tail residual, hits are everywhere dense
  const double eps = 3.0 * rep.residual_tails.back();
  auto search = almost_period_search(f, eps, prof, Pt{1.0}, 10.0, 1.0, windows);
  CHECK(search.any);
  CHECK(search.relative_density < kInf);

  ShiftSequenceSet shifts;
  std::vector<Pt> seq;
  for (int k = 1; k <= 8; ++k) seq.push_back(Pt{static_cast<double>(k)});
  shifts.sequences.push_back(seq);
  auto normal = normality_check(f, shifts, prof, {1.0, 0.5}, windows);
  CHECK(normal.normal_evidence);
}

TEST_CASE("certified members multiply across axes") {
  // two sub-critical one-axis factors on the plane, combined at 1/r = 1/p + 1/q
  Field fam = brick_family_field(4.0);
  const Domain plane = Domain::full_space(2);
  Field f1 = fam;
  f1.domain = plane;
  auto base_eval = fam.eval;
  f1.eval = [base_eval](const Pt& t, const Pt& x) { return base_eval(Pt{t[0]}, x); };
  auto bp = fam.breakpoints;
  f1.breakpoints = [bp](double a, double b, int axis, std::vector<double>& out) {
    if (axis == 0) bp(a, b, 0, out);
  };
  Field f2 = f1;
  f2.eval = [base_eval](const Pt& t, const Pt& x) { return base_eval(Pt{t[1]}, x); };
  f2.breakpoints = [bp](double a, double b, int axis, std::vector<double>& out) {
    if (axis == 1) bp(a, b, 0, out);
  };
  Field prod = field_product(f1, f2);

  std::vector<double> sched = {64, 128, 256, 512, 1024, 2048, 4096};
  auto windows = make_window_sweep(plane, WindowShape::Cube, sched);
  WeightProfile prof;
  prof.phi = GaugePhi::identity();
  prof.weight = WindowWeight::power_decay(2.0 / 1.5);  // t^{-n/r}, r = 1.5
  prof.p = VariableExponent::constant(1.5);
  auto rep = classify_besicovitch(prod, prof, 2, {}, windows);
  CHECK(rep.verdict == ClassVerdict::MemberEvidence);
}
