#include "aplab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace aplab {

namespace {

constexpr double kPi = std::numbers::pi;

double get_param(const std::map<std::string, double>& params, const std::string& key, double dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

double sched_scale(Preset p) {
  switch (p) {
    case Preset::Fast: return 0.25;
    case Preset::Deep: return 4.0;
    default: return 1.0;
  }
}

// geometric windows t0 * ratio^j capped at t_max * scale(preset); always at
// least six windows (extending downward so the cap is respected)
std::vector<Window> windows_upto(const Domain& dom, WindowShape shape, double t0, double t_max,
                                 Preset preset, double ratio = 2.0) {
  const double cap = t_max * sched_scale(preset);
  std::vector<double> sched;
  for (double t = t0; t <= cap * (1 + 1e-9); t *= ratio) sched.push_back(t);
  while (sched.size() < 6) sched.insert(sched.begin(), sched.front() / ratio);
  return make_window_sweep(dom, shape, sched);
}

PropertyResult ok(std::string detail) {
  return {PropertyResult::Status::Pass, std::move(detail)};
}
PropertyResult bad(std::string detail) {
  return {PropertyResult::Status::Fail, std::move(detail)};
}
PropertyResult meh(std::string detail) {
  return {PropertyResult::Status::Inconclusive, std::move(detail)};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// field builders

struct BrickSpec {
  double value_exponent;  // value m^zeta
  bool unit_offset;       // bricks [j^2-1, j^2] instead of [m^2, m^2+sqrt m)
};

}  // namespace

Field brick_power_field(double zeta) {
  Field f;
  f.domain = Domain::real_line();
  f.eval = [zeta](const Pt& t, const Pt&) -> CVal {
    const double s = t[0];
    if (s < 1.0) return CVal(0.0);
    const double r = std::sqrt(s);
    for (double m : {std::floor(r), std::floor(r) - 1.0}) {
      if (m >= 1.0 && s >= m * m && s < m * m + std::sqrt(m)) return CVal(std::pow(m, zeta));
    }
    return CVal(0.0);
  };
  f.breakpoints = [](double a, double b, int axis, std::vector<double>& out) {
    if (axis != 0) return;
    const double lo = std::max(1.0, a);
    if (lo > b) return;
    for (double m = std::max(1.0, std::floor(std::sqrt(lo)) - 1.0);; m += 1.0) {
      const double start = m * m;
      if (start > b) break;
      if (start >= a && start <= b) out.push_back(start);
      const double stop = m * m + std::sqrt(m);
      if (stop >= a && stop <= b) out.push_back(stop);
    }
  };
  return f;
}

Field brick_family_field(double pj) { return brick_power_field(1.0 / (2.0 * pj)); }

Field brick_unit_field() {
  Field f;
  f.domain = Domain::half_line(0.0);
  f.eval = [](const Pt& t, const Pt&) -> CVal {
    const double s = t[0];
    if (s < 3.0) return CVal(0.0);
    const double j = std::round(std::sqrt(s));
    if (j >= 2.0 && s >= j * j - 1.0 && s <= j * j) return CVal(1.0);
    return CVal(0.0);
  };
  f.breakpoints = [](double a, double b, int axis, std::vector<double>& out) {
    if (axis != 0) return;
    for (double j = 2.0;; j += 1.0) {
      const double start = j * j - 1.0;
      if (start > b) break;
      if (start >= a) out.push_back(start);
      if (j * j >= a && j * j <= b) out.push_back(j * j);
    }
  };
  return f;
}

Field haraux_souplet_field(int terms) {
  Field f;
  f.domain = Domain::real_line();
  f.eval = [terms](const Pt& t, const Pt&) -> CVal {
    double acc = 0;
    double scale = 0.5;  // 1 / 2^n
    for (int n = 1; n <= terms; ++n, scale *= 0.5) {
      const double s = std::sin(t[0] * scale);
      acc += s * s / n;
    }
    return CVal(acc);
  };
  f.osc_freq = 1.0;  // fastest phase: sin^2(t/2)
  return f;
}

Field sign_flip_field(double lambda0) {
  Field f;
  f.domain = Domain::real_line();
  f.eval = [lambda0](const Pt& t, const Pt&) -> CVal {
    const complexd v = std::exp(complexd(0, -lambda0 * t[0]));
    return CVal(t[0] >= 0 ? v : -v);
  };
  f.osc_freq = std::abs(lambda0);
  f.breakpoints = [](double a, double b, int axis, std::vector<double>& out) {
    if (axis == 0 && a < 0.0 && b > 0.0) out.push_back(0.0);
  };
  return f;
}

TrigPolynomial two_freq_polynomial() {
  TrigPolynomial p;
  p.add_term(Pt{std::sqrt(2.0), 1.0}, CVal(1.0));
  p.add_term(Pt{2.0, 1.0}, CVal(1.0));
  return p;
}

Pt two_freq_shift() {
  return Pt{kPi * (2.0 + std::sqrt(2.0)), 2.0 * kPi * (1.0 - std::sqrt(2.0))};
}

namespace {

Field lift_axis(const Field& one_dim, int axis, const Domain& dom) {
  Field f = one_dim;
  f.domain = dom;
  auto base = one_dim.eval;
  f.eval = [base, axis](const Pt& t, const Pt& x) { return base(Pt{t[axis]}, x); };
  if (one_dim.breakpoints) {
    auto bp = one_dim.breakpoints;
    f.breakpoints = [bp, axis](double a, double b, int ax, std::vector<double>& out) {
      if (ax == axis) bp(a, b, 0, out);
    };
  }
  return f;
}

Field triangle_wave_field() {
  // 2pi-periodic, zero-mean, absolutely continuous: 1 - 2|x - pi|/pi on [0, 2pi]
  Field f;
  f.domain = Domain::real_line();
  f.eval = [](const Pt& t, const Pt&) -> CVal {
    double x = std::fmod(t[0], 2.0 * kPi);
    if (x < 0) x += 2.0 * kPi;
    return CVal(1.0 - 2.0 * std::abs(x - kPi) / kPi);
  };
  f.breakpoints = [](double a, double b, int axis, std::vector<double>& out) {
    if (axis != 0) return;
    for (double x = std::floor(a / kPi) * kPi; x <= b; x += kPi)
      if (x >= a) out.push_back(x);
  };
  return f;
}

Field rect_2d_field(double level_base, double level_scale) {
  // continuous (1,1)-periodic field: tents along v = x - y at v = 8k with
  // plateau value level_scale * level_base^{|k|} over the k-th rectangle band.
  Field f;
  f.domain = Domain::full_space(2);
  f.eval = [level_base, level_scale](const Pt& t, const Pt&) -> CVal {
    const double v = t[0] - t[1];
    const double k = std::round((v + 1.0) / 8.0);
    const double u = v - 8.0 * k;  // plateau at u in [-4/3, -2/3]
    double tent = 0.0;
    if (u >= -5.0 / 3.0 && u <= -1.0 / 3.0) {
      if (u <= -4.0 / 3.0)
        tent = 3.0 * (u + 5.0 / 3.0);
      else if (u <= -2.0 / 3.0)
        tent = 1.0;
      else
        tent = 3.0 * (-1.0 / 3.0 - u);
    }
    return CVal(level_scale * std::pow(level_base, std::abs(k)) * tent);
  };
  f.feature_scale = 1.0 / 3.0;
  return f;
}

struct KeckicConstants {
  double A, B, C, D, E, F;
  double mu1, mu2, nu1, nu2;
};

KeckicConstants keckic_constants(const std::map<std::string, double>& params) {
  KeckicConstants k;
  k.A = get_param(params, "A", 1.0);
  k.B = get_param(params, "B", 1.0);
  k.C = get_param(params, "C", 1.0);
  k.D = get_param(params, "D", 1.0);
  k.E = get_param(params, "E", 1.0);
  k.F = get_param(params, "F", 0.5);
  auto reject = [](const std::string& ineq) {
    throw std::invalid_argument("gallery keckic: constraint violated: " + ineq);
  };
  if (!(k.B > 0)) reject("B > 0");
  if (!(k.C > 0)) reject("C > 0");
  if (k.B * k.B < k.A * k.C) reject("B^2 >= A C");
  if (k.E * k.E < k.C * k.F) reject("E^2 >= C F");
  if (!(k.B * k.B > k.E * k.E - k.C * k.F)) reject("B^2 > E^2 - C F");
  const double lhs = std::pow(k.B * k.E - k.C * k.D, 2);
  const double rhs = (k.B * k.B - k.A * k.C) * (k.E * k.E - k.C * k.F);
  if (std::abs(lhs - rhs) > 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
    reject("(BE-CD)^2 = (B^2-AC)(E^2-CF)");
  const double se = std::sqrt(k.E * k.E - k.C * k.F);
  const double sb = std::sqrt(k.B * k.B - k.A * k.C);
  k.mu1 = (-k.B + se) / k.C;
  k.mu2 = (-k.B - se) / k.C;
  k.nu1 = (-k.E + sb) / k.C;
  k.nu2 = (-k.E - sb) / k.C;
  return k;
}

Field keckic_field(const KeckicConstants& k) {
  Field f;
  f.domain = Domain::product({{-kInf, kInf}, {0.0, kInf}});
  f.eval = [k](const Pt& t, const Pt&) -> CVal {
    const double x = t[0], y = t[1];
    return CVal(std::exp(k.mu1 * y) * std::cos(x + k.nu1 * y) +
                std::exp(k.mu2 * y) * std::sin(x + k.nu2 * y));
  };
  f.osc_freq = 1.0 + std::max(std::abs(k.nu1), std::abs(k.nu2));
  return f;
}

// second-order PDE residual by central differences, step h
double keckic_pde_residual(const Field& u, const KeckicConstants& k, double x, double y, double h) {
  auto U = [&](double a, double b) { return u(Pt{a, b}).scalar().real(); };
  const double uxx = (U(x + h, y) - 2 * U(x, y) + U(x - h, y)) / (h * h);
  const double uyy = (U(x, y + h) - 2 * U(x, y) + U(x, y - h)) / (h * h);
  const double uxy =
      (U(x + h, y + h) - U(x + h, y - h) - U(x - h, y + h) + U(x - h, y - h)) / (4 * h * h);
  const double ux = (U(x + h, y) - U(x - h, y)) / (2 * h);
  const double uy = (U(x, y + h) - U(x, y - h)) / (2 * h);
  return std::abs(k.A * uxx + 2 * k.B * uxy + k.C * uyy + 2 * k.D * ux + 2 * k.E * uy +
                  k.F * U(x, y));
}

WeightProfile profile_of(GaugePhi phi, WindowWeight w, double p) {
  WeightProfile prof;
  prof.phi = std::move(phi);
  prof.weight = std::move(w);
  prof.p = VariableExponent::constant(p);
  return prof;
}

// ---------------------------------------------------------------------------
// entry builders

GalleryEntry make_transport_exp(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "transport-exp";
  e.params = {{"ratio", get_param(params, "ratio", 1.0)}, {"gfreq", get_param(params, "gfreq", 1.0)}};
  const double ratio = e.params["ratio"];
  const double gfreq = e.params["gfreq"];
  if (ratio == 0.0) throw std::invalid_argument("gallery transport-exp: ratio must be nonzero");
  e.formula = "u(x,y) = e^{i gfreq y} e^{-ratio x} on [0,inf) x R";

  const Domain half = Domain::product({{0.0, kInf}, {-kInf, kInf}});
  e.field = scalar_field(half, [ratio, gfreq](const Pt& t) {
    return std::exp(complexd(0, gfreq * t[1])) * std::exp(-ratio * t[0]);
  });
  e.field.osc_freq = 0.0;  // no oscillation along x
  e.field.osc_freq_y = std::abs(gfreq);

  e.checks.push_back(
      {"ergodic-vanishing", "window L1 mass with weight t^-2 vanishes on the half-plane", false,
       [e, half](Preset p) -> PropertyResult {
         auto windows = windows_upto(half, WindowShape::Cube, 8.0, 256.0, p);
         auto rep = weighted_residual(e.field, constant_field(half, 0.0),
                                      profile_of(GaugePhi::identity(), WindowWeight::power_decay(2.0), 1.0),
                                      windows);
         if (rep.estimate.vanishing()) return ok("residual slope " + fmt(rep.estimate.tail_slope));
         return bad("residual trend " + std::string(trend_name(rep.estimate.trend)));
       }});
  e.checks.push_back(
      {"full-plane-unbounded", "the same mass diverges once x < 0 is admitted", false,
       [ratio, gfreq](Preset p) -> PropertyResult {
         Field whole = scalar_field(Domain::full_space(2), [ratio, gfreq](const Pt& t) {
           return std::exp(complexd(0, gfreq * t[1])) * std::exp(-ratio * t[0]);
         });
         whole.osc_freq = 0.0;
         whole.osc_freq_y = std::abs(gfreq);
         auto windows = windows_upto(Domain::full_space(2), WindowShape::Cube, 8.0, 64.0, p);
         auto rep = besicovitch_bounded(whole, profile_of(GaugePhi::identity(), WindowWeight::power_decay(2.0), 1.0),
                                        windows);
         if (rep.verdict == BoundedVerdict::Unbounded) return ok("diverging as expected");
         return bad(std::string("verdict ") + bounded_verdict_name(rep.verdict));
       }});
  return e;
}

GalleryEntry make_heat_series(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "heat-series";
  e.params = {{"terms", get_param(params, "terms", 40.0)}, {"zeta", get_param(params, "zeta", 1.0)}};
  const int terms = static_cast<int>(e.params["terms"]);
  const double zeta = e.params["zeta"];
  if (!(zeta > 0)) throw std::invalid_argument("gallery heat-series: zeta must be positive");
  e.formula = "u(x,s) = sum_k b_k sin(k x / 2) e^{-k^2 s / 4}, b_k = 1/k, on [0,2pi] x [0,inf)";

  const Domain strip = Domain::product({{0.0, 2.0 * kPi}, {0.0, kInf}});
  e.field = scalar_field(strip, [terms](const Pt& t) {
    double acc = 0;
    for (int k = 1; k <= terms; ++k)
      acc += std::sin(0.5 * k * t[0]) * std::exp(-0.25 * k * k * t[1]) / k;
    return complexd(acc, 0.0);
  });
  e.field.osc_freq = terms / 2.0;  // x only; the time axis decays monotonically
  e.field.osc_freq_y = 0.0;

  e.checks.push_back(
      {"ergodic-vanishing", "weight t^-zeta pushes the window L1 mass to zero", false,
       [e, strip, zeta](Preset p) -> PropertyResult {
         auto windows = windows_upto(strip, WindowShape::Cube, 8.0, 256.0, p);
         auto rep = weighted_residual(e.field, constant_field(strip, 0.0),
                                      profile_of(GaugePhi::identity(), WindowWeight::power_decay(zeta), 1.0),
                                      windows);
         if (rep.estimate.vanishing()) return ok("residual slope " + fmt(rep.estimate.tail_slope));
         return bad("residual trend " + std::string(trend_name(rep.estimate.trend)));
       }});
  e.checks.push_back({"zero-budget-membership", "the zero polynomial already certifies the class",
                      false, [e, strip, zeta](Preset p) -> PropertyResult {
                        auto windows = windows_upto(strip, WindowShape::Cube, 8.0, 256.0, p);
                        auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(zeta), 1.0);
                        auto rep = classify_besicovitch(e.field, prof, 3, {}, windows);
                        if (rep.verdict == ClassVerdict::MemberEvidence)
                          return ok("member via zero witness, scale " + fmt(rep.scale));
                        return bad(class_verdict_name(rep.verdict));
                      }});
  return e;
}

GalleryEntry make_brick_unit() {
  GalleryEntry e;
  e.id = "brick-unit";
  e.formula = "indicator of U_{j>=2} [j^2-1, j^2] on [0,inf), exponent p(x) = 1 + x^2";
  e.field = brick_unit_field();
  const VariableExponent pvar = VariableExponent::function([](const Pt& x) { return 1.0 + x[0] * x[0]; });

  e.checks.push_back(
      {"variable-exponent-vanishing", "t^-1 times the Luxemburg norm at p(x)=1+x^2 vanishes", false,
       [e, pvar](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 8.0, 8192.0, p);
         WeightProfile prof;
         prof.weight = WindowWeight::power_decay(1.0);
         prof.p = pvar;
         auto rep = weighted_residual(e.field, constant_field(e.field.domain, 0.0), prof, windows);
         if (rep.estimate.vanishing()) return ok("residual slope " + fmt(rep.estimate.tail_slope));
         return bad("residual trend " + std::string(trend_name(rep.estimate.trend)));
       }});
  e.checks.push_back(
      {"luxemburg-sum-formula", "the window norm matches the lacunary-sum bound within 5%", false,
       [e, pvar](Preset) -> PropertyResult {
         const Window w{e.field.domain, WindowShape::Cube, 64.0};
         const double norm = luxemburg_norm(e.field, pvar, w);
         // sum over bricks of lambda^{-j^4 + 2 j^2 - 2} reaching 1
         auto sum_of = [&](double lam) {
           double s = 0;
           for (double j = 2; j * j <= w.radius; ++j) s += std::pow(lam, -(j * j * j * j - 2 * j * j + 2));
           return s;
         };
         double lo = 1.0, hi = 2.0;
         while (sum_of(hi) > 1.0) hi *= 2;
         for (int i = 0; i < 80; ++i) {
           const double mid = 0.5 * (lo + hi);
           (sum_of(mid) > 1.0 ? lo : hi) = mid;
         }
         const double rel = std::abs(norm - hi) / hi;
         if (rel < 0.05) return ok("norm " + fmt(norm) + " vs sum-formula " + fmt(hi));
         return bad("norm " + fmt(norm) + " vs sum-formula " + fmt(hi) + ", rel " + fmt(rel));
       }});
  return e;
}

GalleryEntry make_brick_power(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "brick-power";
  e.params = {{"zeta", get_param(params, "zeta", 1.0)}, {"alpha", get_param(params, "alpha", 0.25)}};
  const double zeta = e.params["zeta"];
  const double alpha = e.params["alpha"];
  if (!(zeta > 0.5))
    throw std::invalid_argument("gallery brick-power: requires zeta > 1/2, got zeta = " + fmt(zeta));
  if (!(alpha * zeta > 0.0) || !(alpha * zeta < 0.5))
    throw std::invalid_argument("gallery brick-power: requires alpha*zeta in (0, 1/2), got " +
                                fmt(alpha * zeta));
  e.formula = "F(t) = m^zeta on [m^2, m^2 + sqrt(m)), zero elsewhere";
  e.field = brick_power_field(zeta);

  e.checks.push_back(
      {"mean-unbounded", "plain t^-1 weighting diverges at slope (zeta - 1/2)/2", false,
       [e, zeta](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 64.0, 262144.0, p);
         auto rep = besicovitch_bounded(
             e.field, profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0), windows);
         const double want = 0.5 * (zeta - 0.5);
         if (rep.verdict == BoundedVerdict::Unbounded &&
             std::abs(rep.sweep.estimate.tail_slope - want) < 0.05)
           return ok("slope " + fmt(rep.sweep.estimate.tail_slope));
         return bad(std::string(bounded_verdict_name(rep.verdict)) + ", slope " +
                    fmt(rep.sweep.estimate.tail_slope));
       }});
  e.checks.push_back(
      {"gauge-damped-membership", "gauge x^alpha restores the weighted class via the zero witness",
       false, [e, zeta, alpha](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 64.0, 262144.0, p);
         auto prof = profile_of(GaugePhi::power(alpha), WindowWeight::power_decay(1.0), 1.0);
         auto rep = classify_besicovitch(e.field, prof, 3, {}, windows);
         const double want = 0.5 * (alpha * zeta - 0.5);
         const double got = rep.residual_slopes.back();
         if (rep.verdict == ClassVerdict::MemberEvidence && std::abs(got - want) < 0.05)
           return ok("member, slope " + fmt(got));
         return bad(std::string(class_verdict_name(rep.verdict)) + ", slope " + fmt(got));
       }});
  return e;
}

GalleryEntry make_brick_family(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "brick-family";
  e.params = {{"pj", get_param(params, "pj", 2.0)}};
  const double pj = e.params["pj"];
  if (!(pj >= 1.0)) throw std::invalid_argument("gallery brick-family: requires pj >= 1");
  e.formula = "F_j(t) = m^{1/(2 pj)} on [m^2, m^2 + sqrt(m))";
  e.field = brick_family_field(pj);

  e.checks.push_back(
      {"critical-exponent-bounded", "at its own exponent the window mean stays bounded", false,
       [e, pj](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 64.0, 262144.0, p);
         auto rep = besicovitch_bounded(
             e.field, profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0 / pj), pj), windows);
         if (rep.verdict == BoundedVerdict::Bounded)
           return ok("bound " + fmt(rep.bound) + " (expect ~" + fmt(std::pow(0.5, 1.0 / pj)) + ")");
         return bad(bounded_verdict_name(rep.verdict));
       }});
  e.checks.push_back(
      {"higher-exponent-unbounded", "any larger exponent diverges", false,
       [e, pj](Preset p) -> PropertyResult {
         const double q = 2.0 * pj;
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 64.0, 262144.0, p);
         auto rep = besicovitch_bounded(
             e.field, profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0 / q), q), windows);
         if (rep.verdict == BoundedVerdict::Unbounded) return ok("diverging at q = " + fmt(q));
         return bad(bounded_verdict_name(rep.verdict));
       }});
  e.checks.push_back(
      {"lower-exponent-null", "below the critical exponent the zero witness certifies membership",
       false, [e, pj](Preset p) -> PropertyResult {
         const double q = std::max(1.0, 0.5 * pj);
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 64.0, 262144.0, p);
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0 / q), q);
         auto rep = classify_besicovitch(e.field, prof, 3, {}, windows);
         if (rep.verdict == ClassVerdict::MemberEvidence) return ok("member at q = " + fmt(q));
         return bad(class_verdict_name(rep.verdict));
       }});
  return e;
}

GalleryEntry make_haraux_souplet(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "haraux-souplet";
  e.params = {{"terms", get_param(params, "terms", 40.0)}};
  const int terms = static_cast<int>(e.params["terms"]);
  if (terms < 8) throw std::invalid_argument("gallery haraux-souplet: need at least 8 terms");
  e.formula = "f(t) = sum_{n=1}^{terms} (1/n) sin^2(t / 2^n)";
  e.field = haraux_souplet_field(terms);

  e.checks.push_back(
      {"mean-unbounded", "the window mean creeps up without a plateau (log growth)", false,
       [e](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 8.0, 32768.0, p);
         auto rep = besicovitch_bounded(
             e.field, profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0), windows);
         if (rep.verdict == BoundedVerdict::Unbounded)
           return ok("diverging, tail " + fmt(rep.sweep.estimate.estimate));
         return bad(bounded_verdict_name(rep.verdict));
       }});
  e.checks.push_back(
      {"recurrence-shifts", "shift residuals at tau = 2^k pi decrease in k", false,
       [e](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 512.0, 32768.0, p);
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
         std::vector<double> vals;
         for (int k : {4, 6, 8}) {
           const double tau = std::pow(2.0, k) * kPi;
           vals.push_back(doss_residual(e.field, Pt{tau}, prof, windows).estimate);
         }
         const bool decreasing = vals[0] > vals[1] && vals[1] > vals[2];
         if (decreasing && vals[2] < 0.2)
           return ok("residuals " + fmt(vals[0]) + " > " + fmt(vals[1]) + " > " + fmt(vals[2]));
         return bad("residuals " + fmt(vals[0]) + ", " + fmt(vals[1]) + ", " + fmt(vals[2]));
       }});
  return e;
}

GalleryEntry make_power_sigma(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "power-sigma";
  e.params = {{"sigma", get_param(params, "sigma", 0.5)},
              {"p", get_param(params, "p", 1.0)},
              {"a", get_param(params, "a", 0.75)}};
  const double sigma = e.params["sigma"];
  const double p = e.params["p"];
  const double a = e.params["a"];
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("gallery power-sigma: requires sigma in (0,1)");
  if (!(a > 1.0 - (1.0 - sigma) * p) || !(1.0 - (1.0 - sigma) * p > 0.0))
    throw std::invalid_argument("gallery power-sigma: requires a > 1 - (1-sigma) p > 0");
  e.formula = "F(x) = |x|^sigma";
  e.field = scalar_field_1d([sigma](double x) { return complexd(std::pow(std::abs(x), sigma), 0); });
  e.field.breakpoints = [](double lo, double hi, int axis, std::vector<double>& out) {
    if (axis == 0 && lo < 0.0 && hi > 0.0) out.push_back(0.0);
  };

  e.checks.push_back({"power-growth-unbounded", "the plain Besicovitch weighting diverges at slope sigma",
                      false, [e, sigma, p](Preset preset) -> PropertyResult {
                        auto windows = windows_upto(e.field.domain, WindowShape::Cube, 8.0, 65536.0, preset);
                        auto rep = besicovitch_bounded(
                            e.field, profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0 / p), p),
                            windows);
                        if (rep.verdict == BoundedVerdict::Unbounded &&
                            std::abs(rep.sweep.estimate.tail_slope - sigma) < 0.05)
                          return ok("slope " + fmt(rep.sweep.estimate.tail_slope));
                        return bad(std::string(bounded_verdict_name(rep.verdict)) + ", slope " +
                                   fmt(rep.sweep.estimate.tail_slope));
                      }});
  e.checks.push_back(
      {"shift-normality", "integer shifts are pairwise Cauchy under the weakened weight t^{-a/p}",
       false, [e, a, p](Preset preset) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 256.0, 4194304.0, preset);
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(a / p), p);
         ShiftSequenceSet collection;
         std::vector<Pt> seq;
         for (int k = 1; k <= 8; ++k) seq.push_back(Pt{static_cast<double>(k)});
         collection.sequences.push_back(seq);
         auto rep = normality_check(e.field, collection, prof, {1.0, 0.5, 0.25}, windows);
         if (rep.normal_evidence)
           return ok("chain of " + std::to_string(rep.per_sequence[0].chain.size()) + " at eps " +
                     fmt(rep.per_sequence[0].eps_achieved));
         return bad("no chain at the smallest epsilon");
       }});
  return e;
}

GalleryEntry make_rect_2d(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "rect-2d";
  e.params = {{"level_base", get_param(params, "level_base", 4.0)},
              {"level_scale", get_param(params, "level_scale", 4.0)}};
  const double base = e.params["level_base"];
  const double scale = e.params["level_scale"];
  if (!(base >= 2.0) || !(scale >= 1.0))
    throw std::invalid_argument("gallery rect-2d: requires level_base >= 2 and level_scale >= 1");
  e.formula = "continuous (1,1)-periodic field, plateau level_scale*level_base^{|k|} on the k-th band";
  e.field = rect_2d_field(base, scale);

  e.checks.push_back(
      {"exponential-divergence", "ball means explode with the band levels", false,
       [e](Preset) -> PropertyResult {
         std::vector<double> sched = {8, 11.3, 16, 22.6, 32, 45.25};
         auto windows = make_window_sweep(e.field.domain, WindowShape::Ball, sched);
         auto rep = m_p_seminorm(e.field, 1.0, windows, Normalization::Measure);
         if (rep.estimate.trend == Trend::Diverging)
           return ok("diverging, slope " + fmt(rep.estimate.tail_slope));
         return bad(trend_name(rep.estimate.trend));
       }});
  e.checks.push_back(
      {"band-mass-lower-bound", "ball mass at radius 8 sqrt(2) k dominates the geometric band sum",
       false, [e](Preset) -> PropertyResult {
         QuadOptions o;
         o.rel_tol = 1e-6;
         o.feature_scale = 1.0 / 3.0;
         for (int k = 1; k <= 3; ++k) {
           const Window w{e.field.domain, WindowShape::Ball, 8.0 * std::sqrt(2.0) * k};
           const double mass =
               integrate_window_real([&](const Pt& t) { return e.field(t).norm(); }, w, o);
           const double bound =
               (16.0 * k * std::sqrt(2.0) / 3.0) * (std::pow(2.0, 4 * k + 1) - 1.0);
           if (!(mass >= bound))
             return bad("k=" + std::to_string(k) + ": mass " + fmt(mass) + " < bound " + fmt(bound));
         }
         return ok("mass dominates the band sum for k = 1..3");
       }});
  return e;
}

GalleryEntry make_two_freq_2d() {
  GalleryEntry e;
  e.id = "two-freq-2d";
  e.formula = "P(x,y) = e^{i(sqrt2 x + y)} + e^{i(2x + y)}";
  TrigPolynomial poly = two_freq_polynomial();
  e.field = poly.to_field(Domain::full_space(2));
  const Pt a = two_freq_shift();

  e.checks.push_back({"vector-periodicity", "the combined shift is an exact period", false,
                      [poly, a](Preset) -> PropertyResult {
                        double worst = 0;
                        for (const Pt& t : window_sample_points(
                                 Window{Domain::full_space(2), WindowShape::Cube, 50.0}, 1000))
                          worst = std::max(worst, (poly.evaluate(t + a) - poly.evaluate(t)).norm());
                        if (worst < 1e-9) return ok("max |P(t+a)-P(t)| = " + fmt(worst));
                        return bad("max deviation " + fmt(worst));
                      }});
  e.checks.push_back({"axis-projection-empty", "no term survives the per-axis resonance filter",
                      false, [poly, a](Preset) -> PropertyResult {
                        auto vec = periodic_component(poly, a, PeriodicMode::Vector);
                        auto axis = periodic_component(poly, a, PeriodicMode::PerAxis);
                        if (vec.terms().size() == 2 && axis.terms().empty())
                          return ok("vector filter keeps both terms, per-axis filter keeps none");
                        return bad("vector " + std::to_string(vec.terms().size()) + ", per-axis " +
                                   std::to_string(axis.terms().size()));
                      }});
  e.checks.push_back(
      {"no-axiswise-periodic-proxy",
       "averaged residuals stay above the cell-minimum bound for candidates 0 and P", false,
       [e, poly, a](Preset) -> PropertyResult {
         std::vector<double> sched = {8, 11.3, 16, 22.6, 32, 45.25, 64};
         auto windows = make_window_sweep(e.field.domain, WindowShape::Ball, sched);
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(2.0), 1.0);
         // cell-minimized epsilon_0 over [0, a1] x [0, |a2|], 200x200 grid
         auto eps0_for = [&](const TrigPolynomial& cand) {
           double eps0 = kInf;
           for (int i = 0; i <= 200; ++i)
             for (int j = 0; j <= 200; ++j) {
               const Pt t{a[0] * i / 200.0, std::abs(a[1]) * j / 200.0};
               eps0 = std::min(eps0, (poly.evaluate(t) - cand.evaluate(t)).norm());
             }
           return eps0;
         };
         const double denom = std::floor(a[0]) * std::floor(std::abs(a[1]));
         for (int which = 0; which < 2; ++which) {
           const TrigPolynomial cand = which == 0 ? TrigPolynomial{} : poly;
           const double bound = eps0_for(cand) / denom;
           auto res = condition_A_residual(poly, a, prof, {1, 2, 4, 8}, windows,
                                           which == 0 ? PeriodicMode::PerAxis : PeriodicMode::Vector);
           for (const auto& sweep : res.residuals)
             for (const auto& [t, v] : sweep.samples)
               if (v + 1e-12 < bound)
                 return bad("candidate " + std::to_string(which) + ": residual " + fmt(v) +
                            " under bound " + fmt(bound) + " at t=" + fmt(t));
         }
         return ok("residuals dominate the cell-minimum bound for both candidates");
       }});
  return e;
}

GalleryEntry make_sign_flip(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "sign-flip";
  e.params = {{"lambda0", get_param(params, "lambda0", 2.0)}};
  const double lambda0 = e.params["lambda0"];
  e.formula = "F(t) = e^{-i lambda0 t} for t >= 0, -e^{-i lambda0 t} for t < 0";
  e.field = sign_flip_field(lambda0);

  e.checks.push_back(
      {"resonant-probe-sticks", "the sliding-window functional holds at 2 on the flip frequency",
       false, [e, lambda0](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 512.0, 8192.0, p);
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
         for (double l : {1.0, 4.0, 16.0, 64.0}) {
           auto est = condition_B_functional(e.field, Pt{lambda0}, l, WindowWeight::power_decay(1.0),
                                             prof, windows);
           if (std::abs(est.estimate - 2.0) > 0.05)
             return bad("l=" + fmt(l) + ": value " + fmt(est.estimate));
         }
         return ok("functional = 2 within 0.05 for l in {1,4,16,64}");
       }});
  e.checks.push_back(
      {"off-resonance-decays", "one frequency away the functional decays in the box size", false,
       [e, lambda0](Preset p) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 512.0, 8192.0, p);
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0), 1.0);
         auto est = condition_B_functional(e.field, Pt{lambda0 + 1.0}, 64.0,
                                           WindowWeight::power_decay(1.0), prof, windows);
         if (est.estimate < 0.05) return ok("value " + fmt(est.estimate) + " at l=64");
         return bad("value " + fmt(est.estimate) + " at l=64");
       }});
  return e;
}

GalleryEntry make_product_sep(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "product-sep";
  e.params = {{"p", get_param(params, "p", 2.0)}};
  const double p = e.params["p"];
  if (!(p >= 1.0)) throw std::invalid_argument("gallery product-sep: requires p >= 1");
  e.formula = "F(x,y) = triangle(x) e^{iy} on [0,2pi] x [0,inf)";

  const Domain strip = Domain::product({{0.0, 2.0 * kPi}, {0.0, kInf}});
  Field tri = lift_axis(triangle_wave_field(), 0, strip);
  Field osc = scalar_field(strip, [](const Pt& t) { return std::exp(complexd(0, t[1])); });
  osc.osc_freq = 4.0;  // covers the x-frequencies of the other factor
  osc.osc_freq_y = 1.0;
  e.field = field_product(tri, osc);

  e.checks.push_back(
      {"strip-membership", "measure-normalized classification finds the separated spectrum", true,
       [e, strip, p](Preset preset) -> PropertyResult {
         auto windows = windows_upto(strip, WindowShape::Cube, 8.0, 64.0, preset, std::sqrt(2.0));
         WeightProfile prof;
         prof.phi = GaugePhi::identity();
         // measure normalization on the strip: m(Lambda_t) = 2 pi t
         prof.weight = WindowWeight::custom([p](double t) { return std::pow(2.0 * kPi * t, -1.0 / p); });
         prof.p = VariableExponent::constant(p);
         std::vector<Pt> lattice;
         for (int k = -19; k <= 19; k += 2) lattice.push_back(Pt{static_cast<double>(k), 1.0});
         auto rep = classify_besicovitch(e.field, prof, 20, lattice, windows);
         if (rep.verdict == ClassVerdict::MemberEvidence)
           return ok("member, final residual " + fmt(rep.residual_tails.back()) + " of scale " +
                     fmt(rep.scale));
         if (rep.verdict == ClassVerdict::Inconclusive)
           return meh("inconclusive at budget 20 (strip normalization ambiguity)");
         return bad(class_verdict_name(rep.verdict));
       }});
  return e;
}

GalleryEntry make_dalembert() {
  GalleryEntry e;
  e.id = "dalembert";
  e.formula =
      "u(x,s) = (f(x+s) + f(x-s))/2 + (G(x+s) - G(x-s))/2, f = cos + cos(sqrt2 .), G = sin";
  const Domain plane = Domain::full_space(2);
  e.field = scalar_field(plane, [](const Pt& t) {
    const double xp = t[0] + t[1], xm = t[0] - t[1];
    auto f = [](double s) { return std::cos(s) + std::cos(std::sqrt(2.0) * s); };
    auto G = [](double s) { return std::sin(s); };
    return complexd(0.5 * (f(xp) + f(xm)) + 0.5 * (G(xp) - G(xm)), 0.0);
  });
  e.field.osc_freq = 2.0;

  e.checks.push_back({"wave-equation", "u_ss = u_xx under central differences", false,
                      [e](Preset) -> PropertyResult {
                        const double h = 1e-3;
                        double worst = 0;
                        auto U = [&](double x, double s) { return e.field(Pt{x, s}).scalar().real(); };
                        for (const Pt& t : window_sample_points(
                                 Window{e.field.domain, WindowShape::Cube, 20.0}, 200)) {
                          const double uxx =
                              (U(t[0] + h, t[1]) - 2 * U(t[0], t[1]) + U(t[0] - h, t[1])) / (h * h);
                          const double uss =
                              (U(t[0], t[1] + h) - 2 * U(t[0], t[1]) + U(t[0], t[1] - h)) / (h * h);
                          worst = std::max(worst, std::abs(uss - uxx));
                        }
                        if (worst < 1e-5) return ok("max PDE residual " + fmt(worst));
                        return bad("max PDE residual " + fmt(worst));
                      }});
  e.checks.push_back(
      {"plane-membership", "the eight-frequency fit reproduces the solution exactly", false,
       [e, plane](Preset) -> PropertyResult {
         // fixed schedule: the close frequency pair needs t >= 64 to separate
         auto windows = windows_upto(plane, WindowShape::Cube, 8.0, 64.0, Preset::Standard,
                                     std::sqrt(2.0));
         auto prof = profile_of(GaugePhi::identity(), WindowWeight::power_decay(1.0), 2.0);
         const double r2 = std::sqrt(2.0);
         std::vector<Pt> lattice = {Pt{1, 1},   Pt{-1, -1}, Pt{1, -1},   Pt{-1, 1},
                                    Pt{r2, r2}, Pt{-r2, -r2}, Pt{r2, -r2}, Pt{-r2, r2}};
         auto rep = classify_besicovitch(e.field, prof, 8, lattice, windows);
         if (rep.verdict == ClassVerdict::MemberEvidence)
           return ok("member, final residual " + fmt(rep.residual_tails.back()));
         return bad(class_verdict_name(rep.verdict));
       }});
  return e;
}

GalleryEntry make_transport_xy() {
  GalleryEntry e;
  e.id = "transport-xy";
  e.formula = "u(x,y) = g(y-x) e^x on (-inf,0] x R, g = cos + cos(sqrt3 .)";
  const Domain half = Domain::product({{-kInf, 0.0}, {-kInf, kInf}});
  auto g = [](double w) { return std::cos(w) + std::cos(std::sqrt(3.0) * w); };
  e.field = scalar_field(half, [g](const Pt& t) { return complexd(g(t[1] - t[0]) * std::exp(t[0]), 0); });
  e.field.osc_freq = 2.0;

  e.checks.push_back(
      {"half-plane-membership", "the exponential factor makes the solution a null member", false,
       [e, half](Preset preset) -> PropertyResult {
         auto windows = windows_upto(half, WindowShape::Cube, 8.0, 256.0, preset);
         WeightProfile prof;
         prof.phi = GaugePhi::identity();
         prof.weight = WindowWeight::custom([](double t) { return std::pow(2.0 * t * t, -1.0 / 1.5); });
         prof.p = VariableExponent::constant(1.5);
         auto rep = classify_besicovitch(e.field, prof, 2, {}, windows);
         if (rep.verdict == ClassVerdict::MemberEvidence)
           return ok("member via zero witness, scale " + fmt(rep.scale));
         return bad(class_verdict_name(rep.verdict));
       }});
  e.checks.push_back(
      {"tensor-lift", "the diagonal lift keeps the one-dimensional residual within a factor 2",
       false, [g](Preset) -> PropertyResult {
         // one term of g fitted, the second left as residual, q = 2
         auto g1 = scalar_field_1d([g](double w) { return complexd(g(w) - std::cos(w), 0); });
         g1.osc_freq = 2.0;
         Field lift = scalar_field(Domain::full_space(2),
                                   [g](const Pt& t) { return complexd(g(t[1] - t[0]) - std::cos(t[1] - t[0]), 0); });
         lift.osc_freq = 2.0;
         for (double t : {16.0, 32.0, 64.0}) {
           QuadOptions o;
           o.rel_tol = 1e-7;
           o.osc_freq = 2.0;
           const Window w1{Domain::real_line(), WindowShape::Cube, 2.0 * t};
           const Window w2{Domain::full_space(2), WindowShape::Cube, t};
           const double r1 = std::sqrt(
               integrate_window_real([&](const Pt& s) { return std::norm(g1(s).scalar()); }, w1, o) /
               w1.measure());
           const double r2 = std::sqrt(
               integrate_window_real([&](const Pt& s) { return std::norm(lift(s).scalar()); }, w2, o) /
               w2.measure());
           if (!(r2 <= 2.0 * r1 && r1 <= 2.0 * r2))
             return bad("t=" + fmt(t) + ": 1-D " + fmt(r1) + " vs 2-D " + fmt(r2));
         }
         return ok("residuals agree within factor 2 at matched windows");
       }});
  return e;
}

GalleryEntry make_keckic(std::map<std::string, double> params) {
  GalleryEntry e;
  e.id = "keckic";
  KeckicConstants k = keckic_constants(params);
  e.params = {{"A", k.A}, {"B", k.B}, {"C", k.C}, {"D", k.D}, {"E", k.E}, {"F", k.F}};
  e.formula = "u = e^{mu1 y} cos(x + nu1 y) + e^{mu2 y} sin(x + nu2 y) on R x [0,inf)";
  e.field = keckic_field(k);

  e.checks.push_back({"pde-residual", "the second-order constant-coefficient PDE holds", false,
                      [e, k](Preset) -> PropertyResult {
                        double worst = 0;
                        for (const Pt& t : window_sample_points(
                                 Window{e.field.domain, WindowShape::Cube, 10.0}, 200))
                          worst = std::max(worst, keckic_pde_residual(e.field, k, t[0], t[1], 1e-3));
                        if (worst < 1e-5) return ok("max PDE residual " + fmt(worst));
                        return bad("max PDE residual " + fmt(worst));
                      }});
  e.checks.push_back(
      {"half-plane-membership", "decaying exponentials make the solution a null member", false,
       [e](Preset preset) -> PropertyResult {
         auto windows = windows_upto(e.field.domain, WindowShape::Cube, 8.0, 256.0, preset);
         WeightProfile prof;
         prof.phi = GaugePhi::identity();
         prof.weight = WindowWeight::custom([](double t) { return std::pow(2.0 * t * t, -1.0 / 1.5); });
         prof.p = VariableExponent::constant(1.5);
         auto rep = classify_besicovitch(e.field, prof, 2, {}, windows);
         if (rep.verdict == ClassVerdict::MemberEvidence)
           return ok("member via zero witness, scale " + fmt(rep.scale));
         return bad(class_verdict_name(rep.verdict));
       }});
  return e;
}

}  // namespace

Preset preset_from_name(const std::string& name) {
  if (name == "fast") return Preset::Fast;
  if (name == "standard") return Preset::Standard;
  if (name == "deep") return Preset::Deep;
  throw std::invalid_argument("unknown preset: " + name);
}

const char* preset_name(Preset p) {
  switch (p) {
    case Preset::Fast: return "fast";
    case Preset::Deep: return "deep";
    default: return "standard";
  }
}

const char* property_status_name(PropertyResult::Status s) {
  switch (s) {
    case PropertyResult::Status::Pass: return "pass";
    case PropertyResult::Status::Fail: return "fail";
    default: return "inconclusive";
  }
}

std::vector<std::string> gallery_list() {
  return {"transport-exp", "heat-series",  "brick-unit",  "brick-power", "brick-family",
          "haraux-souplet", "power-sigma", "rect-2d",     "two-freq-2d", "sign-flip",
          "product-sep",    "dalembert",   "transport-xy", "keckic"};
}

GalleryEntry gallery_get(const std::string& id, std::map<std::string, double> params) {
  if (id == "transport-exp") return make_transport_exp(std::move(params));
  if (id == "heat-series") return make_heat_series(std::move(params));
  if (id == "brick-unit") return make_brick_unit();
  if (id == "brick-power") return make_brick_power(std::move(params));
  if (id == "brick-family") return make_brick_family(std::move(params));
  if (id == "haraux-souplet") return make_haraux_souplet(std::move(params));
  if (id == "power-sigma") return make_power_sigma(std::move(params));
  if (id == "rect-2d") return make_rect_2d(std::move(params));
  if (id == "two-freq-2d") return make_two_freq_2d();
  if (id == "sign-flip") return make_sign_flip(std::move(params));
  if (id == "product-sep") return make_product_sep(std::move(params));
  if (id == "dalembert") return make_dalembert();
  if (id == "transport-xy") return make_transport_xy();
  if (id == "keckic") return make_keckic(std::move(params));
  throw std::invalid_argument("unknown gallery id: " + id);
}

VerifyReport gallery_verify(const std::string& id, Preset preset) {
  GalleryEntry entry = gallery_get(id);
  VerifyReport rep;
  rep.id = id;
  rep.preset = preset;
  for (const auto& check : entry.checks) {
    PropertyResult r;
    try {
      r = check.run(preset);
    } catch (const std::exception& ex) {
      r = {PropertyResult::Status::Fail, std::string("exception: ") + ex.what()};
    }
    if (r.status == PropertyResult::Status::Inconclusive && !check.inconclusive_allowed)
      r.status = PropertyResult::Status::Fail;
    switch (r.status) {
      case PropertyResult::Status::Pass: ++rep.passed; break;
      case PropertyResult::Status::Fail: ++rep.failed; break;
      default: ++rep.inconclusive; break;
    }
    rep.results.emplace_back(check.name, std::move(r));
  }
  return rep;
}

std::string gallery_manifest_json() {
  nlohmann::json manifest;
  for (const std::string& id : gallery_list()) {
    GalleryEntry e = gallery_get(id);
    nlohmann::json item;
    item["formula"] = e.formula;
    item["params"] = e.params;
    nlohmann::json claims = nlohmann::json::array();
    for (const auto& c : e.checks)
      claims.push_back({{"name", c.name},
                        {"claim", c.claim},
                        {"inconclusive_allowed", c.inconclusive_allowed}});
    item["claims"] = claims;
    manifest[id] = item;
  }
  return manifest.dump(2);
}

}  // namespace aplab
