#include "aplab/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "aplab/luxemburg.hpp"

namespace aplab {

namespace {

bool freq_close(const Pt& a, const Pt& b, double tol) {
  if (a.size() != b.size()) return false;
  double d2 = 0;
  for (int i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d2) < tol;
}

double mod_2pi_distance(double x) {
  const double twopi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, twopi);
  if (r < 0) r += twopi;
  return std::min(r, twopi - r);
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<TrigTerm> terms, double merge_tol)
    : merge_tol_(merge_tol) {
  for (const auto& t : terms) add_term(t.freq, t.coeff);
}

void TrigPolynomial::add_term(const Pt& freq, const CVal& coeff) {
  for (auto& t : terms_) {
    if (freq_close(t.freq, freq, merge_tol_)) {
      if (t.coeff.size() != coeff.size()) throw std::invalid_argument("TrigPolynomial: codomain mismatch");
      t.coeff = t.coeff + coeff;
      return;
    }
  }
  terms_.push_back({freq, coeff});
}

double TrigPolynomial::max_freq() const {
  double m = 0;
  for (const auto& t : terms_) m = std::max(m, t.freq.norm2());
  return m;
}

CVal TrigPolynomial::evaluate(const Pt& t) const {
  if (terms_.empty()) return CVal(0.0);
  CVal acc = CVal::zero(terms_.front().coeff.size());
  for (const auto& term : terms_)
    acc = acc + term.coeff * std::exp(complexd(0, 1) * term.freq.dot(t));
  return acc;
}

Field TrigPolynomial::to_field(const Domain& dom) const {
  Field f;
  f.domain = dom;
  f.codim = terms_.empty() ? 1 : terms_.front().coeff.size();
  TrigPolynomial copy = *this;
  f.eval = [copy](const Pt& t, const Pt&) { return copy.evaluate(t); };
  f.osc_freq = max_freq();
  return f;
}

std::string TrigPolynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json item;
    item["freq"] = std::vector<double>(t.freq.v, t.freq.v + t.freq.size());
    std::vector<double> re, im;
    for (int i = 0; i < t.coeff.size(); ++i) {
      re.push_back(t.coeff[i].real());
      im.push_back(t.coeff[i].imag());
    }
    item["re"] = re;
    item["im"] = im;
    arr.push_back(item);
  }
  return arr.dump();
}

TrigPolynomial TrigPolynomial::from_json(const std::string& text) {
  auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("TrigPolynomial: expected a JSON array");
  TrigPolynomial p;
  for (const auto& item : arr) {
    const auto freqs = item.at("freq").get<std::vector<double>>();
    const auto re = item.at("re").get<std::vector<double>>();
    const auto im = item.at("im").get<std::vector<double>>();
    if (re.size() != im.size() || freqs.empty() || re.empty())
      throw std::invalid_argument("TrigPolynomial: malformed term");
    Pt f = Pt::zero(static_cast<int>(freqs.size()));
    for (size_t i = 0; i < freqs.size(); ++i) f[static_cast<int>(i)] = freqs[i];
    CVal c = CVal::zero(static_cast<int>(re.size()));
    for (size_t i = 0; i < re.size(); ++i) c[static_cast<int>(i)] = complexd(re[i], im[i]);
    p.add_term(f, c);
  }
  return p;
}

TrigPolynomial periodic_component(const TrigPolynomial& p, const Pt& a, PeriodicMode mode,
                                  double tol) {
  bool zero_shift = true;
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != 0.0) zero_shift = false;
  if (zero_shift) throw std::invalid_argument("periodic_component: shift must be nonzero");
  TrigPolynomial out;
  for (const auto& term : p.terms()) {
    bool keep;
    if (mode == PeriodicMode::Vector) {
      keep = mod_2pi_distance(term.freq.dot(a)) < tol;
    } else {
      keep = true;
      for (int j = 0; j < a.size(); ++j)
        if (mod_2pi_distance(term.freq[j] * a[j]) >= tol) keep = false;
    }
    if (keep) out.add_term(term.freq, term.coeff);
  }
  return out;
}

namespace {

double mean_norm_factor(const Window& w, MeanNormalization n, double p) {
  switch (n) {
    case MeanNormalization::Volume: return std::pow(2.0 * w.radius, -w.domain.dimension());
    case MeanNormalization::Measure: return 1.0 / w.measure();
    default: return std::pow(w.radius, -static_cast<double>(w.domain.dimension()) / p);
  }
}

}  // namespace

MeanEstimate mean_value(const Field& f, const Pt& lambda, const std::vector<Window>& windows,
                        MeanNormalization normalization, double p, const QuadOptions& quad) {
  MeanEstimate est;
  std::vector<std::pair<double, double>> mods;
  for (const Window& w : windows) {
    QuadOptions o = window_quad_options(f, w, quad);
    o.osc_freq += std::abs(lambda[0]);
    if (o.osc_freq_y >= 0.0 && lambda.size() >= 2) o.osc_freq_y += std::abs(lambda[1]);
    const complexd integral = integrate_window(
        [&](const Pt& t) { return f(t).scalar() * std::exp(complexd(0, -1) * lambda.dot(t)); }, w, o);
    const complexd v = mean_norm_factor(w, normalization, p) * integral;
    est.samples.emplace_back(w.radius, v);
    mods.emplace_back(w.radius, std::abs(v));
  }
  est.value = est.samples.back().second;
  est.modulus = limsup_estimate(mods);
  return est;
}

MeanEstimate mean_over_set(const Field& f, const Field& indicator, double p,
                           const std::vector<Window>& windows, const QuadOptions& quad) {
  Field prod = field_product(f, indicator);
  return mean_value(prod, Pt::zero(f.domain.dimension()), windows, MeanNormalization::PowerLaw, p,
                    quad);
}

double fejer_kernel(int m, double c, double t) {
  if (m < 1 || !(c > 0)) throw std::invalid_argument("fejer_kernel: need m >= 1 and c > 0");
  const double u = std::numbers::pi * t / c;
  const double s = std::sin(u);
  if (std::abs(s) < 1e-8) return static_cast<double>(m);
  const double q = std::sin(m * u) / s;
  return q * q / m;
}

namespace {

// Solve the (small, Hermitian positive semidefinite) normal equations by
// Gaussian elimination with partial pivoting.
std::vector<complexd> solve_dense(std::vector<std::vector<complexd>> a, std::vector<complexd> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    if (std::abs(a[col][col]) < 1e-14) throw std::runtime_error("fit_polynomial: singular normal equations");
    for (int r = col + 1; r < n; ++r) {
      const complexd f = a[r][col] / a[col][col];
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  std::vector<complexd> x(n);
  for (int r = n - 1; r >= 0; --r) {
    complexd s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace

TrigPolynomial fit_polynomial(const Field& f, const std::vector<Pt>& frequencies,
                              const std::vector<Window>& windows, const FitOptions& opts) {
  for (size_t i = 0; i < frequencies.size(); ++i)
    for (size_t j = i + 1; j < frequencies.size(); ++j)
      if (freq_close(frequencies[i], frequencies[j], 1e-9))
        throw std::invalid_argument("fit_polynomial: frequencies must be distinct");

  TrigPolynomial out;
  if (frequencies.empty()) return out;

  std::vector<complexd> coeffs(frequencies.size());
  if (!opts.least_squares) {
    // projection at the largest window; measure normalization coincides with
    // the volume normalization on full-space cube windows and stays correct
    // on strips and orthants
    const Window& w = windows.back();
    QuadOptions o = window_quad_options(f, w, opts.quad);
    for (size_t i = 0; i < frequencies.size(); ++i) {
      const Pt lambda = frequencies[i];
      QuadOptions oi = o;
      oi.osc_freq += std::abs(lambda[0]);
      if (oi.osc_freq_y >= 0.0 && lambda.size() >= 2) oi.osc_freq_y += std::abs(lambda[1]);
      const complexd integral = integrate_window(
          [&](const Pt& t) { return f(t).scalar() * std::exp(complexd(0, -1) * lambda.dot(t)); }, w,
          oi);
      coeffs[i] = integral / w.measure();
    }
  } else {
    const Window& w = windows.back();
    const auto pts = window_sample_points(w, 4096);
    const int m = static_cast<int>(frequencies.size());
    std::vector<std::vector<complexd>> gram(m, std::vector<complexd>(m, 0.0));
    std::vector<complexd> rhs(m, 0.0);
    for (const Pt& t : pts) {
      std::vector<complexd> e(m);
      for (int i = 0; i < m; ++i) e[i] = std::exp(complexd(0, 1) * frequencies[i].dot(t));
      const complexd fv = f(t).scalar();
      for (int i = 0; i < m; ++i) {
        rhs[i] += std::conj(e[i]) * fv;
        for (int j = 0; j < m; ++j) gram[i][j] += std::conj(e[i]) * e[j];
      }
    }
    coeffs = solve_dense(std::move(gram), std::move(rhs));
  }

  for (size_t i = 0; i < frequencies.size(); ++i) {
    complexd c = coeffs[i];
    if (opts.damping && opts.damping_order > 0) {
      double factor = 1.0;
      for (int j = 0; j < frequencies[i].size(); ++j) {
        const double base = opts.damping_base[j];
        if (base == 0.0) continue;
        const double idx = std::abs(std::round(frequencies[i][j] / base));
        factor *= std::max(0.0, 1.0 - idx / opts.damping_order);
      }
      c *= factor;
    }
    out.add_term(frequencies[i], CVal(c));
  }
  return out;
}

SpectrumScan scan_spectrum(const Field& f, const std::vector<Pt>& lattice,
                           const std::vector<Window>& windows, double threshold, int refine_rounds,
                           const QuadOptions& quad) {
  if (!(threshold > 0)) throw std::invalid_argument("scan_spectrum: threshold must be positive");
  SpectrumScan scan;
  scan.threshold = threshold;

  double spacing = kInf;
  for (size_t i = 0; i + 1 < lattice.size(); ++i) {
    const double d = (lattice[i + 1] - lattice[i]).norm2();
    if (d > 0) spacing = std::min(spacing, d);
  }
  if (!std::isfinite(spacing)) spacing = 1.0;

  auto probe = [&](const Pt& freq) {
    auto est = mean_value(f, freq, windows, MeanNormalization::Volume, 1.0, quad);
    scan.probed.push_back({freq, std::abs(est.value)});
    return std::abs(est.value);
  };

  std::vector<std::pair<Pt, double>> peaks;
  for (const Pt& freq : lattice) {
    const double m = probe(freq);
    if (m > threshold) peaks.emplace_back(freq, m);
  }
  double delta = spacing;
  for (int round = 0; round < refine_rounds; ++round) {
    delta *= 0.5;
    for (auto& [freq, mag] : peaks) {
      for (int axis = 0; axis < freq.size(); ++axis) {
        for (double dir : {-1.0, 1.0}) {
          Pt cand = freq;
          cand[axis] += dir * delta;
          const double m = probe(cand);
          if (m > mag) {
            freq = cand;
            mag = m;
          }
        }
      }
    }
  }
  scan.resolution = delta;
  for (const auto& [freq, mag] : peaks) scan.detected.push_back(freq);
  return scan;
}

}  // namespace aplab
