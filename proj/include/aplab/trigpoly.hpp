#ifndef APLAB_TRIGPOLY_HPP
#define APLAB_TRIGPOLY_HPP

#include <string>
#include <vector>

#include "aplab/core.hpp"
#include "aplab/quadrature.hpp"

// Trigonometric polynomials P(t) = sum_l c_l e^{i<lambda_l, t>}, generalized
// mean values / Bohr coefficients over window sweeps, Fejer kernels, spectrum
// scanning and the resonant-frequency projection P^{(a)}.

namespace aplab {

struct TrigTerm {
  Pt freq;     // lambda in R^n
  CVal coeff;  // c in C^d
};

class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<TrigTerm> terms, double merge_tol = 1e-9);

  // Merges with any existing frequency within merge tolerance.
  void add_term(const Pt& freq, const CVal& coeff);

  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int dimension() const { return terms_.empty() ? 0 : terms_.front().freq.size(); }
  double max_freq() const;

  CVal evaluate(const Pt& t) const;
  Field to_field(const Domain& dom) const;

  std::string to_json() const;
  static TrigPolynomial from_json(const std::string& text);

 private:
  std::vector<TrigTerm> terms_;
  double merge_tol_ = 1e-9;
};

enum class PeriodicMode { Vector, PerAxis };

// Keeps the terms resonant with the shift a: e^{i<lambda,a>} = 1 (vector
// mode), or e^{i lambda_j a_j} = 1 for every axis (per-axis mode). Projection:
// applying it twice equals applying it once.
TrigPolynomial periodic_component(const TrigPolynomial& p, const Pt& a,
                                  PeriodicMode mode = PeriodicMode::Vector, double tol = 1e-9);

enum class MeanNormalization { Volume, Measure, PowerLaw };

// Windowed generalized mean of e^{-i<lambda,s>} F(s).
//   Volume:   (2t)^{-n} integral
//   Measure:  m(Lambda_t)^{-1} integral
//   PowerLaw: t^{-n/p} integral (ball windows in the source material)
MeanEstimate mean_value(const Field& f, const Pt& lambda, const std::vector<Window>& windows,
                        MeanNormalization normalization = MeanNormalization::Volume, double p = 1.0,
                        const QuadOptions& quad = {});

// Mean of F over the set E (E an indicator field; nu(E) when F is constant 1),
// with the t^{-n/p} normalization.
MeanEstimate mean_over_set(const Field& f, const Field& indicator, double p,
                           const std::vector<Window>& windows, const QuadOptions& quad = {});

// Fejer kernel K_m(t) = m^{-1} sin^2(m pi t / c) / sin^2(pi t / c) with the
// removable singularities evaluated by their limit m.
double fejer_kernel(int m, double c, double t);

struct FitOptions {
  bool least_squares = false;    // mean-value projection by default
  // Optional Fejer/Bochner damping against a declared base-frequency lattice:
  // coefficient of lambda is scaled by prod_j max(0, 1 - |round(lambda_j/base_j)| / order).
  bool damping = false;
  Pt damping_base;
  int damping_order = 0;
  QuadOptions quad = {};
};

// Bohr-Fourier projection at the largest window (volume normalization), or
// windowed least squares on a deterministic sample grid.
TrigPolynomial fit_polynomial(const Field& f, const std::vector<Pt>& frequencies,
                              const std::vector<Window>& windows, const FitOptions& opts = {});

struct SpectrumScan {
  struct Probe {
    Pt freq;
    double magnitude;
  };
  std::vector<Probe> probed;
  std::vector<Pt> detected;  // |mean| above threshold, subset of probed
  double threshold = 0;
  double resolution = 0;  // finest lattice spacing used
};

// Probes a frequency lattice, then refines around detected peaks.
SpectrumScan scan_spectrum(const Field& f, const std::vector<Pt>& lattice,
                           const std::vector<Window>& windows, double threshold,
                           int refine_rounds = 2, const QuadOptions& quad = {});

}  // namespace aplab

#endif  // APLAB_TRIGPOLY_HPP
