#ifndef APLAB_OPERATORS_HPP
#define APLAB_OPERATORS_HPP

#include <string>
#include <vector>

#include "aplab/core.hpp"
#include "aplab/quadrature.hpp"

// Solution operators: the one-sided infinite convolution, the two-sided
// Green's-function solution, the Gaussian semigroup, the nonautonomous heat
// evolution kernel, and the Picard fixed point for the semilinear desk
// instance. Tail truncation radii come from declared kernel envelopes.

namespace aplab {

struct KernelSpec {
  enum class Form { Algebraic, Exponential, Explicit };
  Form form = Form::Exponential;
  double M = 1.0;     // envelope scale
  double beta = 1.0;  // t^{beta-1} factor, beta in (0,1]
  double gamma = 2.0; // algebraic decay exponent, > 1
  double c = 1.0;     // exponential rate, > 0
  std::function<complexd(double)> evaluator;  // Explicit form only
  std::function<double(double)> envelope;     // Explicit form only

  static KernelSpec algebraic(double M, double beta, double gamma);
  static KernelSpec exponential(double M, double c, double beta = 1.0);
  // envelope must dominate |evaluator| (checked at 1000 sample points).
  static KernelSpec explicit_kernel(std::function<complexd(double)> eval,
                                    std::function<double(double)> envelope);

  complexd value(double t) const;
  double envelope_at(double t) const;
  // T with integral_T^inf envelope < eps * integral_0^inf envelope.
  double tail_cutoff(double eps = 1e-8) const;
  double envelope_mass() const;  // integral_0^inf of the envelope
};

struct GreenSpec {
  std::function<complexd(double t, double s)> evaluator;
  double M = 1.0;
  double omega = 1.0;  // |Gamma(t,s)| <= M e^{-omega |t-s|}, checked on samples

  static GreenSpec exponential(std::function<complexd(double, double)> eval, double M, double omega);
};

struct ConvHypothesisReport {
  bool alpha_p_ge_1 = false;
  bool a_p_ge_1 = false;
  bool singularity_ok = false;  // alpha p (beta-1)/(alpha p - 1) > -1, or beta = 1 at alpha p = 1
  bool all_pass = false;
  double zeta_lo = 0;  // admissible zeta interval (1/(alpha p), 1/(alpha p) + gamma - beta)
  double zeta_hi = 0;
  std::string detail;
};

ConvHypothesisReport hypothesis_check_conv(const KernelSpec& spec, double a, double alpha, double p);

struct GrowthBound {
  double scale = 0;  // M with ||f(t)|| <= M (1+|t|)^order
  double order = 0;
};

// F(t) = integral_{-infty}^t R(t-s) f(s) ds, tail-truncated by the envelope.
// Fails unless the hypothesis report passes or `override_hypotheses` is set.
complexd infinite_convolution(const KernelSpec& spec, const Field& f, double t,
                              const GrowthBound& growth = {1.0, 0.0}, double tail_eps = 1e-8,
                              bool override_hypotheses = false, double a = 1.0, double alpha = 1.0,
                              double p = 1.0);

// Field wrapper around the same integral.
Field infinite_convolution_field(const KernelSpec& spec, const Field& f,
                                 const GrowthBound& growth = {1.0, 0.0}, double tail_eps = 1e-8);

// u(t) = integral_R Gamma(t,s) f(s) ds with exponential tail truncation.
complexd green_solution(const GreenSpec& spec, const Field& f, double t, double tail_eps = 1e-10);

// (G(t0)F)(x) = (4 pi t0)^{-n/2} integral e^{-|y|^2/(4 t0)} F(x - y) dy.
complexd gaussian_semigroup(const Field& f, double t0, const Pt& x,
                            const GrowthBound& growth = {1.0, 0.0}, double tail_eps = 1e-10);
Field gaussian_semigroup_field(const Field& f, double t0, const GrowthBound& growth = {1.0, 0.0});

// Two-parameter heat evolution: Gaussian at time t-s scaled by
// e^{integral_s^t a(tau) dtau}.
complexd heat_evolution(const Field& f, const std::function<double(double)>& coeff, double t,
                        double s, const Pt& u, const GrowthBound& growth = {1.0, 0.0});

// Uniform-grid field with linear interpolation, clamped at the ends.
struct GridField {
  double lo = 0, hi = 0, step = 0;
  std::vector<complexd> values;

  complexd at(double t) const;
  Field to_field(const Domain& dom) const;
};

struct FixedPointResult {
  GridField iterate;
  std::vector<double> residual_history;  // sup-grid change per iteration
  double contraction_estimate = 0;       // declared a_G * integral ||R||
  int iterations = 0;
  bool converged = false;
};

// Picard iteration for u(t) = integral_{-infty}^t R(t-s) G(s; u(s)) ds on a
// grid-backed window. Refuses when the declared contraction constant is >= 1;
// throws on non-convergence within max_iter.
FixedPointResult semilinear_fixed_point(const KernelSpec& spec,
                                        const std::function<complexd(double, complexd)>& g,
                                        double lipschitz, double grid_lo, double grid_hi,
                                        double grid_step, double tol = 1e-10, int max_iter = 50);

}  // namespace aplab

#endif  // APLAB_OPERATORS_HPP
