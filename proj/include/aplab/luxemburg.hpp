#ifndef APLAB_LUXEMBURG_HPP
#define APLAB_LUXEMBURG_HPP

#include <functional>
#include <memory>
#include <utility>

#include "aplab/core.hpp"
#include "aplab/quadrature.hpp"

// Variable-exponent Lebesgue machinery: the modular rho(f), the Luxemburg
// norm inf{lambda > 0 : rho(f/lambda) <= 1}, and the product/embedding
// inequalities used everywhere else.

namespace aplab {

// Exponent p : Omega -> [1, inf]. Use kInf for the infinity branch.
class VariableExponent {
 public:
  static VariableExponent constant(double p);
  static VariableExponent function(std::function<double(const Pt&)> p);

  bool is_constant() const { return constant_; }
  double constant_value() const { return p_; }
  double operator()(const Pt& x) const { return constant_ ? p_ : fn_(x); }

  // Sampled essential inf/sup over a window.
  std::pair<double, double> range_on(const Window& w, int samples = 2048) const;

 private:
  bool constant_ = true;
  double p_ = 1.0;
  std::function<double(const Pt&)> fn_;
};

// phi_{p}(t): t^p for finite p; for p = inf, 0 when t <= 1 and +inf when
// t > 1.
double phi_exponent(double p, double t);

// Modular rho(f) = integral over the window of phi_{p(x)}(|f(x)|).
// Returns +inf when the infinity branch fires on a set of positive measure
// or the integral overflows.
double modular(const Field& f, const VariableExponent& p, const Window& w,
               const QuadOptions& opts = {});

struct LuxOptions {
  double tol = 1e-8;           // on |rho - 1| and relative lambda bracket
  QuadOptions quad = {};       // modular quadrature options
  int max_doublings = 60;
};

// Luxemburg norm by bracketed bisection on lambda. Returns 0 when
// rho(f/lambda) <= 1 throughout the shrinking bracket; throws
// std::runtime_error("norm overflow") when no finite lambda tames the
// modular.
double luxemburg_norm(const Field& f, const VariableExponent& p, const Window& w,
                      const LuxOptions& opts = {});

// Reusable modular evaluator: samples |f| and p once per window, then
// re-weights per lambda. Falls back to homogeneity for constant exponents.
class ModularEvaluator {
 public:
  ModularEvaluator(const Field& f, const VariableExponent& p, const Window& w, QuadOptions opts);
  double rho(double lambda) const;

 private:
  double rho_f_ = 0.0;        // constant finite exponent: cached rho(f)
  double p_const_ = 0.0;
  bool constant_ = false;
  double sup_norm_ = 0.0;     // constant infinite exponent
  bool infinite_ = false;
  std::vector<double> w_, fv_, pv_;  // variable exponent: cached samples
  bool sampled_ = false;
  // slow path
  const Field* f_ = nullptr;
  const VariableExponent* p_ = nullptr;
  Window win_;
  QuadOptions opts_;
};

// Lemma-style checks. Each returns (lhs, rhs); the inequality itself is the
// caller's assertion. Preconditions on the exponent identities are validated
// on a deterministic sample grid and raise std::invalid_argument.
std::pair<double, double> holder_product_norm(const Field& u, const Field& v,
                                              const VariableExponent& p, const VariableExponent& r,
                                              const VariableExponent& q, const Window& w,
                                              const LuxOptions& opts = {});

std::pair<double, double> embedding_constant_check(const Field& f, const VariableExponent& p,
                                                   const VariableExponent& q, const Window& w,
                                                   const LuxOptions& opts = {});

// Deterministic sample points inside a window (golden-ratio sequence).
std::vector<Pt> window_sample_points(const Window& w, int count);

}  // namespace aplab

#endif  // APLAB_LUXEMBURG_HPP
