#ifndef APLAB_SEMINORM_HPP
#define APLAB_SEMINORM_HPP

#include <string>

#include "aplab/core.hpp"
#include "aplab/luxemburg.hpp"

// Window-averaged seminorms and the weighted residual functional
// F(t) * sup_{x in B} | phi(||F - G||) |_{L^{p(.)}(Lambda_t)} whose limsup
// drives every class verdict.

namespace aplab {

// Gauge phi : [0,inf) -> [0,inf). Built-ins: identity and x^alpha.
struct GaugePhi {
  enum class Kind { Identity, Power, Custom };
  Kind kind = Kind::Identity;
  double alpha = 1.0;
  std::function<double(double)> fn;

  static GaugePhi identity() { return {}; }
  static GaugePhi power(double alpha);
  static GaugePhi custom(std::function<double(double)> f);

  double operator()(double x) const;
  // companion multiplier with phi(x*y) <= phi(x) * companion(y)
  double companion(double y) const;
  std::string describe() const;
};

// Window weight F : (0,inf) -> (0,inf). Built-in: t^{-beta}.
struct WindowWeight {
  enum class Kind { PowerDecay, Custom };
  Kind kind = Kind::PowerDecay;
  double beta = 1.0;
  std::function<double(double)> fn;

  static WindowWeight power_decay(double beta);
  // t^{-n/p} for constant exponent p on an n-dimensional domain
  static WindowWeight besicovitch(int n, double p) { return power_decay(static_cast<double>(n) / p); }
  static WindowWeight custom(std::function<double(double)> f);

  double operator()(double t) const;
  std::string describe() const;
};

struct WeightProfile {
  GaugePhi phi;
  WindowWeight weight;
  VariableExponent p = VariableExponent::constant(1.0);
  LuxOptions lux = {};

  struct Validation {
    bool cond_I = false;    // phi monotone, continuous at 0, constant exponent
    bool cond_II = false;   // quasi-subadditive with c <= 1 and finite D
    bool cond_III = false;  // weight growth conditions over the probed windows
    double quasi_c = 0;     // smallest grid c with phi(x+y) <= c[phi(x)+phi(y)]
    double companion_D = 0; // sup_m m * companion(1/m)
  };
  // Probes the conditions on a sample grid and the supplied window sweep.
  Validation validate(const std::vector<Window>& windows) const;
};

struct SeminormReport {
  LimsupEstimate estimate;
  WindowShape shape = WindowShape::Cube;
  std::string profile;  // human-readable description of weights used
};

enum class Normalization { Volume, Measure };

// Classical Besicovitch seminorm sweep:
// per window ((norm factor) * int ||F||^p)^{1/p}, where the factor is
// (2t)^{-n} for Volume and the measure of Lambda_t for Measure (these agree
// on full-space cube windows). Throws on non-finite quadrature.
SeminormReport m_p_seminorm(const Field& f, double p, const std::vector<Window>& windows,
                            Normalization normalization = Normalization::Measure,
                            const QuadOptions& quad = {});

// Weighted residual sweep between two fields sharing domain and parameters.
SeminormReport weighted_residual(const Field& f, const Field& g, const WeightProfile& profile,
                                 const std::vector<Window>& windows);

enum class BoundedVerdict { Bounded, Unbounded, Inconclusive };
const char* bounded_verdict_name(BoundedVerdict v);

struct BoundednessReport {
  BoundedVerdict verdict = BoundedVerdict::Inconclusive;
  double bound = 0;  // M_B when verdict == Bounded
  SeminormReport sweep;
};

BoundednessReport besicovitch_bounded(const Field& f, const WeightProfile& profile,
                                      const std::vector<Window>& windows);

// Pseudometric d_B(F, G); requires both fields Besicovitch-bounded under the
// profile, otherwise throws std::invalid_argument("outside pseudometric space").
double pseudometric_d(const Field& f, const Field& g, const WeightProfile& profile,
                      const std::vector<Window>& windows);

}  // namespace aplab

#endif  // APLAB_SEMINORM_HPP
