#ifndef APLAB_CORE_HPP
#define APLAB_CORE_HPP

#include <complex>
#include <functional>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Shared geometry and estimation types: evaluation domains, growing window
// families, evaluable fields and the finite-horizon tail estimator that
// stands in for every limit superior taken at t -> +infinity.

namespace aplab {

using complexd = std::complex<double>;

inline constexpr int kMaxDim = 4;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Small fixed-capacity point in R^n (n <= kMaxDim).

struct Pt {
  double v[kMaxDim] = {0, 0, 0, 0};
  int n = 0;

  Pt() = default;
  Pt(std::initializer_list<double> xs) {
    if (static_cast<int>(xs.size()) > kMaxDim) throw std::invalid_argument("Pt: dimension too large");
    for (double x : xs) v[n++] = x;
  }
  static Pt zero(int dim) {
    Pt p;
    p.n = dim;
    return p;
  }
  int size() const { return n; }
  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }

  Pt operator+(const Pt& o) const {
    Pt r = *this;
    for (int i = 0; i < n; ++i) r.v[i] += o.v[i];
    return r;
  }
  Pt operator-(const Pt& o) const {
    Pt r = *this;
    for (int i = 0; i < n; ++i) r.v[i] -= o.v[i];
    return r;
  }
  Pt operator*(double s) const {
    Pt r = *this;
    for (int i = 0; i < n; ++i) r.v[i] *= s;
    return r;
  }
  double dot(const Pt& o) const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += v[i] * o.v[i];
    return s;
  }
  double norm2() const { return std::sqrt(dot(*this)); }
  double norm_inf() const {
    double m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
};

// Norms available on the codomain C^d.
enum class VecNorm { Euclidean, Max };

// Value in C^d, d <= kMaxDim. Most fields are scalar (d = 1).
struct CVal {
  complexd v[kMaxDim];
  int d = 1;

  CVal() { v[0] = 0.0; }
  CVal(complexd z) { v[0] = z; }      // NOLINT: implicit by design
  CVal(double x) { v[0] = x; }        // NOLINT
  static CVal zero(int dim) {
    CVal r;
    r.d = dim;
    for (int i = 0; i < dim; ++i) r.v[i] = 0.0;
    return r;
  }
  int size() const { return d; }
  complexd& operator[](int i) { return v[i]; }
  complexd operator[](int i) const { return v[i]; }
  complexd scalar() const { return v[0]; }

  CVal operator+(const CVal& o) const {
    CVal r = *this;
    for (int i = 0; i < d; ++i) r.v[i] += o.v[i];
    return r;
  }
  CVal operator-(const CVal& o) const {
    CVal r = *this;
    for (int i = 0; i < d; ++i) r.v[i] -= o.v[i];
    return r;
  }
  CVal operator*(complexd s) const {
    CVal r = *this;
    for (int i = 0; i < d; ++i) r.v[i] *= s;
    return r;
  }
  double norm(VecNorm which = VecNorm::Euclidean) const {
    if (which == VecNorm::Euclidean) {
      double s = 0;
      for (int i = 0; i < d; ++i) s += std::norm(v[i]);
      return std::sqrt(s);
    }
    double m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  bool finite() const {
    for (int i = 0; i < d; ++i)
      if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Domain: product of per-axis intervals (ends may be infinite), or a convex
// cone spanned by a basis with nonnegative coordinates.

struct AxisInterval {
  double lo = -kInf;
  double hi = kInf;
};

class Domain {
 public:
  enum class Kind { FullSpace, Orthant, Box, Polyhedral };

  static Domain real_line() { return full_space(1); }
  static Domain full_space(int n);
  // Per-axis intervals; lo may be -inf, hi may be +inf.
  static Domain product(std::vector<AxisInterval> axes);
  static Domain half_line(double lo = 0.0) { return product({{lo, kInf}}); }
  // Cone {a1 v1 + ... + an vn : ai >= 0}; basis must be nonsingular.
  static Domain polyhedral(const std::vector<std::vector<double>>& basis);

  int dimension() const { return n_; }
  Kind kind() const { return kind_; }
  bool contains(const Pt& t, double slack = 1e-12) const;
  const std::vector<AxisInterval>& axes() const;

  // Shift cone Lambda'' = {tau : tau + Lambda subset Lambda}.
  Domain shift_cone() const;

 private:
  int n_ = 1;
  Kind kind_ = Kind::FullSpace;
  std::vector<AxisInterval> axes_;
  std::vector<std::vector<double>> basis_;      // polyhedral only
  std::vector<std::vector<double>> basis_inv_;  // inverse, row major
};

// ---------------------------------------------------------------------------
// Windows Lambda_t: cube [-t,t]^n or ball |s| <= t, intersected with the
// domain.

enum class WindowShape { Cube, Ball };

struct Window {
  Domain domain;
  WindowShape shape = WindowShape::Cube;
  double radius = 0;

  bool contains(const Pt& t) const;
  // Closed-form Lebesgue measure of the intersection. Supported: any cube vs
  // interval-product domain; ball vs interval-product for n <= 2; ball vs
  // full space / zero-cornered orthant for any n.
  double measure() const;
};

std::vector<double> geometric_schedule(double t0, double ratio, int count);

// Throws std::invalid_argument on a degenerate window (zero measure).
std::vector<Window> make_window_sweep(const Domain& domain, WindowShape shape,
                                      const std::vector<double>& schedule);

// ---------------------------------------------------------------------------
// Field: evaluable F : Lambda x B -> C^d with optional integration hints.

struct Field {
  Domain domain = Domain::real_line();
  int codim = 1;
  std::vector<Pt> params;  // finite sample set B; empty when X = {0}
  VecNorm norm_kind = VecNorm::Euclidean;
  std::function<CVal(const Pt& t, const Pt& x)> eval;

  // Integration hints. `breakpoints(a, b, axis, out)` appends discontinuity
  // or kink locations of t_axis within [a, b]; `osc_freq` bounds |d phase/dt|;
  // `feature_scale` bounds the smallest smooth feature width.
  std::function<void(double, double, int, std::vector<double>&)> breakpoints;
  double osc_freq = 0.0;
  double osc_freq_y = -1.0;  // separate second-axis bound when nonnegative
  double feature_scale = 0.0;

  CVal operator()(const Pt& t, const Pt& x = Pt{}) const { return eval(t, x); }
  double value_norm(const Pt& t, const Pt& x = Pt{}) const { return eval(t, x).norm(norm_kind); }

  Field shifted(const Pt& tau) const;
  Field modulated(const Pt& lambda) const;  // e^{i<lambda, t>} F(t)
  Field scaled(complexd c) const;
};

Field scalar_field_1d(std::function<complexd(double)> f);
Field scalar_field(Domain dom, std::function<complexd(const Pt&)> f);
Field constant_field(Domain dom, complexd c);
Field field_difference(const Field& a, const Field& b);
Field field_sum(const Field& a, const Field& b);
Field field_product(const Field& a, const Field& b);

// ---------------------------------------------------------------------------
// LimsupEstimate: tail supremum over a finite window schedule plus a trend
// classification. The estimate never under-cuts a tail sample.

enum class Trend { ConvergingToZero, Bounded, Diverging, Inconclusive };

const char* trend_name(Trend t);

struct LimsupEstimate {
  std::vector<std::pair<double, double>> samples;  // (t_j, value_j), t increasing
  int tail_len = 4;
  double estimate = 0;    // sup over the tail
  double tail_slope = 0;  // least-squares log-log slope over the tail
  Trend trend = Trend::Inconclusive;

  // True when the sweep is numerically headed to zero: either the strict
  // converging-to-zero classification fired, or the tail decreases
  // monotonically with a clearly negative fitted slope.
  bool vanishing() const;
  // 0 for vanishing sweeps, tail supremum otherwise.
  double limit_value() const { return vanishing() ? 0.0 : estimate; }
};

// Requires >= 6 finite samples. Deterministic.
LimsupEstimate limsup_estimate(const std::vector<std::pair<double, double>>& samples,
                               int tail_len = 4);

// Complex-valued window means (Bohr coefficients, set means).
struct MeanEstimate {
  std::vector<std::pair<double, complexd>> samples;
  complexd value = 0;      // sample at the largest window
  LimsupEstimate modulus;  // trend of |samples|
};

// Least-squares slope of log(y) against log(x); ignores nonpositive y by
// clamping at 1e-300.
double loglog_slope(const std::vector<std::pair<double, double>>& xy);

}  // namespace aplab

#endif  // APLAB_CORE_HPP
