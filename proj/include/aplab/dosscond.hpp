#ifndef APLAB_DOSSCOND_HPP
#define APLAB_DOSSCOND_HPP

#include <vector>

#include "aplab/seminorm.hpp"
#include "aplab/trigpoly.hpp"

// Besicovitch-Doss conditions: Cesaro shift averages A_k F, the condition-(A)
// residual against an (per-axis-)periodic candidate, modulus truncation, the
// sliding-window condition-(B) functional and the null test for averaged
// trigonometric polynomials.

namespace aplab {

// (1/k) sum_{j=0}^{k-1} F(. + j a). The trig-polynomial overload is exact:
// resonant terms pass through, the rest pick up the closed-form geometric
// factor (e^{ik<l,a>} - 1) / (k (e^{i<l,a>} - 1)).
Field shift_average(const Field& f, const Pt& a, int k);
TrigPolynomial shift_average(const TrigPolynomial& p, const Pt& a, int k);

// Periodization of a general field over the cell spanned by the shift: along
// the direction of `a` (vector mode) or per coordinate (per-axis mode).
Field periodize_vector(const Field& f, const Pt& a);
Field periodize_per_axis(const Field& f, const Pt& a);

// Default condition-(A) candidate for a general field: the deepest shift
// average restricted to the fundamental cell and periodized.
Field condition_A_candidate(const Field& f, const Pt& a, int k_max,
                            PeriodicMode mode = PeriodicMode::Vector);

struct AveragingResult {
  Pt a;
  PeriodicMode mode = PeriodicMode::Vector;
  std::vector<int> ks;
  std::vector<LimsupEstimate> residuals;  // per k, sweep over t
  double k_slope = 0;                     // log-log slope of residual vs k
  Trend k_trend = Trend::Inconclusive;
};

// Residual of the condition-(A) quantity per k. The candidate must be
// periodic for the requested mode (sampled at 1000 points, tolerance 1e-9)
// unless check_candidate is false.
AveragingResult condition_A_residual(const Field& f, const Pt& a, const Field& candidate,
                                     const WeightProfile& profile, const std::vector<int>& ks,
                                     const std::vector<Window>& windows,
                                     PeriodicMode mode = PeriodicMode::Vector,
                                     bool check_candidate = true);

// Exact-polynomial variant: candidate defaults to the resonant projection.
AveragingResult condition_A_residual(const TrigPolynomial& p, const Pt& a,
                                     const WeightProfile& profile, const std::vector<int>& ks,
                                     const std::vector<Window>& windows,
                                     PeriodicMode mode = PeriodicMode::Vector);

// Pointwise modulus clamp F_N = min(|F|, N) e^{i arg F} for scalar fields.
Field truncate_field(const Field& f, double cap);

// Condition-(B) inner functional at a single box size l:
//   F1(l) * limsup_t  Fw(t) || [ int_{y+l Omega} - int_{l Omega} ]
//                              e^{i<lambda,t>} F(t) dt ||_{L^{p(y)}(Lambda_t)}
// with Omega = [0,1]^n.
LimsupEstimate condition_B_functional(const Field& f, const Pt& lambda, double l,
                                      const WindowWeight& f1, const WeightProfile& profile,
                                      const std::vector<Window>& windows);

struct ConditionBReport {
  Pt lambda;
  std::vector<double> ls;
  std::vector<LimsupEstimate> per_l;
  Trend l_trend = Trend::Inconclusive;  // over l of the per-l limit values
};

ConditionBReport condition_B_sweep(const Field& f, const Pt& lambda, const std::vector<double>& ls,
                                   const WindowWeight& f1, const WeightProfile& profile,
                                   const std::vector<Window>& windows);

// Checks whether deep shift averages of a trigonometric polynomial vanish for
// every probe shift with all-nonzero coordinates; a nonzero polynomial must
// have some resonant probe, so "forces zero" together with a nonzero field
// reports a contradiction.
struct NullTestReport {
  bool forces_zero = false;
  bool field_nonzero = false;
  bool contradiction = false;
  double max_average = 0;  // sup over probes and grid points at k = k_max
  std::vector<std::pair<Pt, double>> per_shift;
};

NullTestReport bohr_average_null_test(const TrigPolynomial& p, const std::vector<Pt>& a_grid,
                                      int k_max, double tol = 1e-6);

}  // namespace aplab

#endif  // APLAB_DOSSCOND_HPP
