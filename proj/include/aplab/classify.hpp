#ifndef APLAB_CLASSIFY_HPP
#define APLAB_CLASSIFY_HPP

#include <string>
#include <vector>

#include "aplab/seminorm.hpp"
#include "aplab/trigpoly.hpp"

// Class-membership engines: approximation-by-polynomials certification,
// shift-difference (Doss) residuals and almost-period search, continuity in
// the Besicovitch residual, normality over shift-sequence collections, and
// the superposition (Nemytskii) composition.

namespace aplab {

enum class ClassVerdict { MemberEvidence, NonMemberEvidence, Inconclusive };
const char* class_verdict_name(ClassVerdict v);

struct ClassifyOptions {
  double epsilon_class = 1e-2;  // relative to the zero-polynomial residual
  double decrease_factor = 1.5;
  FitOptions fit;
};

struct ClassReport {
  ClassVerdict verdict = ClassVerdict::Inconclusive;
  std::vector<int> budgets;
  std::vector<double> residual_limits;  // per budget; 0 when the t-sweep vanishes
  std::vector<double> residual_tails;   // raw tail suprema
  std::vector<double> residual_slopes;  // fitted t-slopes
  std::vector<TrigPolynomial> witnesses;
  double scale = 0;  // zero-polynomial residual, the comparison scale

  std::string to_json() const;
};

// For k = 1..budget fits the best-k-frequency polynomial (largest |mean|
// first, from the given source frequencies; an empty source keeps every
// witness at zero) and sweeps the weighted residual.
ClassReport classify_besicovitch(const Field& f, const WeightProfile& profile, int budget,
                                 const std::vector<Pt>& freq_source,
                                 const std::vector<Window>& windows,
                                 const ClassifyOptions& opts = {});

// Shift-difference residual sweep; tau must lie in the domain's shift cone.
LimsupEstimate doss_residual(const Field& f, const Pt& tau, const WeightProfile& profile,
                             const std::vector<Window>& windows);

struct AlmostPeriodReport {
  std::vector<double> periods;    // grid multiples with residual < eps
  std::vector<double> residuals;  // residual at every probed grid point
  double relative_density = kInf; // max gap between consecutive hits
  bool any = false;
};

// Scans tau = h, 2h, ..., L along `direction` (unit-scaled) for eps-almost
// periods. Requires L >= 10 h.
AlmostPeriodReport almost_period_search(const Field& f, double eps, const WeightProfile& profile,
                                        const Pt& direction, double search_length, double grid_step,
                                        const std::vector<Window>& windows);

struct ContinuityReport {
  std::vector<double> taus;
  std::vector<LimsupEstimate> residuals;
  Trend trend = Trend::Inconclusive;  // over the shrinking tau schedule
};

// Doss residual along a decreasing tau schedule (values scale `direction`).
ContinuityReport besicovitch_continuity(const Field& f, const WeightProfile& profile,
                                        const Pt& direction, const std::vector<double>& tau_schedule,
                                        const std::vector<Window>& windows);

struct ShiftSequenceSet {
  std::vector<std::vector<Pt>> sequences;  // finite truncations, length >= 8
  bool closed_under_subsequence = true;
};

struct SequenceNormality {
  std::vector<std::vector<double>> matrix;  // pairwise residual limits
  std::vector<int> chain;                   // extracted subsequence indices
  double eps_achieved = kInf;
  bool ok = false;
};

struct NormalityReport {
  bool normal_evidence = false;
  std::vector<SequenceNormality> per_sequence;
};

// Builds the pairwise shifted-copy residual matrix per sequence and greedily
// extracts a pairwise-small chain per ladder epsilon; normal evidence means
// every sequence admits a chain of length >= K/2 at the smallest epsilon.
NormalityReport normality_check(const Field& f, const ShiftSequenceSet& collection,
                                const WeightProfile& profile, const std::vector<double>& eps_ladder,
                                const std::vector<Window>& windows);

// Superposition operator G(t; y) with optional declared Holder modulus
// ||G(t,y) - G(t,y')|| <= lipschitz * ||y - y'||^holder_alpha and declared
// second-argument radius.
struct SuperpositionOperator {
  std::function<CVal(const Pt& t, const CVal& y)> eval;
  double lipschitz = 0;
  double holder_alpha = 1.0;
  double y_radius = kInf;
};

// W(t; x) = G(t; F(t; x)); the field range is sampled against the declared
// radius.
Field nemytskii(const Field& f, const SuperpositionOperator& g, double probe_radius = 64.0);

}  // namespace aplab

#endif  // APLAB_CLASSIFY_HPP
