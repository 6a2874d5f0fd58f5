#include "aplab/classify.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace aplab {

const char* class_verdict_name(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::MemberEvidence: return "member-evidence";
    case ClassVerdict::NonMemberEvidence: return "non-member-evidence";
    default: return "inconclusive";
  }
}

std::string ClassReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = class_verdict_name(verdict);
  j["scale"] = scale;
  j["budgets"] = budgets;
  j["residual_limits"] = residual_limits;
  j["residual_tails"] = residual_tails;
  j["residual_slopes"] = residual_slopes;
  nlohmann::json w = nlohmann::json::array();
  for (const auto& poly : witnesses) w.push_back(nlohmann::json::parse(poly.to_json()));
  j["witnesses"] = w;
  return j.dump(2);
}

ClassReport classify_besicovitch(const Field& f, const WeightProfile& profile, int budget,
                                 const std::vector<Pt>& freq_source,
                                 const std::vector<Window>& windows, const ClassifyOptions& opts) {
  if (budget < 1) throw std::invalid_argument("classify_besicovitch: budget must be >= 1");
  ClassReport rep;

  Field zero = constant_field(f.domain, 0.0);
  zero.params = f.params;
  const auto zero_sweep = weighted_residual(f, zero, profile, windows).estimate;
  rep.scale = zero_sweep.estimate;
  const double scale_ref = std::max(rep.scale, 1e-12);

  // Fit every candidate coefficient once, then rank by magnitude.
  TrigPolynomial fitted = fit_polynomial(f, freq_source, windows, opts.fit);
  std::vector<TrigTerm> ranked = fitted.terms();
  std::sort(ranked.begin(), ranked.end(),
            [](const TrigTerm& a, const TrigTerm& b) { return a.coeff.norm() > b.coeff.norm(); });

  for (int k = 1; k <= budget; ++k) {
    TrigPolynomial pk;
    for (int i = 0; i < std::min<int>(k, static_cast<int>(ranked.size())); ++i)
      pk.add_term(ranked[i].freq, ranked[i].coeff);
    const LimsupEstimate sweep =
        pk.empty() ? zero_sweep
                   : weighted_residual(f, pk.to_field(f.domain), profile, windows).estimate;
    if (!std::isfinite(sweep.estimate))
      throw std::runtime_error("classify_besicovitch: non-finite residual (singular field)");
    rep.budgets.push_back(k);
    rep.residual_limits.push_back(sweep.limit_value());
    rep.residual_tails.push_back(sweep.estimate);
    rep.residual_slopes.push_back(sweep.tail_slope);
    rep.witnesses.push_back(pk);
  }

  const double final_limit = rep.residual_limits.back();
  const double first_limit = rep.residual_limits.front();
  const bool small = final_limit <= std::max(opts.epsilon_class * scale_ref, 1e-12);
  const bool decreased = first_limit >= opts.decrease_factor * final_limit;
  if (small && decreased) {
    rep.verdict = ClassVerdict::MemberEvidence;
  } else if (final_limit >= 0.2 * scale_ref && final_limit * opts.decrease_factor >= first_limit) {
    rep.verdict = ClassVerdict::NonMemberEvidence;
  } else {
    rep.verdict = ClassVerdict::Inconclusive;
  }
  return rep;
}

LimsupEstimate doss_residual(const Field& f, const Pt& tau, const WeightProfile& profile,
                             const std::vector<Window>& windows) {
  if (!f.domain.shift_cone().contains(tau))
    throw std::invalid_argument("doss_residual: tau outside the shift cone");
  return weighted_residual(f.shifted(tau), f, profile, windows).estimate;
}

AlmostPeriodReport almost_period_search(const Field& f, double eps, const WeightProfile& profile,
                                        const Pt& direction, double search_length, double grid_step,
                                        const std::vector<Window>& windows) {
  if (!(grid_step > 0) || search_length < 10.0 * grid_step)
    throw std::invalid_argument("almost_period_search: need h > 0 and L >= 10 h");
  const double dn = direction.norm2();
  if (!(dn > 0)) throw std::invalid_argument("almost_period_search: zero direction");
  Pt unit = direction * (1.0 / dn);

  AlmostPeriodReport rep;
  double prev_hit = 0.0;
  double max_gap = 0.0;
  for (double s = grid_step; s <= search_length + 1e-12; s += grid_step) {
    const double r = doss_residual(f, unit * s, profile, windows).estimate;
    rep.residuals.push_back(r);
    if (r < eps) {
      rep.periods.push_back(s);
      max_gap = std::max(max_gap, s - prev_hit);
      prev_hit = s;
      rep.any = true;
    }
  }
  if (rep.any) {
    max_gap = std::max(max_gap, search_length - prev_hit);
    rep.relative_density = max_gap;
  }
  return rep;
}

ContinuityReport besicovitch_continuity(const Field& f, const WeightProfile& profile,
                                        const Pt& direction, const std::vector<double>& tau_schedule,
                                        const std::vector<Window>& windows) {
  for (size_t i = 1; i < tau_schedule.size(); ++i)
    if (!(tau_schedule[i] < tau_schedule[i - 1]))
      throw std::invalid_argument("besicovitch_continuity: tau schedule must decrease");
  ContinuityReport rep;
  std::vector<std::pair<double, double>> against_index;
  for (size_t i = 0; i < tau_schedule.size(); ++i) {
    const double tau = tau_schedule[i];
    rep.taus.push_back(tau);
    rep.residuals.push_back(doss_residual(f, direction * tau, profile, windows));
    // index by 1/tau so that "tau -> 0" reads as "index -> infinity"
    against_index.emplace_back(1.0 / tau, rep.residuals.back().limit_value() > 0
                                              ? rep.residuals.back().limit_value()
                                              : rep.residuals.back().estimate);
  }
  rep.trend = against_index.size() >= 6
                  ? limsup_estimate(against_index).trend
                  : (loglog_slope(against_index) < -0.1 ? Trend::ConvergingToZero : Trend::Bounded);
  return rep;
}

NormalityReport normality_check(const Field& f, const ShiftSequenceSet& collection,
                                const WeightProfile& profile, const std::vector<double>& eps_ladder,
                                const std::vector<Window>& windows) {
  if (eps_ladder.empty()) throw std::invalid_argument("normality_check: empty epsilon ladder");
  std::vector<double> ladder = eps_ladder;
  std::sort(ladder.begin(), ladder.end(), std::greater<double>());

  NormalityReport rep;
  rep.normal_evidence = true;
  const Domain cone = f.domain.shift_cone();
  for (const auto& seq : collection.sequences) {
    const int K = static_cast<int>(seq.size());
    if (K < 8) throw std::invalid_argument("normality_check: sequences must have length >= 8");
    for (const Pt& b : seq)
      if (!cone.contains(b)) throw std::invalid_argument("normality_check: shift outside the cone");

    SequenceNormality sn;
    sn.matrix.assign(K, std::vector<double>(K, 0.0));
    for (int i = 0; i < K; ++i)
      for (int j = i + 1; j < K; ++j) {
        const auto est = weighted_residual(f.shifted(seq[i]), f.shifted(seq[j]), profile, windows).estimate;
        sn.matrix[i][j] = sn.matrix[j][i] = est.limit_value() > 0 ? est.limit_value() : est.estimate;
      }

    for (double eps : ladder) {
      std::vector<int> chain;
      for (int i = 0; i < K; ++i) {
        bool compatible = true;
        for (int c : chain)
          if (sn.matrix[i][c] >= eps) compatible = false;
        if (compatible) chain.push_back(i);
      }
      if (static_cast<int>(chain.size()) * 2 >= K) {
        sn.chain = chain;
        sn.eps_achieved = eps;
        sn.ok = true;
      } else {
        break;  // ladder is sorted descending; smaller eps cannot succeed
      }
    }
    sn.ok = sn.ok && sn.eps_achieved <= ladder.back() + 1e-300;
    rep.normal_evidence = rep.normal_evidence && sn.ok;
    rep.per_sequence.push_back(std::move(sn));
  }
  return rep;
}

Field nemytskii(const Field& f, const SuperpositionOperator& g, double probe_radius) {
  if (std::isfinite(g.y_radius)) {
    Window probe{f.domain, WindowShape::Cube, probe_radius};
    for (const Pt& t : window_sample_points(probe, 512)) {
      const std::vector<Pt>& xs = f.params.empty() ? std::vector<Pt>{Pt{}} : f.params;
      for (const Pt& x : xs)
        if (f(t, x).norm(f.norm_kind) > g.y_radius)
          throw std::invalid_argument("nemytskii: field range escapes the declared radius");
    }
  }
  Field r = f;
  auto base = f.eval;
  auto op = g.eval;
  r.eval = [base, op](const Pt& t, const Pt& x) { return op(t, base(t, x)); };
  return r;
}

}  // namespace aplab
