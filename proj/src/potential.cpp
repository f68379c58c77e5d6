#include "outer/potential.hpp"

#include <algorithm>

namespace outer {

std::vector<Rat> PotentialValue::sorted_lengths() const {
  std::vector<Rat> out;
  out.reserve(terms.size());
  for (const PsiTerm& t : terms) out.push_back(t.length);
  std::sort(out.begin(), out.end());
  return out;
}

LogCombo PotentialValue::log_product() const {
  LogCombo combo;
  for (const PsiTerm& t : terms) combo.add(t.length, 1);
  return combo;
}

PotentialValue psi(const Graph& g, const MetricAssignment& m) {
  // shared_from-style copy so cover construction owns its base
  auto base = std::make_shared<const Graph>(g);
  PotentialValue out;
  out.k = summand_count(g.rank());
  double log_sum = 0;
  for (const DoubleCover& cover : enumerate_double_covers(base)) {
    ClassLengthEngine engine(*cover.total, cover.lift_values(m.lengths));
    uint32_t nclasses = 1u << cover.total->rank();
    for (uint32_t cls = 1; cls < nclasses; ++cls) {
      Rat len = engine.length(cls);
      if (len <= 0) fail("psi: nonpositive class length");
      log_sum += log_rational(len);
      out.terms.push_back({cover.functional, cls, len});
    }
  }
  if ((long long)out.terms.size() != out.k) fail("psi: summand count mismatch");
  out.value = -log_sum / double(out.k + 1);
  return out;
}

CorrectionValue correction_n(const Graph& g, const MetricAssignment& m,
                             const TangentVector& t) {
  auto base = std::make_shared<const Graph>(g);
  CorrectionValue out;
  RatSum max_sum, min_sum;
  // tangent weights on a common denominator once per base graph
  BigInt tau_den = 1;
  for (const Rat& w : t.weights)
    tau_den = boost::multiprecision::lcm(tau_den,
                                         boost::multiprecision::denominator(w));
  std::vector<BigInt> tau_num;
  for (const Rat& w : t.weights)
    tau_num.push_back(boost::multiprecision::numerator(w) *
                      (tau_den / boost::multiprecision::denominator(w)));

  for (const DoubleCover& cover : enumerate_double_covers(base)) {
    ClassLengthEngine engine(*cover.total, cover.lift_values(m.lengths));
    uint32_t nclasses = 1u << cover.total->rank();
    for (uint32_t cls = 1; cls < nclasses; ++cls) {
      const std::vector<Loop>& reals = engine.realizers(cls);
      CorrectionTerm term;
      term.cover = cover.functional;
      term.cls = cls;
      term.length = engine.length(cls);
      term.realizer_count = (int)reals.size();
      if (reals.size() != 1) out.unique_realizers = false;
      BigInt best_max, best_min;
      bool first = true;
      for (const Loop& r : reals) {
        BigInt v = 0;
        for (HalfId h : r.halves) v += tau_num[half_edge(h) >> 1];
        if (first || v > best_max) {
          best_max = v;
          term.witness = r;
        }
        if (first || v < best_min) best_min = v;
        first = false;
      }
      term.tau_max = Rat(best_max, tau_den);
      term.tau_min = Rat(best_min, tau_den);
      if (best_max != best_min) out.derivative_unambiguous = false;
      const BigInt& len_num = boost::multiprecision::numerator(term.length);
      const BigInt& len_den = boost::multiprecision::denominator(term.length);
      max_sum.add_fraction(-best_max * len_den, tau_den * len_num);
      min_sum.add_fraction(-best_min * len_den, tau_den * len_num);
      out.terms.push_back(std::move(term));
    }
  }
  out.max_value = max_sum.value();
  out.min_value = min_sum.value();
  return out;
}

CorrectedNorm corrected_norm(const Graph& g, const MetricAssignment& m,
                             const TangentVector& t) {
  CorrectedNorm out;
  out.k = summand_count(g.rank());
  out.lipschitz = lipschitz_norm(g, m, t).value;
  CorrectionValue n = correction_n(g, m, t);
  out.correction = n.max_value;
  out.unique_realizers = n.unique_realizers;
  out.value = out.lipschitz + out.correction / Rat(out.k + 1);
  return out;
}

PsiDerivativeReport psi_directional_derivative_check(
    const Graph& g, const MetricAssignment& m, const TangentVector& t,
    const std::vector<Rat>& steps) {
  PsiDerivativeReport report;
  if (!integrable(g, m, t)) {
    report.skip_reason = "direction not integrable";
    return report;
  }
  CorrectionValue n = correction_n(g, m, t);
  if (!n.derivative_unambiguous) {
    report.skip_reason =
        "not generic for this direction: a class has realizers with "
        "different tau values";
    return report;
  }
  report.generic = true;
  long long k = summand_count(g.rank());
  report.predicted = to_double(n.max_value) / double(k + 1);

  PotentialValue at0 = psi(g, m);
  auto horizon = segment_horizon(m, t);
  for (const Rat& step : steps) {
    if (step <= 0) fail("derivative check: nonpositive step");
    if (horizon && step >= *horizon) {
      report.skip_reason = "step leaves the simplex";
      continue;
    }
    PotentialValue at_t = psi(g, metric_plus(m, t, step));
    DerivativeStepRow row;
    row.step = step;
    row.quotient = (at_t.value - at0.value) / to_double(step);
    row.error = std::abs(row.quotient - report.predicted);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace outer
