#pragma once

#include "outer/homology.hpp"
#include "outer/lipschitz.hpp"

namespace outer {

struct PsiTerm {
  uint32_t cover = 0;  // functional on the base cycle basis
  uint32_t cls = 0;    // nonzero class upstairs
  Rat length;          // shortest loop length in that class
};

struct PotentialValue {
  double value = 0;             // -(1/(K+1)) sum of log lengths
  long long k = 0;              // number of summands
  std::vector<PsiTerm> terms;   // ordered by (cover, cls)
  std::vector<Rat> sorted_lengths() const;
  LogCombo log_product() const;  // sum of log(length) over all terms
};

PotentialValue psi(const Graph& g, const MetricAssignment& m);
inline PotentialValue psi(const MarkedPoint& x) { return psi(*x.graph, x.metric); }

struct CorrectionTerm {
  uint32_t cover = 0;
  uint32_t cls = 0;
  Rat length;
  Rat tau_max, tau_min;  // extremes of tau over the realizers
  int realizer_count = 0;
  Loop witness;          // realizer attaining tau_max
};

struct CorrectionValue {
  Rat max_value;  // -sum max tau(a)/l(a), max over realizers
  Rat min_value;  // variant with min over realizers
  bool unique_realizers = true;
  // tied realizers can still agree on tau (equal crossing multisets); then
  // the one-sided derivative of every class length is unambiguous
  bool derivative_unambiguous = true;
  std::vector<CorrectionTerm> terms;
};

CorrectionValue correction_n(const Graph& g, const MetricAssignment& m,
                             const TangentVector& t);

struct CorrectedNorm {
  Rat lipschitz;   // |tau|_L
  Rat correction;  // N(l, tau), max-over-realizers form
  Rat value;       // |tau|_L + N/(K+1)
  long long k = 0;
  bool unique_realizers = true;
};

CorrectedNorm corrected_norm(const Graph& g, const MetricAssignment& m,
                             const TangentVector& t);

struct DerivativeStepRow {
  Rat step;
  double quotient = 0;  // (psi(l + t tau) - psi(l)) / t
  double error = 0;     // |quotient - predicted|
};

struct PsiDerivativeReport {
  bool generic = false;  // max tau == min tau over every realizer set
  std::string skip_reason;
  double predicted = 0;  // N(l,tau)/(K+1) = |tau|_N - |tau|_L
  std::vector<DerivativeStepRow> rows;
};

PsiDerivativeReport psi_directional_derivative_check(
    const Graph& g, const MetricAssignment& m, const TangentVector& t,
    const std::vector<Rat>& steps);

}  // namespace outer
