#pragma once

#include "outer/candidates.hpp"
#include "outer/marked_point.hpp"

namespace outer {

struct RatioRow {
  Candidate candidate;
  Rat ratio;
};

struct StretchReport {
  Rat value;          // max over candidates of l'(phi(a)) / l(a)
  Candidate witness;  // lexicographically least maximizer
  std::vector<RatioRow> ratios;
  double log_value() const { return log_rational(value); }
};

// phi must be a difference of markings from x to y; checked on Z2 homology
StretchReport stretch(const MarkedPoint& x, const MarkedPoint& y,
                      const GraphMap& phi);

struct SlopeReport {
  bool finite = true;
  Rat value;       // max over edges of l'(phi(e)) / l(e)
  EdgeId witness = -1;
};
SlopeReport max_slope(const GraphMap& phi, const MetricAssignment& src_metric,
                      const MetricAssignment& dst_metric);

struct NormReport {
  Rat value;  // sup over loops of tau(a) / l(a), attained on a candidate
  Candidate witness;
  std::vector<RatioRow> ratios;
};
NormReport lipschitz_norm(const Graph& g, const MetricAssignment& m,
                          const TangentVector& t);

// Cell of directions maximized by one candidate: closed convex cone cut out
// by the listed inequalities  sum_e coeff[e] * tau(e) >= 0.
struct ConeCell {
  Candidate candidate;
  std::vector<std::vector<Rat>> inequalities;
};
struct ConeDecomposition {
  std::vector<ConeCell> cells;
};
ConeDecomposition cone_decomposition(const Graph& g, const MetricAssignment& m);
bool cone_contains(const ConeCell& cell, const TangentVector& t);

struct DerivativeProbe {
  Rat stretch_value;    // exact stretch of l -> l + step * tau
  double quotient;      // log(stretch) / step
  bool exact_identity;  // stretch == 1 + step * |tau|_L
};
DerivativeProbe directional_derivative_distance(const Graph& g,
                                                const MetricAssignment& m,
                                                const TangentVector& t,
                                                const Rat& step);

}  // namespace outer
