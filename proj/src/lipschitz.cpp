#include "outer/lipschitz.hpp"

namespace outer {

StretchReport stretch(const MarkedPoint& x, const MarkedPoint& y,
                      const GraphMap& phi) {
  if (!phi.src().same_structure(*x.graph) ||
      !phi.dst().same_structure(*y.graph))
    fail("stretch: map does not run between the two graphs");
  if (!phi.h1_iso()) fail("stretch: map is not a Z2 homology isomorphism");
  if (!(phi.h1().times(x.marking_in.h1()) == y.marking_in.h1()))
    fail("stretch: map is not a difference of markings on Z2 homology");

  StretchReport report;
  bool first = true;
  for (const Candidate& c : enumerate_candidates(*x.graph)) {
    Rat source_len = path_weight(x.metric.lengths, c.loop.halves);
    Loop image = apply_map(phi, c.loop);
    Rat image_len = path_weight(y.metric.lengths, image.halves);
    if (source_len == 0 || image.trivial())
      fail("stretch: degenerate candidate image");
    Rat ratio = image_len / source_len;
    report.ratios.push_back({c, ratio});
    if (first || ratio > report.value) {
      report.value = ratio;
      report.witness = c;
      first = false;
    }
  }
  return report;
}

SlopeReport max_slope(const GraphMap& phi, const MetricAssignment& src_metric,
                      const MetricAssignment& dst_metric) {
  SlopeReport report;
  bool first = true;
  for (EdgeId e = 0; e < phi.src().num_edges(); ++e) {
    Rat len = src_metric.lengths[e];
    Rat image_len = path_weight(dst_metric.lengths, phi.half_image(2 * e));
    if (len == 0) {
      if (image_len > 0) {
        report.finite = false;
        report.witness = e;
        return report;
      }
      continue;  // zero-length edge with zero-length image carries no slope
    }
    Rat slope = image_len / len;
    if (first || slope > report.value) {
      report.value = slope;
      report.witness = e;
      first = false;
    }
  }
  if (first) fail("max_slope: no positive-length edges");
  return report;
}

NormReport lipschitz_norm(const Graph& g, const MetricAssignment& m,
                          const TangentVector& t) {
  NormReport report;
  bool first = true;
  for (const Candidate& c : enumerate_candidates(g)) {
    Rat len = path_weight(m.lengths, c.loop.halves);
    if (len == 0) fail("norm: candidate of zero length");
    Rat ratio = path_weight(t.weights, c.loop.halves) / len;
    report.ratios.push_back({c, ratio});
    if (first || ratio > report.value) {
      report.value = ratio;
      report.witness = c;
      first = false;
    }
  }
  return report;
}

ConeDecomposition cone_decomposition(const Graph& g,
                                     const MetricAssignment& m) {
  std::vector<Candidate> cands = enumerate_candidates(g);
  std::vector<std::vector<int>> cross;
  std::vector<Rat> len;
  for (const Candidate& c : cands) {
    cross.push_back(edge_crossings(g, c.loop.halves));
    len.push_back(path_weight(m.lengths, c.loop.halves));
  }

  ConeDecomposition dec;
  for (size_t i = 0; i < cands.size(); ++i) {
    ConeCell cell{cands[i], {}};
    for (size_t j = 0; j < cands.size(); ++j) {
      if (j == i) continue;
      //  tau(a_i)/l(a_i) - tau(b_j)/l(b_j) >= 0
      std::vector<Rat> coeff(g.num_edges());
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        coeff[e] = Rat(cross[i][e]) / len[i] - Rat(cross[j][e]) / len[j];
      cell.inequalities.push_back(std::move(coeff));
    }
    // integrability at the zero-length edges
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (m.lengths[e] == 0) {
        std::vector<Rat> coeff(g.num_edges(), Rat(0));
        coeff[e] = 1;
        cell.inequalities.push_back(std::move(coeff));
      }
    }
    dec.cells.push_back(std::move(cell));
  }
  return dec;
}

bool cone_contains(const ConeCell& cell, const TangentVector& t) {
  for (const auto& coeff : cell.inequalities) {
    Rat s = 0;
    for (size_t e = 0; e < coeff.size(); ++e) s += coeff[e] * t.weights[e];
    if (s < 0) return false;
  }
  return true;
}

DerivativeProbe directional_derivative_distance(const Graph& g,
                                                const MetricAssignment& m,
                                                const TangentVector& t,
                                                const Rat& step) {
  if (step <= 0) fail("derivative probe needs a positive step");
  if (!integrable(g, m, t)) fail("derivative probe: direction not integrable");
  auto horizon = segment_horizon(m, t);
  if (horizon && step >= *horizon)
    fail("derivative probe: step leaves the simplex");

  MetricAssignment moved = metric_plus(m, t, step);
  NormReport norm = lipschitz_norm(g, m, t);
  Rat best;
  bool first = true;
  for (const Candidate& c : enumerate_candidates(g)) {
    Rat ratio = path_weight(moved.lengths, c.loop.halves) /
                path_weight(m.lengths, c.loop.halves);
    if (first || ratio > best) {
      best = ratio;
      first = false;
    }
  }
  DerivativeProbe probe;
  probe.stretch_value = best;
  probe.quotient = log_rational(best) / to_double(step);
  probe.exact_identity = (best == 1 + step * norm.value);
  return probe;
}

}  // namespace outer
