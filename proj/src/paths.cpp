#include "outer/paths.hpp"

#include <algorithm>

namespace outer {

MetricAssignment segment_end_metric(const Segment& s) {
  return metric_plus(s.start.metric, s.dir, s.duration);
}

MarkedPoint segment_end_point(const Segment& s) {
  return with_metric(s.start, segment_end_metric(s));
}

MarkedPoint path_start(const PLPath& p) {
  if (p.segments.empty()) fail("empty path");
  return p.segments.front().start;
}

MarkedPoint path_end(const PLPath& p) {
  if (p.segments.empty()) fail("empty path");
  return segment_end_point(p.segments.back());
}

void validate_pl_path(const PLPath& p) {
  if (p.segments.empty()) fail("path needs at least one segment");
  if (p.gaps.size() + 1 != p.segments.size())
    fail("path: gap count must be segment count minus one");
  for (const Segment& s : p.segments) {
    validate_point(s.start);
    validate_tangent(*s.start.graph, s.dir);
    if (s.duration < 0) fail("path: negative duration");
    MetricAssignment end = segment_end_metric(s);
    for (const Rat& l : end.lengths)
      if (l < 0) fail("path: segment leaves the simplex");
    if (!zero_set_is_forest(*s.start.graph, end.lengths))
      fail("path: segment ends outside the simplex closure");
    if (!integrable(*s.start.graph, s.start.metric, s.dir))
      fail("path: direction not integrable at segment start");
  }
  for (size_t i = 0; i + 1 < p.segments.size(); ++i) {
    const MarkedPoint prev_end = segment_end_point(p.segments[i]);
    const MarkedPoint& next = p.segments[i + 1].start;
    if (!p.gaps[i]) {
      if (!prev_end.graph->same_structure(*next.graph) ||
          prev_end.metric.lengths != next.metric.lengths)
        fail("path: consecutive segments disagree");
      continue;
    }
    const Transition& tr = *p.gaps[i];
    const MarkedPoint& fine = tr.collapsing ? prev_end : next;
    const MarkedPoint& coarse = tr.collapsing ? next : prev_end;
    if (!tr.fc.fine->same_structure(*fine.graph) ||
        !tr.fc.coarse->same_structure(*coarse.graph))
      fail("path: transition graphs disagree");
    if (tr.fc.push_metric(fine.metric).lengths != coarse.metric.lengths)
      fail("path: transition does not identify the endpoint metrics");
    if (!(compose(tr.fc.projection, fine.marking_in).h1() ==
          coarse.marking_in.h1()))
      fail("path: transition does not respect markings on Z2 homology");
  }
}

PLPath single_segment_path(const MarkedPoint& from, const MetricAssignment& to) {
  validate_metric(*from.graph, to);
  PLPath p;
  p.segments.push_back(
      Segment{from, tangent_between(from.metric, to), Rat(1)});
  validate_pl_path(p);
  return p;
}

PLPath reverse_pl_path(const PLPath& p) {
  PLPath out;
  for (size_t i = p.segments.size(); i-- > 0;) {
    const Segment& s = p.segments[i];
    out.segments.push_back(
        Segment{segment_end_point(s), negated(s.dir), s.duration});
  }
  for (size_t i = p.gaps.size(); i-- > 0;) {
    if (!p.gaps[i]) {
      out.gaps.push_back(std::nullopt);
    } else {
      Transition t = *p.gaps[i];
      t.collapsing = !t.collapsing;
      out.gaps.push_back(std::move(t));
    }
  }
  return out;
}

PLPath concat_paths(const PLPath& a, const PLPath& b) {
  PLPath out = a;
  out.gaps.push_back(std::nullopt);
  out.segments.insert(out.segments.end(), b.segments.begin(), b.segments.end());
  for (const auto& gp : b.gaps) out.gaps.push_back(gp);
  validate_pl_path(out);
  return out;
}

PLPath subdivide_segment(const PLPath& p, size_t index, const Rat& t) {
  if (index >= p.segments.size()) fail("subdivide: bad segment index");
  const Segment& s = p.segments[index];
  if (t <= 0 || t >= s.duration) fail("subdivide: time outside the segment");
  PLPath out;
  for (size_t i = 0; i < p.segments.size(); ++i) {
    if (i == index) {
      MarkedPoint mid =
          with_metric(s.start, metric_plus(s.start.metric, s.dir, t));
      out.segments.push_back(Segment{s.start, s.dir, t});
      out.gaps.push_back(std::nullopt);
      out.segments.push_back(Segment{mid, s.dir, s.duration - t});
    } else {
      out.segments.push_back(p.segments[i]);
    }
    if (i < p.gaps.size()) out.gaps.push_back(p.gaps[i]);
  }
  validate_pl_path(out);
  return out;
}

LengthReport len_l(const PLPath& p) {
  validate_pl_path(p);
  LengthReport report;
  for (size_t i = 0; i < p.segments.size(); ++i) {
    const Segment& s = p.segments[i];
    if (s.duration == 0) continue;
    const Graph& g = *s.start.graph;
    // pairwise comparisons between candidate ratios do not depend on the
    // segment time, so one maximizer is active on the whole segment
    NormReport norm = lipschitz_norm(g, s.start.metric, s.dir);
    Rat start_len = path_weight(s.start.metric.lengths, norm.witness.loop.halves);
    Rat end_len =
        path_weight(segment_end_metric(s).lengths, norm.witness.loop.halves);
    report.combo.add(end_len / start_len, 1);
    report.pieces.push_back(PathPiece{i, Rat(0), s.duration, start_len, end_len,
                                      path_tokens(g, norm.witness.loop.halves)});
  }
  report.value = report.combo.estimate();
  return report;
}

namespace {

struct LinearLength {
  Rat base, slope;  // value(t) = base + slope * t, from segment start
  Rat at(const Rat& t) const { return base + slope * t; }
  bool operator==(const LinearLength&) const = default;
};

struct ClassEval {
  Rat value;
  LinearLength min_slope, max_slope;
};

ClassEval eval_class(const Graph& cover_g, const std::vector<Rat>& l0,
                     const std::vector<Rat>& tau, uint32_t cls, const Rat& t) {
  std::vector<Rat> lengths(l0.size());
  for (size_t e = 0; e < l0.size(); ++e) lengths[e] = l0[e] + t * tau[e];
  ClassLengthEngine engine(cover_g, lengths);
  ClassEval out;
  out.value = engine.length(cls);
  bool first = true;
  for (const Loop& r : engine.realizers(cls)) {
    LinearLength f{path_weight(l0, r.halves), path_weight(tau, r.halves)};
    if (f.at(t) != out.value) fail("realizer length mismatch");
    if (first || f.slope < out.min_slope.slope) out.min_slope = f;
    if (first || f.slope > out.max_slope.slope) out.max_slope = f;
    first = false;
  }
  return out;
}

// lower envelope of the class-length function over [t0, t1]; recursive
// refinement using concavity of a pointwise minimum of linear functions
void envelope(const Graph& cover_g, const std::vector<Rat>& l0,
              const std::vector<Rat>& tau, uint32_t cls, const Rat& t0,
              const LinearLength& f0, const Rat& t1, const LinearLength& f1,
              std::vector<std::pair<Rat, LinearLength>>& pieces, int depth) {
  if (depth > 64) fail("envelope recursion too deep");
  if (f0 == f1) {
    pieces.emplace_back(t0, f0);
    return;
  }
  if (f0.slope == f1.slope) {
    if (f0.at(t0) != f1.at(t0)) fail("envelope: parallel distinct actives");
    pieces.emplace_back(t0, f0);
    return;
  }
  Rat cross = (f1.base - f0.base) / (f0.slope - f1.slope);
  if (cross <= t0) {
    pieces.emplace_back(t0, f1);
    return;
  }
  if (cross >= t1) {
    pieces.emplace_back(t0, f0);
    return;
  }
  ClassEval mid = eval_class(cover_g, l0, tau, cls, cross);
  if (mid.value == f0.at(cross)) {
    pieces.emplace_back(t0, f0);
    pieces.emplace_back(cross, f1);
    return;
  }
  envelope(cover_g, l0, tau, cls, t0, f0, cross, mid.max_slope, pieces, depth + 1);
  envelope(cover_g, l0, tau, cls, cross, mid.min_slope, t1, f1, pieces, depth + 1);
}

}  // namespace

CorrectedLengthReport len_n(const PLPath& p) {
  LengthReport base = len_l(p);
  CorrectedLengthReport report;
  report.len_l_combo = base.combo;
  report.len_l_value = base.value;
  report.pieces = base.pieces;
  report.k = summand_count(p.segments.front().start.graph->rank());

  for (size_t i = 0; i < p.segments.size(); ++i) {
    const Segment& s = p.segments[i];
    if (s.duration == 0) continue;
    auto base_graph = std::make_shared<const Graph>(*s.start.graph);
    for (const DoubleCover& cover : enumerate_double_covers(base_graph)) {
      std::vector<Rat> l0 = cover.lift_values(s.start.metric.lengths);
      std::vector<Rat> tau = cover.lift_values(s.dir.weights);
      uint32_t nclasses = 1u << cover.total->rank();
      for (uint32_t cls = 1; cls < nclasses; ++cls) {
        ClassEval lo = eval_class(*cover.total, l0, tau, cls, Rat(0));
        ClassEval hi = eval_class(*cover.total, l0, tau, cls, s.duration);
        std::vector<std::pair<Rat, LinearLength>> pieces;
        envelope(*cover.total, l0, tau, cls, Rat(0), lo.min_slope, s.duration,
                 hi.max_slope, pieces, 0);
        for (size_t j = 0; j < pieces.size(); ++j) {
          const Rat& a = pieces[j].first;
          const Rat& b = (j + 1 < pieces.size()) ? pieces[j + 1].first : s.duration;
          const LinearLength& f = pieces[j].second;
          if (f.slope == 0) continue;
          report.correction_combo.add(f.at(b) / f.at(a), -1);
        }
      }
    }
  }
  report.value = report.len_l_value +
                 report.correction_combo.estimate() / double(report.k + 1);
  return report;
}

PathIdentityReport check_path_identity(const PLPath& p) {
  CorrectedLengthReport ln = len_n(p);
  PotentialValue psi_start = psi(path_start(p));
  PotentialValue psi_end = psi(path_end(p));

  // (K+1)(len_N - len_L) must equal (K+1)(psi(end) - psi(start)) as a formal
  // product of rationals: correction == sum log(len_start) - sum log(len_end)
  LogCombo residual = ln.correction_combo;
  for (const PsiTerm& t : psi_end.terms) residual.add(t.length, 1);
  for (const PsiTerm& t : psi_start.terms) residual.add(t.length, -1);

  PathIdentityReport report;
  report.exact = residual.sign() == 0;
  report.len_l = ln.len_l_value;
  report.len_n = ln.value;
  report.delta_psi = psi_end.value - psi_start.value;
  report.residual = report.len_n - report.len_l - report.delta_psi;
  return report;
}

}  // namespace outer
