#include "fixtures.hpp"
#include "outer/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace outer;
using namespace outer::fixtures;

namespace {

// independent recomputation of N from the loop oracle
Rat oracle_correction(const Graph& g, const MetricAssignment& m,
                      const TangentVector& t) {
  auto base = std::make_shared<const Graph>(g);
  Rat total = 0;
  for (const DoubleCover& cover : enumerate_double_covers(base)) {
    std::vector<Rat> lengths = cover.lift_values(m.lengths);
    std::vector<Rat> tau = cover.lift_values(t.weights);
    auto minima = oracle::class_minima(*cover.total, lengths);
    for (uint32_t cls = 1; cls < (1u << cover.total->rank()); ++cls) {
      REQUIRE(minima.count(cls) == 1);
      const auto& cm = minima[cls];
      bool first = true;
      Rat best;
      for (const Loop& r : cm.realizers) {
        Rat v = path_weight(tau, r.halves);
        if (first || v > best) {
          best = v;
          first = false;
        }
      }
      total -= best / cm.length;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("psi term table of the uniform rose") {
  MarkedPoint x = rose_point(2, metric({Rat(1, 2), Rat(1, 2)}));
  PotentialValue v = psi(x);
  CHECK(v.k == 21);
  REQUIRE(v.terms.size() == 21);
  std::vector<Rat> expect;
  for (int i = 0; i < 4; ++i) expect.push_back(Rat(1, 2));
  for (int i = 0; i < 8; ++i) expect.push_back(Rat(1));
  for (int i = 0; i < 4; ++i) expect.push_back(Rat(3, 2));
  for (int i = 0; i < 5; ++i) expect.push_back(Rat(2));
  CHECK(v.sorted_lengths() == expect);
  double direct = 0;
  for (const Rat& l : expect) direct += log_rational(l);
  CHECK(v.value == doctest::Approx(-direct / 22.0));

  // cross-check every term against the loop oracle, cover by cover
  auto covers = enumerate_double_covers(x.graph);
  for (const DoubleCover& cover : covers) {
    auto minima = oracle::class_minima(*cover.total,
                                       cover.lift_values(x.metric.lengths));
    for (const PsiTerm& term : v.terms) {
      if (term.cover != cover.functional) continue;
      CHECK(term.length == minima[term.cls].length);
    }
  }
}

TEST_CASE("psi has the right number of summands at rank 3") {
  MarkedPoint x = rose_point(
      3, metric({Rat(1, 3), Rat(1, 3), Rat(1, 3)}));
  PotentialValue v = psi(x);
  CHECK(v.k == 217);
  CHECK(v.terms.size() == 217);
}

TEST_CASE("psi is invariant under the automorphism action") {
  Rng rng(97);
  auto autos = automorphism_fixtures(2);
  for (int trial = 0; trial < 5; ++trial) {
    MarkedPoint x = random_marked_point(2, rng);
    const Automorphism& a = autos[1 + rng.below(autos.size() - 1)];
    MarkedPoint y = act_by_automorphism(x, a.map, a.inverse);
    CHECK(psi(x).sorted_lengths() == psi(y).sorted_lengths());
  }
}

TEST_CASE("psi agrees across a forest collapse") {
  GraphPtr barbell = make_barbell();
  MarkedPoint face{barbell, metric({Rat(1, 3), Rat(2, 3), Rat(0)}),
                   GraphMap(make_rose(2), barbell, {0}, {{0}, {4, 2, 5}}),
                   GraphMap(barbell, make_rose(2), {0, 0}, {{0}, {2}, {}})};
  validate_point(face);
  ForestCollapse fc = collapse_forest(barbell, {2});
  MarkedPoint rose = collapse_point(face, fc);
  CHECK(psi(face).sorted_lengths() == psi(rose).sorted_lengths());
}

TEST_CASE("psi agrees across random forest collapses") {
  Rng rng(181);
  int done = 0;
  while (done < 8) {
    MarkedPoint x = random_marked_point(2 + (int)rng.below(2), rng);
    std::vector<EdgeId> non_loops;
    for (EdgeId e = 0; e < x.graph->num_edges(); ++e)
      if (x.graph->half_from(2 * e) != x.graph->half_to(2 * e))
        non_loops.push_back(e);
    if (non_loops.empty()) continue;
    EdgeId dead = non_loops[rng.below(non_loops.size())];
    MetricAssignment m = x.metric;
    m.lengths[(dead + 1) % m.lengths.size()] += m.lengths[dead];
    m.lengths[dead] = 0;
    if (!zero_set_is_forest(*x.graph, m.lengths)) continue;
    MarkedPoint face = with_metric(x, m);
    ForestCollapse fc = collapse_forest(x.graph, {dead});
    MarkedPoint collapsed = collapse_point(face, fc);
    CHECK(psi(face).sorted_lengths() == psi(collapsed).sorted_lengths());
    ++done;
  }
}

TEST_CASE("psi blows up as the systole shrinks") {
  double prev = -1e300;
  for (int e : {2, 4, 7, 20, 60}) {
    MarkedPoint x = example1_point(Rat(BigInt(1) << e));
    double v = psi(x).value;
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > 5);  // the -log of the short classes dominates
}

TEST_CASE("correction term: zero direction and sign cancellation") {
  GraphPtr rose = make_rose(2);
  MetricAssignment m = metric({Rat(1, 3), Rat(2, 3)});
  CorrectionValue zero = correction_n(*rose, m, tangent({Rat(0), Rat(0)}));
  CHECK(zero.max_value == 0);
  CHECK(zero.min_value == 0);

  Rng rng(101);
  int cancel_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    GraphPtr g = random_graph(2, rng);
    MetricAssignment mm = random_positive_metric(*g, rng);
    TangentVector t = random_tangent(*g, rng);
    CorrectionValue np = correction_n(*g, mm, t);
    if (!np.derivative_unambiguous) continue;
    CorrectionValue nm = correction_n(*g, mm, negated(t));
    CHECK(np.max_value + nm.max_value == 0);
    ++cancel_checked;
  }
  CHECK(cancel_checked > 10);
}

TEST_CASE("correction matches the loop oracle") {
  GraphPtr rose = make_rose(2);
  MetricAssignment m = metric({Rat(1, 3), Rat(2, 3)});
  TangentVector t = tangent({Rat(1, 6), Rat(-1, 6)});
  CorrectionValue n = correction_n(*rose, m, t);
  CHECK(n.terms.size() == 21);
  CHECK(n.max_value == oracle_correction(*rose, m, t));

  Rng rng(103);
  for (int trial = 0; trial < 15; ++trial) {
    GraphPtr g = random_graph(2, rng);
    MetricAssignment mm = random_positive_metric(*g, rng);
    TangentVector tt = random_tangent(*g, rng);
    CHECK(correction_n(*g, mm, tt).max_value == oracle_correction(*g, mm, tt));
  }
}

TEST_CASE("corrected norm: sandwich and quasi-symmetry") {
  GraphPtr rose = make_rose(2);
  MetricAssignment m = metric({Rat(1, 2), Rat(1, 2)});
  CorrectedNorm zero = corrected_norm(*rose, m, tangent({Rat(0), Rat(0)}));
  CHECK(zero.value == 0);

  Rng rng(107);
  for (int trial = 0; trial < 120; ++trial) {
    GraphPtr g = random_graph(2, rng);
    MetricAssignment mm = random_positive_metric(*g, rng);
    TangentVector t = random_tangent(*g, rng);
    CorrectedNorm vp = corrected_norm(*g, mm, t);
    CorrectedNorm vm = corrected_norm(*g, mm, negated(t));
    CHECK(vp.k == 21);
    Rat lo = (vp.lipschitz > vm.lipschitz ? vp.lipschitz : vm.lipschitz) / 22;
    CHECK(lo <= vp.value);
    CHECK(vp.value <= 2 * vp.lipschitz + vm.lipschitz);
    CHECK(vp.value > 0);
    CHECK(vp.value <= 66 * vm.value);
    CHECK(vm.value <= 66 * vp.value);
  }
}

TEST_CASE("psi derivative matches the corrected-norm gap") {
  GraphPtr rose = make_rose(2);
  MetricAssignment m = metric({Rat(1, 2), Rat(1, 2)});
  std::vector<Rat> steps = {Rat(1, 1000), Rat(1, 1000000)};
  PsiDerivativeReport zero = psi_directional_derivative_check(
      *rose, m, tangent({Rat(0), Rat(0)}), steps);
  CHECK(zero.generic);
  for (const auto& row : zero.rows) CHECK(row.quotient == 0);

  Rng rng(109);
  int generic_seen = 0;
  while (generic_seen < 10) {
    GraphPtr g = random_graph(2, rng);
    MetricAssignment mm = random_positive_metric(*g, rng);
    TangentVector t = random_tangent(*g, rng);
    PsiDerivativeReport rep = psi_directional_derivative_check(*g, mm, t, steps);
    if (!rep.generic) continue;
    ++generic_seen;
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows.back().error <= 1e-3);
    CHECK(rep.rows.back().error <= rep.rows.front().error * 1.01 + 1e-9);
  }
}

TEST_CASE("realizer walls: lengths are continuous at a route switch") {
  GraphPtr h = make_handcuffs();
  Loop through_c = loop_of(*h, {0, 4, 2, 5});
  uint32_t cls = class_of_loop(*h, through_c);
  auto lengths_at = [&](const Rat& s) {
    // l(c) = 1/4 + s, l(d) = 1/4 - s
    return std::vector<Rat>{Rat(1, 4), Rat(1, 4), Rat(1, 4) + s, Rat(1, 4) - s};
  };
  auto expect = [&](const Rat& s) {
    Rat lc = Rat(1, 4) + s, ld = Rat(1, 4) - s;
    return Rat(1, 2) + 2 * (lc < ld ? lc : ld);
  };
  for (Rat s : {Rat(-1, 8), Rat(-1, 100), Rat(0), Rat(1, 100), Rat(1, 8)}) {
    ClassLengthEngine engine(*h, lengths_at(s));
    CHECK(engine.length(cls) == expect(s));
  }
  // at the wall both routes realize
  ClassLengthEngine wall(*h, lengths_at(Rat(0)));
  CHECK(wall.realizers(cls).size() == 4);
}
