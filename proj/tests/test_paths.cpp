#include "fixtures.hpp"
#include "outer/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace outer;
using namespace outer::fixtures;

TEST_CASE("constant paths have zero length") {
  MarkedPoint x = rose_point(2, metric({Rat(1, 2), Rat(1, 2)}));
  PLPath p;
  p.segments.push_back(Segment{x, tangent({Rat(0), Rat(0)}), Rat(1)});
  CHECK(len_l(p).value == 0);
  CorrectedLengthReport n = len_n(p);
  CHECK(n.value == 0);
  PathIdentityReport id = check_path_identity(p);
  CHECK(id.exact);
  CHECK(id.residual == 0);
}

TEST_CASE("a straight segment realizes the endpoint distance") {
  Rng rng(113);
  for (int trial = 0; trial < 40; ++trial) {
    MarkedPoint x = random_marked_point(2 + (int)rng.below(2), rng);
    MetricAssignment target = random_positive_metric(*x.graph, rng);
    PLPath p = single_segment_path(x, target);
    Rat s = stretch(x, path_end(p), identity_map(x.graph)).value;
    LogCombo combo = len_l(p).combo;
    combo.add(s, -1);
    CHECK(combo.sign() == 0);
  }
}

TEST_CASE("multi-segment paths dominate the endpoint distance") {
  Rng rng(127);
  for (int trial = 0; trial < 60; ++trial) {
    PLPath p = sample_path(2, 2, trial % 3 == 0, rng.next());
    GraphMap w = path_witness(p);
    Rat s = stretch(path_start(p), path_end(p), w).value;
    LogCombo combo = len_l(p).combo;
    combo.add(s, -1);
    CHECK(combo.sign() >= 0);
  }
}

TEST_CASE("length identity holds exactly, including across transitions") {
  Rng rng(131);
  for (int trial = 0; trial < 40; ++trial) {
    bool with_transition = trial % 2 == 0;
    PLPath p = sample_path(2, 1 + trial % 3, with_transition, rng.next());
    PathIdentityReport rep = check_path_identity(p);
    CHECK(rep.exact);
    CHECK(std::abs(rep.residual) < 1e-9);
  }
  // a rank-3 instance
  PLPath p3 = sample_path(3, 2, false, 999);
  CHECK(check_path_identity(p3).exact);
}

TEST_CASE("reversal is an involution and flips transitions") {
  PLPath p = sample_path(2, 2, true, 777);
  PLPath rr = reverse_pl_path(reverse_pl_path(p));
  REQUIRE(rr.segments.size() == p.segments.size());
  for (size_t i = 0; i < p.segments.size(); ++i) {
    CHECK(rr.segments[i].start.metric.lengths ==
          p.segments[i].start.metric.lengths);
    CHECK(rr.segments[i].dir.weights == p.segments[i].dir.weights);
    CHECK(rr.segments[i].duration == p.segments[i].duration);
  }
  PLPath rev = reverse_pl_path(p);
  validate_pl_path(rev);
  int flips = 0;
  for (size_t i = 0; i < p.gaps.size(); ++i) {
    if (!p.gaps[i]) continue;
    const auto& orig = *p.gaps[i];
    const auto& mirrored = *rev.gaps[p.gaps.size() - 1 - i];
    CHECK(orig.collapsing != mirrored.collapsing);
    ++flips;
  }
  CHECK(flips > 0);
}

TEST_CASE("reverse quasi-symmetry and the length comparison bound") {
  Rng rng(137);
  long long k = summand_count(2);
  long long a = 3 * (k + 1);
  for (int trial = 0; trial < 25; ++trial) {
    PLPath p = sample_path(2, 1 + trial % 2, trial % 2 == 0, rng.next());
    CorrectedLengthReport fwd = len_n(p);
    CorrectedLengthReport rev = len_n(reverse_pl_path(p));
    LogCombo fwd_n, rev_n;
    fwd_n.add_all(fwd.len_l_combo, k + 1);
    fwd_n.add_all(fwd.correction_combo, 1);
    rev_n.add_all(rev.len_l_combo, k + 1);
    rev_n.add_all(rev.correction_combo, 1);

    LogCombo quasi;
    quasi.add_all(fwd_n, a);
    quasi.add_all(rev_n, -1);
    CHECK(quasi.sign() >= 0);

    LogCombo lip;
    lip.add_all(rev.len_l_combo, a * (k + 1));
    lip.add_all(fwd.len_l_combo, -(k + 1));
    lip.add_all(psi(path_end(p)).log_product(), a + 1);
    lip.add_all(psi(path_start(p)).log_product(), -(a + 1));
    CHECK(lip.sign() >= 0);
  }
}

TEST_CASE("refinement never changes the length functionals") {
  Rng rng(139);
  for (int trial = 0; trial < 12; ++trial) {
    PLPath p = sample_path(2, 1 + trial % 2, trial % 4 == 0, rng.next());
    PLPath refined = subdivide_segment(p, 0, p.segments[0].duration / 3);
    LogCombo diff = len_l(p).combo;
    diff.add_all(len_l(refined).combo, -1);
    CHECK(diff.sign() == 0);

    CorrectedLengthReport n1 = len_n(p);
    CorrectedLengthReport n2 = len_n(refined);
    LogCombo ndiff;
    ndiff.add_all(n1.len_l_combo, n1.k + 1);
    ndiff.add_all(n1.correction_combo, 1);
    ndiff.add_all(n2.len_l_combo, -(n2.k + 1));
    ndiff.add_all(n2.correction_combo, -1);
    CHECK(ndiff.sign() == 0);
  }
}

TEST_CASE("affine reparametrization leaves lengths unchanged") {
  Rng rng(167);
  MarkedPoint x = random_marked_point(2, rng);
  MetricAssignment target = random_positive_metric(*x.graph, rng);
  PLPath p = single_segment_path(x, target);

  PLPath slow;  // same trace, half speed, doubled duration
  TangentVector half = p.segments[0].dir;
  for (Rat& w : half.weights) w /= 2;
  slow.segments.push_back(Segment{x, half, Rat(2)});
  validate_pl_path(slow);

  LogCombo diff = len_l(p).combo;
  diff.add_all(len_l(slow).combo, -1);
  CHECK(diff.sign() == 0);

  CorrectedLengthReport n1 = len_n(p);
  CorrectedLengthReport n2 = len_n(slow);
  LogCombo ndiff;
  ndiff.add_all(n1.correction_combo, 1);
  ndiff.add_all(n2.correction_combo, -1);
  CHECK(ndiff.sign() == 0);
}

TEST_CASE("concatenation adds lengths") {
  Rng rng(149);
  MarkedPoint x = random_marked_point(2, rng);
  MetricAssignment mid = random_positive_metric(*x.graph, rng);
  MetricAssignment end = random_positive_metric(*x.graph, rng);
  PLPath p1 = single_segment_path(x, mid);
  PLPath p2 = single_segment_path(path_end(p1), end);
  PLPath joined = concat_paths(p1, p2);
  LogCombo diff = len_l(joined).combo;
  diff.add_all(len_l(p1).combo, -1);
  diff.add_all(len_l(p2).combo, -1);
  CHECK(diff.sign() == 0);
}

TEST_CASE("invalid paths are rejected") {
  MarkedPoint x = rose_point(2, metric({Rat(1, 2), Rat(1, 2)}));
  PLPath bad;
  bad.segments.push_back(Segment{x, tangent({Rat(-1), Rat(1)}), Rat(1)});
  CHECK_THROWS(validate_pl_path(bad));  // leaves the simplex

  PLPath negative;
  negative.segments.push_back(Segment{x, tangent({Rat(0), Rat(0)}), Rat(-1)});
  CHECK_THROWS(validate_pl_path(negative));

  GraphPtr barbell = make_barbell();
  MarkedPoint face{barbell, metric({Rat(1, 2), Rat(1, 2), Rat(0)}),
                   GraphMap(make_rose(2), barbell, {0}, {{0}, {4, 2, 5}}),
                   GraphMap(barbell, make_rose(2), {0, 0}, {{0}, {2}, {}})};
  PLPath nonint;
  nonint.segments.push_back(
      Segment{face, tangent({Rat(1, 4), Rat(0), Rat(-1, 4)}), Rat(1)});
  CHECK_THROWS(validate_pl_path(nonint));  // not integrable at the face
}
