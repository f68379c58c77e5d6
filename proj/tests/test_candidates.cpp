#include "fixtures.hpp"
#include "outer/sampling.hpp"

#include <doctest.h>

#include <set>

using namespace outer;
using namespace outer::fixtures;

TEST_CASE("embedded circles of the small graphs") {
  CHECK(enumerate_embedded_circles(*make_rose(2)).size() == 2);
  CHECK(enumerate_embedded_circles(*make_theta()).size() == 3);
  CHECK(enumerate_embedded_circles(*make_barbell()).size() == 2);
}

TEST_CASE("candidates of the rose") {
  GraphPtr rose = make_rose(2);
  std::vector<Candidate> cands = enumerate_candidates(*rose);
  CHECK(cands.size() == 4);
  std::set<Loop> loops;
  int eights = 0;
  for (const Candidate& c : cands) {
    loops.insert(c.loop);
    if (c.kind == CandidateKind::figure_eight) ++eights;
  }
  CHECK(eights == 2);
  CHECK(loops.count(loop_of(*rose, {0})) == 1);       // a
  CHECK(loops.count(loop_of(*rose, {2})) == 1);       // b
  CHECK(loops.count(loop_of(*rose, {0, 2})) == 1);    // ab
  CHECK(loops.count(loop_of(*rose, {0, 3})) == 1);    // ab'
}

TEST_CASE("candidates of the theta graph are its circles") {
  std::vector<Candidate> cands = enumerate_candidates(*make_theta());
  CHECK(cands.size() == 3);
  for (const Candidate& c : cands)
    CHECK(c.kind == CandidateKind::embedded);
}

TEST_CASE("candidates of the barbell include both orientations") {
  GraphPtr g = make_barbell();
  std::vector<Candidate> cands = enumerate_candidates(*g);
  std::set<Loop> loops;
  int barbells = 0;
  for (const Candidate& c : cands) {
    loops.insert(c.loop);
    if (c.kind == CandidateKind::barbell) ++barbells;
  }
  CHECK(loops.count(loop_of(*g, {0})) == 1);              // u
  CHECK(loops.count(loop_of(*g, {2})) == 1);              // v
  CHECK(loops.count(loop_of(*g, {0, 4, 2, 5})) == 1);     // u w v w'
  // u w v' w' is a distinct free homotopy class and also a candidate
  CHECK(loops.count(loop_of(*g, {0, 4, 3, 5})) == 1);
  CHECK(barbells == 2);
  CHECK(cands.size() == 4);
  // matches the independent definition-based filter
  std::vector<Loop> expect = oracle::candidate_loops(*g);
  CHECK(loops == std::set<Loop>(expect.begin(), expect.end()));
}

TEST_CASE("candidate enumeration matches the loop oracle on random graphs") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    GraphPtr g = random_graph(2 + (int)rng.below(2), rng);
    std::set<Loop> got;
    for (const Candidate& c : enumerate_candidates(*g)) {
      got.insert(c.loop);
      switch (c.kind) {
        case CandidateKind::embedded:
          CHECK(oracle::is_embedded_loop(*g, c.loop));
          break;
        case CandidateKind::figure_eight:
          CHECK(oracle::is_figure_eight(*g, c.loop));
          break;
        case CandidateKind::barbell:
          CHECK(oracle::is_barbell(*g, c.loop));
          break;
      }
    }
    std::vector<Loop> expect = oracle::candidate_loops(*g);
    CHECK(got == std::set<Loop>(expect.begin(), expect.end()));
  }
}

TEST_CASE("every candidate crosses each edge at most twice") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    GraphPtr g = random_graph(3, rng);
    for (const Candidate& c : enumerate_candidates(*g))
      for (int cr : edge_crossings(*g, c.loop.halves)) CHECK(cr <= 2);
  }
}

TEST_CASE("systole values") {
  GraphPtr rose = make_rose(2);
  for (int k : {2, 5, 20})
    CHECK(systole(*rose, metric({Rat(1, k), 1 - Rat(1, k)})) == Rat(1, k));
  CHECK(systole(*make_theta(), metric({Rat(1, 2), Rat(1, 3), Rat(1, 6)})) ==
        Rat(1, 2));
  MarkedPoint x3 = example3_point(Rat(1, 20), Rat(1, 5));
  CHECK(systole(*x3.graph, x3.metric) == Rat(1, 20));
}

TEST_CASE("systole equals the minimum over bounded loops") {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    GraphPtr g = random_graph(2 + (int)rng.below(2), rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    Rat best;
    bool first = true;
    for (const Loop& a : oracle::bounded_loops(*g, 2)) {
      Rat l = path_weight(m.lengths, a.halves);
      if (first || l < best) {
        best = l;
        first = false;
      }
    }
    CHECK(systole(*g, m) == best);
  }
}
