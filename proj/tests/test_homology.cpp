#include "fixtures.hpp"
#include "outer/sampling.hpp"

#include <doctest.h>

#include <bit>

using namespace outer;
using namespace outer::fixtures;

TEST_CASE("homology classes of loops") {
  GraphPtr rose = make_rose(2);
  CHECK(class_of_loop(*rose, loop_of(*rose, {0})) == 1u);
  CHECK(class_of_loop(*rose, loop_of(*rose, {2})) == 2u);
  // the commutator is null
  CHECK(class_of_loop(*rose, loop_of(*rose, {0, 2, 1, 3})) == 0u);

  GraphPtr h = make_handcuffs();
  // a c b c'  and  a d b d'  share their class
  Loop through_c = loop_of(*h, {0, 4, 2, 5});
  Loop through_d = loop_of(*h, {0, 6, 2, 7});
  CHECK(class_of_loop(*h, through_c) == class_of_loop(*h, through_d));
  CHECK(class_of_loop(*h, through_c) != 0);
}

TEST_CASE("double cover counts, ranks and projections") {
  for (int rank : {2, 3}) {
    GraphPtr rose = make_rose(rank);
    std::vector<DoubleCover> covers = enumerate_double_covers(rose);
    CHECK((int)covers.size() == cover_count(rank));
    CHECK((int)covers.size() == (1 << rank) - 1);
    for (const DoubleCover& cover : covers) {
      CHECK(cover.total->rank() == 2 * rank - 1);
      CHECK(cover.total->num_vertices() == 2);
      // a loop lifts iff its class pairs to zero with the functional
      for (const Loop& a : oracle::bounded_loops(*rose, 2)) {
        bool pairs_zero =
            (std::popcount(cover.functional & class_of_loop(*rose, a)) & 1) == 0;
        auto lift = cover.lift_loop(a);
        CHECK(lift.has_value() == pairs_zero);
        if (lift) {
          EdgePath down = cover.project(lift->halves);
          CHECK((std::popcount(cover.functional &
                               rose->loop_class(down)) & 1) == 0);
        }
      }
    }
  }
  CHECK(summand_count(2) == 21);
  CHECK(summand_count(3) == 217);
  CHECK(summand_count(4) == 1905);
}

TEST_CASE("shortest loop in a class: embedded circles are unique realizers") {
  GraphPtr barbell = make_barbell();
  std::vector<Rat> lengths = {Rat(1, 5), Rat(3, 10), Rat(1, 2)};
  ClassLengthEngine engine(*barbell, lengths);
  Loop u = loop_of(*barbell, {0});
  uint32_t cls = class_of_loop(*barbell, u);
  ClassLengthReport rep = engine.report(cls);
  CHECK(rep.length == Rat(1, 5));
  REQUIRE(rep.realizers.size() == 1);
  CHECK(rep.realizers.front() == u);
}

TEST_CASE("shortest loop switches route with the metric") {
  GraphPtr h = make_handcuffs();
  Loop through_c = loop_of(*h, {0, 4, 2, 5});
  uint32_t cls = class_of_loop(*h, through_c);
  // c shorter than d
  ClassLengthEngine engine(*h, {Rat(1, 4), Rat(1, 4), Rat(1, 6), Rat(1, 3)});
  ClassLengthReport rep = engine.report(cls);
  CHECK(rep.length == Rat(1, 4) + Rat(1, 4) + Rat(2, 6));
  for (const Loop& r : rep.realizers) {
    CHECK(edge_crossings(*h, r.halves)[2] == 2);  // through c
    CHECK(edge_crossings(*h, r.halves)[3] == 0);  // never through d
  }
  CHECK(std::find(rep.realizers.begin(), rep.realizers.end(), through_c) !=
        rep.realizers.end());

  // d shorter than c flips the realizers
  ClassLengthEngine engine2(*h, {Rat(1, 4), Rat(1, 4), Rat(1, 3), Rat(1, 6)});
  for (const Loop& r : engine2.report(cls).realizers)
    CHECK(edge_crossings(*h, r.halves)[2] == 0);
}

TEST_CASE("rose class with two realizers") {
  GraphPtr rose = make_rose(2);
  ClassLengthEngine engine(*rose, {Rat(1, 3), Rat(2, 3)});
  ClassLengthReport rep = engine.report(3);
  CHECK(rep.length == 1);
  REQUIRE(rep.realizers.size() == 2);
  CHECK(rep.realizers[0] == loop_of(*rose, {0, 2}));
  CHECK(rep.realizers[1] == loop_of(*rose, {0, 3}));
}

TEST_CASE("trivial class is rejected") {
  GraphPtr rose = make_rose(2);
  ClassLengthEngine engine(*rose, {Rat(1, 2), Rat(1, 2)});
  CHECK_THROWS(engine.report(0));
  CHECK_THROWS(engine.report(1u << 5));
}

TEST_CASE("class lengths and realizer sets match the loop oracle") {
  Rng rng(79);
  for (int trial = 0; trial < 120; ++trial) {
    GraphPtr g = random_graph(2 + (int)rng.below(2), rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    if (trial % 6 == 5) {
      for (EdgeId e = 0; e < g->num_edges(); ++e) {
        if (g->half_from(2 * e) != g->half_to(2 * e)) {
          m.lengths[(e + 1) % g->num_edges()] += m.lengths[e];
          m.lengths[e] = 0;
          break;
        }
      }
    }
    ClassLengthEngine engine(*g, m.lengths);
    auto expect = oracle::class_minima(*g, m.lengths);
    for (uint32_t cls = 1; cls < (1u << g->rank()); ++cls) {
      ClassLengthReport rep = engine.report(cls);
      REQUIRE(expect.count(cls) == 1);
      CHECK(rep.length == expect[cls].length);
      CHECK(rep.realizers == expect[cls].realizers);
    }
  }
}

TEST_CASE("realizers obey the crossing characterization") {
  Rng rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    GraphPtr g = random_graph(2 + (int)rng.below(2), rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    ClassLengthEngine engine(*g, m.lengths);
    for (uint32_t cls = 1; cls < (1u << g->rank()); ++cls) {
      for (const Loop& r : engine.realizers(cls)) {
        std::vector<int> fwd(g->num_edges(), 0), bwd(g->num_edges(), 0);
        for (HalfId h : r.halves) ((h & 1) ? bwd : fwd)[half_edge(h)]++;
        for (EdgeId e = 0; e < g->num_edges(); ++e) {
          int total = fwd[e] + bwd[e];
          CHECK(total <= 2);
          if (total == 2) CHECK(fwd[e] == 1);
        }
      }
    }
  }
}

TEST_CASE("each candidate lifts to the unique shortest loop upstairs") {
  Rng rng(89);
  for (GraphPtr g : {make_rose(2), make_barbell(), make_theta(),
                     make_handcuffs()}) {
    std::vector<DoubleCover> covers = enumerate_double_covers(g);
    for (const Candidate& c : enumerate_candidates(*g)) {
      auto [functional, lift] = lift_candidate(*g, c, covers);
      const DoubleCover& cover = covers[functional - 1];
      CHECK(oracle::is_embedded_loop(*cover.total, lift));
      uint32_t up_cls = class_of_loop(*cover.total, lift);
      CHECK(up_cls != 0);
      if (c.kind != CandidateKind::embedded) {
        // the two circles must not lift
        auto cls_of_edges = [&](const std::vector<EdgeId>& edges) {
          uint32_t bits = 0;
          for (EdgeId e : edges) bits ^= g->edge_class_bit(e);
          return bits;
        };
        CHECK((std::popcount(functional & cls_of_edges(c.circle_u)) & 1) == 1);
        CHECK((std::popcount(functional & cls_of_edges(c.circle_v)) & 1) == 1);
      }
      for (int trial = 0; trial < 3; ++trial) {
        MetricAssignment m = random_positive_metric(*g, rng);
        ClassLengthEngine engine(*cover.total, cover.lift_values(m.lengths));
        ClassLengthReport rep = engine.report(up_cls);
        REQUIRE(rep.realizers.size() == 1);
        CHECK(rep.realizers.front() == lift);
        CHECK(rep.length == path_weight(m.lengths, c.loop.halves));
      }
    }
  }
}

TEST_CASE("figure eight of the rose lifts through the diagonal cover") {
  GraphPtr rose = make_rose(2);
  std::vector<DoubleCover> covers = enumerate_double_covers(rose);
  Candidate eight;
  for (const Candidate& c : enumerate_candidates(*rose))
    if (c.loop == loop_of(*rose, {0, 2})) eight = c;
  auto [functional, lift] = lift_candidate(*rose, eight, covers);
  CHECK(functional == 3u);
  const DoubleCover& cover = covers[2];
  CHECK(!cover.lift_loop(loop_of(*rose, {0})).has_value());
  CHECK(!cover.lift_loop(loop_of(*rose, {2})).has_value());
  CHECK(lift.length() == 2);
}
