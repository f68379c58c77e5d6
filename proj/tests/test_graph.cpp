#include "fixtures.hpp"
#include "outer/sampling.hpp"

#include <doctest.h>

using namespace outer;
using namespace outer::fixtures;

TEST_CASE("graph construction enforces the invariants") {
  // valence 2 at q
  CHECK_THROWS(Graph(2, {{0, 0}, {0, 1}}, {}, {}));
  // disconnected
  CHECK_THROWS(Graph(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}, {}, {}));
  GraphPtr rose = make_rose(2);
  CHECK(rose->rank() == 2);
  CHECK(rose->valence(0) == 4);
  GraphPtr theta = make_theta();
  CHECK(theta->rank() == 2);
  CHECK(make_handcuffs()->rank() == 3);
}

TEST_CASE("tightening removes cancelling pairs") {
  // petals: a = halves 0/1, b = halves 2/3
  CHECK(tighten_cyclic({0, 1, 2}) == EdgePath{2});        // a a' b -> b
  CHECK(tighten_cyclic({0, 2, 3, 0}) == EdgePath{0, 0});  // a b b' a -> a a
  CHECK(tighten_cyclic({0, 2, 1}) == EdgePath{2});        // a b a' -> b (wrap)
  CHECK(tighten_cyclic({0, 1}).empty());
}

TEST_CASE("tighten is idempotent on random words") {
  Rng rng(7);
  GraphPtr rose = make_rose(3);
  for (int trial = 0; trial < 200; ++trial) {
    EdgePath word;
    for (int i = 0; i < (int)rng.below(14); ++i)
      word.push_back((HalfId)rng.below(6));
    EdgePath once = tighten_cyclic(word);
    CHECK(tighten_cyclic(once) == once);
    if (!once.empty()) {
      Loop c = canonical_loop(*rose, word);
      CHECK(canonical_loop(*rose, c.halves) == c);
      CHECK(canonical_loop(*rose, reversed_path(word)) == c);
    }
  }
}

TEST_CASE("canonical form is rotation and reversal invariant") {
  GraphPtr g = make_barbell();
  Loop a = loop_of(*g, {0, 4, 2, 5});  // u w v w'
  Loop b = loop_of(*g, {2, 5, 0, 4});  // rotated
  Loop c = loop_of(*g, {4, 3, 5, 1});  // reversed
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("loop lengths on the rose") {
  GraphPtr rose = make_rose(2);
  MetricAssignment uniform = metric({Rat(1, 2), Rat(1, 2)});
  validate_metric(*rose, uniform);
  CHECK(loop_length(*rose, uniform, {0, 2}) == 1);
  for (int k : {3, 5, 9}) {
    MetricAssignment mk = metric({Rat(1, k), 1 - Rat(1, k)});
    CHECK(loop_length(*rose, mk, {0}) == Rat(1, k));
  }
  // a b b' tightens to a
  CHECK(loop_length(*rose, uniform, {0, 2, 3}) == Rat(1, 2));
}

TEST_CASE("tangent evaluation is unsigned on crossings") {
  GraphPtr rose = make_rose(2);
  TangentVector zero = tangent({Rat(0), Rat(0)});
  TangentVector pm = tangent({Rat(1), Rat(-1)});
  CHECK(tau_of_loop(*rose, zero, {0, 2}) == 0);
  CHECK(tau_of_loop(*rose, pm, {0, 2}) == 0);
  CHECK(tau_of_loop(*rose, pm, {0, 3}) == 0);  // reversal does not flip sign
  CHECK(tau_of_loop(*rose, pm, {0}) == 1);
}

TEST_CASE("metric validation") {
  GraphPtr g = make_barbell();
  CHECK_THROWS(validate_metric(*g, metric({Rat(1, 2), Rat(1, 2), Rat(1, 2)})));
  CHECK_THROWS(validate_metric(*g, metric({Rat(1, 2), Rat(-1, 2), Rat(1)})));
  // zero circle u is not a face
  CHECK_THROWS(validate_metric(*g, metric({Rat(0), Rat(1, 2), Rat(1, 2)})));
  // zero arc w is a face
  validate_metric(*g, metric({Rat(1, 2), Rat(1, 2), Rat(0)}));
  CHECK_THROWS(validate_tangent(*g, tangent({Rat(1), Rat(0), Rat(0)})));
  CHECK(integrable(*g, metric({Rat(1, 2), Rat(1, 2), Rat(0)}),
                   tangent({Rat(-1, 4), Rat(0), Rat(1, 4)})));
  CHECK(!integrable(*g, metric({Rat(1, 2), Rat(1, 2), Rat(0)}),
                    tangent({Rat(1, 4), Rat(0), Rat(-1, 4)})));
}

TEST_CASE("every loop is at least as long as the systole") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    GraphPtr g = random_graph(2 + (int)rng.below(2), rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    Rat sys = systole(*g, m);
    CHECK(sys > 0);
    for (const Loop& a : oracle::bounded_loops(*g, 2))
      CHECK(path_weight(m.lengths, a.halves) >= sys);
  }
}

TEST_CASE("tree paths are tight and well attached") {
  GraphPtr g = make_handcuffs();
  for (VertexId a = 0; a < g->num_vertices(); ++a) {
    for (VertexId b = 0; b < g->num_vertices(); ++b) {
      EdgePath p = g->tree_path(a, b);
      CHECK(tighten_path(p) == p);
      if (!p.empty()) {
        CHECK(g->half_from(p.front()) == a);
        CHECK(g->half_to(p.back()) == b);
      } else {
        CHECK(a == b);
      }
    }
  }
}
