#pragma once

#include "outer/paths.hpp"

#include <random>

namespace outer {

// Deterministic across platforms: all draws go through next()/below().
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  uint64_t next() { return eng(); }
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
  int range(int lo, int hi) { return lo + (int)below((uint64_t)(hi - lo + 1)); }
  bool coin() { return next() & 1; }
};

GraphPtr random_graph(int rank, Rng& rng);
MetricAssignment random_positive_metric(const Graph& g, Rng& rng);
// systole(l) >= eps, by rejection
MetricAssignment random_thick_metric(const Graph& g, Rng& rng, const Rat& eps);
TangentVector random_tangent(const Graph& g, Rng& rng);
TangentVector random_integrable_tangent(const Graph& g,
                                        const MetricAssignment& m, Rng& rng);

// rose self-map together with its inverse, both with verified Z2 data
struct Automorphism {
  std::string name;
  GraphMap map;
  GraphMap inverse;
};
std::vector<Automorphism> automorphism_fixtures(int rank);
Automorphism power(const Automorphism& a, int n);

struct PointPairWitness {
  MarkedPoint x, y;
  GraphMap forward;   // difference of markings x -> y
  GraphMap backward;  // difference of markings y -> x
};

// random walk of elementary moves: in-simplex perturbation, collapse to a
// face, blow-up of a fat vertex, automorphism action
PointPairWitness sample_pair(int rank, int moves, uint64_t seed);

MarkedPoint random_marked_point(int rank, Rng& rng);

// random path from a random start; optionally forced through a collapse or
// blow-up transition
PLPath sample_path(int rank, int segments, bool with_transition, uint64_t seed);

}  // namespace outer
