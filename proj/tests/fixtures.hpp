#pragma once

#include "outer/harness.hpp"

namespace outer::fixtures {

// three parallel edges between two vertices
inline GraphPtr make_theta() {
  return std::make_shared<const Graph>(
      2,
      std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {0, 1}, {0, 1}},
      std::vector<std::string>{"p", "q"},
      std::vector<std::string>{"e1", "e2", "e3"});
}

// circles u, v joined by the arc w
inline GraphPtr make_barbell() {
  return std::make_shared<const Graph>(
      2,
      std::vector<std::pair<VertexId, VertexId>>{{0, 0}, {1, 1}, {0, 1}},
      std::vector<std::string>{"p", "q"},
      std::vector<std::string>{"u", "v", "w"});
}

// circles a, b joined by two arcs c, d (rank 3)
inline GraphPtr make_handcuffs() {
  return std::make_shared<const Graph>(
      2,
      std::vector<std::pair<VertexId, VertexId>>{{0, 0}, {1, 1}, {0, 1}, {0, 1}},
      std::vector<std::string>{"p", "q"},
      std::vector<std::string>{"a", "b", "c", "d"});
}

inline Loop loop_of(const Graph& g, std::initializer_list<HalfId> halves) {
  return canonical_loop(g, EdgePath(halves));
}

inline MetricAssignment metric(std::initializer_list<Rat> lens) {
  return MetricAssignment{std::vector<Rat>(lens)};
}

inline TangentVector tangent(std::initializer_list<Rat> w) {
  return TangentVector{std::vector<Rat>(w)};
}

}  // namespace outer::fixtures
