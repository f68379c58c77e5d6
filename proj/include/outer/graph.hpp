#pragma once

#include "outer/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace outer {

using VertexId = int;
using EdgeId = int;
using HalfId = int;  // half 2e runs along edge e, half 2e+1 runs against it

inline HalfId reverse_half(HalfId h) { return h ^ 1; }
inline EdgeId half_edge(HalfId h) { return h >> 1; }
inline HalfId forward_half(EdgeId e) { return 2 * e; }

using EdgePath = std::vector<HalfId>;

EdgePath reversed_path(const EdgePath& p);

// Finite connected multigraph, every vertex of valence >= 3.  A deterministic
// BFS spanning tree rooted at vertex 0 fixes the Z2 cycle basis: non-tree
// edges in increasing edge order.
class Graph {
 public:
  Graph(int num_vertices, std::vector<std::pair<VertexId, VertexId>> ends,
        std::vector<std::string> vertex_names = {},
        std::vector<std::string> edge_names = {});

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return (int)half_from_.size() / 2; }
  int num_halves() const { return (int)half_from_.size(); }
  int rank() const { return rank_; }

  VertexId half_from(HalfId h) const { return half_from_[h]; }
  VertexId half_to(HalfId h) const { return half_from_[h ^ 1]; }
  const std::vector<HalfId>& out_halves(VertexId v) const { return out_[v]; }
  int valence(VertexId v) const { return (int)out_[v].size(); }

  bool is_tree_edge(EdgeId e) const { return basis_index_[e] < 0; }
  int basis_index(EdgeId e) const { return basis_index_[e]; }
  EdgeId basis_edge(int i) const { return basis_edges_[i]; }
  uint32_t edge_class_bit(EdgeId e) const {
    return basis_index_[e] < 0 ? 0u : (1u << basis_index_[e]);
  }
  uint32_t loop_class(const EdgePath& closed) const;

  // tightened tree geodesic between two vertices
  EdgePath tree_path(VertexId from, VertexId to) const;

  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::string& edge_name(EdgeId e) const { return edge_names_[e]; }
  std::string half_token(HalfId h) const;

  bool same_structure(const Graph& other) const;

 private:
  int num_vertices_ = 0;
  int rank_ = 0;
  std::vector<VertexId> half_from_;
  std::vector<std::vector<HalfId>> out_;
  std::vector<int> basis_index_;
  std::vector<EdgeId> basis_edges_;
  std::vector<HalfId> parent_half_;  // BFS tree: half from parent into v
  std::vector<std::string> vertex_names_, edge_names_;
};

using GraphPtr = std::shared_ptr<const Graph>;

bool is_edge_path(const Graph& g, const EdgePath& p);
bool is_closed_path(const Graph& g, const EdgePath& p);

EdgePath tighten_path(const EdgePath& p);
EdgePath tighten_cyclic(EdgePath p);

// Cyclically reduced closed path, normalized to the lexicographically least
// word over all rotations of itself and of its reversal.
struct Loop {
  EdgePath halves;
  bool trivial() const { return halves.empty(); }
  int length() const { return (int)halves.size(); }
  auto operator<=>(const Loop&) const = default;
};

Loop canonical_loop(const Graph& g, const EdgePath& closed_path);
Loop canonical_loop_unchecked(const EdgePath& tightened);

std::vector<int> edge_crossings(const Graph& g, const EdgePath& p);
std::vector<int> vertex_visits(const Graph& g, const EdgePath& closed);

std::string path_tokens(const Graph& g, const EdgePath& p);

}  // namespace outer
