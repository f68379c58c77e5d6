#include "outer/graph.hpp"

#include <algorithm>
#include <deque>

namespace outer {

EdgePath reversed_path(const EdgePath& p) {
  EdgePath r(p.rbegin(), p.rend());
  for (HalfId& h : r) h = reverse_half(h);
  return r;
}

Graph::Graph(int num_vertices, std::vector<std::pair<VertexId, VertexId>> ends,
             std::vector<std::string> vertex_names,
             std::vector<std::string> edge_names)
    : num_vertices_(num_vertices) {
  int ne = (int)ends.size();
  if (num_vertices <= 0) fail("graph needs at least one vertex");
  half_from_.resize(2 * ne);
  for (int e = 0; e < ne; ++e) {
    auto [a, b] = ends[e];
    if (a < 0 || a >= num_vertices || b < 0 || b >= num_vertices)
      fail("edge endpoint out of range");
    half_from_[2 * e] = a;
    half_from_[2 * e + 1] = b;
  }
  out_.resize(num_vertices);
  for (HalfId h = 0; h < 2 * ne; ++h) out_[half_from_[h]].push_back(h);
  for (VertexId v = 0; v < num_vertices; ++v) {
    if ((int)out_[v].size() < 3)
      fail("vertex of valence < 3: " +
           (v < (int)vertex_names.size() ? vertex_names[v] : std::to_string(v)));
  }

  // BFS spanning tree from vertex 0, halves scanned in increasing order
  parent_half_.assign(num_vertices, -1);
  std::vector<char> seen(num_vertices, 0);
  std::vector<char> tree(ne, 0);
  std::deque<VertexId> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (HalfId h : out_[v]) {
      VertexId u = half_to(h);
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        parent_half_[u] = h;
        tree[half_edge(h)] = 1;
        queue.push_back(u);
      }
    }
  }
  if (reached != num_vertices) fail("graph is not connected");

  basis_index_.assign(ne, -1);
  for (EdgeId e = 0; e < ne; ++e) {
    if (!tree[e]) {
      basis_index_[e] = (int)basis_edges_.size();
      basis_edges_.push_back(e);
    }
  }
  rank_ = (int)basis_edges_.size();
  if (rank_ != ne - num_vertices + 1) fail("rank bookkeeping mismatch");
  if (rank_ > 20) fail("rank too large");

  vertex_names_ = std::move(vertex_names);
  edge_names_ = std::move(edge_names);
  for (int v = (int)vertex_names_.size(); v < num_vertices; ++v)
    vertex_names_.push_back("v" + std::to_string(v));
  for (int e = (int)edge_names_.size(); e < ne; ++e)
    edge_names_.push_back("e" + std::to_string(e));
}

uint32_t Graph::loop_class(const EdgePath& closed) const {
  uint32_t bits = 0;
  for (HalfId h : closed) bits ^= edge_class_bit(half_edge(h));
  return bits;
}

EdgePath Graph::tree_path(VertexId from, VertexId to) const {
  EdgePath up;  // from -> root
  for (VertexId v = from; parent_half_[v] >= 0; v = half_from(parent_half_[v]))
    up.push_back(reverse_half(parent_half_[v]));
  EdgePath down_rev;  // to -> root
  for (VertexId v = to; parent_half_[v] >= 0; v = half_from(parent_half_[v]))
    down_rev.push_back(reverse_half(parent_half_[v]));
  EdgePath path = up;
  EdgePath down = reversed_path(down_rev);
  path.insert(path.end(), down.begin(), down.end());
  return tighten_path(path);
}

std::string Graph::half_token(HalfId h) const {
  std::string t = edge_name(half_edge(h));
  if (h & 1) t += "'";
  return t;
}

bool Graph::same_structure(const Graph& other) const {
  return num_vertices_ == other.num_vertices_ && half_from_ == other.half_from_;
}

bool is_edge_path(const Graph& g, const EdgePath& p) {
  for (HalfId h : p)
    if (h < 0 || h >= g.num_halves()) return false;
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (g.half_to(p[i]) != g.half_from(p[i + 1])) return false;
  return true;
}

bool is_closed_path(const Graph& g, const EdgePath& p) {
  if (!is_edge_path(g, p)) return false;
  if (p.empty()) return true;
  return g.half_to(p.back()) == g.half_from(p.front());
}

EdgePath tighten_path(const EdgePath& p) {
  EdgePath out;
  out.reserve(p.size());
  for (HalfId h : p) {
    if (!out.empty() && out.back() == reverse_half(h))
      out.pop_back();
    else
      out.push_back(h);
  }
  return out;
}

EdgePath tighten_cyclic(EdgePath p) {
  p = tighten_path(p);
  size_t lo = 0, hi = p.size();
  while (hi - lo >= 2 && p[lo] == reverse_half(p[hi - 1])) {
    ++lo;
    --hi;
  }
  return EdgePath(p.begin() + lo, p.begin() + hi);
}

Loop canonical_loop_unchecked(const EdgePath& tightened) {
  const size_t n = tightened.size();
  if (n == 0) return Loop{};
  EdgePath best;
  auto consider = [&](const EdgePath& word) {
    for (size_t r = 0; r < n; ++r) {
      EdgePath rot(word.begin() + r, word.end());
      rot.insert(rot.end(), word.begin(), word.begin() + r);
      if (best.empty() || rot < best) best = std::move(rot);
    }
  };
  consider(tightened);
  consider(reversed_path(tightened));
  return Loop{best};
}

Loop canonical_loop(const Graph& g, const EdgePath& closed_path) {
  if (!is_closed_path(g, closed_path)) fail("not a closed edge path");
  return canonical_loop_unchecked(tighten_cyclic(closed_path));
}

std::vector<int> edge_crossings(const Graph& g, const EdgePath& p) {
  std::vector<int> c(g.num_edges(), 0);
  for (HalfId h : p) ++c[half_edge(h)];
  return c;
}

std::vector<int> vertex_visits(const Graph& g, const EdgePath& closed) {
  std::vector<int> c(g.num_vertices(), 0);
  for (HalfId h : closed) ++c[g.half_from(h)];
  return c;
}

std::string path_tokens(const Graph& g, const EdgePath& p) {
  if (p.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += " ";
    s += g.half_token(p[i]);
  }
  return s;
}

}  // namespace outer
