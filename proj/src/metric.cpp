#include "outer/metric.hpp"

#include <numeric>

namespace outer {

namespace {

// union-find acyclicity check on the zero-length edge set
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

bool zero_set_is_forest(const Graph& g, const std::vector<Rat>& lengths) {
  Dsu dsu(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (lengths[e] != 0) continue;
    if (!dsu.join(g.half_from(2 * e), g.half_to(2 * e))) return false;
  }
  return true;
}

void validate_metric(const Graph& g, const MetricAssignment& m) {
  if ((int)m.lengths.size() != g.num_edges())
    fail("metric has wrong number of edges");
  Rat total = 0;
  for (const Rat& l : m.lengths) {
    if (l < 0) fail("negative edge length");
    total += l;
  }
  if (total != 1) fail("edge lengths must sum to 1, got " + format_rational(total));
  if (!zero_set_is_forest(g, m.lengths))
    fail("zero-length edges contain a circle");
}

void validate_tangent(const Graph& g, const TangentVector& t) {
  if ((int)t.weights.size() != g.num_edges())
    fail("tangent vector has wrong number of edges");
  Rat total = 0;
  for (const Rat& w : t.weights) total += w;
  if (total != 0) fail("tangent weights must sum to 0");
}

bool integrable(const Graph& g, const MetricAssignment& m,
                const TangentVector& t) {
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (t.weights[e] < 0 && m.lengths[e] == 0) return false;
  return true;
}

Rat path_weight(const std::vector<Rat>& values, const EdgePath& p) {
  Rat total = 0;
  for (HalfId h : p) total += values[half_edge(h)];
  return total;
}

Rat loop_length(const Graph& g, const MetricAssignment& m,
                const EdgePath& loop) {
  if (!is_closed_path(g, loop)) fail("loop_length: not a closed path");
  return path_weight(m.lengths, tighten_cyclic(loop));
}

Rat tau_of_loop(const Graph& g, const TangentVector& t, const EdgePath& loop) {
  if (!is_closed_path(g, loop)) fail("tau_of_loop: not a closed path");
  return path_weight(t.weights, tighten_cyclic(loop));
}

MetricAssignment metric_plus(const MetricAssignment& m, const TangentVector& t,
                             const Rat& time) {
  MetricAssignment out;
  out.lengths.reserve(m.lengths.size());
  for (size_t e = 0; e < m.lengths.size(); ++e)
    out.lengths.push_back(m.lengths[e] + time * t.weights[e]);
  return out;
}

TangentVector negated(const TangentVector& t) {
  TangentVector out;
  out.weights.reserve(t.weights.size());
  for (const Rat& w : t.weights) out.weights.push_back(-w);
  return out;
}

TangentVector tangent_between(const MetricAssignment& from,
                              const MetricAssignment& to) {
  TangentVector out;
  out.weights.reserve(from.lengths.size());
  for (size_t e = 0; e < from.lengths.size(); ++e)
    out.weights.push_back(to.lengths[e] - from.lengths[e]);
  return out;
}

std::optional<Rat> segment_horizon(const MetricAssignment& m,
                                   const TangentVector& t) {
  std::optional<Rat> horizon;
  for (size_t e = 0; e < m.lengths.size(); ++e) {
    if (t.weights[e] >= 0) continue;
    Rat bound = -m.lengths[e] / t.weights[e];
    if (!horizon || bound < *horizon) horizon = bound;
  }
  return horizon;
}

}  // namespace outer
