#include "outer/homology.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <set>

namespace outer {

uint32_t class_of_loop(const Graph& g, const Loop& a) {
  return g.loop_class(a.halves);
}

bool DoubleCover::edge_crosses(EdgeId base_e) const {
  return (functional & base->edge_class_bit(base_e)) != 0;
}

std::vector<Rat> DoubleCover::lift_values(
    const std::vector<Rat>& base_values) const {
  std::vector<Rat> out(2 * base_values.size());
  for (size_t e = 0; e < base_values.size(); ++e)
    out[2 * e] = out[2 * e + 1] = base_values[e];
  return out;
}

std::optional<Loop> DoubleCover::lift_loop(const Loop& a, int start_sheet) const {
  int s = start_sheet;
  EdgePath lifted;
  for (HalfId h : a.halves) {
    EdgeId e = half_edge(h);
    int c = edge_crosses(e) ? 1 : 0;
    if ((h & 1) == 0) {
      lifted.push_back(2 * (2 * e + s));
    } else {
      lifted.push_back(2 * (2 * e + (s ^ c)) + 1);
    }
    s ^= c;
  }
  if (s != start_sheet) return std::nullopt;
  return canonical_loop(*total, lifted);
}

EdgePath DoubleCover::project(const EdgePath& upstairs) const {
  EdgePath out;
  for (HalfId h : upstairs)
    out.push_back(2 * (half_edge(h) >> 1) + (h & 1));
  return out;
}

std::vector<DoubleCover> enumerate_double_covers(const GraphPtr& g) {
  int n = g->rank();
  std::vector<DoubleCover> covers;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::pair<VertexId, VertexId>> ends;
    std::vector<std::string> vnames, enames;
    for (VertexId v = 0; v < g->num_vertices(); ++v) {
      vnames.push_back(g->vertex_name(v) + ".0");
      vnames.push_back(g->vertex_name(v) + ".1");
    }
    for (EdgeId e = 0; e < g->num_edges(); ++e) {
      int c = (mask & g->edge_class_bit(e)) ? 1 : 0;
      VertexId a = g->half_from(2 * e), b = g->half_to(2 * e);
      for (int s = 0; s < 2; ++s) {
        ends.emplace_back(2 * a + s, 2 * b + (s ^ c));
        enames.push_back(g->edge_name(e) + (s ? ".1" : ".0"));
      }
    }
    auto total = std::make_shared<const Graph>(2 * g->num_vertices(), ends,
                                               vnames, enames);
    if (total->rank() != 2 * n - 1) fail("double cover has unexpected rank");
    covers.push_back(DoubleCover{mask, g, total});
  }
  return covers;
}

int cover_count(int rank) { return (1 << rank) - 1; }

long long summand_count(int rank) {
  return (long long)((1 << rank) - 1) * (((1LL << (2 * rank - 1)) - 1));
}

namespace {

// realizers must cross doubly-used edges in opposite directions, and such an
// edge must separate the loop's image
bool crossing_condition(const Graph& g, const Loop& loop) {
  std::vector<int> fwd(g.num_edges(), 0), bwd(g.num_edges(), 0);
  for (HalfId h : loop.halves) ((h & 1) ? bwd : fwd)[half_edge(h)]++;
  std::vector<EdgeId> doubled;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    int total = fwd[e] + bwd[e];
    if (total > 2) return false;
    if (total == 2) {
      if (fwd[e] != 1) return false;  // same-direction double crossing
      doubled.push_back(e);
    }
  }
  for (EdgeId e : doubled) {
    VertexId a = g.half_from(2 * e), b = g.half_to(2 * e);
    if (a == b) return false;  // a self-loop never separates
    // BFS from a to b inside the image without e
    std::set<VertexId> seen{a};
    std::vector<VertexId> queue{a};
    while (!queue.empty()) {
      VertexId v = queue.back();
      queue.pop_back();
      for (HalfId h : g.out_halves(v)) {
        EdgeId f = half_edge(h);
        if (f == e || fwd[f] + bwd[f] == 0) continue;
        VertexId u = g.half_to(h);
        if (seen.insert(u).second) queue.push_back(u);
      }
    }
    if (seen.count(b)) return false;  // does not separate
  }
  return true;
}

template <class W>
struct Tables {
  W scale;
  std::vector<W> weight;                 // per edge, scaled
  std::vector<std::vector<W>> dist;      // [source vertex][state]
  std::vector<std::vector<char>> known;  // reachability
};

template <class W>
void run_dijkstra(const Graph& g, int bits, VertexId src, Tables<W>& t) {
  int states = g.num_vertices() << bits;
  auto& dist = t.dist[src];
  auto& known = t.known[src];
  dist.assign(states, W(0));
  known.assign(states, 0);
  std::vector<char> done(states, 0);
  using Item = std::pair<W, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  int start = (src << bits);
  dist[start] = W(0);
  known[start] = 1;
  heap.push({W(0), start});
  while (!heap.empty()) {
    auto [d, state] = heap.top();
    heap.pop();
    if (done[state]) continue;
    done[state] = 1;
    VertexId v = state >> bits;
    uint32_t cls = state & ((1 << bits) - 1);
    for (HalfId h : g.out_halves(v)) {
      EdgeId e = half_edge(h);
      int next = (g.half_to(h) << bits) | (cls ^ g.edge_class_bit(e));
      W nd = d + t.weight[e];
      if (!known[next] || nd < dist[next]) {
        dist[next] = nd;
        known[next] = 1;
        heap.push({nd, next});
      }
    }
  }
}

template <class W>
void enumerate_min_loops(const Graph& g, int bits, uint32_t cls, const W& target,
                         const Tables<W>& t, std::set<Loop>& out) {
  const uint32_t cmask = (1u << bits) - 1;
  for (VertexId v0 = 0; v0 < g.num_vertices(); ++v0) {
    int home = (v0 << bits) | cls;
    if (!t.known[v0][home] || t.dist[v0][home] != target) continue;
    EdgePath seq;
    std::vector<int> used(g.num_edges(), 0);
    auto dfs = [&](auto&& self, VertexId u, uint32_t c, const W& len) -> void {
      if (!seq.empty() && u == v0 && c == cls && len == target &&
          seq.front() != reverse_half(seq.back())) {
        Loop loop = canonical_loop_unchecked(seq);
        if (crossing_condition(g, loop)) out.insert(loop);
      }
      for (HalfId h : g.out_halves(u)) {
        if (!seq.empty() && h == reverse_half(seq.back())) continue;
        // only walk the rotation that starts at the least half; every loop
        // is still found from that start
        if (!seq.empty() && h < seq.front()) continue;
        EdgeId e = half_edge(h);
        if (used[e] == 2) continue;
        W len2 = len + t.weight[e];
        uint32_t c2 = c ^ g.edge_class_bit(e);
        VertexId to = g.half_to(h);
        int rest = (v0 << bits) | ((cls ^ c2) & cmask);
        if (!t.known[to][rest] || len2 + t.dist[to][rest] > target) continue;
        seq.push_back(h);
        ++used[e];
        self(self, to, c2, len2);
        --used[e];
        seq.pop_back();
      }
    };
    dfs(dfs, v0, 0, W(0));
  }
}

}  // namespace

struct ClassLengthEngine::Impl {
  Graph g;  // value copy; engines may outlive the cover list they came from
  int bits;
  bool small = false;
  Tables<long long> t64;
  Tables<BigInt> tbig;
  std::map<uint32_t, std::vector<Loop>> realizer_cache;

  Impl(const Graph& graph, std::vector<Rat> lengths) : g(graph), bits(g.rank()) {
    if ((int)lengths.size() != g.num_edges())
      fail("class lengths: wrong edge count");
    BigInt scale = 1;
    for (const Rat& l : lengths) {
      if (l < 0) fail("class lengths: negative edge length");
      const BigInt& d = boost::multiprecision::denominator(l);
      scale = boost::multiprecision::lcm(scale, d);
    }
    std::vector<BigInt> nums;
    BigInt maxnum = 0;
    for (const Rat& l : lengths) {
      BigInt n = boost::multiprecision::numerator(l) *
                 (scale / boost::multiprecision::denominator(l));
      maxnum = std::max(maxnum, n);
      nums.push_back(n);
    }
    small = scale < (BigInt(1) << 40) && maxnum < (BigInt(1) << 40);
    int nv = g.num_vertices();
    if (small) {
      t64.scale = scale.convert_to<long long>();
      for (const BigInt& n : nums) t64.weight.push_back(n.convert_to<long long>());
      t64.dist.resize(nv);
      t64.known.resize(nv);
      for (VertexId v = 0; v < nv; ++v) run_dijkstra(g, bits, v, t64);
    } else {
      tbig.scale = scale;
      tbig.weight = nums;
      tbig.dist.resize(nv);
      tbig.known.resize(nv);
      for (VertexId v = 0; v < nv; ++v) run_dijkstra(g, bits, v, tbig);
    }
  }

  template <class W>
  Rat min_length(const Tables<W>& t, uint32_t cls) const {
    bool first = true;
    W best{};
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      int state = (v << bits) | cls;
      if (!t.known[v][state]) continue;
      if (first || t.dist[v][state] < best) {
        best = t.dist[v][state];
        first = false;
      }
    }
    if (first) fail("class unreachable");
    return Rat(BigInt(best), BigInt(t.scale));
  }
};

ClassLengthEngine::ClassLengthEngine(const Graph& g, std::vector<Rat> lengths)
    : impl_(std::make_unique<Impl>(g, std::move(lengths))) {}
ClassLengthEngine::~ClassLengthEngine() = default;
ClassLengthEngine::ClassLengthEngine(ClassLengthEngine&&) noexcept = default;

Rat ClassLengthEngine::length(uint32_t cls) const {
  if (cls == 0 || cls >= (1u << impl_->bits))
    fail("class index must be a nonzero element of H1");
  return impl_->small ? impl_->min_length(impl_->t64, cls)
                      : impl_->min_length(impl_->tbig, cls);
}

const std::vector<Loop>& ClassLengthEngine::realizers(uint32_t cls) {
  if (cls == 0 || cls >= (1u << impl_->bits))
    fail("class index must be a nonzero element of H1");
  auto it = impl_->realizer_cache.find(cls);
  if (it != impl_->realizer_cache.end()) return it->second;
  std::set<Loop> found;
  auto scaled_min = [&](const auto& t) {
    using W = std::decay_t<decltype(t.scale)>;
    bool first = true;
    W best{};
    for (VertexId v = 0; v < impl_->g.num_vertices(); ++v) {
      int state = (v << impl_->bits) | cls;
      if (!t.known[v][state]) continue;
      if (first || t.dist[v][state] < best) {
        best = t.dist[v][state];
        first = false;
      }
    }
    if (first) fail("class unreachable");
    return best;
  };
  if (impl_->small) {
    enumerate_min_loops(impl_->g, impl_->bits, cls, scaled_min(impl_->t64),
                        impl_->t64, found);
  } else {
    enumerate_min_loops(impl_->g, impl_->bits, cls, scaled_min(impl_->tbig),
                        impl_->tbig, found);
  }
  if (found.empty()) fail("no realizer found for class");
  auto [pos, ok] = impl_->realizer_cache.emplace(
      cls, std::vector<Loop>(found.begin(), found.end()));
  (void)ok;
  return pos->second;
}

ClassLengthReport ClassLengthEngine::report(uint32_t cls) {
  ClassLengthReport r;
  r.cls = cls;
  r.length = length(cls);
  r.realizers = realizers(cls);
  return r;
}

ClassLengthReport shortest_in_class(const Graph& g,
                                    const std::vector<Rat>& lengths,
                                    uint32_t cls) {
  ClassLengthEngine engine(g, lengths);
  return engine.report(cls);
}

std::pair<uint32_t, Loop> lift_candidate(const Graph& g, const Candidate& c,
                                         const std::vector<DoubleCover>& covers) {
  auto parity = [](uint32_t x) { return std::popcount(x) & 1; };
  auto circle_class = [&](const std::vector<EdgeId>& edges) {
    uint32_t bits = 0;
    for (EdgeId e : edges) bits ^= g.edge_class_bit(e);
    return bits;
  };
  uint32_t chosen = 0;
  if (c.kind == CandidateKind::embedded) {
    uint32_t cls = g.loop_class(c.loop.halves);
    for (uint32_t mask = 1; mask < (1u << g.rank()); ++mask) {
      if (!parity(mask & cls)) {
        chosen = mask;
        break;
      }
    }
  } else {
    uint32_t cu = circle_class(c.circle_u), cv = circle_class(c.circle_v);
    for (uint32_t mask = 1; mask < (1u << g.rank()); ++mask) {
      if (parity(mask & cu) && parity(mask & cv)) {
        chosen = mask;
        break;
      }
    }
  }
  if (chosen == 0) fail("no suitable double cover exists");
  const DoubleCover& cover = covers[chosen - 1];
  if (cover.functional != chosen) fail("cover list is not in functional order");
  auto lift = cover.lift_loop(c.loop, 0);
  if (!lift) fail("candidate unexpectedly fails to lift");
  return {chosen, *lift};
}

}  // namespace outer
