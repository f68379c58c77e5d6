#include "outer/candidates.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace outer {

const char* kind_name(CandidateKind k) {
  switch (k) {
    case CandidateKind::embedded: return "embedded";
    case CandidateKind::figure_eight: return "figure-eight";
    case CandidateKind::barbell: return "barbell";
  }
  return "?";
}

std::vector<Loop> enumerate_embedded_circles(const Graph& g) {
  std::set<Loop> found;
  EdgePath seq;
  std::vector<char> vertex_used(g.num_vertices(), 0);
  std::vector<char> edge_used(g.num_edges(), 0);

  auto dfs = [&](auto&& self, VertexId v0, VertexId u) -> void {
    for (HalfId h : g.out_halves(u)) {
      EdgeId e = half_edge(h);
      if (edge_used[e]) continue;
      VertexId to = g.half_to(h);
      seq.push_back(h);
      edge_used[e] = 1;
      if (to == v0) {
        found.insert(canonical_loop_unchecked(seq));
      } else if (!vertex_used[to]) {
        vertex_used[to] = 1;
        self(self, v0, to);
        vertex_used[to] = 0;
      }
      edge_used[e] = 0;
      seq.pop_back();
    }
  };
  for (VertexId v0 = 0; v0 < g.num_vertices(); ++v0) {
    vertex_used[v0] = 1;
    dfs(dfs, v0, v0);
    vertex_used[v0] = 0;
  }
  return std::vector<Loop>(found.begin(), found.end());
}

namespace {

std::set<VertexId> loop_vertices(const Graph& g, const Loop& a) {
  std::set<VertexId> vs;
  for (HalfId h : a.halves) vs.insert(g.half_from(h));
  return vs;
}

std::vector<EdgeId> loop_edges(const Loop& a) {
  std::set<EdgeId> es;
  for (HalfId h : a.halves) es.insert(half_edge(h));
  return std::vector<EdgeId>(es.begin(), es.end());
}

EdgePath rotate_to_vertex(const Graph& g, const Loop& a, VertexId p) {
  for (size_t k = 0; k < a.halves.size(); ++k) {
    if (g.half_from(a.halves[k]) == p) {
      EdgePath r(a.halves.begin() + k, a.halves.end());
      r.insert(r.end(), a.halves.begin(), a.halves.begin() + k);
      return r;
    }
  }
  fail("circle does not pass through the requested vertex");
}

// embedded arcs from a vertex of u to a vertex of v avoiding both circles
std::vector<EdgePath> connecting_arcs(const Graph& g,
                                      const std::set<VertexId>& u_verts,
                                      const std::set<VertexId>& v_verts) {
  std::vector<EdgePath> arcs;
  EdgePath seq;
  std::set<VertexId> visited;
  auto dfs = [&](auto&& self, VertexId at) -> void {
    for (HalfId h : g.out_halves(at)) {
      VertexId to = g.half_to(h);
      seq.push_back(h);
      if (v_verts.count(to)) {
        arcs.push_back(seq);
      } else if (!u_verts.count(to) && !visited.count(to)) {
        visited.insert(to);
        self(self, to);
        visited.erase(to);
      }
      seq.pop_back();
    }
  };
  for (VertexId p : u_verts) {
    visited = {p};
    dfs(dfs, p);
  }
  return arcs;
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const Graph& g) {
  std::map<Loop, Candidate> out;
  auto put = [&](Loop loop, CandidateKind kind, std::vector<EdgeId> cu,
                 std::vector<EdgeId> cv, std::vector<EdgeId> arc) {
    out.emplace(loop, Candidate{loop, kind, std::move(cu), std::move(cv),
                                std::move(arc)});
  };

  std::vector<Loop> circles = enumerate_embedded_circles(g);
  for (const Loop& c : circles)
    put(c, CandidateKind::embedded, loop_edges(c), {}, {});

  std::vector<std::set<VertexId>> verts;
  verts.reserve(circles.size());
  for (const Loop& c : circles) verts.push_back(loop_vertices(g, c));

  for (size_t i = 0; i < circles.size(); ++i) {
    for (size_t j = i + 1; j < circles.size(); ++j) {
      std::vector<VertexId> common;
      std::set_intersection(verts[i].begin(), verts[i].end(), verts[j].begin(),
                            verts[j].end(), std::back_inserter(common));
      if (common.size() == 1) {
        VertexId p = common.front();
        EdgePath ru = rotate_to_vertex(g, circles[i], p);
        EdgePath rv = rotate_to_vertex(g, circles[j], p);
        for (int flip = 0; flip < 2; ++flip) {
          EdgePath w = ru;
          EdgePath second = flip ? reversed_path(rv) : rv;
          w.insert(w.end(), second.begin(), second.end());
          put(canonical_loop(g, w), CandidateKind::figure_eight,
              loop_edges(circles[i]), loop_edges(circles[j]), {});
        }
      } else if (common.empty()) {
        for (const EdgePath& arc : connecting_arcs(g, verts[i], verts[j])) {
          VertexId p = g.half_from(arc.front());
          VertexId q = g.half_to(arc.back());
          EdgePath ru = rotate_to_vertex(g, circles[i], p);
          EdgePath rv = rotate_to_vertex(g, circles[j], q);
          for (int flip = 0; flip < 2; ++flip) {
            EdgePath w = ru;
            w.insert(w.end(), arc.begin(), arc.end());
            EdgePath mid = flip ? reversed_path(rv) : rv;
            w.insert(w.end(), mid.begin(), mid.end());
            EdgePath back = reversed_path(arc);
            w.insert(w.end(), back.begin(), back.end());
            std::vector<EdgeId> arc_edges;
            for (HalfId h : arc) arc_edges.push_back(half_edge(h));
            put(canonical_loop(g, w), CandidateKind::barbell,
                loop_edges(circles[i]), loop_edges(circles[j]), arc_edges);
          }
        }
      }
    }
  }

  std::vector<Candidate> result;
  result.reserve(out.size());
  for (auto& [loop, cand] : out) result.push_back(std::move(cand));
  return result;
}

Rat systole(const Graph& g, const MetricAssignment& m) {
  std::vector<Loop> circles = enumerate_embedded_circles(g);
  if (circles.empty()) fail("graph has no circles");
  Rat best = path_weight(m.lengths, circles.front().halves);
  for (size_t i = 1; i < circles.size(); ++i) {
    Rat l = path_weight(m.lengths, circles[i].halves);
    if (l < best) best = l;
  }
  return best;
}

}  // namespace outer
