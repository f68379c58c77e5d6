#include "outer/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace outer {

namespace oracle {

std::vector<Loop> bounded_loops(const Graph& g, int max_crossings) {
  std::set<Loop> found;
  EdgePath seq;
  std::vector<int> used(g.num_edges(), 0);
  auto dfs = [&](auto&& self, VertexId v0, VertexId u) -> void {
    for (HalfId h : g.out_halves(u)) {
      if (!seq.empty() && h == reverse_half(seq.back())) continue;
      if (!seq.empty() && h < seq.front()) continue;  // found from h's own start
      EdgeId e = half_edge(h);
      if (used[e] >= max_crossings) continue;
      seq.push_back(h);
      ++used[e];
      VertexId to = g.half_to(h);
      if (to == v0 && seq.front() != reverse_half(seq.back()))
        found.insert(canonical_loop_unchecked(seq));
      self(self, v0, to);
      --used[e];
      seq.pop_back();
    }
  };
  for (VertexId v0 = 0; v0 < g.num_vertices(); ++v0) dfs(dfs, v0, v0);
  return std::vector<Loop>(found.begin(), found.end());
}

bool is_embedded_loop(const Graph& g, const Loop& a) {
  if (a.trivial()) return false;
  for (int c : edge_crossings(g, a.halves))
    if (c > 1) return false;
  for (int c : vertex_visits(g, a.halves))
    if (c > 1) return false;
  return true;
}

bool is_figure_eight(const Graph& g, const Loop& a) {
  if (a.length() < 2) return false;
  for (int c : edge_crossings(g, a.halves))
    if (c > 1) return false;
  int doubled = 0;
  for (int c : vertex_visits(g, a.halves)) {
    if (c > 2) return false;
    if (c == 2) ++doubled;
  }
  // one vertex visited twice splits the loop into two embedded circles
  return doubled == 1;
}

bool is_barbell(const Graph& g, const Loop& a) {
  std::vector<int> fwd(g.num_edges(), 0), bwd(g.num_edges(), 0);
  for (HalfId h : a.halves) ((h & 1) ? bwd : fwd)[half_edge(h)]++;
  std::vector<EdgeId> arc, single;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    int c = fwd[e] + bwd[e];
    if (c > 2) return false;
    if (c == 2) {
      if (fwd[e] != 1) return false;  // must cross in opposite directions
      arc.push_back(e);
    } else if (c == 1) {
      single.push_back(e);
    }
  }
  if (arc.empty() || single.empty()) return false;

  // the doubly-crossed edges must form an embedded arc
  std::map<VertexId, int> arc_deg;
  for (EdgeId e : arc) {
    VertexId x = g.half_from(2 * e), y = g.half_to(2 * e);
    if (x == y) return false;
    arc_deg[x]++;
    arc_deg[y]++;
  }
  std::vector<VertexId> arc_ends;
  for (auto [v, d] : arc_deg) {
    if (d > 2) return false;
    if (d == 1) arc_ends.push_back(v);
  }
  if (arc_ends.size() != 2) return false;
  {  // connected, hence a path
    std::set<VertexId> seen{arc_ends[0]};
    std::vector<VertexId> queue{arc_ends[0]};
    while (!queue.empty()) {
      VertexId v = queue.back();
      queue.pop_back();
      for (EdgeId e : arc)
        for (VertexId u : {g.half_from(2 * e), g.half_to(2 * e)})
          if ((g.half_from(2 * e) == v || g.half_to(2 * e) == v) &&
              seen.insert(u).second)
            queue.push_back(u);
    }
    if ((int)seen.size() != (int)arc_deg.size()) return false;
  }

  // the singly-crossed edges split into two circles, one through each arc end
  auto component = [&](VertexId start) {
    std::set<VertexId> verts{start};
    std::set<EdgeId> edges;
    std::vector<VertexId> queue{start};
    while (!queue.empty()) {
      VertexId v = queue.back();
      queue.pop_back();
      for (EdgeId e : single) {
        VertexId x = g.half_from(2 * e), y = g.half_to(2 * e);
        if (x != v && y != v) continue;
        edges.insert(e);
        for (VertexId u : {x, y})
          if (verts.insert(u).second) queue.push_back(u);
      }
    }
    return std::make_pair(verts, edges);
  };
  auto [uv, ue] = component(arc_ends[0]);
  auto [vv, ve] = component(arc_ends[1]);
  for (VertexId x : uv)
    if (vv.count(x)) return false;  // circles must be disjoint
  if (ue.size() + ve.size() != single.size()) return false;
  auto is_circle = [&](const std::set<VertexId>& verts,
                       const std::set<EdgeId>& edges) {
    if (edges.empty()) return false;
    std::map<VertexId, int> deg;
    for (EdgeId e : edges) {
      deg[g.half_from(2 * e)]++;
      deg[g.half_to(2 * e)]++;
    }
    if (deg.size() != verts.size()) return false;
    for (auto [v, d] : deg)
      if (d != 2) return false;
    return true;
  };
  if (!is_circle(uv, ue) || !is_circle(vv, ve)) return false;
  // arc interior stays off the circles
  for (auto [v, d] : arc_deg)
    if (d == 2 && (uv.count(v) || vv.count(v))) return false;
  return true;
}

std::vector<Loop> candidate_loops(const Graph& g) {
  std::vector<Loop> out;
  for (const Loop& a : bounded_loops(g, 2))
    if (is_embedded_loop(g, a) || is_figure_eight(g, a) || is_barbell(g, a))
      out.push_back(a);
  return out;
}

namespace {

bool oracle_crossing_filter(const Graph& g, const Loop& a) {
  std::vector<int> fwd(g.num_edges(), 0), bwd(g.num_edges(), 0);
  for (HalfId h : a.halves) ((h & 1) ? bwd : fwd)[half_edge(h)]++;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    int c = fwd[e] + bwd[e];
    if (c > 2) return false;
    if (c != 2) continue;
    if (fwd[e] != 1) return false;
    VertexId p = g.half_from(2 * e), q = g.half_to(2 * e);
    if (p == q) return false;
    // walk the image without e
    std::set<VertexId> seen{p};
    std::vector<VertexId> queue{p};
    while (!queue.empty()) {
      VertexId v = queue.back();
      queue.pop_back();
      for (HalfId h : g.out_halves(v)) {
        EdgeId f = half_edge(h);
        if (f == e || fwd[f] + bwd[f] == 0) continue;
        if (seen.insert(g.half_to(h)).second) queue.push_back(g.half_to(h));
      }
    }
    if (seen.count(q)) return false;
  }
  return true;
}

}  // namespace

std::map<uint32_t, ClassMin> class_minima(const Graph& g,
                                          const std::vector<Rat>& lengths) {
  std::map<uint32_t, ClassMin> out;
  for (const Loop& a : bounded_loops(g, 2)) {
    uint32_t cls = g.loop_class(a.halves);
    if (cls == 0) continue;
    Rat len = path_weight(lengths, a.halves);
    auto it = out.find(cls);
    if (it == out.end() || len < it->second.length) {
      out[cls] = ClassMin{len, {a}};
    } else if (len == it->second.length) {
      it->second.realizers.push_back(a);
    }
  }
  for (auto& [cls, cm] : out) {
    std::vector<Loop> kept;
    for (const Loop& a : cm.realizers)
      if (oracle_crossing_filter(g, a)) kept.push_back(a);
    std::sort(kept.begin(), kept.end());
    cm.realizers = std::move(kept);
  }
  return out;
}

Rat norm_over_loops(const Graph& g, const MetricAssignment& m,
                    const TangentVector& t) {
  bool first = true;
  Rat best;
  for (const Loop& a : bounded_loops(g, 2)) {
    Rat ratio = path_weight(t.weights, a.halves) / path_weight(m.lengths, a.halves);
    if (first || ratio > best) {
      best = ratio;
      first = false;
    }
  }
  if (first) fail("oracle norm: no loops");
  return best;
}

Rat stretch_over_loops(const MarkedPoint& x, const MarkedPoint& y,
                       const GraphMap& phi) {
  bool first = true;
  Rat best;
  for (const Loop& a : bounded_loops(*x.graph, 2)) {
    Rat src = path_weight(x.metric.lengths, a.halves);
    if (src == 0) continue;
    Loop img = apply_map(phi, a);
    Rat ratio = path_weight(y.metric.lengths, img.halves) / src;
    if (first || ratio > best) {
      best = ratio;
      first = false;
    }
  }
  if (first) fail("oracle stretch: no loops");
  return best;
}

double dominant_eigenvalue(const std::vector<std::vector<long long>>& m,
                           double tol) {
  size_t n = m.size();
  std::vector<double> v(n, 1.0), w(n);
  double lam = 0;
  for (int iter = 0; iter < 200000; ++iter) {
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
      w[i] = 0;
      for (size_t j = 0; j < n; ++j) w[i] += double(m[i][j]) * v[j];
      total += w[i];
    }
    if (total == 0) return 0;
    double prev = lam;
    double norm = 0;
    for (double x : v) norm += x;
    lam = total / norm;
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / total;
    if (iter > 3 && std::abs(lam - prev) < tol * std::max(1.0, lam)) break;
  }
  return lam;
}

}  // namespace oracle

void SuiteResult::record(CheckRow row) {
  ++checked;
  if (!row.pass) {
    passed = false;
    notes.push_back("FAILED " + row.scenario + ": lhs=" + row.lhs +
                    " rhs=" + row.rhs + " witness=" + row.witness);
  }
  rows.push_back(std::move(row));
}

void SuiteResult::require(bool ok, const std::string& what) {
  ++checked;
  if (!ok) {
    passed = false;
    notes.push_back("FAILED " + what);
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_text(const std::vector<SuiteResult>& suites) {
  std::ostringstream out;
  out << "scenario,rank,seed,lhs,rhs,margin,witness\n";
  for (const SuiteResult& s : suites) {
    for (const CheckRow& r : s.rows) {
      std::string witness = r.witness;
      for (char& c : witness)
        if (c == ',' || c == '\n') c = ' ';
      out << r.scenario << "," << r.rank << "," << r.seed << "," << r.lhs << ","
          << r.rhs << "," << format_double(r.margin) << "," << witness << "\n";
    }
  }
  return out.str();
}

MarkedPoint example1_point(const Rat& k) {
  MetricAssignment m{{Rat(1) / k, 1 - Rat(1) / k}};
  return rose_point(2, std::move(m));
}

namespace {

MarkedPoint two_circle_point(bool with_second_arc, const std::vector<Rat>& lengths) {
  // vertices p, q; u at p, v at q, arc(s) between them
  std::vector<std::pair<VertexId, VertexId>> ends = {{0, 0}, {1, 1}, {0, 1}};
  std::vector<std::string> enames = {"u", "v", "w"};
  if (with_second_arc) {
    ends.emplace_back(0, 1);
    enames.back() = "s";
    enames.push_back("r");
  }
  auto g = std::make_shared<const Graph>(2, ends,
                                         std::vector<std::string>{"p", "q"},
                                         enames);
  int rank = g->rank();
  GraphPtr rose = make_rose(rank);
  const HalfId u = 0, v = 2, w = 4, r = 6;
  std::vector<EdgePath> petals;
  std::vector<EdgePath> edge_words(g->num_edges());
  if (!with_second_arc) {
    petals = {{u}, {w, v, reverse_half(w)}};
    edge_words[0] = {0};      // u -> a
    edge_words[1] = {2};      // v -> b
    edge_words[2] = {};       // w -> empty
  } else {
    petals = {{u}, {w, v, reverse_half(w)}, {w, reverse_half(r)}};
    edge_words[0] = {0};              // u -> a
    edge_words[1] = {2};              // v -> b
    edge_words[2] = {};               // s (arc w) -> empty
    edge_words[3] = {reverse_half(4)};  // r -> c'
  }
  GraphMap marking_in(rose, g, {0}, petals);
  GraphMap marking_out(g, rose, std::vector<VertexId>(2, 0), edge_words);
  MarkedPoint x{g, MetricAssignment{lengths}, std::move(marking_in),
                std::move(marking_out)};
  validate_point(x);
  return x;
}

}  // namespace

MarkedPoint example2_point(const Rat& eps, const Rat& t) {
  // circles eps and 1 - eps - t joined by an arc of length t
  return two_circle_point(false, {eps, 1 - eps - t, t});
}

MarkedPoint example3_point(const Rat& eps, const Rat& t) {
  // circles eps, eps and arcs t, 1 - t - 2 eps
  return two_circle_point(true, {eps, eps, t, 1 - t - 2 * eps});
}

std::vector<std::vector<long long>> transition_matrix(const GraphMap& f) {
  int n = f.src().num_edges();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (int j = 0; j < n; ++j)
    for (HalfId h : f.half_image(2 * j)) m[half_edge(h)][j]++;
  return m;
}

GraphMap path_witness(const PLPath& p) {
  GraphMap map = identity_map(p.segments.front().start.graph);
  for (const auto& gap : p.gaps) {
    if (!gap) continue;
    map = gap->collapsing ? compose(gap->fc.projection, map)
                          : compose(gap->fc.section, map);
  }
  return map;
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

long long quasi_constant(int rank) { return 3 * (summand_count(rank) + 1); }

CheckRow exact_row(const std::string& scenario, int rank, uint64_t seed,
                   const Rat& lhs, const Rat& rhs, bool pass,
                   const std::string& witness) {
  return CheckRow{scenario,
                  rank,
                  seed,
                  format_rational(lhs),
                  format_rational(rhs),
                  to_double(rhs - lhs),
                  witness,
                  pass};
}

CheckRow combo_row(const std::string& scenario, int rank, uint64_t seed,
                   LogCombo combo, const std::string& witness) {
  // combo >= 0 is the assertion
  bool pass = combo.sign() >= 0;
  return CheckRow{scenario, rank,    seed,   "0", "combo",
                  combo.estimate(),  witness, pass};
}

}  // namespace

SuiteResult regression_examples() {
  SuiteResult suite;
  suite.name = "examples";
  Timer timer;

  MarkedPoint x2 = example1_point(Rat(2));
  for (int k : {3, 4, 10}) {
    MarkedPoint xk = example1_point(Rat(k));
    GraphMap id = identity_map(xk.graph);
    Rat fwd = stretch(xk, x2, id).value;
    suite.record(exact_row("example1.forward.k" + std::to_string(k), 2, 0, fwd,
                           Rat(k, 2), fwd == Rat(k, 2), "x_k -> x_2"));
    Rat bwd = stretch(x2, xk, identity_map(x2.graph)).value;
    Rat expect = 2 - Rat(2, k);
    suite.record(exact_row("example1.backward.k" + std::to_string(k), 2, 0, bwd,
                           expect, bwd == expect && bwd < 2, "x_2 -> x_k"));
  }
  {
    MarkedPoint x4 = example1_point(Rat(4));
    Rat d24 = stretch(x2, x4, identity_map(x2.graph)).value;
    suite.require(d24 == Rat(3, 2), "example1: stretch(x_2 -> x_4) == 3/2");
  }

  for (Rat eps : {Rat(1, 20), Rat(1, 100)}) {
    Rat t = 1 - 2 * eps;
    MarkedPoint far = example2_point(eps, t);   // circles eps, eps; arc 1-2eps
    MarkedPoint face = example2_point(eps, Rat(0));
    Rat back = stretch(far, face, identity_map(far.graph)).value;
    Rat expect_back = (1 - eps) / eps;
    suite.record(exact_row("example2.backward.eps" + format_rational(eps), 2, 0,
                           back, expect_back, back == expect_back, "to arc 0"));
    Rat fwdv = stretch(face, far, identity_map(face.graph)).value;
    Rat oracle_v = oracle::stretch_over_loops(face, far, identity_map(face.graph));
    suite.record(exact_row("example2.forward.eps" + format_rational(eps), 2, 0,
                           fwdv, 2 - 2 * eps,
                           fwdv == 2 - 2 * eps && fwdv == oracle_v && fwdv < 2,
                           "pinned by loop oracle"));
  }

  for (Rat eps : {Rat(1, 20), Rat(1, 100)}) {
    Rat t(1, 5);
    MarkedPoint x0 = example3_point(eps, Rat(0));
    MarkedPoint xt = example3_point(eps, t);
    Rat fwd = stretch(x0, xt, identity_map(x0.graph)).value;
    Rat expect_fwd = 1 + t / eps;
    suite.record(exact_row("example3.forward.eps" + format_rational(eps), 3, 0,
                           fwd, expect_fwd, fwd == expect_fwd, "x_0 -> x_t"));
    Rat bwd = stretch(xt, x0, identity_map(xt.graph)).value;
    Rat expect_bwd = (1 - eps) / (1 - eps - t);
    suite.record(exact_row("example3.backward.eps" + format_rational(eps), 3, 0,
                           bwd, expect_bwd, bwd == expect_bwd, "x_t -> x_0"));
    suite.require(systole(*xt.graph, xt.metric) == eps,
                  "example3: systole equals eps");
  }

  suite.require(suite.checked > 0, "examples: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult suite_candidates(int graphs, uint64_t seed, int rank_filter) {
  SuiteResult suite;
  suite.name = "candidates";
  Timer timer;
  Rng rng(seed);
  for (int i = 0; i < graphs; ++i) {
    int rank = rank_filter ? rank_filter : 2 + (i % 2);
    GraphPtr g = random_graph(rank, rng);
    std::vector<Candidate> cands = enumerate_candidates(*g);
    std::set<Loop> got;
    for (const Candidate& c : cands) {
      got.insert(c.loop);
      bool kind_ok = false;
      switch (c.kind) {
        case CandidateKind::embedded:
          kind_ok = oracle::is_embedded_loop(*g, c.loop);
          break;
        case CandidateKind::figure_eight:
          kind_ok = oracle::is_figure_eight(*g, c.loop);
          break;
        case CandidateKind::barbell:
          kind_ok = oracle::is_barbell(*g, c.loop);
          break;
      }
      if (!kind_ok) {
        suite.require(false, "candidate kind check failed on " +
                                 path_tokens(*g, c.loop.halves));
      }
    }
    std::vector<Loop> expect = oracle::candidate_loops(*g);
    bool equal = got == std::set<Loop>(expect.begin(), expect.end());
    suite.record(CheckRow{"candidates.oracle", rank, seed + i,
                          std::to_string(got.size()),
                          std::to_string(expect.size()),
                          double((long long)expect.size() - (long long)got.size()),
                          "set equality", equal});

    MetricAssignment m = random_positive_metric(*g, rng);
    TangentVector t = random_tangent(*g, rng);
    NormReport norm = lipschitz_norm(*g, m, t);
    Rat oracle_norm = oracle::norm_over_loops(*g, m, t);
    suite.record(exact_row("norm.witness-maximal", rank, seed + i, norm.value,
                           oracle_norm, norm.value == oracle_norm,
                           path_tokens(*g, norm.witness.loop.halves)));

    Rat sys = systole(*g, m);
    Rat best;
    bool first = true;
    for (const Loop& a : oracle::bounded_loops(*g, 2)) {
      Rat len = path_weight(m.lengths, a.halves);
      if (first || len < best) {
        best = len;
        first = false;
      }
    }
    suite.record(exact_row("systole.oracle", rank, seed + i, sys, best,
                           sys == best, "min over bounded loops"));
  }
  suite.require(suite.checked > 0, "candidates: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult suite_homology(int instances, uint64_t seed, int rank_filter) {
  SuiteResult suite;
  suite.name = "homology";
  Timer timer;
  Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    int rank = rank_filter ? rank_filter : 2 + (i % 2);
    GraphPtr g = random_graph(rank, rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    if (i % 8 == 7) {
      // exercise a face: zero out one non-loop edge if the graph has one
      for (EdgeId e = 0; e < g->num_edges(); ++e) {
        if (g->half_from(2 * e) != g->half_to(2 * e)) {
          Rat freed = m.lengths[e];
          m.lengths[e] = 0;
          m.lengths[(e + 1) % g->num_edges()] += freed;
          break;
        }
      }
    }
    ClassLengthEngine engine(*g, m.lengths);
    auto expect = oracle::class_minima(*g, m.lengths);
    bool ok = true;
    std::string detail;
    for (uint32_t cls = 1; cls < (1u << rank); ++cls) {
      ClassLengthReport got = engine.report(cls);
      auto it = expect.find(cls);
      if (it == expect.end() || got.length != it->second.length ||
          got.realizers != it->second.realizers) {
        ok = false;
        detail = "class " + std::to_string(cls);
        break;
      }
      for (const Loop& r : got.realizers) {
        for (int c : edge_crossings(*g, r.halves))
          if (c > 2) ok = false;
      }
    }
    suite.record(CheckRow{"homology.oracle", rank, seed + i,
                          ok ? "equal" : "diff", "equal", ok ? 0.0 : -1.0,
                          detail, ok});
  }
  suite.require(suite.checked > 0, "homology: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult suite_norms(int rank2_samples, int rank3_samples, uint64_t seed,
                        int rank4_samples) {
  SuiteResult suite;
  suite.name = "norms";
  Timer timer;
  Rng rng(seed);
  int total = rank2_samples + rank3_samples + rank4_samples;
  for (int i = 0; i < total; ++i) {
    int rank = i < rank2_samples ? 2 : (i < rank2_samples + rank3_samples ? 3 : 4);
    GraphPtr g = random_graph(rank, rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    TangentVector tau = random_tangent(*g, rng);
    TangentVector neg = negated(tau);
    long long k = summand_count(rank);
    long long a = quasi_constant(rank);

    Rat norm_p = lipschitz_norm(*g, m, tau).value;
    Rat norm_m = lipschitz_norm(*g, m, neg).value;
    CorrectionValue n = correction_n(*g, m, tau);
    Rat vp = norm_p + n.max_value / Rat(k + 1);
    Rat vm = norm_m + (-n.min_value) / Rat(k + 1);  // N(l,-tau) = -N_min(l,tau)

    Rat lower = (norm_p > norm_m ? norm_p : norm_m) / Rat(k + 1);
    Rat upper = 2 * norm_p + norm_m;
    bool sandwich = lower <= vp && vp <= upper && vp > 0;
    suite.record(exact_row("norms.sandwich", rank, seed + i, lower, upper,
                           sandwich, format_rational(vp)));
    bool quasi = vp <= a * vm && vm <= a * vp;
    suite.record(CheckRow{"norms.quasi-symmetry", rank, seed + i,
                          format_rational(vp), format_rational(a * vm),
                          to_double(a * vm - vp), "A=" + std::to_string(a),
                          quasi});

    if (i % 4 == 0) {
      // subadditivity and positive homogeneity; exact at unique realizers
      TangentVector tau2 = random_tangent(*g, rng);
      Rat c(1 + (long long)rng.below(12), 1 + (long long)rng.below(12));
      Rat n1 = lipschitz_norm(*g, m, tau).value;
      TangentVector sum{tau.weights};
      for (size_t e = 0; e < sum.weights.size(); ++e)
        sum.weights[e] += tau2.weights[e];
      Rat nsum = lipschitz_norm(*g, m, sum).value;
      Rat n2 = lipschitz_norm(*g, m, tau2).value;
      suite.require(nsum <= n1 + n2, "lipschitz norm subadditive");
      TangentVector scaled{tau.weights};
      for (Rat& wgt : scaled.weights) wgt *= c;
      suite.require(lipschitz_norm(*g, m, scaled).value == c * n1,
                    "lipschitz norm positively homogeneous");
      if (n.derivative_unambiguous) {
        CorrectionValue n2v = correction_n(*g, m, tau2);
        CorrectionValue nsv = correction_n(*g, m, sum);
        if (n2v.derivative_unambiguous && nsv.derivative_unambiguous) {
          Rat lhs = nsum + nsv.max_value / Rat(k + 1);
          Rat rhs = vp + n2 + n2v.max_value / Rat(k + 1);
          suite.require(lhs <= rhs, "corrected norm subadditive (unique case)");
        } else {
          ++suite.skipped;
        }
      } else {
        ++suite.skipped;
      }
    }
  }
  suite.require(suite.checked > 0, "norms: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult suite_derivative(int generic_samples, uint64_t seed) {
  SuiteResult suite;
  suite.name = "derivative";
  Timer timer;
  Rng rng(seed);
  std::vector<Rat> steps = {Rat(1, 1000), Rat(1, 10000), Rat(1, 100000),
                            Rat(1, 1000000)};
  int produced = 0, attempts = 0;
  while (produced < generic_samples && attempts < generic_samples * 20) {
    ++attempts;
    int rank = 2;
    GraphPtr g = random_graph(rank, rng);
    MetricAssignment m = random_positive_metric(*g, rng);
    TangentVector tau = random_tangent(*g, rng);
    PsiDerivativeReport rep = psi_directional_derivative_check(*g, m, tau, steps);
    if (!rep.generic) {
      ++suite.skipped;
      suite.note("skip: " + rep.skip_reason);
      continue;
    }
    if (rep.rows.size() != steps.size()) {
      ++suite.skipped;
      continue;
    }
    ++produced;
    double tight = rep.rows.back().error;
    suite.record(CheckRow{"derivative.fd", rank, seed + attempts,
                          format_double(rep.rows.back().quotient),
                          format_double(rep.predicted), 1e-3 - tight,
                          "t=1e-6", tight <= 1e-3});
    suite.require(rep.rows.back().error <= rep.rows.front().error * 1.01 + 1e-9,
                  "derivative: error shrinks along the step sweep");
  }
  suite.require(produced >= generic_samples,
                "derivative: enough generic samples");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult suite_paths(int paths, uint64_t seed, int rank_filter) {
  SuiteResult suite;
  suite.name = "paths";
  Timer timer;
  Rng rng(seed);
  for (int i = 0; i < paths; ++i) {
    int style = i % 10;
    int rank = rank_filter ? rank_filter : ((style == 9) ? 3 : 2);
    bool with_transition = style >= 6 && style <= 8;
    PLPath p = sample_path(rank, 1 + (i % 3), with_transition, seed + i);
    long long k = summand_count(rank);
    long long a = quasi_constant(rank);

    PathIdentityReport idrep = check_path_identity(p);
    suite.record(CheckRow{"paths.identity", rank, seed + i,
                          format_double(idrep.len_n - idrep.len_l),
                          format_double(idrep.delta_psi), idrep.residual,
                          with_transition ? "with transition" : "straight",
                          idrep.exact});

    if (i % 3 == 0) {
      // len_L dominates the endpoint distance
      GraphMap w = path_witness(p);
      Rat s = stretch(path_start(p), path_end(p), w).value;
      LogCombo c = len_l(p).combo;
      c.add(s, -1);
      suite.record(combo_row("paths.lenL-vs-distance", rank, seed + i, c,
                             "d <= len_L"));
    }
    if (i % 2 == 0) {
      CorrectedLengthReport fwd = len_n(p);
      CorrectedLengthReport rev = len_n(reverse_pl_path(p));
      LogCombo fwd_n, rev_n;
      fwd_n.add_all(fwd.len_l_combo, k + 1);
      fwd_n.add_all(fwd.correction_combo, 1);
      rev_n.add_all(rev.len_l_combo, k + 1);
      rev_n.add_all(rev.correction_combo, 1);
      LogCombo quasi;
      quasi.add_all(fwd_n, a);
      quasi.add_all(rev_n, -1);
      suite.record(combo_row("paths.reverse-quasi-symmetry", rank, seed + i,
                             quasi, "len_N(-p) <= A len_N(p)"));

      // len_L(p) <= A len_L(-p) + (A+1)[psi(start) - psi(end)]
      LogCombo lip;
      lip.add_all(rev.len_l_combo, a * (k + 1));
      lip.add_all(fwd.len_l_combo, -(k + 1));
      LogCombo start_terms = psi(path_start(p)).log_product();
      LogCombo end_terms = psi(path_end(p)).log_product();
      lip.add_all(end_terms, a + 1);
      lip.add_all(start_terms, -(a + 1));
      suite.record(combo_row("paths.length-comparison", rank, seed + i, lip,
                             "len_L vs reverse"));
    }
    if (i % 5 == 0 && p.segments[0].duration > 0) {
      PLPath refined = subdivide_segment(p, 0, p.segments[0].duration / 3);
      LogCombo diff = len_l(p).combo;
      diff.add_all(len_l(refined).combo, -1);
      suite.require(diff.sign() == 0, "paths: len_L refinement invariant");
      PathIdentityReport idref = check_path_identity(refined);
      suite.require(idref.exact, "paths: identity after refinement");
    }
    if (i % 4 == 0) {
      // distance-level comparison on the endpoints of a constructed path
      MarkedPoint x = path_start(p), y = path_end(p);
      Rat s_xy = stretch(x, y, path_witness(p)).value;
      Rat s_yx = stretch(y, x, path_witness(reverse_pl_path(p))).value;
      LogCombo main;
      main.add(s_yx, a * (k + 1));
      main.add(s_xy, -(k + 1));
      main.add_all(psi(y).log_product(), a + 1);
      main.add_all(psi(x).log_product(), -(a + 1));
      suite.record(combo_row("paths.endpoint-distance-bound", rank, seed + i,
                             main, "via path witnesses"));
    }
  }
  suite.require(suite.checked > 0, "paths: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult verify_main_theorem(int pairs, uint64_t seed, int rank_filter) {
  SuiteResult suite;
  suite.name = "main";
  Timer timer;
  Rng rng(seed);
  int triggered = 0;

  auto check_pair = [&](const std::string& tag, int rank, uint64_t sd,
                        const MarkedPoint& x, const MarkedPoint& y,
                        const GraphMap& fwd, const GraphMap& bwd) {
    long long k = summand_count(rank);
    long long a = quasi_constant(rank);
    Rat s_xy = stretch(x, y, fwd).value;
    Rat s_yx = stretch(y, x, bwd).value;
    LogCombo lx = psi(x).log_product();
    LogCombo ly = psi(y).log_product();

    for (int order = 0; order < 2; ++order) {
      const Rat& sf = order ? s_yx : s_xy;
      const Rat& sb = order ? s_xy : s_yx;
      const LogCombo& pf = order ? ly : lx;
      const LogCombo& pb = order ? lx : ly;
      // (k+1) log sf <= a(k+1) log sb + (a+1)(sum_b - sum_f)
      LogCombo main;
      main.add(sb, a * (k + 1));
      main.add(sf, -(k + 1));
      main.add_all(pb, a + 1);
      main.add_all(pf, -(a + 1));
      suite.record(combo_row(tag + (order ? ".yx" : ".xy"), rank, sd, main,
                             "d<=A d' + (A+1)dPsi"));

      // Remark: d(x,y) >= 2A d(y,x) forces the potential gap bounds
      LogCombo trigger;
      trigger.add(sf, 1);
      trigger.add(sb, -2 * a);
      if (trigger.sign() >= 0) {
        ++triggered;
        LogCombo upper;  // psi(x)-psi(y) <= d(x,y)
        upper.add(sf, k + 1);
        upper.add_all(pf, -1);
        upper.add_all(pb, 1);
        suite.record(combo_row(tag + ".claim-upper", rank, sd, upper,
                               "dPsi <= d"));
        LogCombo lower;  // d/(2(A+1)) <= psi(x)-psi(y)
        lower.add_all(pb, 2 * (a + 1));
        lower.add_all(pf, -2 * (a + 1));
        lower.add(sf, -(k + 1));
        suite.record(combo_row(tag + ".claim-lower", rank, sd, lower,
                               "d/(2(A+1)) <= dPsi"));
      }
    }
  };

  for (int i = 0; i < pairs; ++i) {
    int rank = rank_filter ? rank_filter : ((i % 2) ? 3 : 2);
    if (i % 8 == 7) {
      // orbit pair: same metric graph, marking twisted by an automorphism
      Rng prng(seed + i);
      MarkedPoint x = random_marked_point(rank, prng);
      auto autos = automorphism_fixtures(rank);
      const Automorphism& a1 = autos[1 + prng.below(autos.size() - 1)];
      const Automorphism& a2 = autos[1 + prng.below(autos.size() - 1)];
      GraphMap phi = compose(a2.map, a1.map);
      GraphMap phi_inv = compose(a1.inverse, a2.inverse);
      MarkedPoint y = act_by_automorphism(x, phi, phi_inv);
      suite.require(psi(x).sorted_lengths() == psi(y).sorted_lengths(),
                    "orbit pair: psi term table invariant");
      long long a = quasi_constant(rank);
      Rat s_xy = stretch(x, y, difference_of_markings(x, y)).value;
      Rat s_yx = stretch(y, x, difference_of_markings(y, x)).value;
      LogCombo orbit;
      orbit.add(s_yx, a);
      orbit.add(s_xy, -1);
      suite.record(combo_row("main.orbit", rank, seed + i, orbit,
                             "d(x,y) <= A d(y,x)"));
      continue;
    }
    PointPairWitness pw = sample_pair(rank, i % 7, seed + i);
    check_pair("main.pair", rank, seed + i, pw.x, pw.y, pw.forward, pw.backward);
  }

  {
    // deterministic extreme pair so the Remark hypothesis genuinely fires
    Rat k(boost::multiprecision::pow(BigInt(2), 140));
    MarkedPoint xk = example1_point(k);
    MarkedPoint x2 = example1_point(Rat(2));
    check_pair("main.extreme", 2, 0, xk, x2, identity_map(xk.graph),
               identity_map(x2.graph));
  }
  suite.require(triggered > 0, "main: remark hypothesis triggered at least once");
  suite.require(suite.checked > 0, "main: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult verify_expansion_factors(int j_max) {
  SuiteResult suite;
  suite.name = "expansion";
  Timer timer;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  long long a = quasi_constant(2);

  std::vector<Automorphism> fixtures;
  {
    auto all = automorphism_fixtures(2);
    for (const Automorphism& f : all)
      if (f.name == "identity" || f.name == "fib" || f.name == "fib_t")
        fixtures.push_back(f);
    for (const Automorphism& f : all)
      if (f.name == "fib") fixtures.push_back(power(f, 2));
  }

  // train-track style base points: Fibonacci-ratio metrics
  MarkedPoint x = rose_point(2, MetricAssignment{{Rat(21, 34), Rat(13, 34)}});
  MarkedPoint xi = rose_point(2, MetricAssignment{{Rat(13, 34), Rat(21, 34)}});
  Rat d_xy = stretch(x, xi, identity_map(x.graph)).value;
  Rat d_yx = stretch(xi, x, identity_map(xi.graph)).value;
  Rat big_d = d_xy > d_yx ? d_xy : d_yx;

  for (const Automorphism& fixture : fixtures) {
    auto matrix = transition_matrix(fixture.map);
    double lam_pi = oracle::dominant_eigenvalue(matrix, 1e-13);
    if (fixture.name == "fib") {
      double err = std::abs(lam_pi - golden);
      suite.record(CheckRow{"expansion.power-iteration", 2, 0,
                            format_double(lam_pi), format_double(golden),
                            1e-9 - err, fixture.name, err <= 1e-9});
    }
    if (fixture.name == "identity") {
      suite.require(std::abs(lam_pi - 1.0) < 1e-12,
                    "expansion: identity has unit growth");
      continue;
    }

    Automorphism acc{fixture.name + "^j", identity_map(x.marking_in.src_ptr()),
                     identity_map(x.marking_in.src_ptr())};
    double lam_hat = 0, mu_hat = 0;
    bool budget_ok = true;
    for (int j = 1; j <= j_max; ++j) {
      acc.map = compose(fixture.map, acc.map);
      acc.inverse = compose(acc.inverse, fixture.inverse);
      if (acc.map.image_size() > 1000000) {
        budget_ok = false;
        suite.note("expansion: word budget exhausted at j=" + std::to_string(j));
        break;
      }
      MarkedPoint y = act_by_automorphism(x, acc.map, acc.inverse);
      Rat s_fwd = stretch(x, y, difference_of_markings(x, y)).value;
      Rat s_bwd = stretch(y, x, difference_of_markings(y, x)).value;
      suite.require(psi(x).sorted_lengths() == psi(y).sorted_lengths(),
                    "expansion: orbit leaves psi fixed");
      LogCombo orbit;
      orbit.add(s_bwd, a);
      orbit.add(s_fwd, -1);
      suite.record(combo_row("expansion.orbit." + fixture.name, 2, j, orbit,
                             "j=" + std::to_string(j)));

      Automorphism inv_acc{fixture.name, acc.inverse, acc.map};
      MarkedPoint yi = act_by_automorphism(xi, inv_acc.map, inv_acc.inverse);
      Rat s_inv = stretch(xi, yi, difference_of_markings(xi, yi)).value;
      // j log mu <= A j log lambda + 2D, via the triangle route
      LogCombo hm;
      hm.add(s_fwd, a);
      hm.add(big_d, 2);
      hm.add(s_inv, -1);
      suite.record(combo_row("expansion.hm-bound." + fixture.name, 2, j, hm,
                             "log mu <= A log lambda + 2D/j"));
      if (j == j_max) {
        lam_hat = log_rational(s_fwd) / j;
        mu_hat = log_rational(s_inv) / j;
      }
    }
    if (budget_ok) {
      bool ratio_ok = mu_hat <= double(a) * lam_hat + 1e-12;
      suite.record(CheckRow{"expansion.ratio." + fixture.name, 2,
                            (uint64_t)j_max, format_double(mu_hat),
                            format_double(double(a) * lam_hat),
                            double(a) * lam_hat - mu_hat,
                            "log mu / log lambda <= A", ratio_ok});
      suite.note(fixture.name + ": lambda_hat=" +
                 format_double(std::exp(lam_hat)) + " mu_hat=" +
                 format_double(std::exp(mu_hat)));
    }
  }
  suite.require(suite.checked > 0, "expansion: non-empty");
  suite.seconds = timer.secs();
  return suite;
}

SuiteResult verify_thick_part(const Rat& eps, int pairs, uint64_t seed) {
  SuiteResult suite;
  suite.name = "thick";
  Timer timer;
  Rng rng(seed);
  long long k = summand_count(2);
  long long a = quasi_constant(2);
  Rat inv_eps = 1 / eps;
  double worst_ratio = 0;

  for (int i = 0; i < pairs; ++i) {
    MarkedPoint base = random_marked_point(2, rng);
    MetricAssignment m1 = random_thick_metric(*base.graph, rng, eps);
    MetricAssignment m2 = random_thick_metric(*base.graph, rng, eps);
    MarkedPoint x = with_metric(base, m1);

    PLPath path;
    if (i % 2 == 0) {
      path = single_segment_path(x, m2);
    } else {
      MetricAssignment mid = random_thick_metric(*base.graph, rng, eps);
      path = concat_paths(single_segment_path(x, mid),
                          single_segment_path(with_metric(base, mid), m2));
    }
    LengthReport fwd = len_l(path);
    LengthReport rev = len_l(reverse_pl_path(path));

    // len_L(p) <= A len_L(-p) + 2(A+1) C with C = K log(1/eps)
    LogCombo bound;
    bound.add_all(rev.combo, a);
    bound.add(inv_eps, 2 * (a + 1) * k);
    bound.add_all(fwd.combo, -1);
    suite.record(combo_row("thick.length-bound", 2, seed + i, bound,
                           "C = K log(1/eps)"));

    // |psi| <= C on thick points, and within the computed systole bound
    MarkedPoint y_end = path_end(path);
    for (const MarkedPoint* pt : {&x, &y_end}) {
      LogCombo terms = psi(*pt).log_product();
      LogCombo c_hi, c_lo;
      c_hi.add(inv_eps, k * (k + 1));
      c_hi.add_all(terms, -1);
      c_lo.add(inv_eps, k * (k + 1));
      c_lo.add_all(terms, 1);
      bool ok = c_hi.sign() >= 0 && c_lo.sign() >= 0;
      Rat sys = systole(*pt->graph, pt->metric);
      Rat base_ratio = 1 / sys;
      if (base_ratio < 2) base_ratio = 2;
      LogCombo own_hi, own_lo;
      own_hi.add(base_ratio, k);
      own_hi.add_all(terms, -1);
      own_lo.add(base_ratio, k);
      own_lo.add_all(terms, 1);
      ok = ok && own_hi.sign() >= 0 && own_lo.sign() >= 0;
      suite.require(ok, "thick: |psi| within C and the systole bound");
    }

    Rat s_xy = stretch(path_start(path), path_end(path), path_witness(path)).value;
    Rat s_yx =
        stretch(path_end(path), path_start(path), path_witness(reverse_pl_path(path)))
            .value;
    if (s_xy > 1 && s_yx > 1) {
      double ratio = log_rational(s_yx) / log_rational(s_xy);
      worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
    }
  }
  suite.note("thick: empirical max asymmetry ratio " + format_double(worst_ratio));
  suite.require(worst_ratio > 0 && std::isfinite(worst_ratio),
                "thick: asymmetry ratio finite");

  // without the systole floor the ratio blows up along the thin family
  double thin_best = 0;
  MarkedPoint x2 = example1_point(Rat(2));
  for (int e = 6; e <= 13; ++e) {
    Rat kk = Rat(1LL << e);
    MarkedPoint xk = example1_point(kk);
    Rat fwd = stretch(xk, x2, identity_map(xk.graph)).value;
    Rat bwd = stretch(x2, xk, identity_map(x2.graph)).value;
    double ratio = log_rational(fwd) / log_rational(bwd);
    thin_best = std::max(thin_best, ratio);
    suite.rows.push_back(CheckRow{"thick.thin-sweep", 2, (uint64_t)e,
                                  format_double(log_rational(fwd)),
                                  format_double(log_rational(bwd)), ratio,
                                  "k=2^" + std::to_string(e), true});
  }
  suite.record(CheckRow{"thick.divergence", 2, 0, format_double(thin_best),
                        "10", thin_best - 10.0, "thin family", thin_best > 10});
  suite.seconds = timer.secs();
  return suite;
}

}  // namespace outer
