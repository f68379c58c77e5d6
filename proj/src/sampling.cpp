#include "outer/sampling.hpp"

#include "outer/candidates.hpp"

#include <algorithm>
#include <numeric>

namespace outer {

GraphPtr random_graph(int rank, Rng& rng) {
  for (int attempt = 0; attempt < 20000; ++attempt) {
    int nv = 1 + (int)rng.below((uint64_t)(2 * rank - 2));
    int ne = nv + rank - 1;
    std::vector<std::pair<VertexId, VertexId>> ends;
    for (VertexId v = 1; v < nv; ++v)
      ends.emplace_back((VertexId)rng.below(v), v);
    while ((int)ends.size() < ne)
      ends.emplace_back((VertexId)rng.below(nv), (VertexId)rng.below(nv));
    try {
      return std::make_shared<const Graph>(nv, ends);
    } catch (const std::runtime_error&) {
      // valence too small; redraw
    }
  }
  fail("random_graph: no valid graph found");
}

MetricAssignment random_positive_metric(const Graph& g, Rng& rng) {
  std::vector<long long> w(g.num_edges());
  long long total = 0;
  for (long long& x : w) {
    x = 1 + (long long)rng.below(1 << 16);
    total += x;
  }
  MetricAssignment m;
  for (long long x : w) m.lengths.push_back(Rat(x, total));
  return m;
}

MetricAssignment random_thick_metric(const Graph& g, Rng& rng, const Rat& eps) {
  for (int attempt = 0; attempt < 200000; ++attempt) {
    MetricAssignment m = random_positive_metric(g, rng);
    if (systole(g, m) >= eps) return m;
  }
  fail("random_thick_metric: rejection sampling exhausted");
}

TangentVector random_tangent(const Graph& g, Rng& rng) {
  int ne = g.num_edges();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<long long> z(ne);
    long long total = 0;
    for (long long& x : z) {
      x = -(1 << 15) + (long long)rng.below((1 << 16) + 1);
      total += x;
    }
    TangentVector t;
    bool zero = true;
    for (long long x : z) {
      Rat v(x * ne - total, (long long)(1 << 15) * ne * ne);
      if (v != 0) zero = false;
      t.weights.push_back(v);
    }
    if (!zero) return t;
  }
  fail("random_tangent: only zero vectors drawn");
}

TangentVector random_integrable_tangent(const Graph& g,
                                        const MetricAssignment& m, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    TangentVector t = random_tangent(g, rng);
    if (integrable(g, m, t)) return t;
  }
  fail("random_integrable_tangent: rejection exhausted");
}

namespace {

EdgePath word(const std::string& s) {
  EdgePath p;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ') continue;
    int petal = s[i] - 'a';
    bool primed = i + 1 < s.size() && s[i + 1] == '\'';
    if (primed) ++i;
    p.push_back(2 * petal + (primed ? 1 : 0));
  }
  return p;
}

Automorphism make_auto(const GraphPtr& rose, const std::string& name,
                       std::vector<std::string> images,
                       std::vector<std::string> inverse_images) {
  std::vector<EdgePath> fwd, bwd;
  for (const auto& s : images) fwd.push_back(word(s));
  for (const auto& s : inverse_images) bwd.push_back(word(s));
  Automorphism a{name, rose_map(rose, fwd), rose_map(rose, bwd)};
  if (!a.inverse.h1().times(a.map.h1()).is_identity() ||
      !a.map.h1().times(a.inverse.h1()).is_identity())
    fail("automorphism fixture '" + name + "' has a bad inverse");
  return a;
}

}  // namespace

std::vector<Automorphism> automorphism_fixtures(int rank) {
  GraphPtr rose = make_rose(rank);
  std::vector<Automorphism> out;
  auto pad = [&](std::vector<std::string> v) {
    for (int i = (int)v.size(); i < rank; ++i)
      v.push_back(std::string(1, char('a' + i)));
    return v;
  };
  out.push_back(make_auto(rose, "identity", pad({"a", "b"}), pad({"a", "b"})));
  out.push_back(make_auto(rose, "fib", pad({"ab", "a"}), pad({"b", "b'a"})));
  out.push_back(make_auto(rose, "fib_t", pad({"ba", "a"}), pad({"b", "ab'"})));
  out.push_back(make_auto(rose, "twist", pad({"ab", "b"}), pad({"ab'", "b"})));
  out.push_back(make_auto(rose, "swap", pad({"b", "a"}), pad({"b", "a"})));
  out.push_back(make_auto(rose, "flip", pad({"a'", "b"}), pad({"a'", "b"})));
  if (rank >= 3) {
    out.push_back(make_auto(rose, "cycle3", pad({"b", "c", "a"}),
                            pad({"c", "a", "b"})));
    out.push_back(make_auto(rose, "fib3", pad({"ab", "c", "a"}),
                            pad({"c", "c'a", "b"})));
    out.push_back(make_auto(rose, "twist_bc", pad({"a", "bc", "c"}),
                            pad({"a", "bc'", "c"})));
  }
  if (rank >= 4) {
    out.push_back(make_auto(rose, "twist_cd", pad({"a", "b", "cd", "d"}),
                            pad({"a", "b", "cd'", "d"})));
  }
  return out;
}

Automorphism power(const Automorphism& a, int n) {
  if (n < 0) {
    Automorphism inv{a.name + "^-1", a.inverse, a.map};
    return power(inv, -n);
  }
  GraphPtr rose = a.map.src_ptr();
  Automorphism out{a.name + "^" + std::to_string(n), identity_map(rose),
                   identity_map(rose)};
  for (int i = 0; i < n; ++i) {
    out.map = compose(a.map, out.map);
    out.inverse = compose(out.inverse, a.inverse);
  }
  return out;
}

MarkedPoint random_marked_point(int rank, Rng& rng) {
  GraphPtr g = random_graph(rank, rng);
  // marking through the spanning tree: collapse of the tree is a homotopy
  // equivalence onto the rose, with the section as its inverse
  GraphPtr rose = make_rose(rank);
  std::vector<EdgePath> petal_words;
  for (int i = 0; i < rank; ++i) {
    EdgeId e = g->basis_edge(i);
    EdgePath loop = g->tree_path(0, g->half_from(2 * e));
    loop.push_back(2 * e);
    EdgePath back = g->tree_path(g->half_to(2 * e), 0);
    loop.insert(loop.end(), back.begin(), back.end());
    petal_words.push_back(tighten_path(loop));
  }
  GraphMap marking_in(rose, g, {0}, petal_words);
  std::vector<EdgePath> edge_words(g->num_edges());
  for (EdgeId e = 0; e < g->num_edges(); ++e) {
    if (!g->is_tree_edge(e)) edge_words[e] = {2 * g->basis_index(e)};
  }
  GraphMap marking_out(g, rose, std::vector<VertexId>(g->num_vertices(), 0),
                       edge_words);
  MarkedPoint x{g, random_positive_metric(*g, rng), std::move(marking_in),
                std::move(marking_out)};
  validate_point(x);
  return x;
}

namespace {

struct Move {
  MarkedPoint point;
  GraphMap fwd, bwd;
};

Move perturb_move(const MarkedPoint& cur, MetricAssignment m) {
  MarkedPoint y = with_metric(cur, std::move(m));
  return Move{y, identity_map(cur.graph), identity_map(cur.graph)};
}

std::optional<Move> collapse_move(const MarkedPoint& cur, Rng& rng) {
  std::vector<EdgeId> collapsible;
  for (EdgeId e = 0; e < cur.graph->num_edges(); ++e)
    if (cur.graph->half_from(2 * e) != cur.graph->half_to(2 * e))
      collapsible.push_back(e);
  if (collapsible.empty()) return std::nullopt;
  EdgeId e = collapsible[rng.below(collapsible.size())];
  // move to the face l(e) = 0 first (zero cost), then collapse
  std::vector<long long> w(cur.graph->num_edges());
  long long total = 0;
  for (EdgeId f = 0; f < cur.graph->num_edges(); ++f) {
    w[f] = (f == e) ? 0 : 1 + (long long)rng.below(1 << 16);
    total += w[f];
  }
  MetricAssignment face;
  for (long long x : w) face.lengths.push_back(Rat(x, total));
  MarkedPoint at_face = with_metric(cur, face);
  ForestCollapse fc = collapse_forest(cur.graph, {e});
  MarkedPoint y = collapse_point(at_face, fc);
  return Move{y, fc.projection, fc.section};
}

std::optional<Move> blow_up_move(const MarkedPoint& cur, Rng& rng) {
  std::vector<VertexId> fat;
  for (VertexId v = 0; v < cur.graph->num_vertices(); ++v)
    if (cur.graph->valence(v) >= 4) fat.push_back(v);
  if (fat.empty()) return std::nullopt;
  VertexId v = fat[rng.below(fat.size())];
  std::vector<HalfId> halves = cur.graph->out_halves(v);
  for (size_t i = halves.size(); i-- > 1;)
    std::swap(halves[i], halves[rng.below(i + 1)]);
  int side = 2 + (int)rng.below((uint64_t)(halves.size() - 3));
  halves.resize(side);
  std::sort(halves.begin(), halves.end());
  ForestCollapse fc = blow_up_vertex(cur.graph, v, halves);
  MarkedPoint y = blow_up_point(cur, fc);
  return Move{y, fc.section, fc.projection};
}

Move automorphism_move(const MarkedPoint& cur, Rng& rng,
                       const std::vector<Automorphism>& autos) {
  const Automorphism& a = autos[1 + rng.below(autos.size() - 1)];
  bool invert = rng.coin();
  const GraphMap& phi = invert ? a.inverse : a.map;
  const GraphMap& phi_inv = invert ? a.map : a.inverse;
  MarkedPoint y = act_by_automorphism(cur, phi, phi_inv);
  // difference of markings x -> x.phi is  (f phi) after fbar
  GraphMap fwd = difference_of_markings(cur, y);
  GraphMap bwd = difference_of_markings(y, cur);
  return Move{y, std::move(fwd), std::move(bwd)};
}

}  // namespace

PointPairWitness sample_pair(int rank, int moves, uint64_t seed) {
  Rng rng(seed);
  MarkedPoint x = random_marked_point(rank, rng);
  MarkedPoint cur = x;
  GraphMap forward = identity_map(x.graph);
  GraphMap backward = identity_map(x.graph);
  std::vector<Automorphism> autos = automorphism_fixtures(rank);

  for (int i = 0; i < moves; ++i) {
    std::optional<Move> mv;
    switch (rng.below(4)) {
      case 0:
        mv = perturb_move(cur, random_positive_metric(*cur.graph, rng));
        break;
      case 1:
        mv = collapse_move(cur, rng);
        break;
      case 2:
        mv = blow_up_move(cur, rng);
        break;
      default:
        mv = automorphism_move(cur, rng, autos);
        break;
    }
    if (!mv) mv = perturb_move(cur, random_positive_metric(*cur.graph, rng));
    forward = compose(mv->fwd, forward);
    backward = compose(backward, mv->bwd);
    cur = mv->point;
  }

  if (!(forward.h1().times(x.marking_in.h1()) == cur.marking_in.h1()))
    fail("sample_pair: forward witness broke on Z2 homology");
  if (!(backward.h1().times(cur.marking_in.h1()) == x.marking_in.h1()))
    fail("sample_pair: backward witness broke on Z2 homology");
  return PointPairWitness{x, cur, std::move(forward), std::move(backward)};
}

PLPath sample_path(int rank, int segments, bool with_transition,
                   uint64_t seed) {
  Rng rng(seed);
  if (!with_transition) {
    MarkedPoint x = random_marked_point(rank, rng);
    PLPath p;
    MarkedPoint cur = x;
    for (int i = 0; i < std::max(1, segments); ++i) {
      MetricAssignment target = random_positive_metric(*cur.graph, rng);
      if (i) p.gaps.push_back(std::nullopt);
      p.segments.push_back(
          Segment{cur, tangent_between(cur.metric, target), Rat(1)});
      cur = segment_end_point(p.segments.back());
    }
    validate_pl_path(p);
    return p;
  }

  // rose segment, blow-up, fine segment, back to the face, collapse, rose
  MarkedPoint rose_start = rose_point(rank, [&] {
    GraphPtr rose = make_rose(rank);
    return random_positive_metric(*rose, rng);
  }());
  MetricAssignment rose_mid = random_positive_metric(*rose_start.graph, rng);

  PLPath p;
  p.segments.push_back(Segment{
      rose_start, tangent_between(rose_start.metric, rose_mid), Rat(1)});
  MarkedPoint at_mid = segment_end_point(p.segments.back());

  std::vector<HalfId> halves = at_mid.graph->out_halves(0);
  for (size_t i = halves.size(); i-- > 1;)
    std::swap(halves[i], halves[rng.below(i + 1)]);
  int side = 2 + (int)rng.below((uint64_t)(halves.size() - 3));
  halves.resize(side);
  std::sort(halves.begin(), halves.end());
  ForestCollapse fc = blow_up_vertex(at_mid.graph, 0, halves);
  MarkedPoint fine_face = blow_up_point(at_mid, fc);

  p.gaps.push_back(Transition{false, fc});
  MetricAssignment fine_target = random_positive_metric(*fine_face.graph, rng);
  p.segments.push_back(Segment{
      fine_face, tangent_between(fine_face.metric, fine_target), Rat(1)});
  MarkedPoint fine_point = segment_end_point(p.segments.back());

  // head back to the same face and collapse again
  MetricAssignment face_metric = fine_face.metric;
  {
    MetricAssignment other = random_positive_metric(*fine_face.graph, rng);
    EdgeId new_edge = fc.forest.front();
    Rat shifted = other.lengths[new_edge];
    face_metric = other;
    face_metric.lengths[new_edge] = 0;
    face_metric.lengths[(new_edge + 1) % other.lengths.size()] += shifted;
  }
  p.gaps.push_back(std::nullopt);
  p.segments.push_back(Segment{
      fine_point, tangent_between(fine_point.metric, face_metric), Rat(1)});
  MarkedPoint back_at_face = segment_end_point(p.segments.back());

  ForestCollapse fc2 = collapse_forest(back_at_face.graph, fc.forest);
  MarkedPoint rose_again = collapse_point(back_at_face, fc2);
  p.gaps.push_back(Transition{true, fc2});
  MetricAssignment rose_final = random_positive_metric(*rose_again.graph, rng);
  p.segments.push_back(Segment{
      rose_again, tangent_between(rose_again.metric, rose_final), Rat(1)});

  validate_pl_path(p);
  return p;
}

}  // namespace outer
