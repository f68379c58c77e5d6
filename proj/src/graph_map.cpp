#include "outer/graph_map.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace outer {

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m;
  m.rows = m.cols = n;
  m.col.resize(n);
  for (int i = 0; i < n; ++i) m.col[i] = 1u << i;
  return m;
}

uint32_t BitMatrix::apply(uint32_t v) const {
  uint32_t out = 0;
  for (int i = 0; i < cols; ++i)
    if (v & (1u << i)) out ^= col[i];
  return out;
}

BitMatrix BitMatrix::times(const BitMatrix& rhs) const {
  if (cols != rhs.rows) fail("BitMatrix dimension mismatch");
  BitMatrix out;
  out.rows = rows;
  out.cols = rhs.cols;
  out.col.resize(rhs.cols);
  for (int j = 0; j < rhs.cols; ++j) out.col[j] = apply(rhs.col[j]);
  return out;
}

int BitMatrix::rank_z2() const {
  std::vector<uint32_t> basis;
  for (uint32_t c : col) {
    for (uint32_t b : basis) c = std::min(c, c ^ b);
    if (c) basis.push_back(c);
  }
  return (int)basis.size();
}

bool BitMatrix::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < cols; ++i)
    if (col[i] != (1u << i)) return false;
  return true;
}

GraphMap::GraphMap(GraphPtr src, GraphPtr dst,
                   std::vector<VertexId> vertex_image,
                   std::vector<EdgePath> edge_image)
    : src_(std::move(src)), dst_(std::move(dst)),
      vertex_image_(std::move(vertex_image)) {
  if ((int)vertex_image_.size() != src_->num_vertices())
    fail("map: wrong vertex image count");
  for (VertexId v : vertex_image_)
    if (v < 0 || v >= dst_->num_vertices()) fail("map: vertex image out of range");
  if ((int)edge_image.size() != src_->num_edges())
    fail("map: wrong edge image count");

  half_image_.resize(src_->num_halves());
  for (EdgeId e = 0; e < src_->num_edges(); ++e) {
    EdgePath img = tighten_path(edge_image[e]);
    if (!is_edge_path(*dst_, img)) fail("map: edge image is not a path");
    VertexId a = vertex_image_[src_->half_from(2 * e)];
    VertexId b = vertex_image_[src_->half_to(2 * e)];
    if (img.empty()) {
      if (a != b) fail("map: empty image of an edge with distinct vertex images");
    } else {
      if (dst_->half_from(img.front()) != a || dst_->half_to(img.back()) != b)
        fail("map: edge image endpoints disagree with vertex images");
    }
    half_image_[2 * e] = img;
    half_image_[2 * e + 1] = reversed_path(img);
  }

  h1_.rows = dst_->rank();
  h1_.cols = src_->rank();
  h1_.col.resize(src_->rank());
  for (int i = 0; i < src_->rank(); ++i) {
    EdgeId e = src_->basis_edge(i);
    EdgePath basis_loop{2 * e};
    EdgePath back = src_->tree_path(src_->half_to(2 * e), src_->half_from(2 * e));
    basis_loop.insert(basis_loop.end(), back.begin(), back.end());
    uint32_t bits = 0;
    for (HalfId h : basis_loop)
      for (HalfId img : half_image_[h]) bits ^= dst_->edge_class_bit(half_edge(img));
    h1_.col[i] = bits;
  }
}

size_t GraphMap::image_size() const {
  size_t total = 0;
  for (const EdgePath& p : half_image_) total += p.size();
  return total;
}

GraphMap identity_map(const GraphPtr& g) {
  std::vector<VertexId> vi(g->num_vertices());
  std::iota(vi.begin(), vi.end(), 0);
  std::vector<EdgePath> ei(g->num_edges());
  for (EdgeId e = 0; e < g->num_edges(); ++e) ei[e] = {2 * e};
  return GraphMap(g, g, std::move(vi), std::move(ei));
}

EdgePath map_path(const GraphMap& f, const EdgePath& p) {
  EdgePath out;
  for (HalfId h : p) {
    const EdgePath& img = f.half_image(h);
    out.insert(out.end(), img.begin(), img.end());
  }
  return tighten_path(out);
}

Loop apply_map(const GraphMap& f, const Loop& a) {
  if (!is_closed_path(f.src(), a.halves)) fail("apply_map: not a loop in source");
  return canonical_loop(f.dst(), map_path(f, a.halves));
}

GraphMap compose(const GraphMap& second, const GraphMap& first) {
  if (!first.dst().same_structure(second.src()))
    fail("compose: middle graphs disagree");
  std::vector<VertexId> vi(first.src().num_vertices());
  for (VertexId v = 0; v < (int)vi.size(); ++v)
    vi[v] = second.vertex_image(first.vertex_image(v));
  std::vector<EdgePath> ei(first.src().num_edges());
  for (EdgeId e = 0; e < first.src().num_edges(); ++e)
    ei[e] = map_path(second, first.half_image(2 * e));
  return GraphMap(first.src_ptr(), second.dst_ptr(), std::move(vi), std::move(ei));
}

namespace {

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

MetricAssignment ForestCollapse::push_metric(const MetricAssignment& m) const {
  for (EdgeId e : forest)
    if (m.lengths[e] != 0) fail("collapse: forest edge has nonzero length");
  MetricAssignment out;
  for (EdgeId e : kept) out.lengths.push_back(m.lengths[e]);
  return out;
}

TangentVector ForestCollapse::push_tangent(const TangentVector& t) const {
  for (EdgeId e : forest)
    if (t.weights[e] != 0) fail("collapse: tangent not supported off forest");
  TangentVector out;
  for (EdgeId e : kept) out.weights.push_back(t.weights[e]);
  return out;
}

MetricAssignment ForestCollapse::pull_metric(const MetricAssignment& m) const {
  MetricAssignment out;
  out.lengths.assign(fine->num_edges(), Rat(0));
  for (size_t i = 0; i < kept.size(); ++i) out.lengths[kept[i]] = m.lengths[i];
  return out;
}

TangentVector ForestCollapse::pull_tangent(const TangentVector& t) const {
  TangentVector out;
  out.weights.assign(fine->num_edges(), Rat(0));
  for (size_t i = 0; i < kept.size(); ++i) out.weights[kept[i]] = t.weights[i];
  return out;
}

ForestCollapse collapse_forest(const GraphPtr& g, std::vector<EdgeId> forest) {
  std::sort(forest.begin(), forest.end());
  if (std::unique(forest.begin(), forest.end()) != forest.end())
    fail("collapse: duplicate forest edge");
  std::vector<char> in_forest(g->num_edges(), 0);
  Dsu dsu(g->num_vertices());
  for (EdgeId e : forest) {
    if (e < 0 || e >= g->num_edges()) fail("collapse: edge out of range");
    in_forest[e] = 1;
    if (!dsu.join(g->half_from(2 * e), g->half_to(2 * e)))
      fail("collapse: edge set contains a circle");
  }

  // components ordered by least member
  std::vector<VertexId> rep_of(g->num_vertices(), -1);
  std::vector<VertexId> reps;
  for (VertexId v = 0; v < g->num_vertices(); ++v) {
    int r = dsu.find(v);
    if (rep_of[r] < 0) {
      rep_of[r] = (int)reps.size();
      reps.push_back(v);
    }
  }
  auto comp = [&](VertexId v) { return rep_of[dsu.find(v)]; };

  std::vector<EdgeId> kept, fine_to_coarse(g->num_edges(), -1);
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<std::string> enames;
  for (EdgeId e = 0; e < g->num_edges(); ++e) {
    if (in_forest[e]) continue;
    fine_to_coarse[e] = (int)kept.size();
    kept.push_back(e);
    ends.emplace_back(comp(g->half_from(2 * e)), comp(g->half_to(2 * e)));
    enames.push_back(g->edge_name(e));
  }
  std::vector<std::string> vnames;
  for (VertexId r : reps) vnames.push_back(g->vertex_name(r));
  auto coarse = std::make_shared<const Graph>((int)reps.size(), ends, vnames, enames);

  // BFS inside each forest component, rooted at the representative
  std::vector<HalfId> fparent(g->num_vertices(), -1);
  for (VertexId root : reps) {
    std::deque<VertexId> queue{root};
    std::set<VertexId> seen{root};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (HalfId h : g->out_halves(v)) {
        if (!in_forest[half_edge(h)]) continue;
        VertexId u = g->half_to(h);
        if (seen.insert(u).second) {
          fparent[u] = h;
          queue.push_back(u);
        }
      }
    }
  }
  auto forest_walk = [&](VertexId from, VertexId to) {
    EdgePath up;  // from -> its root
    for (VertexId v = from; fparent[v] >= 0; v = g->half_from(fparent[v]))
      up.push_back(reverse_half(fparent[v]));
    EdgePath down_rev;
    for (VertexId v = to; fparent[v] >= 0; v = g->half_from(fparent[v]))
      down_rev.push_back(reverse_half(fparent[v]));
    EdgePath path = up;
    EdgePath down = reversed_path(down_rev);
    path.insert(path.end(), down.begin(), down.end());
    return tighten_path(path);
  };

  std::vector<VertexId> proj_v(g->num_vertices());
  for (VertexId v = 0; v < g->num_vertices(); ++v) proj_v[v] = comp(v);
  std::vector<EdgePath> proj_e(g->num_edges());
  for (EdgeId e = 0; e < g->num_edges(); ++e)
    proj_e[e] = in_forest[e] ? EdgePath{} : EdgePath{2 * fine_to_coarse[e]};
  GraphMap projection(g, coarse, std::move(proj_v), std::move(proj_e));

  std::vector<VertexId> sect_v(reps);
  std::vector<EdgePath> sect_e(kept.size());
  for (size_t i = 0; i < kept.size(); ++i) {
    EdgeId e = kept[i];
    VertexId a = g->half_from(2 * e), b = g->half_to(2 * e);
    EdgePath path = forest_walk(reps[comp(a)], a);
    path.push_back(2 * e);
    EdgePath back = forest_walk(b, reps[comp(b)]);
    path.insert(path.end(), back.begin(), back.end());
    sect_e[i] = path;
  }
  GraphMap section(coarse, g, std::move(sect_v), std::move(sect_e));

  return ForestCollapse{g, coarse, forest, kept, fine_to_coarse,
                        std::move(projection), std::move(section)};
}

ForestCollapse blow_up_vertex(const GraphPtr& g, VertexId v,
                              const std::vector<HalfId>& moved) {
  if (v < 0 || v >= g->num_vertices()) fail("blow_up: vertex out of range");
  std::set<HalfId> moved_set(moved.begin(), moved.end());
  if (moved_set.size() != moved.size()) fail("blow_up: duplicate half");
  for (HalfId h : moved_set)
    if (g->half_from(h) != v) fail("blow_up: half not attached to the vertex");
  if ((int)moved_set.size() < 2 || g->valence(v) - (int)moved_set.size() < 2)
    fail("blow_up: both sides need at least two halves");

  int V = g->num_vertices(), E = g->num_edges();
  std::vector<std::pair<VertexId, VertexId>> ends(E + 1);
  for (EdgeId e = 0; e < E; ++e) {
    VertexId a = g->half_from(2 * e), b = g->half_to(2 * e);
    if (moved_set.count(2 * e)) a = V;
    if (moved_set.count(2 * e + 1)) b = V;
    ends[e] = {a, b};
  }
  ends[E] = {v, V};

  std::set<std::string> vtaken, etaken;
  std::vector<std::string> vnames, enames;
  for (VertexId u = 0; u < V; ++u) {
    vnames.push_back(g->vertex_name(u));
    vtaken.insert(vnames.back());
  }
  for (EdgeId e = 0; e < E; ++e) {
    enames.push_back(g->edge_name(e));
    etaken.insert(enames.back());
  }
  auto fresh = [](const std::set<std::string>& taken, std::string base) {
    std::string name = base;
    for (int k = 0; taken.count(name); ++k) name = base + std::to_string(k);
    return name;
  };
  vnames.push_back(fresh(vtaken, g->vertex_name(v) + "_"));
  enames.push_back(fresh(etaken, "t"));

  auto fine = std::make_shared<const Graph>(V + 1, ends, vnames, enames);

  std::vector<VertexId> proj_v(V + 1);
  std::iota(proj_v.begin(), proj_v.end(), 0);
  proj_v[V] = v;
  std::vector<EdgePath> proj_e(E + 1);
  for (EdgeId e = 0; e < E; ++e) proj_e[e] = {2 * e};
  proj_e[E] = {};
  GraphMap projection(fine, g, std::move(proj_v), std::move(proj_e));

  std::vector<VertexId> sect_v(V);
  std::iota(sect_v.begin(), sect_v.end(), 0);
  std::vector<EdgePath> sect_e(E);
  for (EdgeId e = 0; e < E; ++e) {
    EdgePath path;
    if (fine->half_from(2 * e) == V) path.push_back(2 * E);
    path.push_back(2 * e);
    if (fine->half_to(2 * e) == V) path.push_back(2 * E + 1);
    sect_e[e] = path;
  }
  GraphMap section(g, fine, std::move(sect_v), std::move(sect_e));

  std::vector<EdgeId> kept(E), fine_to_coarse(E + 1);
  std::iota(kept.begin(), kept.end(), 0);
  std::iota(fine_to_coarse.begin(), fine_to_coarse.end(), 0);
  fine_to_coarse[E] = -1;

  return ForestCollapse{fine, g, {E}, kept, fine_to_coarse,
                        std::move(projection), std::move(section)};
}

}  // namespace outer
