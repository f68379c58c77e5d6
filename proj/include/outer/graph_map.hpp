#pragma once

#include "outer/metric.hpp"

namespace outer {

// Z2 matrix stored column-wise as bit masks (row i = bit i).
struct BitMatrix {
  int rows = 0, cols = 0;
  std::vector<uint32_t> col;
  static BitMatrix identity(int n);
  uint32_t apply(uint32_t v) const;
  BitMatrix times(const BitMatrix& rhs) const;
  int rank_z2() const;
  bool is_identity() const;
  bool operator==(const BitMatrix&) const = default;
};

// Map sending vertices to vertices and edges to edge paths, with the image
// of a reversed half being the reversed image.
class GraphMap {
 public:
  GraphMap(GraphPtr src, GraphPtr dst, std::vector<VertexId> vertex_image,
           std::vector<EdgePath> edge_image);

  const GraphPtr& src_ptr() const { return src_; }
  const GraphPtr& dst_ptr() const { return dst_; }
  const Graph& src() const { return *src_; }
  const Graph& dst() const { return *dst_; }
  VertexId vertex_image(VertexId v) const { return vertex_image_[v]; }
  const EdgePath& half_image(HalfId h) const { return half_image_[h]; }
  const BitMatrix& h1() const { return h1_; }
  bool h1_iso() const { return h1_.rank_z2() == h1_.cols && h1_.rows == h1_.cols; }
  size_t image_size() const;

 private:
  GraphPtr src_, dst_;
  std::vector<VertexId> vertex_image_;
  std::vector<EdgePath> half_image_;
  BitMatrix h1_;
};

GraphMap identity_map(const GraphPtr& g);
EdgePath map_path(const GraphMap& f, const EdgePath& p);
Loop apply_map(const GraphMap& f, const Loop& a);
GraphMap compose(const GraphMap& second, const GraphMap& first);

struct ForestCollapse {
  GraphPtr fine, coarse;
  std::vector<EdgeId> forest;          // fine edges collapsed
  std::vector<EdgeId> kept;            // coarse edge -> fine edge
  std::vector<EdgeId> fine_to_coarse;  // -1 on forest edges
  GraphMap projection;                 // fine -> coarse
  GraphMap section;                    // coarse -> fine; projection after
                                       // section is the identity
  MetricAssignment push_metric(const MetricAssignment&) const;
  TangentVector push_tangent(const TangentVector&) const;
  MetricAssignment pull_metric(const MetricAssignment&) const;
  TangentVector pull_tangent(const TangentVector&) const;
};

ForestCollapse collapse_forest(const GraphPtr& g, std::vector<EdgeId> forest);

// Splits vertex v in two; `moved` halves (at least 2, leaving at least 2)
// reattach to the new vertex, joined to v by a fresh edge.  Returned as the
// collapse of that edge, with `coarse` being the input graph itself.
ForestCollapse blow_up_vertex(const GraphPtr& g, VertexId v,
                              const std::vector<HalfId>& moved);

}  // namespace outer
