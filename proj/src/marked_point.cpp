#include "outer/marked_point.hpp"

namespace outer {

GraphPtr make_rose(int rank) {
  if (rank < 2 || rank > 8) fail("rose rank out of supported range");
  std::vector<std::pair<VertexId, VertexId>> ends(rank, {0, 0});
  std::vector<std::string> enames;
  for (int i = 0; i < rank; ++i) enames.push_back(std::string(1, char('a' + i)));
  return std::make_shared<const Graph>(1, ends, std::vector<std::string>{"o"},
                                       enames);
}

void validate_point(const MarkedPoint& x) {
  validate_metric(*x.graph, x.metric);
  if (!x.marking_in.dst().same_structure(*x.graph) ||
      !x.marking_out.src().same_structure(*x.graph))
    fail("point: markings attached to the wrong graph");
  if (!x.marking_in.src().same_structure(x.marking_out.dst()))
    fail("point: marking pair does not share a rose");
  if (x.marking_in.src().rank() != x.graph->rank())
    fail("point: rose rank differs from graph rank");
  if (!x.marking_out.h1().times(x.marking_in.h1()).is_identity())
    fail("point: marking pair is not inverse on Z2 homology");
}

MarkedPoint rose_point(int rank, MetricAssignment m) {
  GraphPtr rose = make_rose(rank);
  MarkedPoint x{rose, std::move(m), identity_map(rose), identity_map(rose)};
  validate_point(x);
  return x;
}

MarkedPoint with_metric(const MarkedPoint& x, MetricAssignment m) {
  validate_metric(*x.graph, m);
  return MarkedPoint{x.graph, std::move(m), x.marking_in, x.marking_out};
}

GraphMap rose_map(const GraphPtr& rose, const std::vector<EdgePath>& words) {
  return GraphMap(rose, rose, {0}, words);
}

MarkedPoint act_by_automorphism(const MarkedPoint& x, const GraphMap& phi,
                                const GraphMap& phi_inv) {
  if (!phi.src().same_structure(phi.dst()) ||
      !phi.src().same_structure(x.marking_in.src()))
    fail("act: automorphism must be a self-map of the marking rose");
  if (!phi.h1_iso()) fail("act: map is not a Z2 homology isomorphism");
  if (!phi_inv.h1().times(phi.h1()).is_identity() ||
      !phi.h1().times(phi_inv.h1()).is_identity())
    fail("act: inverse witness fails on Z2 homology");
  MarkedPoint y{x.graph, x.metric, compose(x.marking_in, phi),
                compose(phi_inv, x.marking_out)};
  validate_point(y);
  return y;
}

GraphMap difference_of_markings(const MarkedPoint& x, const MarkedPoint& y) {
  return compose(y.marking_in, x.marking_out);
}

MarkedPoint collapse_point(const MarkedPoint& x, const ForestCollapse& fc) {
  if (!fc.fine->same_structure(*x.graph)) fail("collapse_point: wrong graph");
  MarkedPoint y{fc.coarse, fc.push_metric(x.metric),
                compose(fc.projection, x.marking_in),
                compose(x.marking_out, fc.section)};
  validate_point(y);
  return y;
}

MarkedPoint blow_up_point(const MarkedPoint& x, const ForestCollapse& fc) {
  if (!fc.coarse->same_structure(*x.graph)) fail("blow_up_point: wrong graph");
  MarkedPoint y{fc.fine, fc.pull_metric(x.metric),
                compose(fc.section, x.marking_in),
                compose(x.marking_out, fc.projection)};
  validate_point(y);
  return y;
}

}  // namespace outer
