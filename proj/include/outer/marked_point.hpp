#pragma once

#include "outer/graph_map.hpp"

namespace outer {

// wedge of `rank` circles at one vertex; petals named a, b, c, ...
GraphPtr make_rose(int rank);

// Point of Outer space: marked metric graph with the marking and a
// homotopy-inverse witness carried explicitly.
struct MarkedPoint {
  GraphPtr graph;
  MetricAssignment metric;
  GraphMap marking_in;   // rose -> graph
  GraphMap marking_out;  // graph -> rose
};

void validate_point(const MarkedPoint& x);
MarkedPoint rose_point(int rank, MetricAssignment m);
MarkedPoint with_metric(const MarkedPoint& x, MetricAssignment m);

// self-map of the rose given by one word per petal
GraphMap rose_map(const GraphPtr& rose, const std::vector<EdgePath>& words);

// (G, f, l) * phi = (G, f phi, l); the inverse witness is required
MarkedPoint act_by_automorphism(const MarkedPoint& x, const GraphMap& phi,
                                const GraphMap& phi_inv);

// canonical difference of markings  y.marking_in  after  x.marking_out
GraphMap difference_of_markings(const MarkedPoint& x, const MarkedPoint& y);

MarkedPoint collapse_point(const MarkedPoint& x, const ForestCollapse& fc);
MarkedPoint blow_up_point(const MarkedPoint& x, const ForestCollapse& fc);

}  // namespace outer
