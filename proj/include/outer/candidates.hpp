#pragma once

#include "outer/metric.hpp"

namespace outer {

enum class CandidateKind { embedded, figure_eight, barbell };
const char* kind_name(CandidateKind k);

struct Candidate {
  Loop loop;
  CandidateKind kind;
  std::vector<EdgeId> circle_u, circle_v, arc;
  bool operator<(const Candidate& o) const { return loop < o.loop; }
};

// all embedded circles up to rotation and reversal, sorted
std::vector<Loop> enumerate_embedded_circles(const Graph& g);

// embedded circles, figure eights and barbells, both relative orientations,
// deduplicated up to rotation and reversal, sorted
std::vector<Candidate> enumerate_candidates(const Graph& g);

// shortest loop length; attained on an embedded circle
Rat systole(const Graph& g, const MetricAssignment& m);

}  // namespace outer
