#pragma once

#include "outer/candidates.hpp"

#include <memory>
#include <optional>

namespace outer {

uint32_t class_of_loop(const Graph& g, const Loop& a);

// Connected double cover indexed by a nonzero Z2 functional on the cycle
// basis.  Tree edges stay inside a sheet; basis edge i crosses sheets iff
// bit i of the functional is set.  Lifted ids: vertex (v,s) -> 2v+s, edge
// (e,s) -> 2e+s where s is the sheet of the initial endpoint.
struct DoubleCover {
  uint32_t functional = 0;
  GraphPtr base;
  GraphPtr total;

  bool edge_crosses(EdgeId base_e) const;
  VertexId lift_vertex(VertexId v, int sheet) const { return 2 * v + sheet; }
  std::vector<Rat> lift_values(const std::vector<Rat>& base_values) const;
  // closed lift starting on the given sheet; empty when the loop does not lift
  std::optional<Loop> lift_loop(const Loop& a, int start_sheet = 0) const;
  EdgePath project(const EdgePath& upstairs) const;
};

std::vector<DoubleCover> enumerate_double_covers(const GraphPtr& g);
int cover_count(int rank);            // 2^n - 1
long long summand_count(int rank);    // K = (2^n - 1)(2^{2n-1} - 1)

struct ClassLengthReport {
  uint32_t cls = 0;
  Rat length;
  std::vector<Loop> realizers;  // canonical, sorted
};

// Shortest-loop lengths per nonzero Z2 class of a graph with nonnegative
// rational edge lengths (covers carry total length 2, so the simplex
// normalization is not assumed here).  Realizers are the minimal loops that
// cross each edge at most twice, doubly-crossed edges traversed in opposite
// directions and separating the image.
class ClassLengthEngine {
 public:
  ClassLengthEngine(const Graph& g, std::vector<Rat> lengths);
  ~ClassLengthEngine();
  ClassLengthEngine(ClassLengthEngine&&) noexcept;

  Rat length(uint32_t cls) const;  // cls != 0
  const std::vector<Loop>& realizers(uint32_t cls);
  ClassLengthReport report(uint32_t cls);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ClassLengthReport shortest_in_class(const Graph& g,
                                    const std::vector<Rat>& lengths,
                                    uint32_t cls);

// Cover in which the candidate lifts to an embedded circle that is the
// unique shortest loop in its nontrivial class, together with that lift.
std::pair<uint32_t, Loop> lift_candidate(const Graph& g, const Candidate& c,
                                         const std::vector<DoubleCover>& covers);

}  // namespace outer
