#pragma once

#include "outer/graph.hpp"

#include <optional>

namespace outer {

// Edge lengths summing to 1, zero set a forest.
struct MetricAssignment {
  std::vector<Rat> lengths;
};

// Edge weights summing to 0.
struct TangentVector {
  std::vector<Rat> weights;
};

bool zero_set_is_forest(const Graph& g, const std::vector<Rat>& lengths);
void validate_metric(const Graph& g, const MetricAssignment& m);
void validate_tangent(const Graph& g, const TangentVector& t);
bool integrable(const Graph& g, const MetricAssignment& m,
                const TangentVector& t);

// raw crossing sum, no tightening
Rat path_weight(const std::vector<Rat>& values, const EdgePath& p);
// length of the cyclically reduced representative
Rat loop_length(const Graph& g, const MetricAssignment& m,
                const EdgePath& loop);
Rat tau_of_loop(const Graph& g, const TangentVector& t, const EdgePath& loop);

MetricAssignment metric_plus(const MetricAssignment& m, const TangentVector& t,
                             const Rat& time);
TangentVector negated(const TangentVector& t);
TangentVector tangent_between(const MetricAssignment& from,
                              const MetricAssignment& to);

// sup { t >= 0 : m + t*tau is nonnegative edgewise }, nullopt if unbounded
std::optional<Rat> segment_horizon(const MetricAssignment& m,
                                   const TangentVector& t);

}  // namespace outer
