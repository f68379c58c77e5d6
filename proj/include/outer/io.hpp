#pragma once

#include "outer/paths.hpp"

#include <string>

namespace outer {

// Line-oriented text formats; '#' starts a comment.  Rationals are written
// "p" or "p/q"; a directed edge token is the edge name, primed for the
// reversed direction; "-" stands for the empty path.

GraphPtr load_graph(const std::string& text);       // graph or point file
MarkedPoint load_point(const std::string& text);
MetricAssignment load_metric(const std::string& text, const Graph& g);
TangentVector load_tangent(const std::string& text, const Graph& g);
GraphMap load_map(const std::string& text, const GraphPtr& src,
                  const GraphPtr& dst);
PLPath load_path(const std::string& text);

std::string serialize_graph(const Graph& g);
std::string serialize_point(const MarkedPoint& x);
std::string serialize_metric(const Graph& g, const MetricAssignment& m);
std::string serialize_tangent(const Graph& g, const TangentVector& t);
std::string serialize_map(const GraphMap& f);
// collapse transitions only; blow-up gaps are an in-memory construction
std::string serialize_path(const PLPath& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace outer
