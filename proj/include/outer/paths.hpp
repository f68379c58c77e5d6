#pragma once

#include "outer/potential.hpp"

namespace outer {

// Identification between consecutive segments living in adjacent simplices.
// `collapsing` means the earlier segment lives in fc.fine and the later one
// in fc.coarse; a blow-up is the same data used in the other direction.
struct Transition {
  bool collapsing = true;
  ForestCollapse fc;
};

struct Segment {
  MarkedPoint start;
  TangentVector dir;
  Rat duration;
};

struct PLPath {
  std::vector<Segment> segments;
  std::vector<std::optional<Transition>> gaps;  // size: segments.size() - 1
};

void validate_pl_path(const PLPath& p);
MetricAssignment segment_end_metric(const Segment& s);
MarkedPoint segment_end_point(const Segment& s);
MarkedPoint path_start(const PLPath& p);
MarkedPoint path_end(const PLPath& p);

PLPath single_segment_path(const MarkedPoint& from, const MetricAssignment& to);
PLPath reverse_pl_path(const PLPath& p);
PLPath concat_paths(const PLPath& a, const PLPath& b);
// split segment `index` at local time `t` (refinement; lengths unchanged)
PLPath subdivide_segment(const PLPath& p, size_t index, const Rat& t);

struct PathPiece {
  size_t segment = 0;
  Rat t0, t1;
  Rat start_value, end_value;  // value of the integrated length functional
  std::string label;
};

struct LengthReport {
  double value = 0;
  LogCombo combo;  // len_L: sum log r; for len_N the correction is scaled by K+1
  std::vector<PathPiece> pieces;
};

LengthReport len_l(const PLPath& p);

struct CorrectedLengthReport {
  double value = 0;          // len_N
  double len_l_value = 0;
  long long k = 0;
  LogCombo len_l_combo;      // sum over pieces of log ratios
  LogCombo correction_combo; // (K+1) * (len_N - len_L) = -sum log ratios
  std::vector<PathPiece> pieces;
};

CorrectedLengthReport len_n(const PLPath& p);

struct PathIdentityReport {
  bool exact = false;   // len_N - len_L - (psi(end) - psi(start)) == 0 exactly
  double len_l = 0, len_n = 0, delta_psi = 0, residual = 0;
};

PathIdentityReport check_path_identity(const PLPath& p);

}  // namespace outer
