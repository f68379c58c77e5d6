#pragma once

#include "outer/io.hpp"
#include "outer/sampling.hpp"

#include <map>

namespace outer {

// Independent brute-force reference implementations used by the randomized
// verification suites.  These never call the engine code paths they check.
namespace oracle {

// tight loops crossing each edge at most max_crossings times, canonical
std::vector<Loop> bounded_loops(const Graph& g, int max_crossings = 2);
bool is_embedded_loop(const Graph& g, const Loop& a);
bool is_figure_eight(const Graph& g, const Loop& a);
bool is_barbell(const Graph& g, const Loop& a);
std::vector<Loop> candidate_loops(const Graph& g);

struct ClassMin {
  Rat length;
  std::vector<Loop> realizers;
};
std::map<uint32_t, ClassMin> class_minima(const Graph& g,
                                          const std::vector<Rat>& lengths);

Rat norm_over_loops(const Graph& g, const MetricAssignment& m,
                    const TangentVector& t);
Rat stretch_over_loops(const MarkedPoint& x, const MarkedPoint& y,
                       const GraphMap& phi);

double dominant_eigenvalue(const std::vector<std::vector<long long>>& m,
                           double tol);

}  // namespace oracle

struct CheckRow {
  std::string scenario;
  int rank = 0;
  uint64_t seed = 0;
  std::string lhs, rhs;
  double margin = 0;
  std::string witness;
  bool pass = true;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  int checked = 0;
  int skipped = 0;
  double seconds = 0;
  std::vector<CheckRow> rows;
  std::vector<std::string> notes;

  void record(CheckRow row);
  void require(bool ok, const std::string& what);
  void note(const std::string& line) { notes.push_back(line); }
};

std::string format_double(double v);
std::string csv_text(const std::vector<SuiteResult>& suites);

// worked-example fixtures
MarkedPoint example1_point(const Rat& k);
MarkedPoint example2_point(const Rat& eps, const Rat& t);
MarkedPoint example3_point(const Rat& eps, const Rat& t);

std::vector<std::vector<long long>> transition_matrix(const GraphMap& rose_map);
GraphMap path_witness(const PLPath& p);

// verification suites
// rank_filter 0 mixes ranks 2 and 3
SuiteResult regression_examples();
SuiteResult suite_candidates(int graphs, uint64_t seed, int rank_filter = 0);
SuiteResult suite_homology(int instances, uint64_t seed, int rank_filter = 0);
SuiteResult suite_norms(int rank2_samples, int rank3_samples, uint64_t seed,
                        int rank4_samples = 0);
SuiteResult suite_derivative(int generic_samples, uint64_t seed);
SuiteResult suite_paths(int paths, uint64_t seed, int rank_filter = 0);
SuiteResult verify_main_theorem(int pairs, uint64_t seed, int rank_filter = 0);
SuiteResult verify_expansion_factors(int j_max);
SuiteResult verify_thick_part(const Rat& eps, int pairs, uint64_t seed);

}  // namespace outer
