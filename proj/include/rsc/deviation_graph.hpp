// Per-component confusability graphs and exact minimum colorings.
//
// Two symbols of component k are adjacent when some supported profile of
// the other components can produce a common signal with positive
// probability under both. The chromatic number of that graph is the
// per-symbol cost, in colors, of telling a deviating component's symbols
// apart at the decoder.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsc/source_model.hpp"

namespace rsc {

struct DeviationGraph {
  int vertex_count = 0;
  // Unordered pairs, smaller index first, sorted, no duplicates, no loops.
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
};

struct Coloring {
  std::vector<int> colors;  // one per vertex, values 0..color_count-1
  int color_count = 0;
};

struct ChromaticResult {
  int chi = 0;
  Coloring witness;
};

// Normalize an edge list (orient, sort, dedup, drop loops) into a graph.
DeviationGraph make_graph(int vertex_count, std::vector<std::pair<int, int>> edges);

bool is_valid_coloring(const DeviationGraph& g, const Coloring& c);

// Edge (a, b) iff some x_{-k} with P_{-k}(x_{-k}) > support_tol and some
// signal y have both ch(y | a, x_{-k}) and ch(y | b, x_{-k}) above
// support_tol.
DeviationGraph build_deviation_graph(const SourceModel& model, const Channel& ch,
                                     int k, double support_tol = kSupportTol);

// Size of a greedily grown clique; never exceeds chi.
int clique_lower_bound(const DeviationGraph& g);

// Colors used by greedy first-fit in descending-degree order; never below chi.
int greedy_upper_bound(const DeviationGraph& g);

// Exact chromatic number with a witness coloring. Backtracking over
// vertices in descending-degree order (ties by index), bracketed by the
// clique and greedy bounds; deterministic.
ChromaticResult chromatic_number(const DeviationGraph& g);

// One "u v" pair per line; labels optional.
std::string edge_list_text(const DeviationGraph& g,
                           const std::vector<std::string>* labels = nullptr);
DeviationGraph parse_edge_list(const std::string& text, int vertex_count);

}  // namespace rsc
