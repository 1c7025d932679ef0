#include "rsc/deviation_graph.hpp"

#include <algorithm>
#include <sstream>

namespace rsc {

std::vector<std::vector<int>> DeviationGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<size_t>(vertex_count));
  for (auto [u, v] : edges) {
    adj[static_cast<size_t>(u)].push_back(v);
    adj[static_cast<size_t>(v)].push_back(u);
  }
  return adj;
}

DeviationGraph make_graph(int vertex_count, std::vector<std::pair<int, int>> edges) {
  if (vertex_count < 1) throw std::invalid_argument("graph: need at least one vertex");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (u > v) std::swap(u, v);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return DeviationGraph{vertex_count, std::move(edges)};
}

bool is_valid_coloring(const DeviationGraph& g, const Coloring& c) {
  if (static_cast<int>(c.colors.size()) != g.vertex_count) return false;
  std::vector<bool> used(static_cast<size_t>(c.color_count), false);
  for (int col : c.colors) {
    if (col < 0 || col >= c.color_count) return false;
    used[static_cast<size_t>(col)] = true;
  }
  if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return false;
  for (auto [u, v] : g.edges) {
    if (c.colors[static_cast<size_t>(u)] == c.colors[static_cast<size_t>(v)]) return false;
  }
  return true;
}

DeviationGraph build_deviation_graph(const SourceModel& model, const Channel& ch,
                                     int k, double support_tol) {
  validate(model);
  validate(ch);
  const std::vector<int> sizes = model.alphabets();
  if (k < 0 || k >= model.component_count()) {
    throw std::out_of_range("build_deviation_graph: component out of range");
  }
  if (model.joint_size() != ch.input_size) {
    throw ModelError("build_deviation_graph: channel input does not match model");
  }

  const Dist rest = rest_distribution(model, k);
  const int nk = sizes[static_cast<size_t>(k)];

  // Per-symbol sub-channels; rows indexed by x_{-k}.
  std::vector<Channel> fixed;
  fixed.reserve(static_cast<size_t>(nk));
  for (int a = 0; a < nk; ++a) fixed.push_back(fix_component(ch, sizes, k, a));

  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < nk; ++a) {
    for (int b = a + 1; b < nk; ++b) {
      bool adjacent = false;
      for (int r = 0; r < rest.size() && !adjacent; ++r) {
        if (rest[r] <= support_tol) continue;
        for (int y = 0; y < ch.output_size; ++y) {
          if (fixed[static_cast<size_t>(a)].at(r, y) > support_tol &&
              fixed[static_cast<size_t>(b)].at(r, y) > support_tol) {
            adjacent = true;
            break;
          }
        }
      }
      if (adjacent) edges.emplace_back(a, b);
    }
  }
  return make_graph(nk, std::move(edges));
}

namespace {

// Vertices in descending degree, ties by index.
std::vector<int> degree_order(const DeviationGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> order(static_cast<size_t>(g.vertex_count));
  for (int v = 0; v < g.vertex_count; ++v) order[static_cast<size_t>(v)] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return adj[static_cast<size_t>(a)].size() > adj[static_cast<size_t>(b)].size();
  });
  return order;
}

bool color_with(const DeviationGraph& g, int max_colors,
                const std::vector<int>& order,
                const std::vector<std::vector<int>>& adj,
                size_t pos, int used, std::vector<int>& colors) {
  if (pos == order.size()) return true;
  const int v = order[pos];
  // New colors are introduced in order: breaks color-permutation symmetry.
  const int limit = std::min(used + 1, max_colors);
  for (int c = 0; c < limit; ++c) {
    bool clash = false;
    for (int w : adj[static_cast<size_t>(v)]) {
      if (colors[static_cast<size_t>(w)] == c) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    colors[static_cast<size_t>(v)] = c;
    if (color_with(g, max_colors, order, adj, pos + 1, std::max(used, c + 1), colors)) {
      return true;
    }
    colors[static_cast<size_t>(v)] = -1;
  }
  return false;
}

}  // namespace

int clique_lower_bound(const DeviationGraph& g) {
  std::vector<std::vector<bool>> mat(
      static_cast<size_t>(g.vertex_count),
      std::vector<bool>(static_cast<size_t>(g.vertex_count), false));
  for (auto [u, v] : g.edges) {
    mat[static_cast<size_t>(u)][static_cast<size_t>(v)] = true;
    mat[static_cast<size_t>(v)][static_cast<size_t>(u)] = true;
  }
  std::vector<int> clique;
  for (int v : degree_order(g)) {
    bool fits = std::all_of(clique.begin(), clique.end(), [&](int w) {
      return mat[static_cast<size_t>(v)][static_cast<size_t>(w)];
    });
    if (fits) clique.push_back(v);
  }
  return static_cast<int>(clique.size());
}

int greedy_upper_bound(const DeviationGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> colors(static_cast<size_t>(g.vertex_count), -1);
  int used = 0;
  for (int v : degree_order(g)) {
    std::vector<bool> taken(static_cast<size_t>(used) + 1, false);
    for (int w : adj[static_cast<size_t>(v)]) {
      int c = colors[static_cast<size_t>(w)];
      if (c >= 0 && c <= used) taken[static_cast<size_t>(c)] = true;
    }
    int c = 0;
    while (taken[static_cast<size_t>(c)]) ++c;
    colors[static_cast<size_t>(v)] = c;
    used = std::max(used, c + 1);
  }
  return used;
}

ChromaticResult chromatic_number(const DeviationGraph& g) {
  if (g.vertex_count < 1) throw std::invalid_argument("chromatic_number: empty graph");
  const int lb = clique_lower_bound(g);
  const int ub = greedy_upper_bound(g);
  const auto order = degree_order(g);
  const auto adj = g.adjacency();

  for (int k = lb; k <= ub; ++k) {
    std::vector<int> colors(static_cast<size_t>(g.vertex_count), -1);
    if (color_with(g, k, order, adj, 0, 0, colors)) {
      // First success at k: no k-1 coloring exists, so this is exact and
      // the witness uses all k colors.
      return ChromaticResult{k, Coloring{std::move(colors), k}};
    }
  }
  throw std::logic_error("chromatic_number: greedy bound unreachable");  // unreachable
}

std::string edge_list_text(const DeviationGraph& g,
                           const std::vector<std::string>* labels) {
  std::ostringstream out;
  for (auto [u, v] : g.edges) {
    if (labels) {
      out << (*labels)[static_cast<size_t>(u)] << ' '
          << (*labels)[static_cast<size_t>(v)] << '\n';
    } else {
      out << u << ' ' << v << '\n';
    }
  }
  return out.str();
}

DeviationGraph parse_edge_list(const std::string& text, int vertex_count) {
  std::istringstream in(text);
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  return make_graph(vertex_count, std::move(edges));
}

}  // namespace rsc
