#include "rsc/game.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "rsc/rate_engine.hpp"

namespace rsc {

void validate(const Game& game) {
  if (game.action_sizes[0] < 1 || game.action_sizes[1] < 1) {
    throw std::invalid_argument("Game: empty action set");
  }
  if (static_cast<int>(game.utilities.size()) != game.joint_count()) {
    throw std::invalid_argument("Game: utility table incomplete");
  }
}

Game builtin_game(const std::string& name) {
  Game g;
  g.action_sizes = {2, 2};
  g.action_labels = {std::vector<std::string>{"T", "B"}, std::vector<std::string>{"L", "R"}};
  if (name == "prisoners_dilemma" || name == "pd") {
    g.utilities = {{{3, 3}}, {{0, 4}}, {{4, 0}}, {{1, 1}}};
  } else if (name == "battle_of_sexes" || name == "bos") {
    g.utilities = {{{0, 0}}, {{2, 1}}, {{1, 2}}, {{0, 0}}};
  } else {
    throw std::invalid_argument("builtin_game: unknown game '" + name + "'");
  }
  return g;
}

Channel observation_channel(double epsilon, int joint_count) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("observation_channel: epsilon must be in [0, 1]");
  }
  if (joint_count < 2) {
    throw std::invalid_argument("observation_channel: need at least two joint actions");
  }
  Channel ch;
  ch.input_size = joint_count;
  ch.output_size = joint_count;
  ch.probs.assign(static_cast<size_t>(joint_count) * joint_count, epsilon / joint_count);
  for (int i = 0; i < joint_count; ++i) {
    ch.probs[static_cast<size_t>(i) * joint_count + i] =
        1.0 - epsilon * (joint_count - 1) / joint_count;
  }
  return ch;
}

ObservationFamily make_observation_family(double epsilon, int joint_count) {
  return ObservationFamily{epsilon, joint_count, observation_channel(epsilon, joint_count)};
}

std::array<double, 2> expected_utility(const Game& game,
                                       const std::vector<Dist>& strategies) {
  validate(game);
  if (strategies.size() != 2 || strategies[0].size() != game.action_sizes[0] ||
      strategies[1].size() != game.action_sizes[1]) {
    throw ModelError("expected_utility: strategy sizes do not match actions");
  }
  std::array<double, 2> u{0.0, 0.0};
  for (int a = 0; a < game.action_sizes[0]; ++a) {
    for (int b = 0; b < game.action_sizes[1]; ++b) {
      double w = strategies[0][a] * strategies[1][b];
      const auto& cell = game.utilities[static_cast<size_t>(a * game.action_sizes[1] + b)];
      u[0] += w * cell[0];
      u[1] += w * cell[1];
    }
  }
  return u;
}

namespace {

std::vector<double> grid_values(double step) {
  std::vector<double> v;
  for (int i = 0;; ++i) {
    double x = i * step;
    if (x >= 1.0 - 1e-12) break;
    v.push_back(x);
  }
  v.push_back(1.0);
  return v;
}

}  // namespace

std::vector<RegionPoint> sweep_region(const Game& game, double capacity,
                                      double epsilon, double grid_step,
                                      double support_tol) {
  validate(game);
  if (game.action_sizes[0] != 2 || game.action_sizes[1] != 2) {
    throw std::invalid_argument("sweep_region: built for 2x2 games");
  }
  if (grid_step <= 0.0 || grid_step > 1.0) {
    throw std::invalid_argument("sweep_region: grid step must be in (0, 1]");
  }
  const Channel ch = observation_channel(epsilon, game.joint_count());
  const std::vector<double> grid = grid_values(grid_step);

  std::vector<RegionPoint> out;
  out.reserve(grid.size() * grid.size());
  for (double p : grid) {
    for (double q : grid) {
      SourceModel model;
      model.nominal = {Dist{{p, 1.0 - p}}, Dist{{q, 1.0 - q}}};
      RateReport report = resilient_rate(model, ch, support_tol);
      auto u = expected_utility(game, model.nominal);
      RegionPoint pt;
      pt.p = p;
      pt.q = q;
      pt.u1 = u[0];
      pt.u2 = u[1];
      pt.rate_star = report.rate_star;
      pt.achievable = report.rate_star < capacity;
      out.push_back(pt);
    }
  }
  return out;
}

std::string region_csv(const std::vector<RegionPoint>& points) {
  std::ostringstream out;
  out << "p,q,u1,u2,rate_star,achievable\n";
  out << std::fixed << std::setprecision(6);
  for (const RegionPoint& pt : points) {
    out << pt.p << ',' << pt.q << ',' << pt.u1 << ',' << pt.u2 << ','
        << pt.rate_star << ',' << (pt.achievable ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<RegionPoint> parse_region_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<RegionPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RegionPoint pt;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    pt.p = std::stod(cell);
    std::getline(row, cell, ',');
    pt.q = std::stod(cell);
    std::getline(row, cell, ',');
    pt.u1 = std::stod(cell);
    std::getline(row, cell, ',');
    pt.u2 = std::stod(cell);
    std::getline(row, cell, ',');
    pt.rate_star = std::stod(cell);
    std::getline(row, cell, ',');
    pt.achievable = cell == "1";
    out.push_back(pt);
  }
  return out;
}

}  // namespace rsc
