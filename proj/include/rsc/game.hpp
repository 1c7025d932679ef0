// Strategic-form 2x2 games, the noisy one-signal-per-profile observation
// channel, and the sweep of utility vectors whose product strategies keep
// the resilient rate under a channel capacity.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "rsc/source_model.hpp"

namespace rsc {

struct Game {
  std::array<int, 2> action_sizes{0, 0};
  // Row-major over joint actions, payoffs per player.
  std::vector<std::array<double, 2>> utilities;
  std::array<std::vector<std::string>, 2> action_labels;

  int joint_count() const { return action_sizes[0] * action_sizes[1]; }
};

void validate(const Game& game);

// "prisoners_dilemma" or "battle_of_sexes".
Game builtin_game(const std::string& name);

// Signals mirror joint actions: the matching signal with probability
// 1 - (m-1)/m * epsilon, each of the other m-1 with epsilon/m.
// epsilon = 0 is the identity; epsilon = 1 makes every row uniform.
Channel observation_channel(double epsilon, int joint_count = 4);

// The epsilon-parameterized family, bundled with its generated channel.
struct ObservationFamily {
  double epsilon = 0.0;
  int signal_count = 4;
  Channel channel;
};

ObservationFamily make_observation_family(double epsilon, int joint_count = 4);

std::array<double, 2> expected_utility(const Game& game,
                                       const std::vector<Dist>& strategies);

struct RegionPoint {
  double p = 0.0;  // probability of player 1's first action
  double q = 0.0;  // probability of player 2's first action
  double u1 = 0.0;
  double u2 = 0.0;
  double rate_star = 0.0;
  bool achievable = false;  // rate_star < capacity, strictly
};

// Grid {0, grid_step, ..., 1}^2 over the two mixed-action parameters,
// ordered by (p, q).
std::vector<RegionPoint> sweep_region(const Game& game, double capacity,
                                      double epsilon, double grid_step,
                                      double support_tol = kSupportTol);

// Header p,q,u1,u2,rate_star,achievable; 6 decimals, booleans as 0/1.
std::string region_csv(const std::vector<RegionPoint>& points);
std::vector<RegionPoint> parse_region_csv(const std::string& text);

}  // namespace rsc
