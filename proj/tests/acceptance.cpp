// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion restates its tolerance inline and is checked against an
// independent oracle where one is called for.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rsc/coding_sim.hpp"
#include "rsc/game.hpp"
#include "rsc/model_spec.hpp"
#include "rsc/rate_engine.hpp"

using namespace rsc;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, double time_limit_s,
               const std::function<bool()>& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > time_limit_s) {
    ok = false;
    error = "exceeded " + std::to_string(time_limit_s) + "s";
  }
  if (!ok) ++g_failures;
  std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), elapsed, error.empty() ? "" : " -- ", error.c_str());
}

SourceModel uniform_pd() { return SourceModel{{uniform_dist(2), uniform_dist(2)}}; }

// Independent route to the optimal rate: brute-force conditional entropies
// plus the exhaustive-search chromatic number.
double oracle_rate(const SourceModel& model, const Channel& ch) {
  double best = 0.0;
  const auto sizes = model.alphabets();
  for (int k = 0; k < model.component_count(); ++k) {
    Dist rest = rest_distribution(model, k);
    double side = 0.0;
    for (int a = 0; a < sizes[static_cast<size_t>(k)]; ++a) {
      JointDist j = input_output_joint(rest, fix_component(ch, sizes, k, a));
      side = std::max(side, oracle::conditional_entropy(j));
    }
    int chi = oracle::chromatic_number(build_deviation_graph(model, ch, k));
    best = std::max(best, side + std::log2(static_cast<double>(chi)));
  }
  return best;
}

std::string pd_spec_path() { return std::string(RSC_DATA_DIR) + "/prisoners_dilemma.model"; }

}  // namespace

int main() {
  criterion(1, "confusability graphs and colorings of the bundled game", 1.0, [] {
    SourceModel model = uniform_pd();
    Channel noisy = observation_channel(0.5);
    for (int k = 0; k < 2; ++k) {
      DeviationGraph g = build_deviation_graph(model, noisy, k);
      if (g.edges != std::vector<std::pair<int, int>>{{0, 1}}) return false;
      if (chromatic_number(g).chi != 2) return false;
    }
    Channel clean = observation_channel(0.0);
    for (int k = 0; k < 2; ++k) {
      DeviationGraph g = build_deviation_graph(model, clean, k);
      if (!g.edges.empty()) return false;
      if (chromatic_number(g).chi != 1) return false;
    }
    return true;
  });

  criterion(2, "rate formula against the enumeration oracle", 5.0, [] {
    Channel clean = observation_channel(0.0);
    for (int i = 0; i <= 10; ++i) {
      for (int j = 0; j <= 10; ++j) {
        SourceModel m{{Dist{{i / 10.0, 1.0 - i / 10.0}}, Dist{{j / 10.0, 1.0 - j / 10.0}}}};
        if (std::abs(resilient_rate(m, clean).rate_star) > 1e-9) return false;
      }
    }
    SourceModel pd = uniform_pd();
    if (std::abs(resilient_rate(pd, observation_channel(1.0)).rate_star - 2.0) > 1e-9) {
      return false;
    }
    double rate = resilient_rate(pd, observation_channel(0.5)).rate_star;
    double oracle_value = oracle_rate(pd, observation_channel(0.5));
    return std::abs(rate - oracle_value) <= 1e-9 && std::abs(rate - 1.737518) <= 1e-5;
  });

  criterion(3, "capacity verdict and region inclusion", 60.0, [] {
    Game pd = builtin_game("prisoners_dilemma");
    auto tight = sweep_region(pd, 1.7, 0.5, 0.01);
    auto loose = sweep_region(pd, 2.1, 0.5, 0.01);
    if (tight.size() != 101 * 101 || loose.size() != tight.size()) return false;

    long achievable = 0;
    bool uniform_blocked = false;
    for (size_t i = 0; i < tight.size(); ++i) {
      if (tight[i].achievable) {
        ++achievable;
        if (!loose[i].achievable) return false;  // inclusion must be exact
      }
      if (tight[i].p == 0.5 && tight[i].q == 0.5) {
        uniform_blocked = !tight[i].achievable && tight[i].rate_star >= 1.7;
      }
    }
    return uniform_blocked && achievable > 0 &&
           achievable < static_cast<long>(tight.size());
  });

  criterion(4, "entropy oracle equivalence on 100 random instances", 5.0, [] {
    Rng rng(424242);
    for (int i = 0; i < 100; ++i) {
      int nx = 2 + static_cast<int>(rng.next() % 3);
      int ny = 2 + static_cast<int>(rng.next() % 3);
      JointDist j = oracle::random_joint(rng, nx, ny);
      if (std::abs(conditional_entropy(j) - oracle::conditional_entropy(j)) > 1e-10) {
        return false;
      }
      Dist p = oracle::random_dist(rng, nx);
      Channel ch = oracle::random_channel(rng, nx, ny);
      double direct = side_entropy(p, ch);
      double brute = oracle::conditional_entropy(input_output_joint(p, ch));
      if (std::abs(direct - brute) > 1e-10) return false;
    }
    return true;
  });

  criterion(5, "chromatic numbers are exact", 10.0, [] {
    Rng rng(2025);
    for (int i = 0; i < 50; ++i) {
      int n = 2 + static_cast<int>(rng.next() % 7);
      DeviationGraph g = oracle::random_graph(rng, n, 0.2 + 0.6 * rng.next_double());
      ChromaticResult r = chromatic_number(g);
      if (r.chi != oracle::chromatic_number(g)) return false;
      if (!is_valid_coloring(g, r.witness)) return false;
    }
    for (int n = 1; n <= 6; ++n) {
      if (chromatic_number(oracle::complete_graph(std::max(n, 1))).chi != std::max(n, 1)) {
        return false;
      }
    }
    return chromatic_number(oracle::cycle_graph(5)).chi == 3;
  });

  criterion(6, "state-family bounds against the mixing-weight grid", 10.0, [] {
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
      StateFamily family{{oracle::random_joint(rng, 2, 2), oracle::random_joint(rng, 2, 2)}};
      AhlswedeBounds b = ahlswede_bounds(family);
      const double got[3] = {b.sup_h_x_given_y, b.sup_h_y_given_x, b.sup_h_xy};
      const EntropyObjective objs[3] = {EntropyObjective::XGivenY, EntropyObjective::YGivenX,
                                        EntropyObjective::Joint};
      for (int o = 0; o < 3; ++o) {
        double grid_best = 0.0;
        for (int g = 0; g <= 1000; ++g) {
          double lambda = g / 1000.0;
          grid_best = std::max(grid_best,
                               mixture_objective(family, Dist{{lambda, 1.0 - lambda}}, objs[o]));
        }
        if (std::abs(got[o] - grid_best) > 1e-3) return false;
      }
      PositivenessReport rep = check_entropy_positiveness(family);
      for (size_t s = 0; s < family.joints.size(); ++s) {
        JointDist t{{family.joints[s].axis_sizes[1], family.joints[s].axis_sizes[0]}, {}};
        t.probs.resize(family.joints[s].probs.size());
        for (int x = 0; x < family.joints[s].axis_sizes[0]; ++x) {
          for (int y = 0; y < family.joints[s].axis_sizes[1]; ++y) {
            t.probs[static_cast<size_t>(y) * family.joints[s].axis_sizes[0] + x] =
                family.joints[s].probs[static_cast<size_t>(x) * family.joints[s].axis_sizes[1] + y];
          }
        }
        bool direct = oracle::conditional_entropy(family.joints[s]) > 1e-12 &&
                      oracle::conditional_entropy(t) > 1e-12;
        if (rep.per_state[s] != direct) return false;
      }
    }
    return true;
  });

  // Shared setup for the simulator criteria.
  ModelSpec pd_spec = load_model_spec(pd_spec_path());
  Channel pd_channel = spec_channel(pd_spec, std::nullopt);  // bundled eps = 0.5
  SimConfig cfg;
  cfg.n = 16;
  cfg.trials = 200;
  cfg.seed = 42;
  cfg.rate_margin_bits = 0.5;

  std::string csv7, csv8;
  criterion(7, "coding scheme survives every single deviation", 300.0, [&] {
    auto results = simulate_suite(pd_spec.model, pd_channel, cfg,
                                  standard_adversaries(pd_spec.model));
    csv7 = sim_results_csv(results);
    if (results.size() != 5) return false;
    for (const SimResult& r : results) {
      if (r.empirical_error > 0.10) return false;
    }
    return true;
  });

  SimConfig starved = cfg;
  starved.forced_color_count = 1;
  criterion(8, "one color cannot carry a confusable deviation", 300.0, [&] {
    SimResult r = simulate(pd_spec.model, pd_channel, starved,
                           AdversaryStrategy::constant(0, 0));
    csv8 = sim_results_csv({r});
    return r.empirical_error >= 0.40;
  });

  criterion(9, "seeded reruns are byte-identical", 600.0, [&] {
    auto again7 = sim_results_csv(simulate_suite(pd_spec.model, pd_channel, cfg,
                                                 standard_adversaries(pd_spec.model)));
    auto again8 = sim_results_csv({simulate(pd_spec.model, pd_channel, starved,
                                            AdversaryStrategy::constant(0, 0))});
    return again7 == csv7 && again8 == csv8 && !csv7.empty() && !csv8.empty();
  });

  criterion(10, "conditional entropy concavity on 200 random mixtures", 10.0, [] {
    Rng rng(9090);
    for (int i = 0; i < 200; ++i) {
      int nx = 2 + static_cast<int>(rng.next() % 3);
      int ny = 2 + static_cast<int>(rng.next() % 3);
      JointDist a = oracle::random_joint(rng, nx, ny);
      JointDist b = oracle::random_joint(rng, nx, ny);
      double lambda = 0.25 * (1 + static_cast<int>(rng.next() % 3));
      JointDist mix = a;
      for (size_t c = 0; c < mix.probs.size(); ++c) {
        mix.probs[c] = lambda * a.probs[c] + (1.0 - lambda) * b.probs[c];
      }
      double lhs = conditional_entropy(mix);
      double rhs = lambda * conditional_entropy(a) + (1.0 - lambda) * conditional_entropy(b);
      if (lhs < rhs - 1e-9) return false;
    }
    return true;
  });

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
