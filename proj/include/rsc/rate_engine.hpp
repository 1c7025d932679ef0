// The optimal resilient rate for a vector source with decoder side
// information when at most one component deviates arbitrarily:
//
//   rate_star = max_k [ max_{x_k} H(x_{-k} | y_{x_k}) + log2 chi_k ]
//
// plus the classic two-source bounds over finite state families, obtained
// by concave maximization of mixture entropies over the state simplex.

#pragma once

#include <string>
#include <vector>

#include "rsc/deviation_graph.hpp"
#include "rsc/source_model.hpp"

namespace rsc {

struct ComponentRate {
  int component = 0;       // 0-based
  int worst_symbol = 0;    // argmax x_k, smallest index on ties
  double side_entropy_bits = 0.0;
  double log_chi_bits = 0.0;
  double component_rate = 0.0;  // side_entropy_bits + log_chi_bits
};

struct RateReport {
  std::vector<ComponentRate> per_component;
  double rate_star = 0.0;
  int argmax_component = 0;  // smallest index on ties
};

// The inner max ranges over the full component alphabet, including
// zero-probability symbols: a deviator can hold any constant symbol.
RateReport resilient_rate(const SourceModel& model, const Channel& ch,
                          double support_tol = kSupportTol);

// Structured text, rates with 6 decimals; parse_rate_report inverts it.
std::string format_rate_report(const RateReport& report,
                               const std::vector<std::vector<std::string>>* labels = nullptr);
RateReport parse_rate_report(const std::string& text);

// A finite family of joint (symbol, signal) distributions, one per state.
struct StateFamily {
  std::vector<JointDist> joints;  // all two-axis, same axis sizes
};

void validate(const StateFamily& family);

struct PositivenessReport {
  std::vector<bool> per_state;  // H(x|y) > tol and H(y|x) > tol
  bool all = false;
};

PositivenessReport check_entropy_positiveness(const StateFamily& family,
                                              double tol = kSupportTol);

enum class EntropyObjective { XGivenY, YGivenX, Joint };

// Objective and its gradient at mixture sum_s w(s) * joint_s; all three
// objectives are concave in w.
double mixture_objective(const StateFamily& family, const Dist& weights,
                         EntropyObjective objective);
std::vector<double> mixture_gradient(const StateFamily& family, const Dist& weights,
                                     EntropyObjective objective);

struct AhlswedeBounds {
  double sup_h_x_given_y = 0.0;
  double sup_h_y_given_x = 0.0;
  double sup_h_xy = 0.0;
  // The maximizing state distributions (needed by callers checking the
  // optimality certificate).
  Dist argmax_x_given_y, argmax_y_given_x, argmax_xy;
};

// Conditional-gradient ascent over the state simplex with deterministic
// restarts; each supremum is certified within 1e-6 of the optimum.
AhlswedeBounds ahlswede_bounds(const StateFamily& family);

}  // namespace rsc
