// Desk-scale Monte Carlo implementation of the coloring + binning coding
// scheme and its failure modes.
//
// One encoded block carries, for the component k flagged by a statistical
// test as least typical:
//   - a header naming k,
//   - the color of each x_k symbol under a minimum coloring of the
//     component's confusability graph,
//   - per symbol class of x_k, either a random-bin index for the other
//     components' subsequence (frequent classes) or that subsequence raw
//     (rare classes).
// The decoder recovers x_k stage by stage from colors plus
// channel-compatibility with the observed signal, then searches each
// frequent class's bin for the matching subsequence.
//
// Bin search enumerates all |X_{-k}|^m candidate subsequences; practical
// only for small alphabets and n up to ~20.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsc/source_model.hpp"

namespace rsc {

struct SimConfig {
  int n = 16;                     // block length
  double rate_margin_bits = 0.0;  // extra per-symbol bin budget beyond 2*eta
  double typicality_eta = 0.0;    // TV threshold; <= 0 means n^(-1/3)
  int rare_threshold = 0;         // n_bar_1; <= 0 means ceil(n / (2|X_k|))
  std::uint64_t seed = 0;
  int trials = 1;
  int forced_color_count = 0;  // > 0 caps the coloring (converse demos)
  double support_tol = kSupportTol;
};

double resolved_eta(const SimConfig& cfg);
int resolved_rare_threshold(const SimConfig& cfg, int component_alphabet);

struct AdversaryStrategy {
  enum class Kind { None, ConstantSymbol, PerStageDists };

  Kind kind = Kind::None;
  int component = -1;            // deviating component (0-based)
  int symbol = -1;               // for ConstantSymbol
  std::vector<Dist> stage_dists; // for PerStageDists, one per stage

  static AdversaryStrategy none();
  static AdversaryStrategy constant(int component, int symbol);
  static AdversaryStrategy per_stage(int component, std::vector<Dist> dists);

  std::string label(const std::vector<std::vector<std::string>>* labels = nullptr) const;
};

struct ClassPayload {
  int symbol = 0;                // the x_k value this class covers
  bool raw = false;
  std::vector<int> raw_values;   // flattened x_{-k} indices, in stage order
  std::uint64_t bin_index = 0;
  int bit_length = 0;
};

struct Message {
  int deviant_component = 0;
  std::vector<int> colors;       // one per stage
  int color_count = 0;
  std::vector<ClassPayload> classes;  // ascending by symbol, empty classes omitted
  int total_bits = 0;            // ceil(log2 K) + n*ceil(log2 colors) + payloads
};

struct SimResult {
  std::string adversary;
  int trials = 0;
  int failures = 0;
  double empirical_error = 0.0;
  double avg_rate_bits_per_symbol = 0.0;
};

// x_seq holds flattened joint symbols (pack_symbols order), one per stage.
Message encode(const std::vector<int>& x_seq, const SourceModel& model,
               const Channel& ch, const SimConfig& cfg);

// Returns the reconstructed joint-symbol sequence, or nullopt on any
// ambiguity (never a silent wrong pick between typical candidates).
std::optional<std::vector<int>> decode(const Message& m, const std::vector<int>& y_seq,
                                       const SourceModel& model, const Channel& ch,
                                       const SimConfig& cfg);

struct TrialTranscript {
  std::vector<int> x_seq;
  std::vector<int> y_seq;
  Message message;
  std::optional<std::vector<int>> decoded;
  bool ok = false;
  std::string text() const;
};

TrialTranscript run_trial(const SourceModel& model, const Channel& ch,
                          const SimConfig& cfg, const AdversaryStrategy& adv,
                          int trial_index);

SimResult simulate(const SourceModel& model, const Channel& ch, const SimConfig& cfg,
                   const AdversaryStrategy& adv,
                   const std::vector<std::vector<std::string>>* labels = nullptr);

std::vector<SimResult> simulate_suite(const SourceModel& model, const Channel& ch,
                                      const SimConfig& cfg,
                                      const std::vector<AdversaryStrategy>& advs,
                                      const std::vector<std::vector<std::string>>* labels = nullptr);

// none + every constant single-symbol deviation.
std::vector<AdversaryStrategy> standard_adversaries(const SourceModel& model);

std::string sim_results_csv(const std::vector<SimResult>& results);
std::vector<SimResult> parse_sim_results_csv(const std::string& text);

}  // namespace rsc
