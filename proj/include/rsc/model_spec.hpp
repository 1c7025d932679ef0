// Text format describing a source model, its side-information channel,
// and optional game/defaults. Line oriented; '#' starts a comment.
//
//   component <label>...          one line per component, labels are symbols
//   nominal <p>...                probabilities for the last component
//   signals <label>...            optional signal labels
//   channel observation           one-signal-per-joint-symbol generator, or
//   channel matrix <rows> <cols>  followed by <rows> lines of <cols> probs
//   utilities <u1 u2>...          row-major over joint symbols (optional)
//   epsilon <e>                   default noise for the generator (optional)
//   capacity <bits>               default capacity (optional)
//
// A state-family file is a sequence of blocks:
//
//   joint <x_size> <y_size>       followed by <x_size> lines of <y_size> probs

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsc/game.hpp"
#include "rsc/rate_engine.hpp"
#include "rsc/source_model.hpp"

namespace rsc {

// Malformed text; carries the 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct ModelSpec {
  SourceModel model;
  std::vector<std::vector<std::string>> component_labels;
  std::vector<std::string> signal_labels;
  bool observation_generator = false;  // channel regenerated from epsilon
  std::optional<Channel> explicit_channel;
  std::optional<Game> game;
  std::optional<double> epsilon;
  std::optional<double> capacity;
};

ModelSpec parse_model_spec(const std::string& text);
ModelSpec load_model_spec(const std::string& path);

// The channel the spec describes, with flags taking precedence over the
// file's epsilon and the built-in 0.5 last.
Channel spec_channel(const ModelSpec& spec, std::optional<double> epsilon_override);

// Resolve a symbol of component k from a label or a 0-based index string.
int resolve_symbol(const ModelSpec& spec, int k, const std::string& token);

StateFamily parse_family(const std::string& text);
StateFamily load_family(const std::string& path);
std::string serialize_family(const StateFamily& family);

}  // namespace rsc
