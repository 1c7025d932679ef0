// rsc: resilient source coding toolkit.
//
// Subcommands: rate | graph | region | simulate | ahlswede.
// Exit codes: 0 success, 2 parse/flag error, 3 dimension/model error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rsc/coding_sim.hpp"
#include "rsc/game.hpp"
#include "rsc/model_spec.hpp"
#include "rsc/rate_engine.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitModel = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rsc::ModelError("cannot write '" + path + "'");
  out << content;
}

rsc::AdversaryStrategy parse_adversary(const std::string& text, const rsc::ModelSpec& spec) {
  if (text == "none") return rsc::AdversaryStrategy::none();
  std::istringstream in(text);
  std::string kind, comp, sym;
  std::getline(in, kind, ':');
  if (kind == "constant" && std::getline(in, comp, ':') && std::getline(in, sym)) {
    int k = 0;
    try {
      k = std::stoi(comp) - 1;
    } catch (const std::exception&) {
      throw rsc::ParseError(0, "adversary component must be a number: '" + text + "'");
    }
    if (k < 0 || k >= spec.model.component_count()) {
      throw rsc::ModelError("adversary component out of range: '" + text + "'");
    }
    return rsc::AdversaryStrategy::constant(k, rsc::resolve_symbol(spec, k, sym));
  }
  throw rsc::ParseError(0, "adversary must be 'none', 'suite' or 'constant:<k>:<symbol>'");
}

int cmd_rate(const std::string& spec_path, std::optional<double> epsilon,
             double support_tol, const std::string& out_path) {
  rsc::ModelSpec spec = rsc::load_model_spec(spec_path);
  rsc::Channel ch = rsc::spec_channel(spec, epsilon);
  rsc::RateReport report = rsc::resilient_rate(spec.model, ch, support_tol);
  std::cout << rsc::format_rate_report(report, &spec.component_labels);
  write_output(out_path, rsc::format_rate_report(report));
  return 0;
}

int cmd_graph(const std::string& spec_path, int component, std::optional<double> epsilon,
              double support_tol, const std::string& out_path) {
  rsc::ModelSpec spec = rsc::load_model_spec(spec_path);
  if (component < 1 || component > spec.model.component_count()) {
    throw rsc::ModelError("--component out of range");
  }
  const int k = component - 1;
  rsc::Channel ch = rsc::spec_channel(spec, epsilon);
  rsc::DeviationGraph g = rsc::build_deviation_graph(spec.model, ch, k, support_tol);
  rsc::ChromaticResult chrom = rsc::chromatic_number(g);

  const auto& labels = spec.component_labels[static_cast<size_t>(k)];
  std::ostringstream body;
  body << rsc::edge_list_text(g, &labels);
  std::cout << "graph G" << component << ": " << g.vertex_count << " vertices, "
            << g.edges.size() << " edges\n"
            << body.str() << "chromatic_number=" << chrom.chi << "\ncoloring:";
  for (int v = 0; v < g.vertex_count; ++v) {
    std::cout << ' ' << labels[static_cast<size_t>(v)] << '='
              << chrom.witness.colors[static_cast<size_t>(v)];
  }
  std::cout << '\n';
  write_output(out_path, rsc::edge_list_text(g));
  return 0;
}

int cmd_region(const std::string& game_name, double capacity, double epsilon,
               double grid, double support_tol, const std::string& out_path) {
  rsc::Game game = rsc::builtin_game(game_name);
  auto points = rsc::sweep_region(game, capacity, epsilon, grid, support_tol);
  std::string csv = rsc::region_csv(points);
  long achievable = std::count_if(points.begin(), points.end(),
                                  [](const rsc::RegionPoint& p) { return p.achievable; });
  std::cout << "achievable " << achievable << " / " << points.size() << " grid points\n";
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_output(out_path, csv);
  }
  return 0;
}

int cmd_simulate(const std::string& spec_path, rsc::SimConfig cfg,
                 const std::vector<std::string>& adversaries,
                 std::optional<double> epsilon, bool transcript,
                 const std::string& out_path) {
  rsc::ModelSpec spec = rsc::load_model_spec(spec_path);
  rsc::Channel ch = rsc::spec_channel(spec, epsilon);

  std::vector<rsc::AdversaryStrategy> advs;
  if (adversaries.empty()) {
    advs.push_back(rsc::AdversaryStrategy::none());
  }
  for (const std::string& text : adversaries) {
    if (text == "suite") {
      auto std_advs = rsc::standard_adversaries(spec.model);
      advs.insert(advs.end(), std_advs.begin(), std_advs.end());
    } else {
      advs.push_back(parse_adversary(text, spec));
    }
  }

  if (transcript) {
    rsc::TrialTranscript tr = rsc::run_trial(spec.model, ch, cfg, advs.front(), 0);
    std::cout << "transcript (trial 0, adversary " << advs.front().label(&spec.component_labels)
              << "):\n" << tr.text();
  }

  auto results = rsc::simulate_suite(spec.model, ch, cfg, advs, &spec.component_labels);
  std::string csv = rsc::sim_results_csv(results);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_output(out_path, csv);
    std::cout << "wrote " << results.size() << " rows to " << out_path << '\n';
  }
  return 0;
}

int cmd_ahlswede(const std::string& family_path) {
  rsc::StateFamily family = rsc::load_family(family_path);
  rsc::AhlswedeBounds bounds = rsc::ahlswede_bounds(family);
  rsc::PositivenessReport positiveness = rsc::check_entropy_positiveness(family);
  std::cout << std::fixed << std::setprecision(6)
            << "sup_H_x_given_y=" << bounds.sup_h_x_given_y << '\n'
            << "sup_H_y_given_x=" << bounds.sup_h_y_given_x << '\n'
            << "sup_H_xy=" << bounds.sup_h_xy << '\n';
  std::cout << "entropy_positiveness:";
  for (size_t s = 0; s < positiveness.per_state.size(); ++s) {
    std::cout << " state" << s + 1 << '=' << (positiveness.per_state[s] ? "true" : "false");
  }
  std::cout << " overall=" << (positiveness.all ? "true" : "false") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resilient source coding toolkit"};
  app.require_subcommand(1);

  std::string spec_path, family_path, out_path, game_name = "pd";
  std::optional<double> epsilon;
  double capacity = 1.7, grid = 0.01, support_tol = 1e-12;
  int component = 1;
  rsc::SimConfig cfg;
  cfg.trials = 200;
  std::vector<std::string> adversaries;
  bool transcript = false;

  auto* rate = app.add_subcommand("rate", "optimal resilient rate of a source spec");
  rate->add_option("spec", spec_path, "model spec file")->required();
  rate->add_option("--epsilon", epsilon, "observation noise in [0,1]");
  rate->add_option("--support-tol", support_tol, "support threshold");
  rate->add_option("--out", out_path, "also write the report to a file");

  auto* graph = app.add_subcommand("graph", "confusability graph of one component");
  graph->add_option("spec", spec_path, "model spec file")->required();
  graph->add_option("--component", component, "component (1-based)")->required();
  graph->add_option("--epsilon", epsilon, "observation noise in [0,1]");
  graph->add_option("--support-tol", support_tol, "support threshold");
  graph->add_option("--out", out_path, "write the edge list to a file");

  auto* region = app.add_subcommand("region", "achievable utility region sweep");
  region->add_option("--game", game_name, "pd | bos")
      ->required()
      ->check(CLI::IsMember({"pd", "prisoners_dilemma", "bos", "battle_of_sexes"}));
  region->add_option("--capacity", capacity, "channel capacity in bits");
  region->add_option("--epsilon", epsilon, "observation noise in [0,1]");
  region->add_option("--grid", grid, "grid step in (0,1]");
  region->add_option("--support-tol", support_tol, "support threshold");
  region->add_option("--out", out_path, "write the sweep CSV to a file");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo coding-scheme runs");
  simulate->add_option("spec", spec_path, "model spec file")->required();
  simulate->add_option("--n", cfg.n, "block length");
  simulate->add_option("--trials", cfg.trials, "episodes per adversary");
  simulate->add_option("--seed", cfg.seed, "RNG seed");
  simulate->add_option("--margin", cfg.rate_margin_bits, "extra bin bits per symbol");
  simulate->add_option("--eta", cfg.typicality_eta, "TV typicality threshold (default n^-1/3)");
  simulate->add_option("--rare", cfg.rare_threshold, "rare-class threshold (default ceil(n/2|X_k|))");
  simulate->add_option("--force-colors", cfg.forced_color_count, "cap the coloring (converse demos)");
  simulate->add_option("--support-tol", cfg.support_tol, "support threshold");
  simulate->add_option("--epsilon", epsilon, "observation noise in [0,1]");
  simulate->add_option("--adversary", adversaries, "none | suite | constant:<k>:<symbol>");
  simulate->add_flag("--transcript", transcript, "dump trial 0 before the summary");
  simulate->add_option("--out", out_path, "write the CSV to a file");

  auto* ahlswede = app.add_subcommand("ahlswede", "two-source bounds for a state family");
  ahlswede->add_option("family", family_path, "state family file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParse;
  }

  try {
    if (epsilon && (*epsilon < 0.0 || *epsilon > 1.0)) {
      std::cerr << "error: --epsilon must be in [0, 1]\n";
      return kExitParse;
    }
    if (rate->parsed()) return cmd_rate(spec_path, epsilon, support_tol, out_path);
    if (graph->parsed()) return cmd_graph(spec_path, component, epsilon, support_tol, out_path);
    if (region->parsed()) {
      return cmd_region(game_name, capacity, epsilon.value_or(0.5), grid, support_tol, out_path);
    }
    if (simulate->parsed()) {
      return cmd_simulate(spec_path, cfg, adversaries, epsilon, transcript, out_path);
    }
    if (ahlswede->parsed()) return cmd_ahlswede(family_path);
  } catch (const rsc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const rsc::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::invalid_argument& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitModel;
  }
  return 0;
}
