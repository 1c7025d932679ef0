#include "rsc/coding_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "rsc/deviation_graph.hpp"
#include "rsc/rng.hpp"

namespace rsc {

double resolved_eta(const SimConfig& cfg) {
  if (cfg.typicality_eta > 0.0) return cfg.typicality_eta;
  return std::pow(static_cast<double>(cfg.n), -1.0 / 3.0);
}

int resolved_rare_threshold(const SimConfig& cfg, int component_alphabet) {
  if (cfg.rare_threshold > 0) return cfg.rare_threshold;
  return static_cast<int>(std::ceil(cfg.n / (2.0 * component_alphabet)));
}

AdversaryStrategy AdversaryStrategy::none() { return AdversaryStrategy{}; }

AdversaryStrategy AdversaryStrategy::constant(int component, int symbol) {
  AdversaryStrategy a;
  a.kind = Kind::ConstantSymbol;
  a.component = component;
  a.symbol = symbol;
  return a;
}

AdversaryStrategy AdversaryStrategy::per_stage(int component, std::vector<Dist> dists) {
  AdversaryStrategy a;
  a.kind = Kind::PerStageDists;
  a.component = component;
  a.stage_dists = std::move(dists);
  return a;
}

std::string AdversaryStrategy::label(
    const std::vector<std::vector<std::string>>* labels) const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::ConstantSymbol: {
      std::ostringstream out;
      out << "constant:" << component + 1 << ':';
      if (labels) {
        out << (*labels)[static_cast<size_t>(component)][static_cast<size_t>(symbol)];
      } else {
        out << symbol;
      }
      return out.str();
    }
    case Kind::PerStageDists: {
      std::ostringstream out;
      out << "stages:" << component + 1;
      return out.str();
    }
  }
  return "?";
}

namespace {

int int_log2_ceil(int v) {
  return v <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<unsigned>(v - 1)));
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

// Common randomness: the bin of a subsequence is a keyed hash shared by
// encoder and decoder; the code (bin assignment) is fixed by cfg.seed.
std::uint64_t bin_hash(std::uint64_t seed, int component, int symbol,
                       const std::vector<int>& values) {
  std::uint64_t h = splitmix64(seed ^ 0xB1A5EDB1A5EDULL);
  h = splitmix64(h ^ static_cast<std::uint64_t>(component + 1));
  h = splitmix64(h ^ static_cast<std::uint64_t>(symbol + 1));
  for (int v : values) h = splitmix64(h ^ static_cast<std::uint64_t>(v + 1));
  return h;
}

std::uint64_t bin_mask(int bits) {
  int b = std::min(bits, 62);
  return (std::uint64_t{1} << b) - 1;
}

struct ComponentView {
  int k = 0;
  std::vector<int> sizes;
  Dist rest;
  std::vector<Channel> fixed;          // per symbol of component k
  Coloring effective;                  // witness, capped by forced_color_count
  std::vector<double> class_entropy;   // H(x_{-k} | y_{x_k=a}) per symbol
};

ComponentView component_view(const SourceModel& model, const Channel& ch,
                             const SimConfig& cfg, int k) {
  ComponentView v;
  v.k = k;
  v.sizes = model.alphabets();
  v.rest = rest_distribution(model, k);
  const int nk = v.sizes[static_cast<size_t>(k)];
  for (int a = 0; a < nk; ++a) {
    v.fixed.push_back(fix_component(ch, v.sizes, k, a));
    v.class_entropy.push_back(side_entropy(v.rest, v.fixed.back()));
  }
  ChromaticResult chrom =
      chromatic_number(build_deviation_graph(model, ch, k, cfg.support_tol));
  v.effective = chrom.witness;
  if (cfg.forced_color_count > 0 && cfg.forced_color_count < chrom.chi) {
    for (int& c : v.effective.colors) c %= cfg.forced_color_count;
    v.effective.color_count = cfg.forced_color_count;
  }
  return v;
}

std::vector<std::vector<int>> positions_by_symbol(const std::vector<int>& comp_seq,
                                                  int alphabet) {
  std::vector<std::vector<int>> pos(static_cast<size_t>(alphabet));
  for (size_t t = 0; t < comp_seq.size(); ++t) {
    pos[static_cast<size_t>(comp_seq[t])].push_back(static_cast<int>(t));
  }
  return pos;
}

}  // namespace

Message encode(const std::vector<int>& x_seq, const SourceModel& model,
               const Channel& ch, const SimConfig& cfg) {
  validate(model);
  validate(ch);
  const std::vector<int> sizes = model.alphabets();
  const int n = static_cast<int>(x_seq.size());
  const int K = model.component_count();
  if (n < 1) throw std::invalid_argument("encode: empty sequence");
  for (int x : x_seq) {
    if (x < 0 || x >= model.joint_size()) {
      throw std::out_of_range("encode: symbol outside the joint alphabet");
    }
  }

  // Per-component symbol streams.
  std::vector<std::vector<int>> comp(static_cast<size_t>(K), std::vector<int>(static_cast<size_t>(n)));
  for (int t = 0; t < n; ++t) {
    std::vector<int> syms = unpack_symbols(sizes, x_seq[static_cast<size_t>(t)]);
    for (int j = 0; j < K; ++j) comp[static_cast<size_t>(j)][static_cast<size_t>(t)] = syms[static_cast<size_t>(j)];
  }

  // Statistical test: the component whose empirical distribution strays
  // farthest (total variation) from its nominal law; ties to the smallest.
  int k = 0;
  double worst = -1.0;
  for (int j = 0; j < K; ++j) {
    std::vector<double> emp(static_cast<size_t>(sizes[static_cast<size_t>(j)]), 0.0);
    for (int t = 0; t < n; ++t) emp[static_cast<size_t>(comp[static_cast<size_t>(j)][static_cast<size_t>(t)])] += 1.0 / n;
    double tv = tv_distance(emp, model.nominal[static_cast<size_t>(j)].probs);
    if (tv > worst) {
      worst = tv;
      k = j;
    }
  }

  const ComponentView view = component_view(model, ch, cfg, k);
  const double eta = resolved_eta(cfg);
  const int rare = resolved_rare_threshold(cfg, sizes[static_cast<size_t>(k)]);

  Message m;
  m.deviant_component = k;
  m.color_count = view.effective.color_count;
  m.colors.reserve(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    m.colors.push_back(view.effective.colors[static_cast<size_t>(comp[static_cast<size_t>(k)][static_cast<size_t>(t)])]);
  }

  // x_{-k} as flattened indices per stage.
  std::vector<int> rest_seq(static_cast<size_t>(n));
  if (view.rest.size() > 1) {
    std::vector<int> rest_sizes;
    for (int j = 0; j < K; ++j) {
      if (j != k) rest_sizes.push_back(sizes[static_cast<size_t>(j)]);
    }
    for (int t = 0; t < n; ++t) {
      std::vector<int> rest_syms;
      for (int j = 0; j < K; ++j) {
        if (j != k) rest_syms.push_back(comp[static_cast<size_t>(j)][static_cast<size_t>(t)]);
      }
      rest_seq[static_cast<size_t>(t)] = static_cast<int>(pack_symbols(rest_sizes, rest_syms));
    }
  }

  m.total_bits = int_log2_ceil(K) + n * int_log2_ceil(m.color_count);
  const auto positions = positions_by_symbol(comp[static_cast<size_t>(k)], sizes[static_cast<size_t>(k)]);
  for (int a = 0; a < sizes[static_cast<size_t>(k)]; ++a) {
    const auto& pos = positions[static_cast<size_t>(a)];
    if (pos.empty()) continue;
    ClassPayload payload;
    payload.symbol = a;
    std::vector<int> z;
    z.reserve(pos.size());
    for (int t : pos) z.push_back(rest_seq[static_cast<size_t>(t)]);

    const int mlen = static_cast<int>(pos.size());
    if (view.rest.size() == 1) {
      // Nothing to describe besides x_k itself.
      payload.raw = true;
      payload.raw_values = std::move(z);
      payload.bit_length = 0;
    } else if (mlen < rare) {
      payload.raw = true;
      payload.raw_values = std::move(z);
      payload.bit_length = mlen * int_log2_ceil(view.rest.size());
    } else {
      payload.raw = false;
      payload.bit_length = std::max(0, static_cast<int>(std::ceil(
          mlen * (view.class_entropy[static_cast<size_t>(a)] + 2.0 * eta + cfg.rate_margin_bits))));
      payload.bin_index =
          bin_hash(cfg.seed, k, a, z) & bin_mask(payload.bit_length);
    }
    m.total_bits += payload.bit_length;
    m.classes.push_back(std::move(payload));
  }
  return m;
}

std::optional<std::vector<int>> decode(const Message& m, const std::vector<int>& y_seq,
                                       const SourceModel& model, const Channel& ch,
                                       const SimConfig& cfg) {
  const std::vector<int> sizes = model.alphabets();
  const int n = static_cast<int>(y_seq.size());
  const int K = model.component_count();
  const int k = m.deviant_component;
  if (k < 0 || k >= K || static_cast<int>(m.colors.size()) != n) return std::nullopt;

  const ComponentView view = component_view(model, ch, cfg, k);
  const double eta = resolved_eta(cfg);
  const int nk = sizes[static_cast<size_t>(k)];

  // compat[a][y]: some supported x_{-k} can produce signal y alongside a.
  std::vector<std::vector<bool>> compat(
      static_cast<size_t>(nk), std::vector<bool>(static_cast<size_t>(ch.output_size), false));
  for (int a = 0; a < nk; ++a) {
    for (int r = 0; r < view.rest.size(); ++r) {
      if (view.rest[r] <= cfg.support_tol) continue;
      for (int y = 0; y < ch.output_size; ++y) {
        if (view.fixed[static_cast<size_t>(a)].at(r, y) > cfg.support_tol) {
          compat[static_cast<size_t>(a)][static_cast<size_t>(y)] = true;
        }
      }
    }
  }

  // Stage-by-stage recovery of x_k: the color plus signal compatibility
  // must single out one symbol.
  std::vector<int> k_seq(static_cast<size_t>(n), -1);
  for (int t = 0; t < n; ++t) {
    int found = -1;
    for (int a = 0; a < nk; ++a) {
      if (view.effective.colors[static_cast<size_t>(a)] != m.colors[static_cast<size_t>(t)]) continue;
      if (!compat[static_cast<size_t>(a)][static_cast<size_t>(y_seq[static_cast<size_t>(t)])]) continue;
      if (found >= 0) return std::nullopt;
      found = a;
    }
    if (found < 0) return std::nullopt;
    k_seq[static_cast<size_t>(t)] = found;
  }

  // Recover x_{-k} per symbol class.
  std::vector<int> rest_seq(static_cast<size_t>(n), 0);
  const auto positions = positions_by_symbol(k_seq, nk);
  const int rest_size = view.rest.size();
  for (int a = 0; a < nk; ++a) {
    const auto& pos = positions[static_cast<size_t>(a)];
    if (pos.empty()) continue;
    auto it = std::find_if(m.classes.begin(), m.classes.end(),
                           [a](const ClassPayload& p) { return p.symbol == a; });
    if (it == m.classes.end()) return std::nullopt;
    const ClassPayload& payload = *it;
    const int mlen = static_cast<int>(pos.size());

    if (payload.raw) {
      if (static_cast<int>(payload.raw_values.size()) != mlen) return std::nullopt;
      for (int i = 0; i < mlen; ++i) {
        rest_seq[static_cast<size_t>(pos[static_cast<size_t>(i)])] = payload.raw_values[static_cast<size_t>(i)];
      }
      continue;
    }

    if (mlen * int_log2_ceil(rest_size) > 24) {
      throw ModelError("decode: bin search space exceeds 2^24 candidates");
    }

    // All sequences in the announced bin that are support-consistent with
    // the observed signals (every stage pair must have positive reference
    // probability).
    const Channel& fixed = view.fixed[static_cast<size_t>(a)];
    std::vector<std::vector<int>> survivors;
    std::vector<int> cand(static_cast<size_t>(mlen), 0);
    const std::uint64_t mask = bin_mask(payload.bit_length);
    while (true) {
      if ((bin_hash(cfg.seed, k, a, cand) & mask) == payload.bin_index) {
        bool ok = true;
        for (int i = 0; i < mlen && ok; ++i) {
          int u = cand[static_cast<size_t>(i)];
          int y = y_seq[static_cast<size_t>(pos[static_cast<size_t>(i)])];
          ok = view.rest[u] > cfg.support_tol && fixed.at(u, y) > cfg.support_tol;
        }
        if (ok) survivors.push_back(cand);
      }
      int i = mlen - 1;
      while (i >= 0 && cand[static_cast<size_t>(i)] == rest_size - 1) {
        cand[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++cand[static_cast<size_t>(i)];
    }

    const std::vector<int>* chosen = nullptr;
    if (survivors.empty()) return std::nullopt;
    if (survivors.size() == 1) {
      chosen = &survivors[0];
    } else {
      // Several channel-consistent candidates share the bin: keep the one
      // jointly typical with the signals, and give up unless it is unique.
      std::vector<double> reference(static_cast<size_t>(rest_size) * ch.output_size);
      for (int u = 0; u < rest_size; ++u) {
        for (int y = 0; y < ch.output_size; ++y) {
          reference[static_cast<size_t>(u) * ch.output_size + y] = view.rest[u] * fixed.at(u, y);
        }
      }
      const std::vector<int>* unique = nullptr;
      for (const auto& s : survivors) {
        std::vector<double> emp(reference.size(), 0.0);
        for (int i = 0; i < mlen; ++i) {
          int y = y_seq[static_cast<size_t>(pos[static_cast<size_t>(i)])];
          emp[static_cast<size_t>(s[static_cast<size_t>(i)]) * ch.output_size + y] += 1.0 / mlen;
        }
        if (tv_distance(emp, reference) <= eta) {
          if (unique != nullptr) return std::nullopt;
          unique = &s;
        }
      }
      if (unique == nullptr) return std::nullopt;
      chosen = unique;
    }
    for (int i = 0; i < mlen; ++i) {
      rest_seq[static_cast<size_t>(pos[static_cast<size_t>(i)])] = (*chosen)[static_cast<size_t>(i)];
    }
  }

  // Reassemble full joint symbols.
  std::vector<int> rest_sizes;
  for (int j = 0; j < K; ++j) {
    if (j != k) rest_sizes.push_back(sizes[static_cast<size_t>(j)]);
  }
  std::vector<int> out(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    std::vector<int> syms(static_cast<size_t>(K));
    std::vector<int> rest_syms =
        rest_sizes.empty() ? std::vector<int>{} : unpack_symbols(rest_sizes, rest_seq[static_cast<size_t>(t)]);
    int r = 0;
    for (int j = 0; j < K; ++j) {
      syms[static_cast<size_t>(j)] = (j == k) ? k_seq[static_cast<size_t>(t)] : rest_syms[static_cast<size_t>(r++)];
    }
    out[static_cast<size_t>(t)] = static_cast<int>(pack_symbols(sizes, syms));
  }
  return out;
}

namespace {

void validate_adversary(const AdversaryStrategy& adv, const SourceModel& model, int n) {
  if (adv.kind == AdversaryStrategy::Kind::None) return;
  if (adv.component < 0 || adv.component >= model.component_count()) {
    throw ModelError("adversary: component out of range");
  }
  const int alpha = model.nominal[static_cast<size_t>(adv.component)].size();
  if (adv.kind == AdversaryStrategy::Kind::ConstantSymbol) {
    if (adv.symbol < 0 || adv.symbol >= alpha) {
      throw ModelError("adversary: symbol out of range");
    }
  } else {
    if (static_cast<int>(adv.stage_dists.size()) != n) {
      throw ModelError("adversary: need one distribution per stage");
    }
    for (const Dist& d : adv.stage_dists) {
      validate(d);
      if (d.size() != alpha) throw ModelError("adversary: stage distribution size mismatch");
    }
  }
}

}  // namespace

TrialTranscript run_trial(const SourceModel& model, const Channel& ch,
                          const SimConfig& cfg, const AdversaryStrategy& adv,
                          int trial_index) {
  validate(model);
  validate(ch);
  validate_adversary(adv, model, cfg.n);
  const std::vector<int> sizes = model.alphabets();
  const int K = model.component_count();

  Rng rng(cfg.seed, static_cast<std::uint64_t>(trial_index) + 1);
  TrialTranscript tr;
  tr.x_seq.reserve(static_cast<size_t>(cfg.n));
  tr.y_seq.reserve(static_cast<size_t>(cfg.n));
  for (int t = 0; t < cfg.n; ++t) {
    std::vector<int> syms(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j) {
      if (adv.kind == AdversaryStrategy::Kind::ConstantSymbol && j == adv.component) {
        syms[static_cast<size_t>(j)] = adv.symbol;
      } else if (adv.kind == AdversaryStrategy::Kind::PerStageDists && j == adv.component) {
        syms[static_cast<size_t>(j)] = rng.sample(adv.stage_dists[static_cast<size_t>(t)]);
      } else {
        syms[static_cast<size_t>(j)] = rng.sample(model.nominal[static_cast<size_t>(j)]);
      }
    }
    int x = static_cast<int>(pack_symbols(sizes, syms));
    tr.x_seq.push_back(x);
    tr.y_seq.push_back(rng.sample(ch.row(x)));
  }

  tr.message = encode(tr.x_seq, model, ch, cfg);
  tr.decoded = decode(tr.message, tr.y_seq, model, ch, cfg);
  tr.ok = tr.decoded.has_value() && *tr.decoded == tr.x_seq;
  return tr;
}

std::string TrialTranscript::text() const {
  std::ostringstream out;
  out << "x:";
  for (int x : x_seq) out << ' ' << x;
  out << "\ny:";
  for (int y : y_seq) out << ' ' << y;
  out << "\ncomponent: " << message.deviant_component + 1
      << "\ncolors(" << message.color_count << "):";
  for (int c : message.colors) out << ' ' << c;
  out << "\nbits: " << message.total_bits << "\nclasses:";
  for (const ClassPayload& p : message.classes) {
    out << " [symbol=" << p.symbol << (p.raw ? " raw" : " bin") << " bits=" << p.bit_length << ']';
  }
  out << "\ndecoded:";
  if (!decoded) {
    out << " <failure>";
  } else {
    for (int x : *decoded) out << ' ' << x;
  }
  out << "\nresult: " << (ok ? "ok" : "error") << '\n';
  return out.str();
}

SimResult simulate(const SourceModel& model, const Channel& ch, const SimConfig& cfg,
                   const AdversaryStrategy& adv,
                   const std::vector<std::vector<std::string>>* labels) {
  if (cfg.n < 1 || cfg.trials < 1) throw std::invalid_argument("simulate: bad config");
  SimResult res;
  res.adversary = adv.label(labels);
  res.trials = cfg.trials;
  long long total_bits = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    TrialTranscript tr = run_trial(model, ch, cfg, adv, trial);
    if (!tr.ok) ++res.failures;
    total_bits += tr.message.total_bits;
  }
  res.empirical_error = static_cast<double>(res.failures) / cfg.trials;
  res.avg_rate_bits_per_symbol =
      static_cast<double>(total_bits) / (static_cast<double>(cfg.trials) * cfg.n);
  return res;
}

std::vector<SimResult> simulate_suite(const SourceModel& model, const Channel& ch,
                                      const SimConfig& cfg,
                                      const std::vector<AdversaryStrategy>& advs,
                                      const std::vector<std::vector<std::string>>* labels) {
  std::vector<SimResult> out;
  out.reserve(advs.size());
  for (const AdversaryStrategy& adv : advs) {
    out.push_back(simulate(model, ch, cfg, adv, labels));
  }
  return out;
}

std::vector<AdversaryStrategy> standard_adversaries(const SourceModel& model) {
  std::vector<AdversaryStrategy> advs{AdversaryStrategy::none()};
  for (int k = 0; k < model.component_count(); ++k) {
    for (int a = 0; a < model.nominal[static_cast<size_t>(k)].size(); ++a) {
      advs.push_back(AdversaryStrategy::constant(k, a));
    }
  }
  return advs;
}

std::string sim_results_csv(const std::vector<SimResult>& results) {
  std::ostringstream out;
  out << "adversary,trials,errors,empirical_error,avg_rate\n";
  out << std::fixed << std::setprecision(6);
  for (const SimResult& r : results) {
    out << r.adversary << ',' << r.trials << ',' << r.failures << ','
        << r.empirical_error << ',' << r.avg_rate_bits_per_symbol << '\n';
  }
  return out.str();
}

std::vector<SimResult> parse_sim_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<SimResult> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SimResult r;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, r.adversary, ',');
    std::getline(row, cell, ',');
    r.trials = std::stoi(cell);
    std::getline(row, cell, ',');
    r.failures = std::stoi(cell);
    std::getline(row, cell, ',');
    r.empirical_error = std::stod(cell);
    std::getline(row, cell, ',');
    r.avg_rate_bits_per_symbol = std::stod(cell);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rsc
