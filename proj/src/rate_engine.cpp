#include "rsc/rate_engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "rsc/rng.hpp"

namespace rsc {

RateReport resilient_rate(const SourceModel& model, const Channel& ch,
                          double support_tol) {
  validate(model);
  validate(ch);
  const std::vector<int> sizes = model.alphabets();
  if (model.joint_size() != ch.input_size) {
    throw ModelError("resilient_rate: channel input does not match model");
  }

  RateReport report;
  for (int k = 0; k < model.component_count(); ++k) {
    const Dist rest = rest_distribution(model, k);
    const auto chromatic = chromatic_number(build_deviation_graph(model, ch, k, support_tol));

    ComponentRate cr;
    cr.component = k;
    cr.log_chi_bits = std::log2(static_cast<double>(chromatic.chi));
    cr.worst_symbol = 0;
    cr.side_entropy_bits = -1.0;
    for (int a = 0; a < sizes[static_cast<size_t>(k)]; ++a) {
      double h = side_entropy(rest, fix_component(ch, sizes, k, a));
      if (h > cr.side_entropy_bits) {
        cr.side_entropy_bits = h;
        cr.worst_symbol = a;
      }
    }
    cr.component_rate = cr.side_entropy_bits + cr.log_chi_bits;
    report.per_component.push_back(cr);
  }

  report.argmax_component = 0;
  report.rate_star = report.per_component[0].component_rate;
  for (int k = 1; k < model.component_count(); ++k) {
    if (report.per_component[static_cast<size_t>(k)].component_rate > report.rate_star) {
      report.rate_star = report.per_component[static_cast<size_t>(k)].component_rate;
      report.argmax_component = k;
    }
  }
  return report;
}

std::string format_rate_report(const RateReport& report,
                               const std::vector<std::vector<std::string>>* labels) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  for (const ComponentRate& cr : report.per_component) {
    out << "component " << cr.component + 1 << ": worst_symbol=";
    if (labels) {
      out << (*labels)[static_cast<size_t>(cr.component)][static_cast<size_t>(cr.worst_symbol)];
    } else {
      out << cr.worst_symbol;
    }
    out << " side_entropy=" << cr.side_entropy_bits
        << " log_chi=" << cr.log_chi_bits
        << " rate=" << cr.component_rate << '\n';
  }
  out << "rate_star=" << report.rate_star << '\n';
  out << "argmax_component=" << report.argmax_component + 1 << '\n';
  return out.str();
}

RateReport parse_rate_report(const std::string& text) {
  RateReport report;
  std::istringstream in(text);
  std::string line;
  auto field = [](const std::string& s, const std::string& key) {
    auto pos = s.find(key + "=");
    if (pos == std::string::npos) throw std::invalid_argument("rate report: missing " + key);
    return s.substr(pos + key.size() + 1);
  };
  while (std::getline(in, line)) {
    if (line.rfind("component ", 0) == 0) {
      ComponentRate cr;
      cr.component = std::stoi(line.substr(10)) - 1;
      std::string ws = field(line, "worst_symbol");
      cr.worst_symbol = !ws.empty() && std::isdigit(static_cast<unsigned char>(ws[0]))
                            ? std::stoi(ws)
                            : -1;
      cr.side_entropy_bits = std::stod(field(line, "side_entropy"));
      cr.log_chi_bits = std::stod(field(line, "log_chi"));
      cr.component_rate = std::stod(field(line, "rate"));
      report.per_component.push_back(cr);
    } else if (line.rfind("rate_star=", 0) == 0) {
      report.rate_star = std::stod(line.substr(10));
    } else if (line.rfind("argmax_component=", 0) == 0) {
      report.argmax_component = std::stoi(line.substr(17)) - 1;
    }
  }
  return report;
}

void validate(const StateFamily& family) {
  if (family.joints.empty()) throw std::invalid_argument("StateFamily: no states");
  for (const JointDist& j : family.joints) {
    validate(j);
    if (j.axis_count() != 2) {
      throw std::invalid_argument("StateFamily: joints must have two axes");
    }
    if (j.axis_sizes != family.joints[0].axis_sizes) {
      throw ModelError("StateFamily: joints disagree on axis sizes");
    }
  }
}

namespace {

JointDist transpose(const JointDist& j) {
  const int nx = j.axis_sizes[0], ny = j.axis_sizes[1];
  JointDist t;
  t.axis_sizes = {ny, nx};
  t.probs.resize(j.probs.size());
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      t.probs[static_cast<size_t>(y) * nx + x] = j.probs[static_cast<size_t>(x) * ny + y];
    }
  }
  return t;
}

JointDist mix_family(const StateFamily& family, const Dist& w) {
  JointDist q;
  q.axis_sizes = family.joints[0].axis_sizes;
  q.probs.assign(family.joints[0].probs.size(), 0.0);
  for (size_t s = 0; s < family.joints.size(); ++s) {
    for (size_t i = 0; i < q.probs.size(); ++i) {
      q.probs[i] += w[static_cast<int>(s)] * family.joints[s].probs[i];
    }
  }
  return q;
}

double joint_entropy_flat(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > kSupportTol) h -= v * std::log2(v);
  }
  return h;
}

constexpr double kLog2E = 1.4426950408889634;  // 1/ln 2

}  // namespace

double mixture_objective(const StateFamily& family, const Dist& weights,
                         EntropyObjective objective) {
  validate(family);
  validate(weights);
  if (weights.size() != static_cast<int>(family.joints.size())) {
    throw ModelError("mixture_objective: weight count does not match states");
  }
  JointDist q = mix_family(family, weights);
  switch (objective) {
    case EntropyObjective::XGivenY: return conditional_entropy(q);
    case EntropyObjective::YGivenX: return conditional_entropy(transpose(q));
    case EntropyObjective::Joint: return joint_entropy_flat(q.probs);
  }
  return 0.0;
}

std::vector<double> mixture_gradient(const StateFamily& family, const Dist& weights,
                                     EntropyObjective objective) {
  validate(family);
  validate(weights);
  const JointDist q = mix_family(family, weights);
  const int nx = q.axis_sizes[0], ny = q.axis_sizes[1];

  std::vector<double> px(static_cast<size_t>(nx), 0.0), py(static_cast<size_t>(ny), 0.0);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      double v = q.probs[static_cast<size_t>(x) * ny + y];
      px[static_cast<size_t>(x)] += v;
      py[static_cast<size_t>(y)] += v;
    }
  }

  // dH/dQ(x,y) per cell; the mixture is linear in the weights, so
  // grad_s = sum_{x,y} J_s(x,y) * dH/dQ(x,y). Cells where the mixture has
  // essentially no mass get a floored log to keep the gradient finite.
  auto safe_log2 = [](double v) { return std::log2(std::max(v, 1e-300)); };
  std::vector<double> cell(q.probs.size());
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      const size_t i = static_cast<size_t>(x) * ny + y;
      switch (objective) {
        case EntropyObjective::XGivenY:
          cell[i] = safe_log2(py[static_cast<size_t>(y)]) - safe_log2(q.probs[i]);
          break;
        case EntropyObjective::YGivenX:
          cell[i] = safe_log2(px[static_cast<size_t>(x)]) - safe_log2(q.probs[i]);
          break;
        case EntropyObjective::Joint:
          cell[i] = -safe_log2(q.probs[i]) - kLog2E;
          break;
      }
    }
  }

  std::vector<double> grad(family.joints.size(), 0.0);
  for (size_t s = 0; s < family.joints.size(); ++s) {
    for (size_t i = 0; i < cell.size(); ++i) {
      double js = family.joints[s].probs[i];
      if (js > kSupportTol) grad[s] += js * cell[i];
    }
  }
  return grad;
}

namespace {

constexpr int kMaxIterations = 10000;
constexpr int kRestarts = 16;
constexpr double kGapTol = 1e-9;

struct SimplexMax {
  Dist weights;
  double value;
};

SimplexMax maximize_over_simplex(const StateFamily& family, EntropyObjective objective) {
  const int ns = static_cast<int>(family.joints.size());

  auto renormalize = [&](Dist& w) {
    double sum = 0.0;
    for (double& v : w.probs) {
      if (v < 1e-18) v = 0.0;
      sum += v;
    }
    for (double& v : w.probs) v /= sum;
  };

  // Conditional gradient with away steps: the plain variant zigzags when
  // the optimum sits on a face and never certifies a tight gap.
  auto run_from = [&](Dist w) {
    double f = mixture_objective(family, w, objective);
    for (int it = 0; it < kMaxIterations; ++it) {
      std::vector<double> grad = mixture_gradient(family, w, objective);
      int fw = 0, away = -1;
      double inner = 0.0;
      for (int s = 0; s < ns; ++s) {
        if (grad[static_cast<size_t>(s)] > grad[static_cast<size_t>(fw)]) fw = s;
        inner += grad[static_cast<size_t>(s)] * w[s];
        if (w[s] > 0.0 && (away < 0 || grad[static_cast<size_t>(s)] < grad[static_cast<size_t>(away)])) {
          away = s;
        }
      }
      const double fw_gap = grad[static_cast<size_t>(fw)] - inner;
      // Concavity: the linearization gap bounds the remaining suboptimality.
      if (fw_gap <= kGapTol) break;
      const double away_gap = inner - grad[static_cast<size_t>(away)];

      // Direction is either toward the best vertex or away from the worst
      // active one, whichever linearization predicts more gain.
      const bool fw_step = fw_gap >= away_gap || w[away] >= 1.0 - 1e-12;
      double gamma_max = fw_step ? 1.0 : w[away] / (1.0 - w[away]);
      auto blend = [&](double gamma) {
        Dist v = w;
        if (fw_step) {
          for (int s = 0; s < ns; ++s) v.probs[static_cast<size_t>(s)] *= 1.0 - gamma;
          v.probs[static_cast<size_t>(fw)] += gamma;
        } else {
          for (int s = 0; s < ns; ++s) v.probs[static_cast<size_t>(s)] *= 1.0 + gamma;
          v.probs[static_cast<size_t>(away)] -= gamma;
        }
        renormalize(v);
        return v;
      };

      // Concave slice: ternary search.
      double lo = 0.0, hi = gamma_max;
      for (int step = 0; step < 90; ++step) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (mixture_objective(family, blend(m1), objective) <
            mixture_objective(family, blend(m2), objective)) {
          lo = m1;
        } else {
          hi = m2;
        }
      }
      bool improved = false;
      for (double gamma : {0.5 * (lo + hi), gamma_max}) {
        Dist next = blend(gamma);
        double fn = mixture_objective(family, next, objective);
        if (fn > f) {
          w = std::move(next);
          f = fn;
          improved = true;
          break;
        }
      }
      if (!improved) break;  // progress below double precision
    }
    return SimplexMax{std::move(w), f};
  };

  SimplexMax best = run_from(uniform_dist(ns));
  Rng rng(0x1357246801234567ULL, static_cast<std::uint64_t>(objective));
  for (int r = 1; r < kRestarts; ++r) {
    Dist w0{std::vector<double>(static_cast<size_t>(ns), 0.0)};
    double total = 0.0;
    for (int s = 0; s < ns; ++s) {
      double e = -std::log(1.0 - rng.next_double());
      w0.probs[static_cast<size_t>(s)] = e;
      total += e;
    }
    for (int s = 0; s < ns; ++s) w0.probs[static_cast<size_t>(s)] /= total;
    SimplexMax cand = run_from(std::move(w0));
    if (cand.value > best.value) best = std::move(cand);
  }
  return best;
}

}  // namespace

PositivenessReport check_entropy_positiveness(const StateFamily& family, double tol) {
  validate(family);
  PositivenessReport report;
  report.all = true;
  for (const JointDist& j : family.joints) {
    double h_x_given_y = conditional_entropy(j);
    double h_y_given_x = conditional_entropy(transpose(j));
    bool ok = h_x_given_y > tol && h_y_given_x > tol;
    report.per_state.push_back(ok);
    report.all = report.all && ok;
  }
  return report;
}

AhlswedeBounds ahlswede_bounds(const StateFamily& family) {
  validate(family);
  AhlswedeBounds out;
  SimplexMax m = maximize_over_simplex(family, EntropyObjective::XGivenY);
  out.sup_h_x_given_y = m.value;
  out.argmax_x_given_y = std::move(m.weights);
  m = maximize_over_simplex(family, EntropyObjective::YGivenX);
  out.sup_h_y_given_x = m.value;
  out.argmax_y_given_x = std::move(m.weights);
  m = maximize_over_simplex(family, EntropyObjective::Joint);
  out.sup_h_xy = m.value;
  out.argmax_xy = std::move(m.weights);
  return out;
}

}  // namespace rsc
