#include "rsc/probability.hpp"

#include <cmath>
#include <cstddef>

namespace rsc {

namespace {

void check_simplex(const std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (v < -kSupportTol || std::isnan(v)) {
      throw std::invalid_argument(std::string(what) + ": negative entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw std::invalid_argument(std::string(what) + ": probabilities sum to " +
                                std::to_string(sum) + ", not 1");
  }
}

}  // namespace

long JointDist::total_size() const {
  long n = 1;
  for (int s : axis_sizes) n *= s;
  return n;
}

Dist Channel::row(int x) const {
  Dist d;
  d.probs.assign(probs.begin() + static_cast<std::ptrdiff_t>(x) * output_size,
                 probs.begin() + static_cast<std::ptrdiff_t>(x + 1) * output_size);
  return d;
}

Dist uniform_dist(int n) {
  return Dist{std::vector<double>(static_cast<size_t>(n), 1.0 / n)};
}

Dist point_mass(int n, int at) {
  Dist d{std::vector<double>(static_cast<size_t>(n), 0.0)};
  d.probs[static_cast<size_t>(at)] = 1.0;
  return d;
}

void validate(const Dist& d) {
  if (d.probs.empty()) throw std::invalid_argument("Dist: empty alphabet");
  check_simplex(d.probs, "Dist");
}

void validate(const JointDist& j) {
  if (j.axis_sizes.empty()) throw std::invalid_argument("JointDist: no axes");
  for (int s : j.axis_sizes) {
    if (s <= 0) throw std::invalid_argument("JointDist: non-positive axis size");
  }
  if (static_cast<long>(j.probs.size()) != j.total_size()) {
    throw std::invalid_argument("JointDist: size does not match axes");
  }
  check_simplex(j.probs, "JointDist");
}

void validate(const Channel& ch) {
  if (ch.input_size <= 0 || ch.output_size <= 0) {
    throw std::invalid_argument("Channel: non-positive dimension");
  }
  if (ch.probs.size() !=
      static_cast<size_t>(ch.input_size) * static_cast<size_t>(ch.output_size)) {
    throw std::invalid_argument("Channel: size does not match dimensions");
  }
  for (int x = 0; x < ch.input_size; ++x) {
    double sum = 0.0;
    for (int y = 0; y < ch.output_size; ++y) {
      double v = ch.at(x, y);
      if (v < -kSupportTol || std::isnan(v)) {
        throw std::invalid_argument("Channel: negative entry");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
      throw std::invalid_argument("Channel: row " + std::to_string(x) +
                                  " sums to " + std::to_string(sum));
    }
  }
}

double entropy(const Dist& d) {
  validate(d);
  double h = 0.0;
  for (double p : d.probs) {
    if (p > kSupportTol) h -= p * std::log2(p);
  }
  return h;
}

double conditional_entropy(const JointDist& joint) {
  validate(joint);
  if (joint.axis_count() != 2) {
    throw std::invalid_argument("conditional_entropy: joint must have two axes");
  }
  const int na = joint.axis_sizes[0];
  const int ny = joint.axis_sizes[1];
  std::vector<double> py(static_cast<size_t>(ny), 0.0);
  for (int a = 0; a < na; ++a) {
    for (int y = 0; y < ny; ++y) {
      py[static_cast<size_t>(y)] += joint.probs[static_cast<size_t>(a) * ny + y];
    }
  }
  double h = 0.0;
  for (int a = 0; a < na; ++a) {
    for (int y = 0; y < ny; ++y) {
      double j = joint.probs[static_cast<size_t>(a) * ny + y];
      if (j > kSupportTol) h += j * std::log2(py[static_cast<size_t>(y)] / j);
    }
  }
  return h;
}

JointDist product(const std::vector<Dist>& factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  JointDist out;
  out.axis_sizes.reserve(factors.size());
  for (const Dist& d : factors) {
    validate(d);
    out.axis_sizes.push_back(d.size());
  }
  out.probs.assign(static_cast<size_t>(out.total_size()), 1.0);
  // Row-major walk: component index cycles fastest for the last axis.
  long stride = out.total_size();
  for (size_t k = 0; k < factors.size(); ++k) {
    stride /= factors[k].size();
    for (long i = 0; i < out.total_size(); ++i) {
      int sym = static_cast<int>((i / stride) % factors[k].size());
      out.probs[static_cast<size_t>(i)] *= factors[k][sym];
    }
  }
  return out;
}

Dist mixture(const std::vector<Dist>& dists, const Dist& weights) {
  if (dists.empty()) throw std::invalid_argument("mixture: no components");
  validate(weights);
  if (weights.size() != static_cast<int>(dists.size())) {
    throw std::invalid_argument("mixture: weight count does not match components");
  }
  const int n = dists[0].size();
  for (const Dist& d : dists) {
    validate(d);
    if (d.size() != n) throw std::invalid_argument("mixture: alphabet mismatch");
  }
  Dist out{std::vector<double>(static_cast<size_t>(n), 0.0)};
  for (size_t i = 0; i < dists.size(); ++i) {
    for (int a = 0; a < n; ++a) {
      out.probs[static_cast<size_t>(a)] += weights[static_cast<int>(i)] * dists[i][a];
    }
  }
  return out;
}

Dist marginal(const JointDist& joint, int axis) {
  validate(joint);
  if (axis < 0 || axis >= joint.axis_count()) {
    throw std::invalid_argument("marginal: axis out of range");
  }
  long stride = 1;
  for (int a = joint.axis_count() - 1; a > axis; --a) stride *= joint.axis_sizes[a];
  const int sz = joint.axis_sizes[axis];
  Dist out{std::vector<double>(static_cast<size_t>(sz), 0.0)};
  for (long i = 0; i < joint.total_size(); ++i) {
    int sym = static_cast<int>((i / stride) % sz);
    out.probs[static_cast<size_t>(sym)] += joint.probs[static_cast<size_t>(i)];
  }
  return out;
}

JointDist input_output_joint(const Dist& in, const Channel& ch) {
  validate(in);
  validate(ch);
  if (in.size() != ch.input_size) {
    throw ModelError("input_output_joint: input alphabet does not match channel");
  }
  JointDist j;
  j.axis_sizes = {in.size(), ch.output_size};
  j.probs.resize(static_cast<size_t>(in.size()) * ch.output_size);
  for (int x = 0; x < in.size(); ++x) {
    for (int y = 0; y < ch.output_size; ++y) {
      j.probs[static_cast<size_t>(x) * ch.output_size + y] = in[x] * ch.at(x, y);
    }
  }
  return j;
}

Channel fix_component(const Channel& ch, const std::vector<int>& axis_sizes,
                      int k, int symbol) {
  validate(ch);
  long total = 1;
  for (int s : axis_sizes) total *= s;
  if (total != ch.input_size) {
    throw ModelError("fix_component: axis sizes do not factor the channel input");
  }
  if (k < 0 || k >= static_cast<int>(axis_sizes.size())) {
    throw std::out_of_range("fix_component: component index out of range");
  }
  if (symbol < 0 || symbol >= axis_sizes[static_cast<size_t>(k)]) {
    throw std::out_of_range("fix_component: symbol out of range");
  }

  long rest = total / axis_sizes[static_cast<size_t>(k)];
  Channel out;
  out.input_size = static_cast<int>(rest);
  out.output_size = ch.output_size;
  out.probs.resize(static_cast<size_t>(rest) * ch.output_size);

  // Walk x_{-k} row-major over the remaining axes; rebuild the full index
  // with component k pinned.
  for (long r = 0; r < rest; ++r) {
    long rem = r;
    long full = 0;
    for (size_t j = 0; j < axis_sizes.size(); ++j) {
      long sym;
      if (static_cast<int>(j) == k) {
        sym = symbol;
      } else {
        long stride = 1;
        for (size_t m = j + 1; m < axis_sizes.size(); ++m) {
          if (static_cast<int>(m) != k) stride *= axis_sizes[m];
        }
        sym = rem / stride;
        rem %= stride;
      }
      full = full * axis_sizes[j] + sym;
    }
    for (int y = 0; y < ch.output_size; ++y) {
      out.probs[static_cast<size_t>(r) * ch.output_size + y] =
          ch.at(static_cast<int>(full), y);
    }
  }
  return out;
}

double side_entropy(const Dist& p_rest, const Channel& ch_fixed) {
  if (p_rest.size() != ch_fixed.input_size) {
    throw ModelError("side_entropy: distribution does not match channel input");
  }
  return conditional_entropy(input_output_joint(p_rest, ch_fixed));
}

}  // namespace rsc
