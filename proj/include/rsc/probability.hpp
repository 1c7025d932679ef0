// Finite probability distributions, channels and the entropy quantities
// the rest of the library is built on.
//
// Conventions
//   - All entropies are in bits (log base 2), with 0*log 0 := 0.
//   - A JointDist stores its probabilities flat, row-major over the declared
//     axis order: index = ((x1*s2 + x2)*s3 + x3)... . Every module shares
//     this layout.
//   - Simplex sums are validated to 1e-9; entries below 1e-12 count as
//     exact zeros for support purposes.

#pragma once

#include <stdexcept>
#include <vector>

namespace rsc {

inline constexpr double kSimplexTol = 1e-9;
inline constexpr double kSupportTol = 1e-12;

// Dimension/model mismatches (distinct from text parse errors, see model_spec.hpp).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Probability distribution over {0, ..., size()-1}.
struct Dist {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  double operator[](int i) const { return probs[static_cast<size_t>(i)]; }
};

// Distribution over a product alphabet, flat row-major over axis_sizes.
struct JointDist {
  std::vector<int> axis_sizes;
  std::vector<double> probs;

  int axis_count() const { return static_cast<int>(axis_sizes.size()); }
  long total_size() const;
};

// Row-stochastic matrix: rows[x] is a distribution over outputs given input x.
struct Channel {
  int input_size = 0;
  int output_size = 0;
  std::vector<double> probs;  // flat, input-major

  double at(int x, int y) const {
    return probs[static_cast<size_t>(x) * output_size + y];
  }
  Dist row(int x) const;
};

Dist uniform_dist(int n);
Dist point_mass(int n, int at);

// Throw std::invalid_argument unless the value is a valid distribution /
// channel (entries >= 0, sums within kSimplexTol of 1).
void validate(const Dist& d);
void validate(const JointDist& j);
void validate(const Channel& ch);

// H(d) in bits; in [0, log2(size)].
double entropy(const Dist& d);

// H(A|Y) for a two-axis joint over (A, Y), in bits.
double conditional_entropy(const JointDist& joint);

// Product distribution over the factors' product alphabet.
JointDist product(const std::vector<Dist>& factors);

// Entrywise convex combination; all factors must share an alphabet.
Dist mixture(const std::vector<Dist>& dists, const Dist& weights);

// Marginal of one axis.
Dist marginal(const JointDist& joint, int axis);

// Joint over (input, output) with input ~ in and output ~ ch(.|input).
JointDist input_output_joint(const Dist& in, const Channel& ch);

// Sub-channel over the remaining components when component k of the
// declared product input alphabet is pinned to `symbol`. Rows of the
// result are ordered row-major over the remaining axes in ascending
// component order.
Channel fix_component(const Channel& ch, const std::vector<int>& axis_sizes,
                      int k, int symbol);

// H(rest | signal) when rest ~ p_rest and the signal is drawn through
// ch_fixed; equals conditional_entropy of the explicitly built joint.
double side_entropy(const Dist& p_rest, const Channel& ch_fixed);

}  // namespace rsc
