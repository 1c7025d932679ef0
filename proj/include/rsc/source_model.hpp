// A vector source: K components, each with its own alphabet and nominal
// per-component distribution; the joint symbol is the product, row-major
// in component order.

#pragma once

#include <vector>

#include "rsc/probability.hpp"

namespace rsc {

struct SourceModel {
  std::vector<Dist> nominal;  // nominal[k] = P_k

  int component_count() const { return static_cast<int>(nominal.size()); }
  std::vector<int> alphabets() const;
  long joint_size() const;
};

void validate(const SourceModel& model);

// P_{-k}: product of the other components, flattened row-major over the
// remaining axes in ascending component order. For K=1 this is the point
// mass on the empty tuple (a 1-symbol alphabet).
Dist rest_distribution(const SourceModel& model, int k);

// Flat joint index <-> per-component symbols, row-major in component order.
long pack_symbols(const std::vector<int>& alphabets, const std::vector<int>& symbols);
std::vector<int> unpack_symbols(const std::vector<int>& alphabets, long index);

}  // namespace rsc
