#include "rsc/source_model.hpp"

namespace rsc {

std::vector<int> SourceModel::alphabets() const {
  std::vector<int> sizes;
  sizes.reserve(nominal.size());
  for (const Dist& d : nominal) sizes.push_back(d.size());
  return sizes;
}

long SourceModel::joint_size() const {
  long n = 1;
  for (const Dist& d : nominal) n *= d.size();
  return n;
}

void validate(const SourceModel& model) {
  if (model.nominal.empty()) {
    throw std::invalid_argument("SourceModel: no components");
  }
  for (const Dist& d : model.nominal) validate(d);
}

Dist rest_distribution(const SourceModel& model, int k) {
  validate(model);
  if (k < 0 || k >= model.component_count()) {
    throw std::out_of_range("rest_distribution: component out of range");
  }
  std::vector<Dist> others;
  for (int j = 0; j < model.component_count(); ++j) {
    if (j != k) others.push_back(model.nominal[static_cast<size_t>(j)]);
  }
  if (others.empty()) return Dist{{1.0}};
  JointDist j = product(others);
  return Dist{j.probs};
}

long pack_symbols(const std::vector<int>& alphabets, const std::vector<int>& symbols) {
  long idx = 0;
  for (size_t j = 0; j < alphabets.size(); ++j) {
    idx = idx * alphabets[j] + symbols[j];
  }
  return idx;
}

std::vector<int> unpack_symbols(const std::vector<int>& alphabets, long index) {
  std::vector<int> symbols(alphabets.size());
  for (size_t j = alphabets.size(); j-- > 0;) {
    symbols[j] = static_cast<int>(index % alphabets[j]);
    index /= alphabets[j];
  }
  return symbols;
}

}  // namespace rsc
