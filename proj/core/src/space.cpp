#include "qrs/space.hpp"

#include <algorithm>
#include <set>

namespace qrs {

CompositeSpace::CompositeSpace(std::vector<SubsystemId> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw SubsystemError("composite space needs at least one factor");
  }
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 2) {
      throw DimensionError("subsystem '" + f.name + "' has dim " +
                           std::to_string(f.dim) + ", need >= 2");
    }
    if (!seen.insert(f.name).second) {
      throw SubsystemError("duplicate subsystem label '" + f.name + "'");
    }
  }
  dimension_ = 1;
  for (const auto& f : factors_) {
    dimension_ *= f.dim;
    if (dimension_ > max_dimension) {
      throw DimensionError("total dimension exceeds cap of " +
                           std::to_string(max_dimension));
    }
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size(); i-- > 1;) {
    strides_[i - 1] = strides_[i] * factors_[i].dim;
  }
}

bool CompositeSpace::contains(std::string_view name) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const SubsystemId& f) { return f.name == name; });
}

std::size_t CompositeSpace::position(std::string_view name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].name == name) return i;
  }
  throw SubsystemError("subsystem '" + std::string(name) +
                       "' is not part of this space");
}

std::vector<std::size_t> CompositeSpace::positions(
    std::span<const std::string> names) const {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(position(n));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw SubsystemError("repeated subsystem label in selection");
  }
  return out;
}

CompositeSpace CompositeSpace::subspace(
    std::span<const std::string> keep) const {
  auto pos = positions(keep);  // validates and orders canonically
  std::vector<SubsystemId> sub;
  sub.reserve(pos.size());
  for (auto p : pos) sub.push_back(factors_[p]);
  return CompositeSpace(std::move(sub));
}

CompositeSpace CompositeSpace::complement(
    std::span<const std::string> drop) const {
  auto pos = positions(drop);
  std::vector<SubsystemId> rest;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!std::binary_search(pos.begin(), pos.end(), i)) {
      rest.push_back(factors_[i]);
    }
  }
  if (rest.empty()) {
    throw SubsystemError("complement is empty");
  }
  return CompositeSpace(std::move(rest));
}

std::vector<std::int64_t> index_offsets(
    const CompositeSpace& space, std::span<const std::size_t> positions) {
  std::int64_t count = 1;
  for (auto p : positions) count *= space.factor(p).dim;
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(count), 0);
  std::int64_t repeat = count;
  for (auto p : positions) {
    const std::int64_t dim = space.factor(p).dim;
    const std::int64_t stride = space.strides()[p];
    repeat /= dim;
    // positions are visited most-significant first
    std::int64_t idx = 0;
    while (idx < count) {
      for (std::int64_t d = 0; d < dim; ++d) {
        for (std::int64_t r = 0; r < repeat; ++r) {
          offsets[static_cast<std::size_t>(idx++)] += d * stride;
        }
      }
    }
  }
  return offsets;
}

}  // namespace qrs
