#ifndef QRS_SPACE_HPP
#define QRS_SPACE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrs/types.hpp"

namespace qrs {

// A labeled finite-dimensional subsystem, e.g. {"P1", 2} for a spin-1/2
// particle or {"M1", 3} for a pointer with a ready state and two outcomes.
struct SubsystemId {
  std::string name;
  int dim = 0;

  friend bool operator==(const SubsystemId& a, const SubsystemId& b) {
    return a.name == b.name && a.dim == b.dim;
  }
};

// Ordered tensor product of labeled subsystems. The construction order is
// canonical: every state/operator index and every subset operation derives
// from it, which removes index-permutation ambiguity. Basis indexing is
// row-major with factor 0 most significant.
class CompositeSpace {
 public:
  static constexpr std::int64_t max_dimension = 4096;

  CompositeSpace() = default;
  explicit CompositeSpace(std::vector<SubsystemId> factors);

  const std::vector<SubsystemId>& factors() const { return factors_; }
  std::size_t factor_count() const { return factors_.size(); }
  const SubsystemId& factor(std::size_t i) const { return factors_[i]; }
  std::int64_t dimension() const { return dimension_; }

  bool contains(std::string_view name) const;
  // Position of a named factor in canonical order; throws SubsystemError.
  std::size_t position(std::string_view name) const;
  // Positions of the named factors, ascending. Throws if any is missing or
  // the names repeat.
  std::vector<std::size_t> positions(std::span<const std::string> names) const;

  // Row-major strides, one per factor.
  const std::vector<std::int64_t>& strides() const { return strides_; }

  // The factors named in `keep`, in canonical (construction) order.
  CompositeSpace subspace(std::span<const std::string> keep) const;
  // Complement of `drop`, in canonical order.
  CompositeSpace complement(std::span<const std::string> drop) const;

  friend bool operator==(const CompositeSpace& a, const CompositeSpace& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<SubsystemId> factors_;
  std::vector<std::int64_t> strides_;
  std::int64_t dimension_ = 1;
};

// All joint basis-index offsets generated by the factors at `positions`,
// i.e. sum_i idx_i * stride(positions[i]) for every multi-index, ordered
// row-major over the selected factors. The workhorse behind partial trace,
// operator embedding and product-state assembly.
std::vector<std::int64_t> index_offsets(const CompositeSpace& space,
                                        std::span<const std::size_t> positions);

}  // namespace qrs

#endif  // QRS_SPACE_HPP
