#ifndef QRS_STATE_HPP
#define QRS_STATE_HPP

#include <span>
#include <string>
#include <vector>

#include "qrs/space.hpp"
#include "qrs/types.hpp"

namespace qrs {

// Normalized complex amplitude vector over a labeled composite space.
class PureState {
 public:
  PureState(CompositeSpace space, Vector amplitudes);

  const CompositeSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::int64_t dimension() const { return space_.dimension(); }

 private:
  CompositeSpace space_;
  Vector amplitudes_;
};

// Hermitian, unit-trace, positive-semidefinite matrix over a labeled
// composite space.
class DensityMatrix {
 public:
  DensityMatrix(CompositeSpace space, Matrix matrix);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  std::int64_t dimension() const { return space_.dimension(); }

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

// Product state over the concatenated space; the factor label sets must be
// disjoint. Amplitude at a joint index is the product of factor amplitudes.
PureState tensor(const PureState& a, const PureState& b);

// |psi><psi|, rank 1.
DensityMatrix pure_to_density(const PureState& psi);

// Trace over the complement of `keep`; the result lives on the kept factors
// in canonical order. `keep` must be a nonempty subset of rho's factors.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep);

// Convenience: partial trace of a pure state's dyad.
DensityMatrix partial_trace(const PureState& psi,
                            std::span<const std::string> keep);

// Same state expressed with factors permuted to `order` (a permutation of
// the existing factor names).
PureState reorder_factors(const PureState& psi,
                          std::span<const std::string> order);

// Assemble a product of part-states into a single state over `target`.
// The parts' factors must exactly partition target's factors; parts may
// interleave in canonical order.
PureState product_state(const CompositeSpace& target,
                        std::span<const PureState> parts);

}  // namespace qrs

#endif  // QRS_STATE_HPP
