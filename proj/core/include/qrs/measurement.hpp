#ifndef QRS_MEASUREMENT_HPP
#define QRS_MEASUREMENT_HPP

#include <vector>

#include "qrs/space.hpp"
#include "qrs/state.hpp"
#include "qrs/types.hpp"

namespace qrs {

// Controlled basis-to-pointer map defining a premeasurement interaction:
// the j-th controlled basis state of `target` sends the pointer's ready
// state to pointer basis state pointer_map[j], leaving the target
// untouched. The pointer needs one more basis state than there are
// outcomes, so the ready state stays distinct from every outcome state.
struct MeasurementModel {
  SubsystemId target;
  SubsystemId pointer;
  std::vector<Vector> controlled_basis;  // orthonormal, over target
  int ready_index = 0;
  std::vector<int> pointer_map;  // controlled-basis index -> pointer index
};

// Throws InvariantError / DimensionError on a malformed model.
void validate(const MeasurementModel& model);

// Unitary operator over a labeled composite space.
class UnitaryOp {
 public:
  UnitaryOp(CompositeSpace space, Matrix matrix);

  const CompositeSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  CompositeSpace space_;
  Matrix matrix_;
};

// The premeasurement unitary on `space`:
//   U (|phi_j> (x) |m_ready>) = |phi_j> (x) |m_j>
// realized as a pointer transposition (ready <-> m_j) controlled on each
// basis state, identity elsewhere and on every other subsystem. `space`
// must contain both the target and the pointer.
UnitaryOp premeasurement_unitary(const MeasurementModel& model,
                                 const CompositeSpace& space);

// Apply u to psi. u may live on a labeled subset of psi's factors; the
// embedding into the remaining factors is implicit.
PureState apply_unitary(const UnitaryOp& u, const PureState& psi);

// second after first; both on the same space.
UnitaryOp compose(const UnitaryOp& second, const UnitaryOp& first);

}  // namespace qrs

#endif  // QRS_MEASUREMENT_HPP
