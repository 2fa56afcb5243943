#ifndef QRS_POSTULATES_HPP
#define QRS_POSTULATES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qrs/spectral.hpp"
#include "qrs/state.hpp"
#include "qrs/types.hpp"

namespace qrs {

// Policy for spectra with near-equal nonzero eigenvalues. The default is a
// hard error: an eigenbasis drawn from a degenerate spectrum is arbitrary,
// so results built on it are not physical predictions. The override exists
// for exploratory use and taints everything downstream with a flag.
enum class DegeneracyPolicy { reject, accept_arbitrary_basis };

// Eigendecomposition of the reduced state of `subsystem` relative to the
// isolated reference system described by `isolated`. The eigenvalues are
// the probabilities that the matching eigenvector coincides with the
// subsystem's internal state.
SpectralDecomposition possible_internal_states(
    const PureState& isolated, std::span<const std::string> subsystem,
    DegeneracyPolicy policy = DegeneracyPolicy::reject);

// The reduced state of `subsystem`, viewed as the hermitian observable
// whose eigenbasis defines the nondisturbing measurement of that
// subsystem's internal state.
DensityMatrix nondisturbing_observable(const PureState& isolated,
                                       std::span<const std::string> subsystem);

// An orthonormal set of candidate internal states for one subsystem set.
// Usually produced by possible_internal_states; scenario code may supply
// bases directly when the construction fixes them (pointer states, a known
// pair basis) and the reduced spectrum alone could not.
struct SubsystemBasis {
  std::vector<std::string> subsystems;
  std::vector<PureState> states;     // over the subsystem subspace
  std::vector<std::string> labels;   // parallel to states
  bool degenerate_origin = false;
};

// Wrap a decomposition as a basis; labels default to "1", "2", ...
SubsystemBasis basis_from_decomposition(std::vector<std::string> subsystems,
                                        const SpectralDecomposition& spectral);

// Rank-1 projector |state><state| acting on a labeled factor subset.
struct SubsystemProjector {
  std::vector<std::string> subsystems;
  PureState state;
};

struct AssignmentEntry {
  std::vector<std::string> subsystems;
  int state_index = 0;  // into that set's possible internal states
};

// Assignment of one candidate internal state to each of several pairwise
// disjoint subsystem sets.
struct InternalStateAssignment {
  std::vector<AssignmentEntry> entries;
};

// Joint probability that every listed subsystem set's internal state
// coincides with the assigned candidate:
//   P = Tr[ pi_1 ... pi_n rho(I) ]
// Defined for pairwise disjoint sets only; the projectors then act on
// distinct tensor factors, commute, and the trace is a real number in
// [0, 1]. Overlapping sets are rejected with a pointer to
// pseudo_joint_probability.
double joint_probability(const PureState& isolated,
                         const InternalStateAssignment& assignment,
                         DegeneracyPolicy policy = DegeneracyPolicy::reject);
double joint_probability(const PureState& isolated,
                         std::span<const SubsystemProjector> projectors);

// The same trace with the projectors multiplied in the given order and no
// disjointness requirement. The value is generally complex and depends on
// the ordering; it carries no probability interpretation.
Complex ordered_projector_trace(const PureState& isolated,
                                std::span<const SubsystemProjector> ordered);

struct OrderedStateRef {
  std::vector<std::string> subsystems;
  int state_index = 0;
};

Complex pseudo_joint_probability(
    const PureState& isolated, std::span<const OrderedStateRef> ordered,
    DegeneracyPolicy policy = DegeneracyPolicy::reject);

struct TableAxis {
  std::vector<std::string> subsystems;
  std::vector<std::string> labels;  // one per candidate state
};

// Dense joint-probability (or frequency) tensor over per-subsystem axes,
// row-major with axis 0 most significant.
struct JointProbabilityTable {
  std::vector<TableAxis> axes;
  std::vector<std::int64_t> shape;
  std::vector<double> values;
  bool degenerate_basis = false;

  std::int64_t cell_count() const;
  std::int64_t flat_index(std::span<const std::int64_t> indices) const;
  double at(std::span<const std::int64_t> indices) const;
  double sum() const;
  // Sum over all axes except `axis`.
  std::vector<double> marginal(std::size_t axis) const;
  // Table with `axis` summed out.
  JointProbabilityTable marginalized(std::size_t axis) const;
};

// The exact joint table over the given bases (axes ordered as given).
JointProbabilityTable exact_joint_table(const PureState& isolated,
                                        std::span<const SubsystemBasis> bases);
// Convenience: bases derived via possible_internal_states.
JointProbabilityTable exact_joint_table(
    const PureState& isolated,
    std::span<const std::vector<std::string>> subsystems,
    DegeneracyPolicy policy = DegeneracyPolicy::reject);

// Empirical frequencies of `shots` draws from an exact table, via inverse
// CDF over the flattened tensor. Deterministic in (seed); zero-probability
// cells are never drawn. Shots are consumed in fixed-size blocks whose
// substreams depend only on (seed, block index).
JointProbabilityTable sample_table(const JointProbabilityTable& analytic,
                                   std::uint64_t shots, std::uint64_t seed);

JointProbabilityTable sample_assignments(
    const PureState& isolated,
    std::span<const std::vector<std::string>> subsystems, std::uint64_t shots,
    std::uint64_t seed, DegeneracyPolicy policy = DegeneracyPolicy::reject);
JointProbabilityTable sample_assignments(const PureState& isolated,
                                         std::span<const SubsystemBasis> bases,
                                         std::uint64_t shots,
                                         std::uint64_t seed);

// Verify x is within tol::probability_slack of [0, 1], then clamp. Larger
// excursions are bugs and raise NumericError instead of being hidden.
double clamp_probability(double x);

}  // namespace qrs

#endif  // QRS_POSTULATES_HPP
