#ifndef QRS_TYPES_HPP
#define QRS_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qrs {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Tolerances used by the value-type invariants. Double-precision dense
// solvers at the dimensions handled here (total dimension <= 4096) stay
// comfortably inside these bounds.
namespace tol {
inline constexpr double invariant = 1e-10;        // norms, traces, hermiticity
inline constexpr double eigen_residual = 1e-9;    // |rho v - lambda v|
inline constexpr double degenerate_gap = 1e-9;    // eigenvalue crossing flag
inline constexpr double direction_unit = 1e-12;   // unit 3-vectors
inline constexpr double probability_slack = 1e-9; // clamp window around [0,1]
inline constexpr double bell_margin = 1e-12;      // inequality satisfaction
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Composite-space construction/bookkeeping problems: duplicate labels,
// unknown subsystems, keep-sets that are not subsets, dimension cap.
struct SubsystemError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

// A value failed its construction invariant (norm, hermiticity, trace,
// positivity, unitarity, orthonormality).
struct InvariantError : Error {
  using Error::Error;
};

// Spectrum has (near-)equal nonzero eigenvalues, so an eigenbasis-derived
// set of internal states is not well defined.
struct DegenerateSpectrumError : Error {
  using Error::Error;
};

// Joint probabilities are defined for pairwise disjoint subsystem sets
// only; overlapping sets have ordering-dependent complex trace values.
struct DisjointnessError : Error {
  using Error::Error;
};

// A numeric result left its mathematically guaranteed range by more than
// the allowed slack.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace qrs

#endif  // QRS_TYPES_HPP
