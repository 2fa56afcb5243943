#ifndef QRS_SPECTRAL_HPP
#define QRS_SPECTRAL_HPP

#include <span>
#include <string>
#include <vector>

#include "qrs/state.hpp"
#include "qrs/types.hpp"

namespace qrs {

// Full eigendecomposition of a density matrix. Eigenvalues descend;
// eigenvectors are orthonormal and phase-fixed (largest-magnitude component
// real and positive, ties broken by lowest index).
//
// `degenerate` is set when two *nonzero* eigenvalues lie within
// tol::degenerate_gap of each other. Exact degeneracy makes the eigenbasis
// undetermined, so consumers that interpret eigenvectors as physical states
// refuse flagged decompositions; zero eigenvalues never carry probability
// and are exempt from the flag.
struct SpectralDecomposition {
  CompositeSpace space;
  std::vector<double> eigenvalues;
  std::vector<PureState> eigenvectors;
  bool degenerate = false;
};

SpectralDecomposition eig_hermitian(const DensityMatrix& rho);

// Biorthogonal single-sum expansion of a bipartite pure state:
//   psi = sum_j c_j |left_j> (x) |right_j>
// with c_j real, nonnegative, descending; phases are absorbed into the left
// vectors so the right vectors follow the canonical phase convention. Only
// coefficients above the rank cutoff are kept.
struct SchmidtForm {
  std::vector<double> coefficients;
  std::vector<PureState> left_vectors;
  std::vector<PureState> right_vectors;
};

// `left` must be a proper nonempty subset of psi's factors; the two halves
// need not be contiguous in canonical order.
SchmidtForm schmidt_decompose(const PureState& psi,
                              std::span<const std::string> left);

// Rotate v so its largest-magnitude component is real and positive
// (lowest index wins near-ties). No-op on (numerically) zero vectors.
Vector canonical_phase(Vector v);

}  // namespace qrs

#endif  // QRS_SPECTRAL_HPP
