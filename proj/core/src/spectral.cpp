#include "qrs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qrs {

namespace {

// Eigenvalues at or below this are treated as numerically zero when
// deciding degeneracy; zero modes carry no probability.
constexpr double zero_eigenvalue = 1e-9;

}  // namespace

Vector canonical_phase(Vector v) {
  int best = -1;
  double best_mag = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag + 1e-12) {  // lowest index wins near-ties
      best_mag = mag;
      best = i;
    }
  }
  if (best < 0 || best_mag == 0.0) return v;
  const Complex pivot = v[best];
  v *= std::conj(pivot) / std::abs(pivot);
  return v;
}

SpectralDecomposition eig_hermitian(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian eigendecomposition failed");
  }

  const auto n = rho.dimension();
  SpectralDecomposition out;
  out.space = rho.space();
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  out.eigenvectors.reserve(static_cast<std::size_t>(n));
  // Eigen returns ascending order; emit descending.
  for (std::int64_t k = n; k-- > 0;) {
    out.eigenvalues.push_back(solver.eigenvalues()[k]);
    Vector v = canonical_phase(solver.eigenvectors().col(k));
    out.eigenvectors.emplace_back(rho.space(), std::move(v));
  }
  for (std::size_t k = 0; k + 1 < out.eigenvalues.size(); ++k) {
    const double hi = out.eigenvalues[k];
    const double lo = out.eigenvalues[k + 1];
    if (lo > zero_eigenvalue && hi - lo < tol::degenerate_gap) {
      out.degenerate = true;
      break;
    }
  }
  return out;
}

SchmidtForm schmidt_decompose(const PureState& psi,
                              std::span<const std::string> left) {
  const auto& space = psi.space();
  if (left.empty() || left.size() >= space.factor_count()) {
    throw SubsystemError(
        "schmidt bipartition needs a proper nonempty factor subset");
  }
  const auto left_pos = space.positions(left);

  std::vector<std::size_t> right_pos;
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    if (!std::binary_search(left_pos.begin(), left_pos.end(), i)) {
      right_pos.push_back(i);
    }
  }

  const auto left_off = index_offsets(space, left_pos);
  const auto right_off = index_offsets(space, right_pos);
  const auto dl = static_cast<std::int64_t>(left_off.size());
  const auto dr = static_cast<std::int64_t>(right_off.size());

  Matrix a(dl, dr);
  for (std::int64_t i = 0; i < dl; ++i) {
    for (std::int64_t j = 0; j < dr; ++j) {
      a(i, j) = psi.amplitudes()[left_off[static_cast<std::size_t>(i)] +
                                 right_off[static_cast<std::size_t>(j)]];
    }
  }

  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();

  CompositeSpace left_space = space.subspace(left);
  std::vector<std::string> right_names;
  for (auto p : right_pos) right_names.push_back(space.factor(p).name);
  CompositeSpace right_space = space.subspace(right_names);

  SchmidtForm out;
  for (std::int64_t k = 0; k < sigma.size(); ++k) {
    if (sigma[k] <= 1e-12) break;  // rank cutoff
    Vector u = svd.matrixU().col(k);
    Vector v = svd.matrixV().col(k).conjugate();
    // Canonicalize the right vector; the compensating phase moves into the
    // left vector so the term u (x) v is unchanged.
    Vector v_fixed = canonical_phase(v);
    if (v.cwiseAbs().maxCoeff() > 0.0) {
      // recover the applied phase from any nonzero component
      std::int64_t piv = 0;
      v.cwiseAbs().maxCoeff(&piv);
      const Complex phase = v_fixed[piv] / v[piv];
      u *= std::conj(phase);
    }
    out.coefficients.push_back(sigma[k]);
    out.left_vectors.emplace_back(left_space, std::move(u));
    out.right_vectors.emplace_back(right_space, std::move(v_fixed));
  }
  return out;
}

}  // namespace qrs
