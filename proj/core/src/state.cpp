#include "qrs/state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qrs {

PureState::PureState(CompositeSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dimension()) {
    throw DimensionError("amplitude vector length " +
                         std::to_string(amplitudes_.size()) +
                         " does not match space dimension " +
                         std::to_string(space_.dimension()));
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::invariant) {
    throw InvariantError("state norm " + std::to_string(norm) +
                         " deviates from 1 beyond tolerance");
  }
}

DensityMatrix::DensityMatrix(CompositeSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = space_.dimension();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("density matrix shape does not match space dimension");
  }
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::invariant) {
    throw InvariantError("matrix is not hermitian (max deviation " +
                         std::to_string(herm) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::invariant) {
    throw InvariantError("trace deviates from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalue computation failed");
  }
  if (solver.eigenvalues().minCoeff() < -tol::invariant) {
    throw InvariantError("matrix has an eigenvalue below -1e-10");
  }
}

PureState tensor(const PureState& a, const PureState& b) {
  for (const auto& f : b.space().factors()) {
    if (a.space().contains(f.name)) {
      throw SubsystemError("tensor factors share subsystem '" + f.name + "'");
    }
  }
  std::vector<SubsystemId> factors = a.space().factors();
  factors.insert(factors.end(), b.space().factors().begin(),
                 b.space().factors().end());
  CompositeSpace joint(std::move(factors));

  const auto da = a.dimension();
  const auto db = b.dimension();
  Vector amp(da * db);
  for (std::int64_t i = 0; i < da; ++i) {
    amp.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
  }
  return PureState(std::move(joint), std::move(amp));
}

DensityMatrix pure_to_density(const PureState& psi) {
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.space(), std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep) {
  if (keep.empty()) {
    throw SubsystemError("partial trace needs a nonempty keep set");
  }
  const auto& space = rho.space();
  const auto keep_pos = space.positions(keep);  // throws on non-subset

  std::vector<std::size_t> comp_pos;
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    if (!std::binary_search(keep_pos.begin(), keep_pos.end(), i)) {
      comp_pos.push_back(i);
    }
  }

  const auto keep_off = index_offsets(space, keep_pos);
  const auto comp_off = index_offsets(space, comp_pos);
  const auto dk = static_cast<std::int64_t>(keep_off.size());

  Matrix out = Matrix::Zero(dk, dk);
  const auto& m = rho.matrix();
  for (std::int64_t r = 0; r < dk; ++r) {
    for (std::int64_t c = 0; c < dk; ++c) {
      Complex acc(0.0, 0.0);
      for (const auto e : comp_off) {
        acc += m(keep_off[static_cast<std::size_t>(r)] + e,
                 keep_off[static_cast<std::size_t>(c)] + e);
      }
      out(r, c) = acc;
    }
  }

  CompositeSpace sub = space.subspace(keep);
  return DensityMatrix(std::move(sub), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi,
                            std::span<const std::string> keep) {
  return partial_trace(pure_to_density(psi), keep);
}

PureState reorder_factors(const PureState& psi,
                          std::span<const std::string> order) {
  const auto& space = psi.space();
  if (order.size() != space.factor_count()) {
    throw SubsystemError("factor reorder must name every factor exactly once");
  }
  std::vector<SubsystemId> new_factors;
  std::vector<std::size_t> old_pos;
  new_factors.reserve(order.size());
  for (const auto& name : order) {
    const auto p = space.position(name);
    old_pos.push_back(p);
    new_factors.push_back(space.factor(p));
  }
  CompositeSpace new_space(new_factors);  // rejects repeated names

  const auto& old_strides = space.strides();
  const auto& new_strides = new_space.strides();
  Vector amp(space.dimension());
  for (std::int64_t new_idx = 0; new_idx < space.dimension(); ++new_idx) {
    std::int64_t rem = new_idx;
    std::int64_t old_idx = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::int64_t digit = rem / new_strides[k];
      rem %= new_strides[k];
      old_idx += digit * old_strides[old_pos[k]];
    }
    amp[new_idx] = psi.amplitudes()[old_idx];
  }
  return PureState(std::move(new_space), std::move(amp));
}

PureState product_state(const CompositeSpace& target,
                        std::span<const PureState> parts) {
  Vector amp = Vector::Ones(target.dimension());
  const auto& strides = target.strides();
  std::vector<bool> covered(target.factor_count(), false);

  for (const auto& part : parts) {
    // positions of this part's factors inside the target, target order
    std::vector<std::size_t> pos;
    std::vector<std::int64_t> part_strides;
    pos.reserve(part.space().factor_count());
    for (std::size_t i = 0; i < target.factor_count(); ++i) {
      const auto& name = target.factor(i).name;
      if (part.space().contains(name)) {
        const auto local = part.space().position(name);
        if (target.factor(i).dim != part.space().factor(local).dim) {
          throw DimensionError("factor '" + name +
                               "' has mismatched dimensions");
        }
        if (covered[i]) {
          throw SubsystemError("factor '" + name +
                               "' appears in two product parts");
        }
        covered[i] = true;
        pos.push_back(i);
        part_strides.push_back(part.space().strides()[local]);
      }
    }
    if (pos.size() != part.space().factor_count()) {
      throw SubsystemError("product part has factors outside the target");
    }
    for (std::int64_t idx = 0; idx < target.dimension(); ++idx) {
      std::int64_t local_idx = 0;
      for (std::size_t k = 0; k < pos.size(); ++k) {
        const std::int64_t digit =
            (idx / strides[pos[k]]) % target.factor(pos[k]).dim;
        local_idx += digit * part_strides[k];
      }
      amp[idx] *= part.amplitudes()[local_idx];
    }
  }
  if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
    throw SubsystemError("product parts must partition the target space");
  }
  return PureState(target, std::move(amp));
}

}  // namespace qrs
