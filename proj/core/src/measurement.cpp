#include "qrs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qrs {

void validate(const MeasurementModel& model) {
  if (model.target.dim < 2 || model.pointer.dim < 2) {
    throw DimensionError("measurement model subsystems need dim >= 2");
  }
  if (model.target.name == model.pointer.name) {
    throw SubsystemError("target and pointer must be distinct subsystems");
  }
  const auto outcomes = model.controlled_basis.size();
  if (outcomes == 0 || outcomes > static_cast<std::size_t>(model.target.dim)) {
    throw InvariantError("controlled basis size must be in [1, target dim]");
  }
  if (model.pointer_map.size() != outcomes) {
    throw InvariantError("pointer map must cover every controlled basis state");
  }
  if (model.pointer.dim < static_cast<int>(outcomes) + 1) {
    throw DimensionError(
        "pointer needs one more basis state than there are outcomes");
  }
  if (model.ready_index < 0 || model.ready_index >= model.pointer.dim) {
    throw InvariantError("ready index out of pointer range");
  }
  std::set<int> targets;
  for (int m : model.pointer_map) {
    if (m < 0 || m >= model.pointer.dim) {
      throw InvariantError("pointer map entry out of range");
    }
    if (m == model.ready_index) {
      throw InvariantError("pointer map may not reuse the ready state");
    }
    if (!targets.insert(m).second) {
      throw InvariantError("pointer map must be injective");
    }
  }
  for (std::size_t i = 0; i < outcomes; ++i) {
    if (model.controlled_basis[i].size() != model.target.dim) {
      throw DimensionError("controlled basis state has wrong dimension");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex ip =
          model.controlled_basis[j].dot(model.controlled_basis[i]);
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - Complex(want, 0.0)) > tol::invariant) {
        throw InvariantError("controlled basis is not orthonormal");
      }
    }
  }
}

UnitaryOp::UnitaryOp(CompositeSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = space_.dimension();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("unitary shape does not match space dimension");
  }
  const double dev = (matrix_.adjoint() * matrix_ - Matrix::Identity(d, d))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > tol::invariant) {
    throw InvariantError("operator is not unitary (max deviation " +
                         std::to_string(dev) + ")");
  }
}

UnitaryOp premeasurement_unitary(const MeasurementModel& model,
                                 const CompositeSpace& space) {
  validate(model);
  if (!space.contains(model.target.name) ||
      !space.contains(model.pointer.name)) {
    throw SubsystemError("measurement model subsystems absent from space");
  }
  const auto t_pos = space.position(model.target.name);
  const auto p_pos = space.position(model.pointer.name);
  if (space.factor(t_pos).dim != model.target.dim ||
      space.factor(p_pos).dim != model.pointer.dim) {
    throw DimensionError("model dimensions disagree with the space");
  }

  const std::int64_t dt = model.target.dim;
  const std::int64_t dp = model.pointer.dim;
  // local pair index in the space's canonical factor order
  const bool target_first = t_pos < p_pos;
  const auto local = [&](std::int64_t t, std::int64_t p) {
    return target_first ? t * dp + p : p * dt + t;
  };

  // Pair operator: sum_j |phi_j><phi_j| (x) T_j  +  Q (x) I, where T_j
  // transposes (ready <-> m_j) and Q projects outside the controlled basis.
  Matrix pair = Matrix::Zero(dt * dp, dt * dp);
  Matrix q = Matrix::Identity(dt, dt);
  for (const auto& phi : model.controlled_basis) {
    q -= Matrix(phi * phi.adjoint());
  }
  for (std::int64_t tr = 0; tr < dt; ++tr) {
    for (std::int64_t tc = 0; tc < dt; ++tc) {
      for (std::int64_t p = 0; p < dp; ++p) {
        pair(local(tr, p), local(tc, p)) += q(tr, tc);
      }
      for (std::size_t j = 0; j < model.controlled_basis.size(); ++j) {
        const auto& phi = model.controlled_basis[j];
        const Complex pj = phi[tr] * std::conj(phi[tc]);
        const std::int64_t ready = model.ready_index;
        const std::int64_t mj = model.pointer_map[j];
        for (std::int64_t p = 0; p < dp; ++p) {
          std::int64_t image = p;  // T_j permutation
          if (p == ready) {
            image = mj;
          } else if (p == mj) {
            image = ready;
          }
          pair(local(tr, image), local(tc, p)) += pj;
        }
      }
    }
  }

  // Embed as identity on the remaining factors.
  std::vector<std::size_t> sel = {std::min(t_pos, p_pos),
                                  std::max(t_pos, p_pos)};
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    if (i != sel[0] && i != sel[1]) rest.push_back(i);
  }
  const auto sel_off = index_offsets(space, sel);
  const auto rest_off = index_offsets(space, rest);
  const auto dpair = static_cast<std::int64_t>(sel_off.size());

  Matrix full = Matrix::Zero(space.dimension(), space.dimension());
  for (const auto e : rest_off) {
    for (std::int64_t a = 0; a < dpair; ++a) {
      for (std::int64_t b = 0; b < dpair; ++b) {
        full(e + sel_off[static_cast<std::size_t>(a)],
             e + sel_off[static_cast<std::size_t>(b)]) = pair(a, b);
      }
    }
  }
  return UnitaryOp(space, std::move(full));
}

PureState apply_unitary(const UnitaryOp& u, const PureState& psi) {
  if (u.space() == psi.space()) {
    return PureState(psi.space(), u.matrix() * psi.amplitudes());
  }

  // u acts on a labeled subset; embed implicitly.
  const auto& space = psi.space();
  std::vector<std::size_t> sel;
  sel.reserve(u.space().factor_count());
  for (const auto& f : u.space().factors()) {
    if (!space.contains(f.name)) {
      throw SubsystemError("unitary factor '" + f.name +
                           "' absent from the state");
    }
    const auto p = space.position(f.name);
    if (space.factor(p).dim != f.dim) {
      throw DimensionError("unitary factor '" + f.name +
                           "' has mismatched dimension");
    }
    sel.push_back(p);
  }

  std::vector<std::size_t> sorted_sel = sel;
  std::sort(sorted_sel.begin(), sorted_sel.end());
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    if (!std::binary_search(sorted_sel.begin(), sorted_sel.end(), i)) {
      rest.push_back(i);
    }
  }

  // sel is passed in the unitary's own factor order, so local indices match
  // the unitary's row-major convention.
  const auto sel_off = index_offsets(space, sel);
  const auto rest_off = index_offsets(space, rest);
  const auto ds = static_cast<std::int64_t>(sel_off.size());

  Vector out(space.dimension());
  Vector x(ds), y(ds);
  for (const auto e : rest_off) {
    for (std::int64_t m = 0; m < ds; ++m) {
      x[m] = psi.amplitudes()[e + sel_off[static_cast<std::size_t>(m)]];
    }
    y = u.matrix() * x;
    for (std::int64_t m = 0; m < ds; ++m) {
      out[e + sel_off[static_cast<std::size_t>(m)]] = y[m];
    }
  }
  return PureState(space, std::move(out));
}

UnitaryOp compose(const UnitaryOp& second, const UnitaryOp& first) {
  if (!(second.space() == first.space())) {
    throw SubsystemError("composed unitaries must share a space");
  }
  return UnitaryOp(first.space(), second.matrix() * first.matrix());
}

}  // namespace qrs
