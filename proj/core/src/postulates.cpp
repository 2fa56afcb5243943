#include "qrs/postulates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qrs/rng.hpp"

namespace qrs {

namespace {

constexpr std::uint64_t sample_block = 4096;

void check_disjoint(std::span<const std::vector<std::string>> sets) {
  std::set<std::string> seen;
  for (const auto& s : sets) {
    for (const auto& name : s) {
      if (!seen.insert(name).second) {
        throw DisjointnessError(
            "subsystem sets share '" + name +
            "'; overlapping sets have no joint probability, see "
            "ordered_projector_trace / pseudo_joint_probability");
      }
    }
  }
}

std::vector<std::string> union_names(
    std::span<const std::vector<std::string>> sets) {
  std::vector<std::string> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  return all;
}

// Per-part index maps: for each union-subspace basis index, the local basis
// index of the part within it.
std::vector<std::int64_t> local_indices(const CompositeSpace& reduced,
                                        std::span<const std::string> part) {
  const auto pos = reduced.positions(part);
  std::vector<std::int64_t> local_strides(pos.size());
  std::int64_t s = 1;
  for (std::size_t k = pos.size(); k-- > 0;) {
    local_strides[k] = s;
    s *= reduced.factor(pos[k]).dim;
  }
  std::vector<std::int64_t> map(static_cast<std::size_t>(reduced.dimension()));
  const auto& strides = reduced.strides();
  for (std::int64_t idx = 0; idx < reduced.dimension(); ++idx) {
    std::int64_t local = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const std::int64_t digit =
          (idx / strides[pos[k]]) % reduced.factor(pos[k]).dim;
      local += digit * local_strides[k];
    }
    map[static_cast<std::size_t>(idx)] = local;
  }
  return map;
}

// Projector state embedded over the reduced space: identity digits on the
// other factors, so the dense matrix is |state><state| (x) I.
Matrix embed_projector(const CompositeSpace& reduced,
                       const SubsystemProjector& proj) {
  const auto sub = reduced.subspace(proj.subsystems);
  if (!(sub == proj.state.space())) {
    throw SubsystemError(
        "projector state space does not match its subsystem set (factors "
        "must appear in canonical order)");
  }
  const auto mine = local_indices(reduced, proj.subsystems);

  std::vector<std::string> rest_names;
  for (const auto& f : reduced.factors()) {
    if (std::find(proj.subsystems.begin(), proj.subsystems.end(), f.name) ==
        proj.subsystems.end()) {
      rest_names.push_back(f.name);
    }
  }

  const auto d = reduced.dimension();
  Matrix out = Matrix::Zero(d, d);
  if (rest_names.empty()) {
    out = proj.state.amplitudes() * proj.state.amplitudes().adjoint();
    return out;
  }
  const auto rest = local_indices(reduced, rest_names);
  const auto& amp = proj.state.amplitudes();
  for (std::int64_t r = 0; r < d; ++r) {
    for (std::int64_t c = 0; c < d; ++c) {
      if (rest[static_cast<std::size_t>(r)] !=
          rest[static_cast<std::size_t>(c)]) {
        continue;
      }
      out(r, c) = amp[mine[static_cast<std::size_t>(r)]] *
                  std::conj(amp[mine[static_cast<std::size_t>(c)]]);
    }
  }
  return out;
}

SpectralDecomposition decompose_or_reject(const PureState& isolated,
                                          std::span<const std::string> subsystem,
                                          DegeneracyPolicy policy) {
  auto rho = partial_trace(isolated, subsystem);
  auto spectral = eig_hermitian(rho);
  if (spectral.degenerate && policy == DegeneracyPolicy::reject) {
    throw DegenerateSpectrumError(
        "reduced state has a degenerate nonzero spectrum; its eigenbasis is "
        "arbitrary (pass DegeneracyPolicy::accept_arbitrary_basis to "
        "proceed anyway)");
  }
  return spectral;
}

}  // namespace

SpectralDecomposition possible_internal_states(
    const PureState& isolated, std::span<const std::string> subsystem,
    DegeneracyPolicy policy) {
  return decompose_or_reject(isolated, subsystem, policy);
}

DensityMatrix nondisturbing_observable(const PureState& isolated,
                                       std::span<const std::string> subsystem) {
  return partial_trace(isolated, subsystem);
}

SubsystemBasis basis_from_decomposition(std::vector<std::string> subsystems,
                                        const SpectralDecomposition& spectral) {
  SubsystemBasis basis;
  basis.subsystems = std::move(subsystems);
  basis.states = spectral.eigenvectors;
  basis.degenerate_origin = spectral.degenerate;
  basis.labels.reserve(basis.states.size());
  for (std::size_t i = 0; i < basis.states.size(); ++i) {
    basis.labels.push_back(std::to_string(i + 1));
  }
  return basis;
}

double clamp_probability(double x) {
  if (x < -tol::probability_slack || x > 1.0 + tol::probability_slack) {
    throw NumericError("value " + std::to_string(x) +
                       " is too far outside [0, 1] to be a probability");
  }
  return std::clamp(x, 0.0, 1.0);
}

double joint_probability(const PureState& isolated,
                         std::span<const SubsystemProjector> projectors) {
  if (projectors.empty()) {
    throw SubsystemError("joint probability needs at least one projector");
  }
  std::vector<std::vector<std::string>> sets;
  for (const auto& p : projectors) sets.push_back(p.subsystems);
  check_disjoint(sets);

  const auto all = union_names(sets);
  const auto reduced = partial_trace(isolated, all);

  // Disjoint rank-1 projectors combine into one product state, so the trace
  // collapses to <Phi| rho |Phi>.
  std::vector<PureState> parts;
  parts.reserve(projectors.size());
  for (const auto& p : projectors) parts.push_back(p.state);
  const auto phi = product_state(reduced.space(), parts);

  const Complex value =
      phi.amplitudes().dot(reduced.matrix() * phi.amplitudes());
  return clamp_probability(value.real());
}

double joint_probability(const PureState& isolated,
                         const InternalStateAssignment& assignment,
                         DegeneracyPolicy policy) {
  std::vector<SubsystemProjector> projectors;
  projectors.reserve(assignment.entries.size());
  for (const auto& entry : assignment.entries) {
    auto spectral = decompose_or_reject(isolated, entry.subsystems, policy);
    if (entry.state_index < 0 ||
        entry.state_index >= static_cast<int>(spectral.eigenvectors.size())) {
      throw SubsystemError("assignment state index out of range");
    }
    projectors.push_back(
        {entry.subsystems,
         spectral.eigenvectors[static_cast<std::size_t>(entry.state_index)]});
  }
  return joint_probability(isolated, projectors);
}

Complex ordered_projector_trace(const PureState& isolated,
                                std::span<const SubsystemProjector> ordered) {
  if (ordered.empty()) {
    throw SubsystemError("projector trace needs at least one projector");
  }
  std::vector<std::string> all;
  std::set<std::string> seen;
  for (const auto& p : ordered) {
    for (const auto& name : p.subsystems) {
      if (seen.insert(name).second) all.push_back(name);
    }
  }
  const auto reduced = partial_trace(isolated, all);

  Matrix acc = reduced.matrix();
  for (std::size_t k = ordered.size(); k-- > 0;) {
    acc = embed_projector(reduced.space(), ordered[k]) * acc;
  }
  return acc.trace();
}

Complex pseudo_joint_probability(const PureState& isolated,
                                 std::span<const OrderedStateRef> ordered,
                                 DegeneracyPolicy policy) {
  std::vector<SubsystemProjector> projectors;
  projectors.reserve(ordered.size());
  for (const auto& ref : ordered) {
    auto spectral = decompose_or_reject(isolated, ref.subsystems, policy);
    if (ref.state_index < 0 ||
        ref.state_index >= static_cast<int>(spectral.eigenvectors.size())) {
      throw SubsystemError("state index out of range");
    }
    projectors.push_back(
        {ref.subsystems,
         spectral.eigenvectors[static_cast<std::size_t>(ref.state_index)]});
  }
  return ordered_projector_trace(isolated, projectors);
}

std::int64_t JointProbabilityTable::cell_count() const {
  return std::accumulate(shape.begin(), shape.end(), std::int64_t{1},
                         std::multiplies<>());
}

std::int64_t JointProbabilityTable::flat_index(
    std::span<const std::int64_t> indices) const {
  if (indices.size() != shape.size()) {
    throw DimensionError("wrong number of table indices");
  }
  std::int64_t flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (indices[a] < 0 || indices[a] >= shape[a]) {
      throw DimensionError("table index out of range");
    }
    flat = flat * shape[a] + indices[a];
  }
  return flat;
}

double JointProbabilityTable::at(std::span<const std::int64_t> indices) const {
  return values[static_cast<std::size_t>(flat_index(indices))];
}

double JointProbabilityTable::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::vector<double> JointProbabilityTable::marginal(std::size_t axis) const {
  std::vector<double> out(static_cast<std::size_t>(shape[axis]), 0.0);
  std::int64_t inner = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto digit =
        (static_cast<std::int64_t>(i) / inner) % shape[axis];
    out[static_cast<std::size_t>(digit)] += values[i];
  }
  return out;
}

JointProbabilityTable JointProbabilityTable::marginalized(
    std::size_t axis) const {
  JointProbabilityTable out;
  out.degenerate_basis = degenerate_basis;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (a != axis) {
      out.axes.push_back(axes[a]);
      out.shape.push_back(shape[a]);
    }
  }
  out.values.assign(static_cast<std::size_t>(out.cell_count()), 0.0);
  std::int64_t inner = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
  const std::int64_t axis_dim = shape[axis];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto idx = static_cast<std::int64_t>(i);
    const auto before = idx / (inner * axis_dim);
    const auto after = idx % inner;
    out.values[static_cast<std::size_t>(before * inner + after)] += values[i];
  }
  return out;
}

JointProbabilityTable exact_joint_table(
    const PureState& isolated, std::span<const SubsystemBasis> bases) {
  if (bases.empty()) {
    throw SubsystemError("joint table needs at least one axis");
  }
  std::vector<std::vector<std::string>> sets;
  for (const auto& b : bases) sets.push_back(b.subsystems);
  check_disjoint(sets);

  JointProbabilityTable table;
  for (const auto& b : bases) {
    if (b.states.empty() || b.labels.size() != b.states.size()) {
      throw SubsystemError("basis axis needs labeled states");
    }
    table.axes.push_back({b.subsystems, b.labels});
    table.shape.push_back(static_cast<std::int64_t>(b.states.size()));
    table.degenerate_basis |= b.degenerate_origin;
  }

  const auto all = union_names(sets);
  const auto reduced = partial_trace(isolated, all);

  const auto cells = table.cell_count();
  table.values.resize(static_cast<std::size_t>(cells));
  std::vector<std::int64_t> idx(bases.size(), 0);
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    std::vector<PureState> parts;
    parts.reserve(bases.size());
    for (std::size_t a = 0; a < bases.size(); ++a) {
      parts.push_back(bases[a].states[static_cast<std::size_t>(idx[a])]);
    }
    const auto phi = product_state(reduced.space(), parts);
    const Complex value =
        phi.amplitudes().dot(reduced.matrix() * phi.amplitudes());
    table.values[static_cast<std::size_t>(cell)] =
        clamp_probability(value.real());

    for (std::size_t a = bases.size(); a-- > 0;) {
      if (++idx[a] < table.shape[a]) break;
      idx[a] = 0;
    }
  }
  return table;
}

JointProbabilityTable exact_joint_table(
    const PureState& isolated,
    std::span<const std::vector<std::string>> subsystems,
    DegeneracyPolicy policy) {
  std::vector<SubsystemBasis> bases;
  bases.reserve(subsystems.size());
  for (const auto& s : subsystems) {
    bases.push_back(
        basis_from_decomposition(s, decompose_or_reject(isolated, s, policy)));
  }
  return exact_joint_table(isolated, bases);
}

JointProbabilityTable sample_table(const JointProbabilityTable& analytic,
                                   std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) {
    throw InvariantError("sampling needs at least one shot");
  }
  // Inverse CDF over the flattened tensor. Zero-probability cells get
  // zero-width intervals and can never be drawn.
  const auto n = analytic.values.size();
  std::vector<double> cdf(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += analytic.values[i];
    cdf[i] = total;
  }
  if (std::abs(total - 1.0) > tol::probability_slack) {
    throw NumericError("table mass deviates from 1 beyond tolerance");
  }
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cdf[i] /= total;
    if (analytic.values[i] > 0.0) last_nonzero = i;
  }
  for (std::size_t i = last_nonzero; i < n; ++i) cdf[i] = 1.0;

  std::vector<std::uint64_t> counts(n, 0);
  std::uint64_t done = 0;
  std::uint64_t block = 0;
  while (done < shots) {
    RandomStream rng(seed, block++);
    const std::uint64_t in_block = std::min<std::uint64_t>(
        sample_block, shots - done);
    for (std::uint64_t s = 0; s < in_block; ++s) {
      const double u = rng.next_double();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    done += in_block;
  }

  JointProbabilityTable out;
  out.axes = analytic.axes;
  out.shape = analytic.shape;
  out.degenerate_basis = analytic.degenerate_basis;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] =
        static_cast<double>(counts[i]) / static_cast<double>(shots);
  }
  return out;
}

JointProbabilityTable sample_assignments(const PureState& isolated,
                                         std::span<const SubsystemBasis> bases,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  return sample_table(exact_joint_table(isolated, bases), shots, seed);
}

JointProbabilityTable sample_assignments(
    const PureState& isolated,
    std::span<const std::vector<std::string>> subsystems, std::uint64_t shots,
    std::uint64_t seed, DegeneracyPolicy policy) {
  return sample_table(exact_joint_table(isolated, subsystems, policy), shots,
                      seed);
}

}  // namespace qrs
