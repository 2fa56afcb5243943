#include "qrs/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrs/measurement.hpp"

namespace qrs::scenarios {

namespace {

const SubsystemId particle_1{"P1", 2};
const SubsystemId particle_2{"P2", 2};
const SubsystemId device_1{"M1", 3};
const SubsystemId device_2{"M2", 3};
const SubsystemId device_3{"M3", 3};

Vector basis_vector(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v[index] = Complex(1.0, 0.0);
  return v;
}

PureState ready_pointer(const SubsystemId& pointer) {
  return PureState(CompositeSpace({pointer}), basis_vector(pointer.dim, 0));
}

// Spin measurement along n: controlled basis (plus, minus), outcomes on
// pointer states 1 and 2, ready state 0.
MeasurementModel spin_device(const SubsystemId& target,
                             const SubsystemId& pointer, const Direction& n) {
  auto [plus, minus] = spin_eigenbasis(n);
  return MeasurementModel{target, pointer, {plus, minus}, 0, {1, 2}};
}

// Measurement in the computational (up, down) basis of a qubit.
MeasurementModel computational_device(const SubsystemId& target,
                                      const SubsystemId& pointer) {
  return MeasurementModel{target,
                          pointer,
                          {basis_vector(2, 0), basis_vector(2, 1)},
                          0,
                          {1, 2}};
}

SubsystemBasis pointer_outcomes(const SubsystemId& pointer,
                                std::vector<std::string> labels) {
  SubsystemBasis basis;
  basis.subsystems = {pointer.name};
  CompositeSpace space({pointer});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    basis.states.emplace_back(space,
                              basis_vector(pointer.dim, static_cast<int>(i) + 1));
  }
  basis.labels = std::move(labels);
  return basis;
}

void check_pair_coefficients(Complex c1, Complex c2) {
  if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > tol::invariant) {
    throw InvariantError("pair coefficients must satisfy |c1|^2 + |c2|^2 = 1");
  }
}

// Evolved state over (P1, M1, P2, M2[, M3]).
PureState evolve_epr(Complex c1, Complex c2, const Direction& dir_a,
                     const Direction& dir_b, bool with_m3) {
  std::vector<SubsystemId> factors = {particle_1, device_1, particle_2,
                                      device_2};
  if (with_m3) factors.push_back(device_3);
  CompositeSpace space(factors);

  std::vector<PureState> parts = {build_epr_state(c1, c2),
                                  ready_pointer(device_1),
                                  ready_pointer(device_2)};
  if (with_m3) parts.push_back(ready_pointer(device_3));
  PureState psi = product_state(space, parts);

  if (with_m3) {
    // The extra device records the pair's basis index before the spin
    // measurements; the basis is fixed by the state's construction, which
    // also covers |c1| = |c2| where the reduced spectrum alone would leave
    // it undetermined.
    const auto m3 = premeasurement_unitary(
        computational_device(particle_1, device_3),
        CompositeSpace({particle_1, device_3}));
    psi = apply_unitary(m3, psi);
  }
  const auto u1 =
      premeasurement_unitary(spin_device(particle_1, device_1, dir_a),
                             CompositeSpace({particle_1, device_1}));
  const auto u2 =
      premeasurement_unitary(spin_device(particle_2, device_2, dir_b),
                             CompositeSpace({particle_2, device_2}));
  return apply_unitary(u2, apply_unitary(u1, psi));
}

std::vector<SubsystemBasis> device_bases(bool with_m3) {
  std::vector<SubsystemBasis> bases;
  bases.push_back(pointer_outcomes(device_1, {"+", "-"}));
  bases.push_back(pointer_outcomes(device_2, {"+", "-"}));
  if (with_m3) bases.push_back(pointer_outcomes(device_3, {"1", "2"}));
  return bases;
}

}  // namespace

PureState build_epr_state(Complex c1, Complex c2) {
  check_pair_coefficients(c1, c2);
  CompositeSpace space({particle_1, particle_2});
  Vector amp = Vector::Zero(4);
  amp[1] = c1;  // |1,up>|2,down>
  amp[2] = c2;  // |1,down>|2,up>
  return PureState(std::move(space), std::move(amp));
}

EprReport run_epr(const EprConfig& config) {
  check_pair_coefficients(config.c1, config.c2);

  EprReport report;
  report.config = config;

  const auto evolved = evolve_epr(config.c1, config.c2, config.direction_a,
                                  config.direction_b, config.with_m3);
  const auto bases = device_bases(config.with_m3);
  report.analytic = exact_joint_table(evolved, bases);

  for (std::size_t a = 0; a < report.analytic.axes.size(); ++a) {
    report.marginals.push_back(report.analytic.marginal(a));
  }

  if (config.shots > 0) {
    report.empirical = sample_table(report.analytic, config.shots, config.seed);
  }

  // Side-1 reduced state under a sweep of side-2 settings.
  const std::vector<std::string> side1 = {particle_1.name, device_1.name};
  const auto baseline = partial_trace(evolved, side1);
  double max_dev = 0.0;
  for (int step = 0; step < 12; ++step) {
    const double theta = step * std::numbers::pi / 6.0;
    const auto swept = evolve_epr(config.c1, config.c2, config.direction_a,
                                  Direction::from_polar(theta), config.with_m3);
    const auto rho = partial_trace(swept, side1);
    max_dev = std::max(
        max_dev,
        (rho.matrix() - baseline.matrix()).cwiseAbs().maxCoeff());
  }
  report.locality_max_deviation = max_dev;

  if (config.with_pseudo) {
    if (config.with_m3) {
      report.warnings.push_back(
          "pseudo values are defined for the arrangement without the extra "
          "device; skipped");
    } else {
      report.pseudo = pseudo_probability_demo(config, config.pseudo_l,
                                              config.pseudo_j, config.pseudo_k);
    }
  }
  if (report.analytic.degenerate_basis) {
    report.warnings.push_back(
        "joint table built on an arbitrary eigenbasis of a degenerate "
        "spectrum");
  }
  return report;
}

SingleChainReport run_single_measurement_chain(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol::invariant) {
    throw InvariantError("chain amplitudes must satisfy |a|^2 + |b|^2 = 1");
  }
  const SubsystemId particle{"P", 2};
  const SubsystemId device{"M", 3};
  const SubsystemId observer{"O", 3};
  CompositeSpace space({particle, device, observer});

  Vector spin(2);
  spin[0] = alpha;
  spin[1] = beta;
  std::vector<PureState> parts = {
      PureState(CompositeSpace({particle}), std::move(spin)),
      ready_pointer(device), ready_pointer(observer)};
  PureState psi = product_state(space, parts);

  const auto premeasure = premeasurement_unitary(
      computational_device(particle, device),
      CompositeSpace({particle, device}));
  // Readout copies the device's outcome states onto the observer; the
  // ready sector stays untouched.
  MeasurementModel readout{device,
                           observer,
                           {basis_vector(3, 1), basis_vector(3, 2)},
                           0,
                           {1, 2}};
  const auto read = premeasurement_unitary(
      readout, CompositeSpace({device, observer}));

  const PureState after_measure = apply_unitary(premeasure, psi);
  const PureState after_read = apply_unitary(read, after_measure);

  const std::vector<std::string> p_names = {particle.name};
  const std::vector<std::string> m_names = {device.name};
  const auto rho_p_before = partial_trace(after_measure, p_names);
  const auto rho_p_after = partial_trace(after_read, p_names);
  const auto rho_m_before = partial_trace(after_measure, m_names);
  const auto rho_m_after = partial_trace(after_read, m_names);

  SingleChainReport report;
  report.readout_deviation_particle =
      (rho_p_after.matrix() - rho_p_before.matrix()).cwiseAbs().maxCoeff();
  report.readout_deviation_device =
      (rho_m_after.matrix() - rho_m_before.matrix()).cwiseAbs().maxCoeff();

  // Axes from the possible internal states; label each eigenvector by its
  // dominant basis component.
  const auto label_axis = [](const SpectralDecomposition& spectral,
                             const std::vector<std::string>& names) {
    std::vector<std::string> labels;
    for (const auto& v : spectral.eigenvectors) {
      std::int64_t arg = 0;
      v.amplitudes().cwiseAbs().maxCoeff(&arg);
      std::string label = names[static_cast<std::size_t>(arg)];
      while (std::find(labels.begin(), labels.end(), label) != labels.end()) {
        label += "'";
      }
      labels.push_back(std::move(label));
    }
    return labels;
  };

  const std::vector<std::string> o_names = {observer.name};
  const auto sp = possible_internal_states(after_read, p_names);
  const auto sm = possible_internal_states(after_read, m_names);
  const auto so = possible_internal_states(after_read, o_names);

  std::vector<SubsystemBasis> bases = {
      basis_from_decomposition(p_names, sp),
      basis_from_decomposition(m_names, sm),
      basis_from_decomposition(o_names, so)};
  bases[0].labels = label_axis(sp, {"up", "down"});
  bases[1].labels = label_axis(sm, {"m_ready", "m_up", "m_down"});
  bases[2].labels = label_axis(so, {"o_ready", "o_up", "o_down"});

  report.joint = exact_joint_table(after_read, bases);
  for (std::size_t a = 0; a < report.joint.axes.size(); ++a) {
    report.marginals.push_back(report.joint.marginal(a));
  }

  const auto suffix = [](const std::string& label) {
    if (label.ends_with("up")) return 1;
    if (label.ends_with("down")) return 2;
    return 0;  // ready / null
  };
  double worst = 0.0;
  std::vector<std::int64_t> idx(3, 0);
  for (std::int64_t cell = 0; cell < report.joint.cell_count(); ++cell) {
    const int sp_ = suffix(report.joint.axes[0].labels[static_cast<std::size_t>(idx[0])]);
    const int sm_ = suffix(report.joint.axes[1].labels[static_cast<std::size_t>(idx[1])]);
    const int so_ = suffix(report.joint.axes[2].labels[static_cast<std::size_t>(idx[2])]);
    const bool matched = sp_ != 0 && sp_ == sm_ && sm_ == so_;
    if (!matched) {
      worst = std::max(worst, report.joint.values[static_cast<std::size_t>(cell)]);
    }
    for (std::size_t a = 3; a-- > 0;) {
      if (++idx[a] < report.joint.shape[a]) break;
      idx[a] = 0;
    }
  }
  report.max_mismatched_probability = worst;

  for (std::size_t i = 0; i < bases[1].labels.size(); ++i) {
    if (bases[1].labels[i] == "m_up") {
      report.device_up_probability = report.marginals[1][i];
    }
  }
  return report;
}

BellTripleReport run_bell_triple(double theta_ab, double theta_bc,
                                 double theta_ac, bool with_m3) {
  BellTripleReport report;
  report.theta_ab = theta_ab;
  report.theta_bc = theta_bc;
  report.theta_ac = theta_ac;
  report.with_m3 = with_m3;

  double angle_c = 0.0;
  if (std::abs(theta_ac - (theta_ab + theta_bc)) <= 1e-9) {
    angle_c = theta_ab + theta_bc;
  } else if (std::abs(theta_ac - std::abs(theta_ab - theta_bc)) <= 1e-9) {
    angle_c = theta_ab - theta_bc;
  } else {
    throw InvariantError(
        "angle triple is not realizable with coplanar directions: theta_ac "
        "must be theta_ab + theta_bc or |theta_ab - theta_bc|");
  }

  const auto pair_pp = [&](double theta_1, double theta_2) {
    EprConfig config;  // defaults to the anticorrelated pair
    config.direction_a = Direction::from_polar(theta_1);
    config.direction_b = Direction::from_polar(theta_2);
    config.with_m3 = with_m3;
    auto table = run_epr(config).analytic;
    if (with_m3) table = table.marginalized(2);
    const std::int64_t pp[2] = {0, 0};
    return table.at(pp);
  };

  report.p_ab = pair_pp(0.0, theta_ab);
  report.p_bc = pair_pp(theta_ab, angle_c);
  report.p_ac = pair_pp(0.0, angle_c);

  report.check.lhs = report.p_ab + report.p_bc;
  report.check.rhs = report.p_ac;
  report.check.margin = report.check.lhs - report.check.rhs;
  report.check.satisfied = report.check.margin >= -tol::bell_margin;
  return report;
}

PseudoValues pseudo_probability_demo(const EprConfig& config, int l, int j,
                                     int k) {
  check_pair_coefficients(config.c1, config.c2);
  if (l < 1 || l > 2 || j < 1 || j > 2 || k < 1 || k > 2) {
    throw InvariantError("pseudo demo indices are 1-based outcome indices");
  }
  const PureState evolved = evolve_epr(config.c1, config.c2,
                                       config.direction_a, config.direction_b,
                                       /*with_m3=*/false);

  // Possible internal states of the particle+device pair: the premeasured
  // images of the pair basis states.
  const CompositeSpace pair_space({particle_1, device_1});
  const auto u1 = premeasurement_unitary(
      spin_device(particle_1, device_1, config.direction_a), pair_space);
  const auto pair_state = [&](int index) {
    std::vector<PureState> parts = {
        PureState(CompositeSpace({particle_1}), basis_vector(2, index - 1)),
        ready_pointer(device_1)};
    return apply_unitary(u1, product_state(pair_space, parts));
  };

  const std::vector<std::string> pair_names = {particle_1.name, device_1.name};
  const std::vector<std::string> m1_names = {device_1.name};
  const std::vector<std::string> m2_names = {device_2.name};
  const auto m1_state = PureState(CompositeSpace({device_1}),
                                  basis_vector(3, j));
  const auto m2_state = PureState(CompositeSpace({device_2}),
                                  basis_vector(3, k));

  const auto trace_for = [&](int pair_index, bool pair_leftmost) {
    std::vector<SubsystemProjector> ordered;
    if (pair_leftmost) {
      ordered.push_back({pair_names, pair_state(pair_index)});
      ordered.push_back({m1_names, m1_state});
    } else {
      ordered.push_back({m1_names, m1_state});
      ordered.push_back({pair_names, pair_state(pair_index)});
    }
    ordered.push_back({m2_names, m2_state});
    return ordered_projector_trace(evolved, ordered);
  };

  PseudoValues out;
  out.pair_first = trace_for(l, true);
  out.pointer_first = trace_for(l, false);
  out.sum_over_pair_states = trace_for(1, true) + trace_for(2, true);

  std::vector<SubsystemProjector> devices = {{m1_names, m1_state},
                                             {m2_names, m2_state}};
  out.two_device_probability = joint_probability(evolved, devices);
  return out;
}

}  // namespace qrs::scenarios
