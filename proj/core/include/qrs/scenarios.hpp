#ifndef QRS_SCENARIOS_HPP
#define QRS_SCENARIOS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrs/direction.hpp"
#include "qrs/lhv.hpp"
#include "qrs/postulates.hpp"
#include "qrs/state.hpp"
#include "qrs/types.hpp"

namespace qrs::scenarios {

// Two-particle run configuration. The pair starts in
//   c1 |1,up>|2,down> + c2 |1,down>|2,up>
// and each particle meets a spin measurement device along the configured
// direction. with_m3 inserts an extra nondisturbing device that records the
// pair's basis index before the spin measurements.
struct EprConfig {
  Complex c1{0.70710678118654752440, 0.0};
  Complex c2{-0.70710678118654752440, 0.0};
  Direction direction_a = Direction::from_polar(0.0);
  Direction direction_b = Direction::from_polar(0.0);
  bool with_m3 = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool with_pseudo = false;
  // 1-based state indices for the pseudo-probability demo (pair state l,
  // device outcomes j, k).
  int pseudo_l = 1;
  int pseudo_j = 1;
  int pseudo_k = 1;
};

// Ordering-dependent trace values for the non-disjoint projector triple
// (particle+device pair, its own device, the far device).
struct PseudoValues {
  Complex pair_first;          // pair projector leftmost
  Complex pointer_first;       // device projector leftmost
  Complex sum_over_pair_states;  // sum of pair_first over the pair index
  double two_device_probability; // P(device1 = j, device2 = k), the sum target
};

struct EprReport {
  EprConfig config;
  JointProbabilityTable analytic;  // axes (M1, M2[, M3]), "+"/"-" outcomes
  std::optional<JointProbabilityTable> empirical;  // frequencies, shots > 0
  std::vector<std::vector<double>> marginals;      // per axis
  // Max elementwise change of the side-1 particle+device reduced state
  // across a sweep of side-2 directions (30 degree grid).
  double locality_max_deviation = 0.0;
  std::optional<PseudoValues> pseudo;
  std::vector<std::string> warnings;
};

// c1 |1,up>|2,down> + c2 |1,down>|2,up> over qubits P1, P2.
PureState build_epr_state(Complex c1, Complex c2);

EprReport run_epr(const EprConfig& config);

// Single particle -> device -> observer chain: premeasure the spin-z of
// alpha|up> + beta|down> onto a pointer, then copy the pointer reading onto
// an observer register.
struct SingleChainReport {
  JointProbabilityTable joint;  // axes (P, M, O), eigenbasis-labeled
  std::vector<std::vector<double>> marginals;
  // Largest probability on any cell whose labels disagree (strictness of
  // the P <-> M <-> O correlation).
  double max_mismatched_probability = 0.0;
  double device_up_probability = 0.0;  // P(M = m_up)
  // Max elementwise change of the particle/device reduced states across
  // the observer readout.
  double readout_deviation_particle = 0.0;
  double readout_deviation_device = 0.0;
};

SingleChainReport run_single_measurement_chain(Complex alpha, Complex beta);

// Bell triple on the anticorrelated pair: three pairwise runs assembled
// into P(a+,b+) + P(b+,c+) >= P(a+,c+). Directions are coplanar with
// a at angle 0; theta_ac must equal theta_ab + theta_bc or
// |theta_ab - theta_bc| for the triple to be realizable.
struct BellTripleReport {
  double theta_ab = 0.0;  // radians
  double theta_bc = 0.0;
  double theta_ac = 0.0;
  bool with_m3 = false;
  double p_ab = 0.0;  // ++ cells of the three pairwise runs
  double p_bc = 0.0;
  double p_ac = 0.0;
  lhv::BellCheckResult check;
};

BellTripleReport run_bell_triple(double theta_ab, double theta_bc,
                                 double theta_ac, bool with_m3);

// Both projector orderings plus the sum rule for the given 1-based indices.
PseudoValues pseudo_probability_demo(const EprConfig& config, int l, int j,
                                     int k);

}  // namespace qrs::scenarios

#endif  // QRS_SCENARIOS_HPP
