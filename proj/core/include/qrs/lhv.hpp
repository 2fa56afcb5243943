#ifndef QRS_LHV_HPP
#define QRS_LHV_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "qrs/direction.hpp"
#include "qrs/rng.hpp"
#include "qrs/state.hpp"
#include "qrs/types.hpp"

namespace qrs::lhv {

// Directions are map keys through their spherical angles quantized to
// 1e-9 rad, which makes lookup well defined for floating-point inputs.
struct DirectionKey {
  std::int64_t theta_nanorad = 0;
  std::int64_t phi_nanorad = 0;
  auto operator<=>(const DirectionKey&) const = default;
};

DirectionKey quantize(const Direction& d);

// One hidden-variable value: its weight and the conditional probabilities
// of a "+" outcome on each side, per measurement direction.
struct LambdaResponse {
  double weight = 0.0;
  std::map<DirectionKey, double> response_a;
  std::map<DirectionKey, double> response_b;
};

// Discrete local-hidden-variable model: outcome probabilities factorize per
// lambda, and the weights form a probability distribution.
struct LhvModel {
  std::vector<LambdaResponse> lambdas;
};

void validate(const LhvModel& model);

// P(a+, b+) = sum_lambda w(lambda) P1(a+|lambda) P2(b+|lambda).
double correlation(const LhvModel& model, const Direction& a,
                   const Direction& b);

// E(a, b) in [-1, 1], from the full 2x2 outcome table:
// E = P(++) + P(--) - P(+-) - P(-+).
double expectation(const LhvModel& model, const Direction& a,
                   const Direction& b);

using CorrelationFn = std::function<double(const Direction&, const Direction&)>;
using ExpectationFn = std::function<double(const Direction&, const Direction&)>;

// P(a+,b+) + P(b+,c+) >= P(a+,c+), with the margin lhs - rhs.
struct BellCheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool satisfied = false;
};

BellCheckResult bell_check(const CorrelationFn& correlation, const Direction& a,
                           const Direction& b, const Direction& c);

// The two-spin-1/2 anticorrelated-pair prediction for P(a+, b+):
// (1/2) sin^2(theta/2) at relative angle theta.
double quantum_correlation(double theta_rad);

// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh_value(const ExpectationFn& expectation, const Direction& a,
                  const Direction& a_prime, const Direction& b,
                  const Direction& b_prime);

// E(a, b) of a labeled two-qubit pure state, measuring factor 0 along the
// first direction and factor 1 along the second.
ExpectationFn state_expectation(const PureState& two_qubit);

struct ChshScanResult {
  double max_abs_s = 0.0;
  // Achieving settings, radians; ties resolved toward the lowest
  // (a, a', b, b') tuple in grid order.
  double theta_a = 0.0;
  double theta_a_prime = 0.0;
  double theta_b = 0.0;
  double theta_b_prime = 0.0;
};

// Grid maximum of |S| over coplanar (x-z plane) settings with the given
// angular step. Deterministic for a fixed resolution.
ChshScanResult chsh_scan(const PureState& two_qubit, double resolution_rad);

// The model obtained by first recording which basis state an
// anticorrelated pair (coefficients c1, c2) is in: lambda ranges over the
// two basis indices with weight |c_l|^2, and each side responds with its
// conditional outcome probability. Classical benchmark reproducing the
// post-recording correlations.
LhvModel dephased_pair_model(Complex c1, Complex c2,
                             std::span<const Direction> directions);

// Deterministic responses with P1 in {0,1} and P2 = 1 - P1 for every
// direction: the constraint strict anticorrelation forces on an LHV model.
LhvModel random_deterministic_model(std::span<const Direction> directions,
                                    RandomStream& rng, int max_lambdas = 4);

// Batch property check: `models` random deterministic models, each tested
// on `triples` random direction triples (Bell) and one random four-setting
// combination per triple (CHSH).
struct DeterministicSweepResult {
  std::uint64_t models = 0;
  std::uint64_t triples = 0;
  std::uint64_t seed = 0;
  std::uint64_t bell_checks = 0;
  std::uint64_t bell_violations = 0;
  double min_bell_margin = 0.0;
  double max_abs_chsh = 0.0;
};

DeterministicSweepResult deterministic_sweep(std::uint64_t models,
                                             std::uint64_t triples,
                                             std::uint64_t seed);

}  // namespace qrs::lhv

#endif  // QRS_LHV_HPP
