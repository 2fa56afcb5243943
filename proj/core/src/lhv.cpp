#include "qrs/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrs/direction.hpp"

namespace qrs::lhv {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double lookup(const std::map<DirectionKey, double>& responses,
              const Direction& d, const char* side) {
  const auto it = responses.find(quantize(d));
  if (it == responses.end()) {
    throw SubsystemError(std::string("no ") + side +
                         " response registered for this direction");
  }
  return it->second;
}

Direction random_direction(RandomStream& rng) {
  const double z = 2.0 * rng.next_double() - 1.0;
  const double phi = two_pi * rng.next_double();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  double x = s * std::cos(phi);
  double y = s * std::sin(phi);
  const double n = std::sqrt(x * x + y * y + z * z);
  return Direction(x / n, y / n, z / n);
}

}  // namespace

DirectionKey quantize(const Direction& d) {
  const double theta = d.polar_angle();
  double phi = d.azimuth();
  // the azimuth is undefined along the poles
  if (theta < 5e-10 || theta > std::numbers::pi - 5e-10) phi = 0.0;
  return DirectionKey{static_cast<std::int64_t>(std::llround(theta * 1e9)),
                      static_cast<std::int64_t>(std::llround(phi * 1e9))};
}

void validate(const LhvModel& model) {
  if (model.lambdas.empty()) {
    throw InvariantError("LHV model needs at least one lambda");
  }
  double total = 0.0;
  for (const auto& l : model.lambdas) {
    if (l.weight < 0.0) {
      throw InvariantError("lambda weights must be nonnegative");
    }
    total += l.weight;
    for (const auto* side : {&l.response_a, &l.response_b}) {
      for (const auto& [key, p] : *side) {
        if (p < 0.0 || p > 1.0) {
          throw InvariantError("response probabilities must lie in [0, 1]");
        }
      }
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvariantError("lambda weights must sum to 1");
  }
}

double correlation(const LhvModel& model, const Direction& a,
                   const Direction& b) {
  validate(model);
  double p = 0.0;
  for (const auto& l : model.lambdas) {
    p += l.weight * lookup(l.response_a, a, "side-1") *
         lookup(l.response_b, b, "side-2");
  }
  return p;
}

double expectation(const LhvModel& model, const Direction& a,
                   const Direction& b) {
  validate(model);
  double e = 0.0;
  for (const auto& l : model.lambdas) {
    const double pa = lookup(l.response_a, a, "side-1");
    const double pb = lookup(l.response_b, b, "side-2");
    e += l.weight * (2.0 * pa - 1.0) * (2.0 * pb - 1.0);
  }
  return e;
}

BellCheckResult bell_check(const CorrelationFn& correlation, const Direction& a,
                           const Direction& b, const Direction& c) {
  BellCheckResult out;
  out.lhs = correlation(a, b) + correlation(b, c);
  out.rhs = correlation(a, c);
  out.margin = out.lhs - out.rhs;
  out.satisfied = out.margin >= -tol::bell_margin;
  return out;
}

double quantum_correlation(double theta_rad) {
  const double s = std::sin(theta_rad / 2.0);
  return 0.5 * s * s;
}

double chsh_value(const ExpectationFn& expectation, const Direction& a,
                  const Direction& a_prime, const Direction& b,
                  const Direction& b_prime) {
  return expectation(a, b) - expectation(a, b_prime) +
         expectation(a_prime, b) + expectation(a_prime, b_prime);
}

ExpectationFn state_expectation(const PureState& two_qubit) {
  const auto& space = two_qubit.space();
  if (space.factor_count() != 2 || space.factor(0).dim != 2 ||
      space.factor(1).dim != 2) {
    throw DimensionError("expectation needs a labeled two-qubit state");
  }
  return [state = two_qubit](const Direction& a, const Direction& b) {
    const auto [ap, am] = spin_eigenbasis(a);
    const auto [bp, bm] = spin_eigenbasis(b);
    const auto& amp = state.amplitudes();
    double e = 0.0;
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const Vector& va = (j == 0) ? ap : am;
        const Vector& vb = (k == 0) ? bp : bm;
        Complex overlap(0.0, 0.0);
        for (int r = 0; r < 2; ++r) {
          for (int s = 0; s < 2; ++s) {
            overlap += std::conj(va[r]) * std::conj(vb[s]) * amp[r * 2 + s];
          }
        }
        const double p = std::norm(overlap);
        e += (j == k) ? p : -p;
      }
    }
    return e;
  };
}

ChshScanResult chsh_scan(const PureState& two_qubit, double resolution_rad) {
  if (!(resolution_rad > 0.0)) {
    throw InvariantError("scan resolution must be positive");
  }
  const auto expectation = state_expectation(two_qubit);

  std::int64_t n =
      static_cast<std::int64_t>(std::floor((two_pi - 1e-12) / resolution_rad)) +
      1;
  n = std::max<std::int64_t>(n, 1);

  std::vector<double> angles(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    angles[static_cast<std::size_t>(i)] = static_cast<double>(i) *
                                          resolution_rad;
  }

  // E over the grid; settings are coplanar so only the two angles matter.
  std::vector<std::vector<double>> e(static_cast<std::size_t>(n),
                                     std::vector<double>(
                                         static_cast<std::size_t>(n), 0.0));
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          expectation(Direction::from_polar(angles[static_cast<std::size_t>(i)]),
                      Direction::from_polar(angles[static_cast<std::size_t>(j)]));
    }
  }

  // S = [E(a,b) - E(a,b')] + [E(a',b) + E(a',b')]: for fixed (b, b') the two
  // brackets extremize independently over a and a'.
  ChshScanResult best;
  std::array<std::int64_t, 4> best_tuple = {0, 0, 0, 0};  // (a, a', b, b')
  bool have_best = false;

  const auto consider = [&](double s, std::array<std::int64_t, 4> tuple) {
    const double abs_s = std::abs(s);
    if (!have_best || abs_s > best.max_abs_s ||
        (abs_s == best.max_abs_s && tuple < best_tuple)) {
      have_best = true;
      best.max_abs_s = abs_s;
      best_tuple = tuple;
      best.theta_a = angles[static_cast<std::size_t>(tuple[0])];
      best.theta_a_prime = angles[static_cast<std::size_t>(tuple[1])];
      best.theta_b = angles[static_cast<std::size_t>(tuple[2])];
      best.theta_b_prime = angles[static_cast<std::size_t>(tuple[3])];
    }
  };

  for (std::int64_t ib = 0; ib < n; ++ib) {
    for (std::int64_t ibp = 0; ibp < n; ++ibp) {
      std::int64_t a_max = 0, a_min = 0, ap_max = 0, ap_min = 0;
      double diff_max = -4.0, diff_min = 4.0, sum_max = -4.0, sum_min = 4.0;
      for (std::int64_t ia = 0; ia < n; ++ia) {
        const double diff = e[static_cast<std::size_t>(ia)]
                             [static_cast<std::size_t>(ib)] -
                            e[static_cast<std::size_t>(ia)]
                             [static_cast<std::size_t>(ibp)];
        const double sum = e[static_cast<std::size_t>(ia)]
                            [static_cast<std::size_t>(ib)] +
                           e[static_cast<std::size_t>(ia)]
                            [static_cast<std::size_t>(ibp)];
        if (diff > diff_max) {
          diff_max = diff;
          a_max = ia;
        }
        if (diff < diff_min) {
          diff_min = diff;
          a_min = ia;
        }
        if (sum > sum_max) {
          sum_max = sum;
          ap_max = ia;
        }
        if (sum < sum_min) {
          sum_min = sum;
          ap_min = ia;
        }
      }
      consider(diff_max + sum_max, {a_max, ap_max, ib, ibp});
      consider(diff_min + sum_min, {a_min, ap_min, ib, ibp});
    }
  }
  return best;
}

LhvModel dephased_pair_model(Complex c1, Complex c2,
                             std::span<const Direction> directions) {
  const double w1 = std::norm(c1);
  const double w2 = std::norm(c2);
  if (std::abs(w1 + w2 - 1.0) > tol::invariant) {
    throw InvariantError("pair coefficients must be normalized");
  }
  // Basis index l is the hidden variable: side 1 holds basis state l of
  // (up, down); side 2 holds the opposite one.
  LhvModel model;
  model.lambdas.resize(2);
  model.lambdas[0].weight = w1;
  model.lambdas[1].weight = w2;
  for (const auto& d : directions) {
    const auto [plus, minus] = spin_eigenbasis(d);
    const auto key = quantize(d);
    // P(+ | particle in basis state b) = |<plus|b>|^2
    const double p_up = std::norm(plus[0]);
    const double p_down = std::norm(plus[1]);
    model.lambdas[0].response_a[key] = p_up;    // side 1 in |up>
    model.lambdas[0].response_b[key] = p_down;  // side 2 in |down>
    model.lambdas[1].response_a[key] = p_down;
    model.lambdas[1].response_b[key] = p_up;
  }
  validate(model);
  return model;
}

LhvModel random_deterministic_model(std::span<const Direction> directions,
                                    RandomStream& rng, int max_lambdas) {
  if (max_lambdas < 1) {
    throw InvariantError("need at least one lambda");
  }
  const int count =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
              max_lambdas)));
  LhvModel model;
  model.lambdas.resize(static_cast<std::size_t>(count));

  double total = 0.0;
  for (auto& l : model.lambdas) {
    l.weight = rng.next_double() + 1e-3;
    total += l.weight;
  }
  for (auto& l : model.lambdas) l.weight /= total;
  // force an exact unit sum
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < model.lambdas.size(); ++i) {
    partial += model.lambdas[i].weight;
  }
  model.lambdas.back().weight = 1.0 - partial;

  for (auto& l : model.lambdas) {
    for (const auto& d : directions) {
      const auto key = quantize(d);
      const double first = rng.next_bool() ? 1.0 : 0.0;
      l.response_a[key] = first;
      l.response_b[key] = 1.0 - first;
    }
  }
  validate(model);
  return model;
}

DeterministicSweepResult deterministic_sweep(std::uint64_t models,
                                             std::uint64_t triples,
                                             std::uint64_t seed) {
  if (models == 0 || triples == 0) {
    throw InvariantError("sweep needs at least one model and one triple");
  }
  constexpr int pool_size = 12;

  DeterministicSweepResult out;
  out.models = models;
  out.triples = triples;
  out.seed = seed;
  out.min_bell_margin = 4.0;
  out.max_abs_chsh = 0.0;

  for (std::uint64_t m = 0; m < models; ++m) {
    RandomStream rng(seed, m);
    std::vector<Direction> pool;
    pool.reserve(pool_size);
    for (int i = 0; i < pool_size; ++i) pool.push_back(random_direction(rng));

    const auto model = random_deterministic_model(pool, rng);
    const CorrelationFn corr = [&](const Direction& a, const Direction& b) {
      return correlation(model, a, b);
    };
    const ExpectationFn expect = [&](const Direction& a, const Direction& b) {
      return expectation(model, a, b);
    };

    for (std::uint64_t t = 0; t < triples; ++t) {
      const auto pick = [&] {
        return pool[static_cast<std::size_t>(rng.next_below(pool_size))];
      };
      const auto check = bell_check(corr, pick(), pick(), pick());
      ++out.bell_checks;
      if (!check.satisfied) ++out.bell_violations;
      out.min_bell_margin = std::min(out.min_bell_margin, check.margin);

      const double s = chsh_value(expect, pick(), pick(), pick(), pick());
      out.max_abs_chsh = std::max(out.max_abs_chsh, std::abs(s));
    }
  }
  return out;
}

}  // namespace qrs::lhv
