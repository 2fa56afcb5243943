#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "qrs/qrs.hpp"

namespace {

using namespace qrs;

constexpr double pi = std::numbers::pi;
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

PureState random_state(const CompositeSpace& space, std::uint64_t seed) {
  RandomStream rng(seed);
  Vector v(space.dimension());
  for (std::int64_t i = 0; i < v.size(); ++i) {
    v[i] = Complex(2.0 * rng.next_double() - 1.0,
                   2.0 * rng.next_double() - 1.0);
  }
  v /= v.norm();
  return PureState(space, std::move(v));
}

void bm_partial_trace(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::vector<SubsystemId> factors;
  for (int i = 0; i < n; ++i) factors.push_back({"Q" + std::to_string(i), 2});
  const CompositeSpace space(factors);
  const auto rho = pure_to_density(random_state(space, 1));
  const std::vector<std::string> keep = {"Q0", "Q1"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(rho, keep));
  }
}
BENCHMARK(bm_partial_trace)->Arg(4)->Arg(6)->Arg(8);

void bm_eig_hermitian(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::vector<SubsystemId> factors;
  for (int i = 0; i < n; ++i) factors.push_back({"Q" + std::to_string(i), 2});
  const CompositeSpace space(factors);
  const auto rho = partial_trace(
      pure_to_density(random_state(space, 2)),
      std::vector<std::string>{"Q0", "Q1", "Q2"});
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(rho));
  }
}
BENCHMARK(bm_eig_hermitian)->Arg(5)->Arg(7);

void bm_schmidt(benchmark::State& state) {
  const CompositeSpace space({{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}});
  const auto psi = random_state(space, 3);
  const std::vector<std::string> left = {"A", "C"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(schmidt_decompose(psi, left));
  }
}
BENCHMARK(bm_schmidt);

void bm_premeasurement_apply(benchmark::State& state) {
  const SubsystemId p1{"P1", 2}, m1{"M1", 3}, p2{"P2", 2}, m2{"M2", 3};
  const CompositeSpace full({p1, m1, p2, m2});
  const auto psi = random_state(full, 4);
  auto [plus, minus] = spin_eigenbasis(Direction::from_polar(pi / 5.0));
  const auto u = premeasurement_unitary(
      MeasurementModel{p1, m1, {plus, minus}, 0, {1, 2}},
      CompositeSpace({p1, m1}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_unitary(u, psi));
  }
}
BENCHMARK(bm_premeasurement_apply);

void bm_epr_run(benchmark::State& state) {
  scenarios::EprConfig config;
  config.direction_b = Direction::from_polar(pi / 4.0);
  config.with_m3 = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scenarios::run_epr(config));
  }
}
BENCHMARK(bm_epr_run)->Arg(0)->Arg(1);

void bm_sampling(benchmark::State& state) {
  scenarios::EprConfig config;
  config.direction_b = Direction::from_polar(pi / 4.0);
  const auto analytic = scenarios::run_epr(config).analytic;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_table(analytic, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}
BENCHMARK(bm_sampling)->Arg(10000)->Arg(100000);

void bm_chsh_scan(benchmark::State& state) {
  const auto singlet =
      scenarios::build_epr_state({inv_sqrt2, 0.0}, {-inv_sqrt2, 0.0});
  const double resolution = state.range(0) * pi / 180.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lhv::chsh_scan(singlet, resolution));
  }
}
BENCHMARK(bm_chsh_scan)->Arg(5)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
