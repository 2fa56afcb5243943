// Command-line front end: configures and runs the simulation scenarios and
// emits machine-readable reports (CSV or JSON).
//
// Exit codes: 0 success, 1 numeric/domain failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrs/qrs.hpp"

namespace {

constexpr double deg_to_rad = std::numbers::pi / 180.0;

struct OutputOpts {
  std::string path;  // empty -> stdout
  std::string format = "csv";
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--out", opts.path, "Write the report to PATH (default stdout)");
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void emit(const OutputOpts& opts, const std::string& text) {
  if (opts.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opts.path, std::ios::binary);
  if (!file) {
    throw qrs::Error("cannot open output file '" + opts.path + "'");
  }
  file << text;
}

qrs::Complex parse_complex(const std::string& text, const std::string& flag) {
  double re = 0.0, im = 0.0;
  char tail = '\0';
  const int got = std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &tail);
  if (got != 2) {
    throw CLI::ValidationError(flag, "expected a complex number as 're,im'");
  }
  return {re, im};
}

struct PairCoefficients {
  std::string c1_text;
  std::string c2_text;

  bool custom() const { return !c1_text.empty() || !c2_text.empty(); }

  void resolve(qrs::Complex& c1, qrs::Complex& c2) const {
    if (!custom()) return;  // keep the singlet defaults
    if (c1_text.empty() || c2_text.empty()) {
      throw CLI::ValidationError("--c1/--c2", "both coefficients are needed");
    }
    c1 = parse_complex(c1_text, "--c1");
    c2 = parse_complex(c2_text, "--c2");
  }
};

void add_pair_opts(CLI::App* cmd, PairCoefficients& pair, bool& singlet) {
  auto* singlet_flag =
      cmd->add_flag("--singlet", singlet,
                    "Use the anticorrelated pair (1/sqrt2, -1/sqrt2); this "
                    "is also the default");
  auto* c1 = cmd->add_option("--c1", pair.c1_text,
                             "First pair coefficient as re,im");
  auto* c2 = cmd->add_option("--c2", pair.c2_text,
                             "Second pair coefficient as re,im");
  singlet_flag->excludes(c1);
  singlet_flag->excludes(c2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPR-Bell correlation simulator with labeled subsystems"};
  app.require_subcommand(1);

  // ---- epr ----------------------------------------------------------
  auto* epr = app.add_subcommand(
      "epr", "Run the two-particle experiment and report the joint table");
  OutputOpts epr_out;
  PairCoefficients epr_pair;
  bool epr_singlet = false;
  double theta_ab_deg = 0.0;
  double theta_a_deg = 0.0;
  bool with_m3 = false;
  bool with_pseudo = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  epr->add_option("--theta-ab", theta_ab_deg,
                  "Angle between the two measurement directions, degrees")
      ->required();
  epr->add_option("--theta-a", theta_a_deg,
                  "Side-1 direction angle from +z, degrees")
      ->capture_default_str();
  add_pair_opts(epr, epr_pair, epr_singlet);
  epr->add_flag("--with-m3", with_m3,
                "Record the pair basis index with an extra nondisturbing "
                "device first");
  epr->add_flag("--pseudo", with_pseudo,
                "Include both ordered projector-trace values (JSON output)");
  epr->add_option("--shots", shots, "Monte Carlo shots (0 = analytic only)")
      ->capture_default_str();
  epr->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  add_output_opts(epr, epr_out);
  epr->callback([&] {
    qrs::scenarios::EprConfig config;
    epr_pair.resolve(config.c1, config.c2);
    config.direction_a = qrs::Direction::from_polar(theta_a_deg * deg_to_rad);
    config.direction_b =
        qrs::Direction::from_polar((theta_a_deg + theta_ab_deg) * deg_to_rad);
    config.with_m3 = with_m3;
    config.with_pseudo = with_pseudo;
    config.shots = shots;
    config.seed = seed;
    const auto report = qrs::scenarios::run_epr(config);
    emit(epr_out, epr_out.format == "json" ? qrs::io::to_json(report)
                                           : qrs::io::to_csv(report));
  });

  // ---- bell ---------------------------------------------------------
  auto* bell = app.add_subcommand(
      "bell", "Check the three-direction inequality on the pair");
  OutputOpts bell_out;
  std::vector<double> angles_deg;
  bool bell_m3 = false;
  bell->add_option("--angles", angles_deg,
                   "theta_ab,theta_bc,theta_ac in degrees")
      ->delimiter(',')
      ->expected(3)
      ->required();
  bell->add_flag("--with-m3", bell_m3,
                 "Insert the extra nondisturbing device in each run");
  add_output_opts(bell, bell_out);
  bell->callback([&] {
    const auto report = qrs::scenarios::run_bell_triple(
        angles_deg[0] * deg_to_rad, angles_deg[1] * deg_to_rad,
        angles_deg[2] * deg_to_rad, bell_m3);
    emit(bell_out, bell_out.format == "json" ? qrs::io::to_json(report)
                                             : qrs::io::to_csv(report));
  });

  // ---- chsh-scan ----------------------------------------------------
  auto* chsh = app.add_subcommand(
      "chsh-scan", "Scan coplanar four-setting combinations for max |S|");
  OutputOpts chsh_out;
  PairCoefficients chsh_pair;
  bool chsh_singlet = false;
  double resolution_deg = 1.0;
  std::string state_name = "singlet";
  chsh->add_option("--resolution", resolution_deg, "Angle grid step, degrees")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  chsh->add_option("--state", state_name, "Scanned state")
      ->check(CLI::IsMember({"singlet", "product"}))
      ->capture_default_str();
  add_pair_opts(chsh, chsh_pair, chsh_singlet);
  add_output_opts(chsh, chsh_out);
  chsh->callback([&] {
    qrs::io::ChshScanReport report;
    report.resolution_rad = resolution_deg * deg_to_rad;
    if (chsh_pair.custom()) {
      qrs::Complex c1{0.0, 0.0}, c2{0.0, 0.0};
      chsh_pair.resolve(c1, c2);
      report.state_label = "custom";
      report.result = qrs::lhv::chsh_scan(
          qrs::scenarios::build_epr_state(c1, c2), report.resolution_rad);
    } else if (state_name == "product") {
      qrs::CompositeSpace space({{"P1", 2}, {"P2", 2}});
      qrs::Vector amp = qrs::Vector::Zero(4);
      amp[0] = qrs::Complex(1.0, 0.0);  // |up, up>
      report.state_label = "product";
      report.result = qrs::lhv::chsh_scan(qrs::PureState(space, amp),
                                          report.resolution_rad);
    } else {
      report.state_label = "singlet";
      report.result = qrs::lhv::chsh_scan(
          qrs::scenarios::build_epr_state({1.0 / std::sqrt(2.0), 0.0},
                                          {-1.0 / std::sqrt(2.0), 0.0}),
          report.resolution_rad);
    }
    emit(chsh_out, chsh_out.format == "json" ? qrs::io::to_json(report)
                                             : qrs::io::to_csv(report));
  });

  // ---- lhv-check ----------------------------------------------------
  auto* lhv = app.add_subcommand(
      "lhv-check",
      "Property sweep: random deterministic local models must satisfy the "
      "inequality");
  OutputOpts lhv_out;
  std::uint64_t trials = 1000;
  std::uint64_t triples = 100;
  std::uint64_t lhv_seed = 0;
  lhv->add_option("--trials", trials, "Number of random models")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lhv->add_option("--triples", triples, "Direction triples per model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lhv->add_option("--seed", lhv_seed, "Sweep seed")->capture_default_str();
  add_output_opts(lhv, lhv_out);
  lhv->callback([&] {
    qrs::io::LhvCheckReport report;
    report.sweep = qrs::lhv::deterministic_sweep(trials, triples, lhv_seed);
    emit(lhv_out, lhv_out.format == "json" ? qrs::io::to_json(report)
                                           : qrs::io::to_csv(report));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const qrs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
