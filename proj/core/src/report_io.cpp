#include "qrs/report_io.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qrs::io {

namespace {

using nlohmann::json;

constexpr double rad_to_deg = 180.0 / std::numbers::pi;

json complex_json(const Complex& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json direction_json(const Direction& d) {
  return json{{"x", d.x()},
              {"y", d.y()},
              {"z", d.z()},
              {"polar_deg", d.polar_angle() * rad_to_deg},
              {"azimuth_deg", d.azimuth() * rad_to_deg}};
}

json table_json(const JointProbabilityTable& table) {
  json axes = json::array();
  for (const auto& axis : table.axes) {
    axes.push_back(json{{"subsystems", axis.subsystems},
                        {"labels", axis.labels}});
  }
  return json{{"axes", axes},
              {"shape", table.shape},
              {"values", table.values},
              {"degenerate_basis", table.degenerate_basis}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_json(const scenarios::EprReport& report) {
  json j;
  j["command"] = "epr";
  j["config"] = json{{"c1", complex_json(report.config.c1)},
                     {"c2", complex_json(report.config.c2)},
                     {"direction_a", direction_json(report.config.direction_a)},
                     {"direction_b", direction_json(report.config.direction_b)},
                     {"with_m3", report.config.with_m3},
                     {"shots", report.config.shots},
                     {"seed", report.config.seed}};
  j["analytic"] = table_json(report.analytic);
  if (report.empirical) {
    j["empirical"] = table_json(*report.empirical);
  }
  j["marginals"] = report.marginals;
  j["locality_max_deviation"] = report.locality_max_deviation;
  if (report.pseudo) {
    j["pseudo"] = json{
        {"indices",
         json{{"l", report.config.pseudo_l},
              {"j", report.config.pseudo_j},
              {"k", report.config.pseudo_k}}},
        {"pair_first", complex_json(report.pseudo->pair_first)},
        {"pointer_first", complex_json(report.pseudo->pointer_first)},
        {"sum_over_pair_states",
         complex_json(report.pseudo->sum_over_pair_states)},
        {"two_device_probability", report.pseudo->two_device_probability}};
  }
  j["warnings"] = report.warnings;
  return dump(j);
}

std::string to_csv(const scenarios::EprReport& report) {
  const bool with_m3 = report.analytic.axes.size() == 3;
  std::string out;
  if (with_m3) {
    append_row(out, {"m1_outcome", "m2_outcome", "m3_outcome", "analytic_p",
                     "empirical_freq"});
  } else {
    append_row(out, {"m1_outcome", "m2_outcome", "analytic_p",
                     "empirical_freq"});
  }
  const auto& table = report.analytic;
  std::vector<std::int64_t> idx(table.shape.size(), 0);
  for (std::int64_t cell = 0; cell < table.cell_count(); ++cell) {
    std::string empirical;
    if (report.empirical) {
      empirical =
          format_double(report.empirical->values[static_cast<std::size_t>(cell)]);
    }
    std::vector<std::string> cells;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      cells.push_back(
          table.axes[a].labels[static_cast<std::size_t>(idx[a])]);
    }
    cells.push_back(
        format_double(table.values[static_cast<std::size_t>(cell)]));
    cells.push_back(empirical);
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out += ',';
      out += c;
      first = false;
    }
    out += '\n';
    for (std::size_t a = idx.size(); a-- > 0;) {
      if (++idx[a] < table.shape[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::string to_json(const scenarios::BellTripleReport& report) {
  json j;
  j["command"] = "bell";
  j["theta_ab_deg"] = report.theta_ab * rad_to_deg;
  j["theta_bc_deg"] = report.theta_bc * rad_to_deg;
  j["theta_ac_deg"] = report.theta_ac * rad_to_deg;
  j["with_m3"] = report.with_m3;
  j["p_ab"] = report.p_ab;
  j["p_bc"] = report.p_bc;
  j["p_ac"] = report.p_ac;
  j["lhs"] = report.check.lhs;
  j["rhs"] = report.check.rhs;
  j["margin"] = report.check.margin;
  j["satisfied"] = report.check.satisfied;
  return dump(j);
}

std::string to_csv(const scenarios::BellTripleReport& report) {
  std::string out;
  append_row(out, {"theta_ab_deg", "theta_bc_deg", "theta_ac_deg", "with_m3",
                   "p_ab", "p_bc", "p_ac", "lhs", "rhs", "margin",
                   "satisfied"});
  append_row(out, {format_double(report.theta_ab * rad_to_deg),
                   format_double(report.theta_bc * rad_to_deg),
                   format_double(report.theta_ac * rad_to_deg),
                   bool_text(report.with_m3), format_double(report.p_ab),
                   format_double(report.p_bc), format_double(report.p_ac),
                   format_double(report.check.lhs),
                   format_double(report.check.rhs),
                   format_double(report.check.margin),
                   bool_text(report.check.satisfied)});
  return out;
}

std::string to_json(const ChshScanReport& report) {
  json j;
  j["command"] = "chsh-scan";
  j["state"] = report.state_label;
  j["resolution_deg"] = report.resolution_rad * rad_to_deg;
  j["max_abs_s"] = report.result.max_abs_s;
  j["theta_a_deg"] = report.result.theta_a * rad_to_deg;
  j["theta_a_prime_deg"] = report.result.theta_a_prime * rad_to_deg;
  j["theta_b_deg"] = report.result.theta_b * rad_to_deg;
  j["theta_b_prime_deg"] = report.result.theta_b_prime * rad_to_deg;
  return dump(j);
}

std::string to_csv(const ChshScanReport& report) {
  std::string out;
  append_row(out, {"state", "resolution_deg", "max_abs_s", "theta_a_deg",
                   "theta_a_prime_deg", "theta_b_deg", "theta_b_prime_deg"});
  append_row(out,
             {report.state_label,
              format_double(report.resolution_rad * rad_to_deg),
              format_double(report.result.max_abs_s),
              format_double(report.result.theta_a * rad_to_deg),
              format_double(report.result.theta_a_prime * rad_to_deg),
              format_double(report.result.theta_b * rad_to_deg),
              format_double(report.result.theta_b_prime * rad_to_deg)});
  return out;
}

std::string to_json(const LhvCheckReport& report) {
  const auto& s = report.sweep;
  json j;
  j["command"] = "lhv-check";
  j["models"] = s.models;
  j["triples"] = s.triples;
  j["seed"] = s.seed;
  j["bell_checks"] = s.bell_checks;
  j["bell_violations"] = s.bell_violations;
  j["min_bell_margin"] = s.min_bell_margin;
  j["max_abs_chsh"] = s.max_abs_chsh;
  j["all_satisfied"] = (s.bell_violations == 0);
  return dump(j);
}

std::string to_csv(const LhvCheckReport& report) {
  const auto& s = report.sweep;
  std::string out;
  append_row(out, {"models", "triples", "seed", "bell_checks",
                   "bell_violations", "min_bell_margin", "max_abs_chsh",
                   "all_satisfied"});
  append_row(out, {std::to_string(s.models), std::to_string(s.triples),
                   std::to_string(s.seed), std::to_string(s.bell_checks),
                   std::to_string(s.bell_violations),
                   format_double(s.min_bell_margin),
                   format_double(s.max_abs_chsh),
                   bool_text(s.bell_violations == 0)});
  return out;
}

}  // namespace qrs::io
