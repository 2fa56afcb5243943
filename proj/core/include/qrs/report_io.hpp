#ifndef QRS_REPORT_IO_HPP
#define QRS_REPORT_IO_HPP

#include <cstdint>
#include <string>

#include "qrs/lhv.hpp"
#include "qrs/scenarios.hpp"

namespace qrs::io {

// %.17g: enough digits to round-trip any double, and byte-stable for
// identical inputs.
std::string format_double(double x);

struct ChshScanReport {
  std::string state_label;  // "singlet", "product", or "custom"
  double resolution_rad = 0.0;
  lhv::ChshScanResult result;
};

struct LhvCheckReport {
  lhv::DeterministicSweepResult sweep;
};

// All renderers are pure functions of their argument: identical reports
// produce byte-identical text. CSV always starts with a header row; angles
// are rendered in degrees in both formats.
std::string to_json(const scenarios::EprReport& report);
std::string to_csv(const scenarios::EprReport& report);

std::string to_json(const scenarios::BellTripleReport& report);
std::string to_csv(const scenarios::BellTripleReport& report);

std::string to_json(const ChshScanReport& report);
std::string to_csv(const ChshScanReport& report);

std::string to_json(const LhvCheckReport& report);
std::string to_csv(const LhvCheckReport& report);

}  // namespace qrs::io

#endif  // QRS_REPORT_IO_HPP
