#ifndef QIFKIT_REPORT_H_
#define QIFKIT_REPORT_H_

#include <map>
#include <string>
#include <vector>

namespace qifkit {

// Why a reported value is infinite (or otherwise special).
enum class ReasonCode {
  kNone,
  kZeroPriorVulnerability,  // multiplicative leakage over V(pi) = 0
  kSupportViolation,        // posterior mass outside the reference support
  kZeroColumnEntry,         // ratio with a zero denominator in a channel column
};

const char* ReasonCodeName(ReasonCode code);

// A named measure value with its parameters and optimizer diagnostics.
// Invariant: value is finite, or infinite with reason != kNone.
struct LeakageReport {
  std::string measure_name;
  double value = 0.0;
  // "nats", "bits" or "vulnerability" (unitless).
  std::string unit = "nats";
  ReasonCode reason = ReasonCode::kNone;
  std::map<std::string, std::string> params;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::vector<double>> witnesses;
  // Caveats on value, e.g. that it is only an upper bound (max-case
  // capacity) or a lower bound (optimizer output).
  std::vector<std::string> notes;

  // Throws InvalidArgument when the invariant above does not hold.
  void Validate() const;
};

}  // namespace qifkit

#endif  // QIFKIT_REPORT_H_
