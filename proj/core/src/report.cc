#include "qifkit/report.h"

#include <cmath>

#include "qifkit/errors.h"

namespace qifkit {

const char* ReasonCodeName(ReasonCode code) {
  switch (code) {
    case ReasonCode::kNone:
      return "none";
    case ReasonCode::kZeroPriorVulnerability:
      return "zero_prior_vulnerability";
    case ReasonCode::kSupportViolation:
      return "support_violation";
    case ReasonCode::kZeroColumnEntry:
      return "zero_column_entry";
  }
  return "unknown";
}

void LeakageReport::Validate() const {
  if (std::isnan(value)) {
    throw InvalidArgument("report '" + measure_name + "' carries NaN");
  }
  if (std::isinf(value) && reason == ReasonCode::kNone) {
    throw InvalidArgument("report '" + measure_name +
                          "' is infinite without a reason code");
  }
}

}  // namespace qifkit
