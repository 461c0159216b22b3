#ifndef QIFKIT_SRC_LOG_SUM_EXP_H_
#define QIFKIT_SRC_LOG_SUM_EXP_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace qifkit::internal {

// log sum_k exp(terms_k); -inf for an empty or all -inf input.
inline double LogSumExp(std::span<const double> terms) {
  double shift = -std::numeric_limits<double>::infinity();
  for (double t : terms) shift = std::max(shift, t);
  if (std::isinf(shift)) return shift;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - shift);
  return shift + std::log(s);
}

}  // namespace qifkit::internal

#endif  // QIFKIT_SRC_LOG_SUM_EXP_H_
