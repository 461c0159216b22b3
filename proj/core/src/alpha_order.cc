#include "qifkit/alpha_order.h"

#include <cmath>
#include <sstream>

#include "qifkit/errors.h"

namespace qifkit {

AlphaOrder AlphaOrder::Of(double value) {
  if (std::isnan(value) || value < 0.0) {
    std::ostringstream msg;
    msg << "alpha must lie in [0, inf], got " << value;
    throw InvalidArgument(msg.str());
  }
  if (std::isinf(value)) return Infinity();
  if (value == 0.0) return Zero();
  if (value == 1.0) return One();
  return AlphaOrder(value,
                    value < 1.0 ? Branch::kOpenUnit : Branch::kFiniteAboveOne);
}

std::string AlphaOrder::ToString() const {
  if (is_infinite()) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

}  // namespace qifkit
