#ifndef QIFKIT_ALPHA_ORDER_H_
#define QIFKIT_ALPHA_ORDER_H_

#include <limits>
#include <string>

namespace qifkit {

// Order parameter of the Renyi/Arimoto/Sibson families. The points 0, 1 and
// infinity are carried as exact branch tags so that callers never evaluate
// the generic formula at a removable singularity.
class AlphaOrder {
 public:
  enum class Branch { kZero, kOpenUnit, kOne, kFiniteAboveOne, kInfinity };

  // Accepts any value in [0, inf]; +inf maps to kInfinity. Throws
  // InvalidArgument for negative or NaN input.
  static AlphaOrder Of(double value);
  static AlphaOrder Zero() { return AlphaOrder(0.0, Branch::kZero); }
  static AlphaOrder One() { return AlphaOrder(1.0, Branch::kOne); }
  static AlphaOrder Infinity() {
    return AlphaOrder(std::numeric_limits<double>::infinity(),
                      Branch::kInfinity);
  }

  double value() const { return value_; }
  Branch branch() const { return branch_; }

  bool is_zero() const { return branch_ == Branch::kZero; }
  bool is_one() const { return branch_ == Branch::kOne; }
  bool is_infinite() const { return branch_ == Branch::kInfinity; }
  // True for every order on which the generic closed form is valid.
  bool is_generic() const {
    return branch_ == Branch::kOpenUnit || branch_ == Branch::kFiniteAboveOne;
  }

  std::string ToString() const;

  friend bool operator==(const AlphaOrder& a, const AlphaOrder& b) {
    return a.branch_ == b.branch_ && (a.branch_ == Branch::kInfinity ||
                                      a.value_ == b.value_);
  }

 private:
  AlphaOrder(double value, Branch branch) : value_(value), branch_(branch) {}

  double value_;
  Branch branch_;
};

}  // namespace qifkit

#endif  // QIFKIT_ALPHA_ORDER_H_
