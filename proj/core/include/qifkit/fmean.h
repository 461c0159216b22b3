#ifndef QIFKIT_FMEAN_H_
#define QIFKIT_FMEAN_H_

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qifkit/alpha_order.h"

namespace qifkit {

enum class Direction { kIncreasing, kDecreasing };
enum class Curvature { kConvex, kConcave, kAffine };

// Closed interval with possibly infinite endpoints.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool Contains(double v) const { return v >= lo && v <= hi; }
};

// A Kolmogorov-Nagumo generator f together with its inverse and the
// analytic metadata the vulnerability and capacity code dispatch on.
//
// The quasi-arithmetic mean of values t_k under weights w_k is
// f^{-1}(sum_k w_k f(t_k)). Catalog generators are stored structurally
// (an exponent, a rate) rather than as opaque callables so closed-form code
// paths can recognise them. Two limit generators stand for the power mean
// with exponent -> -inf (min over the support of the weights) and
// exponent -> +inf (max); they have no finite Forward/Inverse.
class FMeanSpec {
 public:
  enum class Family { kAffine, kPower, kLog, kExp, kMinLimit, kMaxLimit, kCustom };

  // f(t) = slope * t + intercept, slope != 0. Every affine generator yields
  // the arithmetic mean.
  static FMeanSpec Affine(double slope = 1.0, double intercept = 0.0);
  // f(t) = t^exponent on [0, inf), exponent != 0. f(0) follows continuity:
  // 0 for positive exponents, +inf for negative ones.
  static FMeanSpec Power(double exponent);
  // f(t) = log t on [0, inf): the geometric mean.
  static FMeanSpec Log();
  // f(t) = exp(rate * t) on the whole line, rate != 0.
  static FMeanSpec Exp(double rate);
  static FMeanSpec MinLimit();
  static FMeanSpec MaxLimit();
  // Generic generator. The caller vouches for the metadata; tests sample it.
  static FMeanSpec Custom(std::string name, std::function<double(double)> forward,
                          std::function<double(double)> inverse,
                          Direction direction, Curvature forward_curvature,
                          Interval domain);

  Family family() const { return family_; }
  // Exponent for kPower, rate for kExp, slope for kAffine; 0 otherwise.
  double parameter() const { return parameter_; }
  std::optional<double> exponent() const;

  // Throw DomainError for the limit generators.
  double Forward(double t) const;
  double Inverse(double s) const;

  // f^{-1}(sum_k w_k f(t_k)). Entries with zero weight are skipped, so
  // infinite values carried by unobserved points do not poison the sum.
  double Mean(std::span<const double> weights,
              std::span<const double> values) const;

  Direction direction() const { return direction_; }
  Curvature forward_curvature() const { return curvature_; }
  Curvature inverse_curvature() const;
  const Interval& domain() const { return domain_; }
  bool is_limit() const {
    return family_ == Family::kMinLimit || family_ == Family::kMaxLimit;
  }
  // True when the generated mean is the arithmetic mean.
  bool IsArithmetic() const;

  // Set for generators built by FAlpha / EllAlpha / HAlphaBeta.
  const std::optional<AlphaOrder>& alpha() const { return alpha_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Whether both generators induce the same mean (h = f in the posterior
  // definitions). Custom generators compare by name.
  bool SameAs(const FMeanSpec& other) const;

 private:
  FMeanSpec() = default;

  Family family_ = Family::kAffine;
  double parameter_ = 1.0;
  double intercept_ = 0.0;
  Direction direction_ = Direction::kIncreasing;
  Curvature curvature_ = Curvature::kAffine;
  Interval domain_;
  std::function<double(double)> forward_;
  std::function<double(double)> inverse_;
  std::optional<AlphaOrder> alpha_;
  std::string name_;
  std::vector<std::string> warnings_;

  friend FMeanSpec FAlpha(AlphaOrder alpha);
  friend FMeanSpec HAlphaBeta(AlphaOrder alpha, double beta);
  friend FMeanSpec EllAlpha(AlphaOrder alpha);
};

// f_alpha(t) = t^{(alpha-1)/alpha}. alpha = 1 is the logarithmic generator,
// alpha = inf the identity, alpha = 0 the min limit.
FMeanSpec FAlpha(AlphaOrder alpha);

// h_{(alpha,beta)}(t) = t^{(alpha-1)beta/alpha} for alpha in (1, inf] and
// beta in [1, inf]; beta = inf is the max limit. Carries a warning when
// beta < alpha/(alpha-1), where the generator is increasing but not convex.
FMeanSpec HAlphaBeta(AlphaOrder alpha, double beta);

// ell_alpha(t) = exp(((alpha-1)/alpha) t) with inverse (alpha/(alpha-1)) log s.
// alpha = 1 degenerates to the arithmetic mean, alpha = 0 to the min limit.
FMeanSpec EllAlpha(AlphaOrder alpha);

// Samples random pairs a, b > 0 and checks f^{-1}(ab) = f^{-1}(a) f^{-1}(b)
// to a relative 1e-9. Limit generators are never multiplicative.
bool HasMultiplicativeInverse(const FMeanSpec& f);

}  // namespace qifkit

#endif  // QIFKIT_FMEAN_H_
