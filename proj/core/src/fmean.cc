#include "qifkit/fmean.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qifkit/errors.h"

namespace qifkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

void CheckWeights(std::span<const double> weights,
                  std::span<const double> values) {
  if (weights.size() != values.size()) {
    throw InvalidArgument("mean: weights and values differ in length");
  }
  if (weights.empty()) throw InvalidArgument("mean: no values");
}

}  // namespace

FMeanSpec FMeanSpec::Affine(double slope, double intercept) {
  if (slope == 0.0 || !std::isfinite(slope) || !std::isfinite(intercept)) {
    throw InvalidArgument("affine generator needs a finite nonzero slope");
  }
  FMeanSpec f;
  f.family_ = Family::kAffine;
  f.parameter_ = slope;
  f.intercept_ = intercept;
  f.direction_ = slope > 0 ? Direction::kIncreasing : Direction::kDecreasing;
  f.curvature_ = Curvature::kAffine;
  f.name_ = "affine(" + FormatNumber(slope) + "," + FormatNumber(intercept) + ")";
  return f;
}

FMeanSpec FMeanSpec::Power(double exponent) {
  if (exponent == 0.0 || !std::isfinite(exponent)) {
    throw InvalidArgument("power generator needs a finite nonzero exponent");
  }
  FMeanSpec f;
  f.family_ = Family::kPower;
  f.parameter_ = exponent;
  f.direction_ = exponent > 0 ? Direction::kIncreasing : Direction::kDecreasing;
  if (exponent == 1.0) {
    f.curvature_ = Curvature::kAffine;
  } else if (exponent > 0.0 && exponent < 1.0) {
    f.curvature_ = Curvature::kConcave;
  } else {
    f.curvature_ = Curvature::kConvex;
  }
  f.domain_ = {0.0, kInf};
  f.name_ = "power(" + FormatNumber(exponent) + ")";
  return f;
}

FMeanSpec FMeanSpec::Log() {
  FMeanSpec f;
  f.family_ = Family::kLog;
  f.parameter_ = 0.0;
  f.direction_ = Direction::kIncreasing;
  f.curvature_ = Curvature::kConcave;
  f.domain_ = {0.0, kInf};
  f.name_ = "log";
  return f;
}

FMeanSpec FMeanSpec::Exp(double rate) {
  if (rate == 0.0 || !std::isfinite(rate)) {
    throw InvalidArgument("exponential generator needs a finite nonzero rate");
  }
  FMeanSpec f;
  f.family_ = Family::kExp;
  f.parameter_ = rate;
  f.direction_ = rate > 0 ? Direction::kIncreasing : Direction::kDecreasing;
  f.curvature_ = Curvature::kConvex;
  f.name_ = "exp(" + FormatNumber(rate) + ")";
  return f;
}

FMeanSpec FMeanSpec::MinLimit() {
  FMeanSpec f;
  f.family_ = Family::kMinLimit;
  f.parameter_ = 0.0;
  f.direction_ = Direction::kDecreasing;
  f.curvature_ = Curvature::kConvex;
  f.name_ = "min";
  return f;
}

FMeanSpec FMeanSpec::MaxLimit() {
  FMeanSpec f;
  f.family_ = Family::kMaxLimit;
  f.parameter_ = 0.0;
  f.direction_ = Direction::kIncreasing;
  f.curvature_ = Curvature::kConvex;
  f.name_ = "max";
  return f;
}

FMeanSpec FMeanSpec::Custom(std::string name,
                            std::function<double(double)> forward,
                            std::function<double(double)> inverse,
                            Direction direction, Curvature forward_curvature,
                            Interval domain) {
  if (!forward || !inverse) {
    throw InvalidArgument("custom generator needs forward and inverse");
  }
  FMeanSpec f;
  f.family_ = Family::kCustom;
  f.parameter_ = 0.0;
  f.forward_ = std::move(forward);
  f.inverse_ = std::move(inverse);
  f.direction_ = direction;
  f.curvature_ = forward_curvature;
  f.domain_ = domain;
  f.name_ = std::move(name);
  return f;
}

std::optional<double> FMeanSpec::exponent() const {
  if (family_ == Family::kPower) return parameter_;
  return std::nullopt;
}

double FMeanSpec::Forward(double t) const {
  switch (family_) {
    case Family::kAffine:
      return parameter_ * t + intercept_;
    case Family::kPower:
      return std::pow(t, parameter_);
    case Family::kLog:
      return std::log(t);
    case Family::kExp:
      return std::exp(parameter_ * t);
    case Family::kCustom:
      return forward_(t);
    case Family::kMinLimit:
    case Family::kMaxLimit:
      break;
  }
  throw DomainError("generator '" + name_ + "' is a limit with no forward map");
}

double FMeanSpec::Inverse(double s) const {
  switch (family_) {
    case Family::kAffine:
      return (s - intercept_) / parameter_;
    case Family::kPower:
      return std::pow(s, 1.0 / parameter_);
    case Family::kLog:
      return std::exp(s);
    case Family::kExp:
      return std::log(s) / parameter_;
    case Family::kCustom:
      return inverse_(s);
    case Family::kMinLimit:
    case Family::kMaxLimit:
      break;
  }
  throw DomainError("generator '" + name_ + "' is a limit with no inverse map");
}

double FMeanSpec::Mean(std::span<const double> weights,
                       std::span<const double> values) const {
  CheckWeights(weights, values);
  switch (family_) {
    case Family::kAffine: {
      double sum = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (weights[k] > 0.0) sum += weights[k] * values[k];
      }
      return sum;
    }
    case Family::kMinLimit:
    case Family::kMaxLimit: {
      const bool take_min = family_ == Family::kMinLimit;
      double best = take_min ? kInf : -kInf;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (weights[k] <= 0.0) continue;
        best = take_min ? std::min(best, values[k]) : std::max(best, values[k]);
      }
      return best;
    }
    case Family::kExp: {
      // Log-sum-exp keeps large |rate * t| from overflowing.
      const double rate = parameter_;
      double shift = -kInf;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (weights[k] > 0.0) shift = std::max(shift, rate * values[k]);
      }
      if (std::isinf(shift)) return shift / rate;
      double sum = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (weights[k] > 0.0) sum += weights[k] * std::exp(rate * values[k] - shift);
      }
      return (shift + std::log(sum)) / rate;
    }
    case Family::kPower:
    case Family::kLog:
    case Family::kCustom: {
      double sum = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (weights[k] > 0.0) sum += weights[k] * Forward(values[k]);
      }
      return Inverse(sum);
    }
  }
  return 0.0;
}

Curvature FMeanSpec::inverse_curvature() const {
  if (curvature_ == Curvature::kAffine) return Curvature::kAffine;
  const bool convex = curvature_ == Curvature::kConvex;
  if (direction_ == Direction::kIncreasing) {
    return convex ? Curvature::kConcave : Curvature::kConvex;
  }
  return convex ? Curvature::kConvex : Curvature::kConcave;
}

bool FMeanSpec::IsArithmetic() const {
  return family_ == Family::kAffine ||
         (family_ == Family::kPower && parameter_ == 1.0);
}

bool FMeanSpec::SameAs(const FMeanSpec& other) const {
  if (IsArithmetic() || other.IsArithmetic()) {
    return IsArithmetic() && other.IsArithmetic();
  }
  if (family_ != other.family_) return false;
  if (family_ == Family::kCustom) return name_ == other.name_;
  return parameter_ == other.parameter_;
}

FMeanSpec FAlpha(AlphaOrder alpha) {
  FMeanSpec f = [&] {
    switch (alpha.branch()) {
      case AlphaOrder::Branch::kZero: {
        FMeanSpec lim = FMeanSpec::MinLimit();
        lim.domain_ = {0.0, kInf};
        return lim;
      }
      case AlphaOrder::Branch::kOne:
        return FMeanSpec::Log();
      case AlphaOrder::Branch::kInfinity:
        return FMeanSpec::Power(1.0);
      default:
        return FMeanSpec::Power((alpha.value() - 1.0) / alpha.value());
    }
  }();
  f.alpha_ = alpha;
  f.name_ = "f_alpha(" + alpha.ToString() + ")";
  return f;
}

FMeanSpec HAlphaBeta(AlphaOrder alpha, double beta) {
  if (!(alpha.value() > 1.0)) {
    throw InvalidArgument("h_alpha_beta needs alpha in (1, inf], got " +
                          alpha.ToString());
  }
  if (std::isnan(beta) || beta < 1.0) {
    throw InvalidArgument("h_alpha_beta needs beta in [1, inf], got " +
                          FormatNumber(beta));
  }
  FMeanSpec h = [&] {
    if (std::isinf(beta)) return FMeanSpec::MaxLimit();
    const double exponent =
        alpha.is_infinite() ? beta
                            : (alpha.value() - 1.0) * beta / alpha.value();
    return FMeanSpec::Power(exponent);
  }();
  h.alpha_ = alpha;
  h.name_ = "h_alpha_beta(" + alpha.ToString() + "," + FormatNumber(beta) + ")";
  h.domain_ = {0.0, kInf};
  const double convex_from =
      alpha.is_infinite() ? 1.0 : alpha.value() / (alpha.value() - 1.0);
  if (beta < convex_from) {
    h.warnings_.push_back("beta = " + FormatNumber(beta) +
                          " < alpha/(alpha-1) = " + FormatNumber(convex_from) +
                          ": h is increasing but not convex");
  }
  return h;
}

FMeanSpec EllAlpha(AlphaOrder alpha) {
  FMeanSpec ell = [&] {
    switch (alpha.branch()) {
      case AlphaOrder::Branch::kZero:
        return FMeanSpec::MinLimit();
      case AlphaOrder::Branch::kOne:
        return FMeanSpec::Affine();
      case AlphaOrder::Branch::kInfinity:
        return FMeanSpec::Exp(1.0);
      default:
        return FMeanSpec::Exp((alpha.value() - 1.0) / alpha.value());
    }
  }();
  ell.alpha_ = alpha;
  ell.name_ = "ell_alpha(" + alpha.ToString() + ")";
  return ell;
}

bool HasMultiplicativeInverse(const FMeanSpec& f) {
  if (f.is_limit()) return false;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  for (int i = 0; i < 64; ++i) {
    const double a = std::exp(log_scale(rng));
    const double b = std::exp(log_scale(rng));
    double lhs = 0.0;
    double rhs = 0.0;
    try {
      lhs = f.Inverse(a * b);
      rhs = f.Inverse(a) * f.Inverse(b);
    } catch (const DomainError&) {
      return false;
    }
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) return false;
  }
  return true;
}

}  // namespace qifkit
