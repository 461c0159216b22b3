#include "qifkit/alpha_measures.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qifkit/errors.h"
#include "qifkit/fmean.h"
#include "log_sum_exp.h"

namespace qifkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ShannonEntropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

// log sum_{v > 0} v^alpha, evaluated in log space so large alpha does not
// underflow.
double LogPowerSum(std::span<const double> p, double alpha) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double v : p) {
    if (v > 0.0) terms.push_back(alpha * std::log(v));
  }
  return internal::LogSumExp(terms);
}

std::size_t SupportSize(std::span<const double> p) {
  return static_cast<std::size_t>(
      std::count_if(p.begin(), p.end(), [](double v) { return v > 0.0; }));
}

void CheckPositiveOrder(AlphaOrder alpha, const char* what) {
  if (alpha.is_zero()) {
    throw InvalidArgument(std::string(what) + " is undefined at alpha = 0");
  }
}

}  // namespace

double RenyiEntropy(const Prior& prior, AlphaOrder alpha) {
  const auto p = prior.probs();
  switch (alpha.branch()) {
    case AlphaOrder::Branch::kZero:
      return std::log(static_cast<double>(SupportSize(p)));
    case AlphaOrder::Branch::kOne:
      return ShannonEntropy(p);
    case AlphaOrder::Branch::kInfinity:
      return -std::log(prior.Max());
    default:
      return LogPowerSum(p, alpha.value()) / (1.0 - alpha.value());
  }
}

double RenyiDivergence(std::span<const double> mu, std::span<const double> pi,
                       AlphaOrder alpha) {
  if (mu.size() != pi.size()) {
    throw InvalidArgument("divergence arguments differ in dimension");
  }
  if (alpha.is_zero()) {
    double covered = 0.0;
    for (std::size_t x = 0; x < mu.size(); ++x) {
      if (mu[x] > 0.0) covered += pi[x];
    }
    return covered > 0.0 ? -std::log(covered) : kInf;
  }
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (mu[x] > 0.0 && pi[x] <= 0.0) return kInf;
  }
  switch (alpha.branch()) {
    case AlphaOrder::Branch::kOne: {
      double kl = 0.0;
      for (std::size_t x = 0; x < mu.size(); ++x) {
        if (mu[x] > 0.0) kl += mu[x] * std::log(mu[x] / pi[x]);
      }
      return kl;
    }
    case AlphaOrder::Branch::kInfinity: {
      double ratio = 0.0;
      for (std::size_t x = 0; x < mu.size(); ++x) {
        if (mu[x] > 0.0) ratio = std::max(ratio, mu[x] / pi[x]);
      }
      return std::log(ratio);
    }
    default: {
      const double a = alpha.value();
      std::vector<double> terms;
      for (std::size_t x = 0; x < mu.size(); ++x) {
        if (mu[x] > 0.0) {
          terms.push_back(a * std::log(mu[x]) + (1.0 - a) * std::log(pi[x]));
        }
      }
      return internal::LogSumExp(terms) / (a - 1.0);
    }
  }
}

double RenyiDivergence(const Prior& mu, const Prior& pi, AlphaOrder alpha) {
  return RenyiDivergence(mu.probs(), pi.probs(), alpha);
}

double ArimotoConditionalEntropy(const Hyper& hyper, AlphaOrder alpha) {
  const auto outer = hyper.outer();
  switch (alpha.branch()) {
    case AlphaOrder::Branch::kZero: {
      std::size_t widest = 0;
      for (const Prior& inner : hyper.inners()) {
        widest = std::max(widest, inner.SupportSize());
      }
      return std::log(static_cast<double>(widest));
    }
    case AlphaOrder::Branch::kOne: {
      double h = 0.0;
      for (std::size_t k = 0; k < hyper.size(); ++k) {
        h += outer[k] * ShannonEntropy(hyper.inner(k).probs());
      }
      return h;
    }
    case AlphaOrder::Branch::kInfinity: {
      double s = 0.0;
      for (std::size_t k = 0; k < hyper.size(); ++k) {
        s += outer[k] * hyper.inner(k).Max();
      }
      return -std::log(s);
    }
    default: {
      const double a = alpha.value();
      std::vector<double> terms(hyper.size());
      for (std::size_t k = 0; k < hyper.size(); ++k) {
        terms[k] = std::log(outer[k]) + LogPowerSum(hyper.inner(k).probs(), a) / a;
      }
      return a / (1.0 - a) * internal::LogSumExp(terms);
    }
  }
}

double ArimotoMutualInformation(const Hyper& hyper, AlphaOrder alpha) {
  const Prior prior(hyper.Reconstruct());
  return RenyiEntropy(prior, alpha) - ArimotoConditionalEntropy(hyper, alpha);
}

double ShannonMutualInformation(const Prior& prior, const Channel& channel) {
  const std::vector<double> py = OutputMarginal(prior, channel);
  double mi = 0.0;
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (prior[x] <= 0.0) continue;
    for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
      const double c = channel(x, y);
      if (c > 0.0) mi += prior[x] * c * std::log(c / py[y]);
    }
  }
  return mi;
}

double SibsonMutualInformation(const Prior& prior, const Channel& channel,
                               AlphaOrder alpha) {
  if (prior.size() != channel.num_inputs()) {
    throw InvalidArgument("prior and channel differ in input dimension");
  }
  const std::size_t nx = prior.size();
  const std::size_t ny = channel.num_outputs();
  switch (alpha.branch()) {
    case AlphaOrder::Branch::kZero: {
      double best = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double covered = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
          if (channel(x, y) > 0.0) covered += prior[x];
        }
        best = std::max(best, covered);
      }
      return -std::log(best);
    }
    case AlphaOrder::Branch::kOne:
      return ShannonMutualInformation(prior, channel);
    case AlphaOrder::Branch::kInfinity: {
      double s = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double m = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
          if (prior[x] > 0.0) m = std::max(m, channel(x, y));
        }
        s += m;
      }
      return std::log(s);
    }
    default: {
      const double a = alpha.value();
      std::vector<double> outer_terms;
      std::vector<double> inner_terms;
      for (std::size_t y = 0; y < ny; ++y) {
        inner_terms.clear();
        for (std::size_t x = 0; x < nx; ++x) {
          const double c = channel(x, y);
          if (prior[x] > 0.0 && c > 0.0) {
            inner_terms.push_back(std::log(prior[x]) + a * std::log(c));
          }
        }
        if (!inner_terms.empty()) {
          outer_terms.push_back(internal::LogSumExp(inner_terms) / a);
        }
      }
      return a / (a - 1.0) * internal::LogSumExp(outer_terms);
    }
  }
}

double AlphaLoss(double p_hat, AlphaOrder alpha) {
  CheckPositiveOrder(alpha, "alpha-loss");
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) {
    throw InvalidArgument("alpha-loss needs an estimate in [0, 1]");
  }
  switch (alpha.branch()) {
    case AlphaOrder::Branch::kOne:
      return -std::log(p_hat);
    case AlphaOrder::Branch::kInfinity:
      return 1.0 - p_hat;
    default: {
      const double a = alpha.value();
      return a / (a - 1.0) * (1.0 - std::pow(p_hat, (a - 1.0) / a));
    }
  }
}

AlphaLossMinimum MinExpectedAlphaLoss(const Prior& prior, AlphaOrder alpha) {
  CheckPositiveOrder(alpha, "minimum expected alpha-loss");
  switch (alpha.branch()) {
    case AlphaOrder::Branch::kOne:
      return {ShannonEntropy(prior.probs()), prior};
    case AlphaOrder::Branch::kInfinity:
      return {1.0 - prior.Max(), Prior::PointMass(prior.size(), prior.ArgMax())};
    default: {
      const double a = alpha.value();
      const double log_mass = LogPowerSum(prior.probs(), a);
      std::vector<double> tilted(prior.size(), 0.0);
      for (std::size_t x = 0; x < prior.size(); ++x) {
        if (prior[x] > 0.0) tilted[x] = std::exp(a * std::log(prior[x]) - log_mass);
      }
      // exp(((1-a)/a) H_a) = (sum pi^a)^{1/a}.
      const double value = a / (a - 1.0) * -std::expm1(log_mass / a);
      return {value, Prior(std::move(tilted))};
    }
  }
}

double PointwiseAlphaLeakage(const Prior& prior, const Prior& posterior,
                             AlphaOrder alpha) {
  return RenyiDivergence(posterior, prior, alpha);
}

double SibsonViaPointwise(const Hyper& hyper, const Prior& prior,
                          AlphaOrder alpha) {
  const std::vector<double> rebuilt = hyper.Reconstruct();
  if (rebuilt.size() != prior.size()) {
    throw InvalidArgument("hyper and prior differ in dimension");
  }
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (std::abs(rebuilt[x] - prior[x]) > kInputTolerance) {
      throw InvalidArgument("hyper was not built from the given prior");
    }
  }
  std::vector<double> divergences;
  divergences.reserve(hyper.size());
  for (const Prior& inner : hyper.inners()) {
    divergences.push_back(RenyiDivergence(inner, prior, alpha));
  }
  return EllAlpha(alpha).Mean(hyper.outer(), divergences);
}

}  // namespace qifkit
