#include "qifkit/capacity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qifkit/errors.h"
#include "log_sum_exp.h"

namespace qifkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireMultiplicative(const FMeanSpec& f) {
  if (!HasMultiplicativeInverse(f)) {
    throw InvalidArgument("generator " + f.name() +
                          " does not have a multiplicative inverse");
  }
}

void CheckAlphaBeta(AlphaOrder alpha, double beta) {
  if (!(alpha.value() > 1.0)) {
    throw InvalidArgument("(alpha, beta)-leakage needs alpha in (1, inf], got " +
                          alpha.ToString());
  }
  if (std::isnan(beta) || beta < 1.0) {
    throw InvalidArgument("(alpha, beta)-leakage needs beta in [1, inf]");
  }
}

}  // namespace

double BayesCapacity(const Channel& channel) {
  double s = 0.0;
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    s += channel.ColumnMax(y);
  }
  return std::log(s);
}

LeakageReport LdpLeakage(const Channel& channel) {
  LeakageReport r;
  r.measure_name = "ldp";
  double ratio = 1.0;
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    const double hi = channel.ColumnMax(y);
    if (hi <= 0.0) continue;
    const double lo = channel.ColumnMin(y);
    if (lo <= 0.0) {
      r.value = kInf;
      r.reason = ReasonCode::kZeroColumnEntry;
      r.diagnostics["column"] = static_cast<double>(y);
      return r;
    }
    ratio = std::max(ratio, hi / lo);
  }
  r.value = std::log(ratio);
  return r;
}

LeakageReport RenyiLdp(const Channel& channel, AlphaOrder alpha) {
  if (!(alpha.value() > 1.0)) {
    throw InvalidArgument("Renyi LDP needs alpha in (1, inf], got " +
                          alpha.ToString());
  }
  if (alpha.is_infinite()) {
    LeakageReport r = LdpLeakage(channel);
    r.measure_name = "renyi_ldp";
    return r;
  }
  LeakageReport r;
  r.measure_name = "renyi_ldp";
  r.params["alpha"] = alpha.ToString();
  const double a = alpha.value();
  double best = -kInf;
  for (std::size_t x = 0; x < channel.num_inputs(); ++x) {
    for (std::size_t xp = 0; xp < channel.num_inputs(); ++xp) {
      std::vector<double> terms;
      bool unbounded = false;
      for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
        const double c = channel(x, y);
        if (c <= 0.0) continue;
        const double cp = channel(xp, y);
        if (cp <= 0.0) {
          unbounded = true;
          break;
        }
        terms.push_back((1.0 - a) * std::log(cp) + a * std::log(c));
      }
      if (unbounded) {
        r.value = kInf;
        r.reason = ReasonCode::kZeroColumnEntry;
        return r;
      }
      const double d = internal::LogSumExp(terms) / (a - 1.0);
      if (d > best) {
        best = d;
        r.diagnostics["x"] = static_cast<double>(x);
        r.diagnostics["x_prime"] = static_cast<double>(xp);
      }
    }
  }
  r.value = best;
  return r;
}

double AlphaBetaLeakage(const Prior& prior, const Channel& channel,
                        AlphaOrder alpha, double beta) {
  CheckAlphaBeta(alpha, beta);
  if (prior.size() != channel.num_inputs()) {
    throw InvalidArgument("prior and channel differ in input dimension");
  }
  const std::size_t nx = prior.size();
  const std::vector<double> py = OutputMarginal(prior, channel);

  if (alpha.is_infinite()) {
    // Per-output ratio max_x pi_x C_{x,y} / (p(y) max pi).
    const double top = prior.Max();
    std::vector<double> log_terms;
    double max_ratio = 0.0;
    for (std::size_t y = 0; y < py.size(); ++y) {
      if (py[y] <= 0.0) continue;
      double m = 0.0;
      for (std::size_t x = 0; x < nx; ++x) m = std::max(m, prior[x] * channel(x, y));
      const double ratio = m / (py[y] * top);
      max_ratio = std::max(max_ratio, ratio);
      log_terms.push_back(std::log(py[y]) + beta * std::log(ratio));
    }
    if (std::isinf(beta)) return std::log(max_ratio);
    return internal::LogSumExp(log_terms) / beta;
  }

  const double a = alpha.value();
  std::vector<double> scratch;
  for (std::size_t x = 0; x < nx; ++x) {
    if (prior[x] > 0.0) scratch.push_back(a * std::log(prior[x]));
  }
  const double log_prior_mass = internal::LogSumExp(scratch);
  // r_y = A_y^{1/alpha} / p(y), A_y = sum_x pi^a C^a / sum pi^a.
  std::vector<double> log_ratio;
  std::vector<double> log_py;
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] <= 0.0) continue;
    scratch.clear();
    for (std::size_t x = 0; x < nx; ++x) {
      const double c = channel(x, y);
      if (prior[x] > 0.0 && c > 0.0) {
        scratch.push_back(a * (std::log(prior[x]) + std::log(c)));
      }
    }
    log_ratio.push_back((internal::LogSumExp(scratch) - log_prior_mass) / a -
                        std::log(py[y]));
    log_py.push_back(std::log(py[y]));
  }
  const double scale = a / (a - 1.0);
  if (std::isinf(beta)) {
    return scale * *std::max_element(log_ratio.begin(), log_ratio.end());
  }
  // sum_y p^{1-beta} A^{beta/alpha} = sum_y p(y) r_y^beta.
  std::vector<double> terms(log_ratio.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    terms[k] = log_py[k] + beta * log_ratio[k];
  }
  return scale * internal::LogSumExp(terms) / beta;
}

PriorSupremum SupOverPrior(std::size_t num_secrets,
                           const std::function<double(const Prior&)>& objective,
                           const SimplexOptimizerConfig& config) {
  const SimplexObjective wrapped = [&](std::span<const double> p) {
    return objective(Prior(std::vector<double>(p.begin(), p.end())));
  };
  SimplexMaximum search = MaximizeOverSimplex(num_secrets, wrapped, config);
  Prior witness(search.argmax);
  return {search.value, std::move(witness), std::move(search)};
}

double MultiplicativeFCapacity(const Channel& channel, const FMeanSpec& f) {
  RequireMultiplicative(f);
  double s = 0.0;
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    s += channel.ColumnMax(y);
  }
  return std::log(f.Inverse(s));
}

LeakageReport MaxCaseCapacityBound(const Channel& channel, const FMeanSpec& f) {
  RequireMultiplicative(f);
  LeakageReport r;
  r.measure_name = "max_case_capacity_bound";
  r.notes.push_back("upper bound");
  const bool increasing = f.direction() == Direction::kIncreasing;
  double best = -kInf;
  for (std::size_t y = 0; y < channel.num_outputs(); ++y) {
    const double hi = channel.ColumnMax(y);
    if (hi <= 0.0) continue;
    const double lo = channel.ColumnMin(y);
    const double ratio = increasing ? hi / lo : lo / hi;
    best = std::max(best, std::log(f.Inverse(ratio)));
  }
  r.value = best;
  if (std::isinf(best)) r.reason = ReasonCode::kZeroColumnEntry;
  return r;
}

}  // namespace qifkit
