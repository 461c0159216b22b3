#include "qifkit/vulnerability.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "qifkit/alpha_measures.h"
#include "qifkit/errors.h"
#include "qifkit/simplex.h"
#include "log_sum_exp.h"

namespace qifkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double InnerExpectation(const FMeanSpec& f, double value) {
  if (f.is_limit()) return kNaN;
  return f.Forward(value);
}

void CheckInDomain(const FMeanSpec& f, double v) {
  if (!f.domain().Contains(v)) {
    std::ostringstream msg;
    msg << "gain value " << v << " lies outside the domain of " << f.name();
    throw DomainError(msg.str());
  }
}

void CheckPriorGenerator(const FMeanSpec& f, const GainSpec& gain) {
  // The pointwise information gain is paired with ell_alpha, whose inverse
  // is concave for alpha > 1; it measures information, not vulnerability.
  if (gain.kind() == GainSpec::Kind::kPointwiseInfo) return;
  if (f.inverse_curvature() == Curvature::kConcave) {
    throw InvalidArgument("generator " + f.name() +
                          " has a concave inverse; a convex or affine inverse "
                          "is required for prior vulnerability");
  }
}

GainOptimum FiniteOptimum(std::span<const double> dist, const GainSpec& gain,
                          const FMeanSpec& f) {
  const GainMatrix m = gain.AsMatrix(dist.size());
  for (double v : m.values) CheckInDomain(f, v);
  GainOptimum best;
  best.value = -kInf;
  for (std::size_t w = 0; w < m.num_actions; ++w) {
    const double v = f.Mean(dist, m.Action(w));
    if (v > best.value) {
      best.value = v;
      best.action = w;
    }
  }
  best.inner_expectation = InnerExpectation(f, best.value);
  return best;
}

// Closed forms for the simplex gain g(w, x) = w_x.
std::optional<GainOptimum> SimplexClosedForm(std::span<const double> dist,
                                             const FMeanSpec& f) {
  const std::size_t n = dist.size();
  GainOptimum out;
  out.guess.assign(n, 0.0);
  if (f.IsArithmetic()) {
    std::size_t arg = 0;
    for (std::size_t x = 1; x < n; ++x) {
      if (dist[x] > dist[arg]) arg = x;
    }
    out.value = dist[arg];
    out.guess[arg] = 1.0;
  } else if (f.family() == FMeanSpec::Family::kPower && f.parameter() < 1.0) {
    // f(t) = t^p with p = (alpha - 1) / alpha.
    const double alpha = 1.0 / (1.0 - f.parameter());
    std::vector<double> terms;
    for (double p : dist) {
      if (p > 0.0) terms.push_back(alpha * std::log(p));
    }
    const double log_mass = internal::LogSumExp(terms);
    for (std::size_t x = 0; x < n; ++x) {
      if (dist[x] > 0.0) out.guess[x] = std::exp(alpha * std::log(dist[x]) - log_mass);
    }
    out.value = std::exp(log_mass / (alpha - 1.0));
  } else if (f.family() == FMeanSpec::Family::kLog) {
    double entropy = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (dist[x] > 0.0) entropy -= dist[x] * std::log(dist[x]);
      out.guess[x] = dist[x];
    }
    out.value = std::exp(-entropy);
  } else if (f.family() == FMeanSpec::Family::kMinLimit) {
    std::size_t support = 0;
    for (double p : dist) support += p > 0.0 ? 1 : 0;
    for (std::size_t x = 0; x < n; ++x) {
      out.guess[x] = dist[x] > 0.0 ? 1.0 / static_cast<double>(support) : 0.0;
    }
    out.value = 1.0 / static_cast<double>(support);
  } else {
    return std::nullopt;
  }
  out.inner_expectation = InnerExpectation(f, out.value);
  return out;
}

// Closed forms for the pointwise information gain under ell_alpha.
std::optional<GainOptimum> PointwiseClosedForm(std::span<const double> dist,
                                               const Prior& reference,
                                               const FMeanSpec& f) {
  std::optional<AlphaOrder> alpha;
  if (f.IsArithmetic()) {
    alpha = AlphaOrder::One();
  } else if (f.family() == FMeanSpec::Family::kMinLimit) {
    alpha = AlphaOrder::Zero();
  } else if (f.family() == FMeanSpec::Family::kExp && f.parameter() == 1.0) {
    alpha = AlphaOrder::Infinity();
  } else if (f.family() == FMeanSpec::Family::kExp && f.parameter() < 1.0) {
    alpha = AlphaOrder::Of(1.0 / (1.0 - f.parameter()));
  }
  if (!alpha) return std::nullopt;
  GainOptimum out;
  out.value = RenyiDivergence(dist, reference.probs(), *alpha);
  out.inner_expectation =
      std::isinf(out.value) ? kNaN : InnerExpectation(f, out.value);
  return out;
}

GainOptimum SimplexAscent(std::span<const double> dist, const GainSpec& gain,
                          const FMeanSpec& f) {
  std::vector<double> values(dist.size());
  const SimplexObjective objective = [&](std::span<const double> w) {
    for (std::size_t x = 0; x < dist.size(); ++x) {
      values[x] = dist[x] > 0.0 ? gain.EvaluateGuess(w, x) : 0.0;
    }
    return f.Mean(dist, values);
  };
  const SimplexMaximum best =
      MaximizeOverSimplex(dist.size(), objective, SimplexOptimizerConfig{});
  GainOptimum out;
  out.value = best.value;
  out.guess = best.argmax;
  out.closed_form = false;
  out.inner_expectation = InnerExpectation(f, out.value);
  return out;
}

GainOptimum Optimize(std::span<const double> dist, const GainSpec& gain,
                     const FMeanSpec& f) {
  GainOptimum out;
  switch (gain.kind()) {
    case GainSpec::Kind::kFiniteMatrix:
    case GainSpec::Kind::kIdentity:
      out = FiniteOptimum(dist, gain, f);
      break;
    case GainSpec::Kind::kSimplex: {
      if (!f.domain().Contains(0.0) || !f.domain().Contains(1.0)) {
        throw DomainError("simplex gain values [0, 1] lie outside the domain of " +
                          f.name());
      }
      auto closed = SimplexClosedForm(dist, f);
      out = closed ? *closed : SimplexAscent(dist, gain, f);
      break;
    }
    case GainSpec::Kind::kPointwiseInfo: {
      if (gain.reference().size() != dist.size()) {
        throw InvalidArgument("pointwise gain reference has a different dimension");
      }
      if (std::isfinite(f.domain().lo)) {
        throw DomainError("pointwise information gain takes negative values "
                          "outside the domain of " + f.name());
      }
      auto closed = PointwiseClosedForm(dist, gain.reference(), f);
      out = closed ? *closed : SimplexAscent(dist, gain, f);
      break;
    }
  }
  if (out.value < 0.0 && gain.kind() != GainSpec::Kind::kPointwiseInfo) {
    std::ostringstream msg;
    msg << "vulnerability " << out.value << " is negative; the expected gain "
        << "must be nonnegative";
    throw DomainError(msg.str());
  }
  return out;
}

void CheckPosteriorGenerator(const FMeanSpec& f, const FMeanSpec& h,
                             const PosteriorOptions& options) {
  if (!options.validate_h || h.SameAs(f) || h.IsArithmetic()) return;
  const bool convex_increasing = h.direction() == Direction::kIncreasing &&
                                 h.forward_curvature() != Curvature::kConcave;
  const bool concave_decreasing = h.direction() == Direction::kDecreasing &&
                                  h.forward_curvature() != Curvature::kConvex;
  if (!convex_increasing && !concave_decreasing) {
    throw InvalidArgument("posterior generator " + h.name() +
                          " differs from f and is neither convex-increasing "
                          "nor concave-decreasing");
  }
}

std::vector<double> PosteriorValues(const Hyper& hyper, const GainSpec& gain,
                                    const FMeanSpec& f) {
  std::vector<double> values;
  values.reserve(hyper.size());
  for (const Prior& inner : hyper.inners()) {
    values.push_back(Optimize(inner.probs(), gain, f).value);
  }
  return values;
}

}  // namespace

double PriorVulnerability(const Prior& prior, const GainSpec& gain) {
  return GenPriorVulnerability(prior, gain, FMeanSpec::Affine());
}

double PosteriorVulnerabilityAvg(const Hyper& hyper, const GainSpec& gain) {
  const FMeanSpec id = FMeanSpec::Affine();
  return GenPosteriorVulnerabilityAvg(hyper, gain, id, id);
}

double PosteriorVulnerabilityMax(const Hyper& hyper, const GainSpec& gain) {
  return GenPosteriorVulnerabilityMax(hyper, gain, FMeanSpec::Affine());
}

GainOptimum GenPriorOptimum(const Prior& prior, const GainSpec& gain,
                            const FMeanSpec& f) {
  CheckPriorGenerator(f, gain);
  return Optimize(prior.probs(), gain, f);
}

double GenPriorVulnerability(const Prior& prior, const GainSpec& gain,
                             const FMeanSpec& f) {
  return GenPriorOptimum(prior, gain, f).value;
}

double GenPosteriorVulnerabilityAvg(const Hyper& hyper, const GainSpec& gain,
                                    const FMeanSpec& f, const FMeanSpec& h,
                                    PosteriorOptions options) {
  CheckPriorGenerator(f, gain);
  CheckPosteriorGenerator(f, h, options);
  // With h = f this is the collapsed form: f(V_{f,g}(delta^y)) is exactly
  // the optimal inner expectation of posterior y.
  return h.Mean(hyper.outer(), PosteriorValues(hyper, gain, f));
}

double GenPosteriorVulnerabilityMax(const Hyper& hyper, const GainSpec& gain,
                                    const FMeanSpec& f) {
  CheckPriorGenerator(f, gain);
  double best = -kInf;
  for (double v : PosteriorValues(hyper, gain, f)) best = std::max(best, v);
  return best;
}

LeakageValue Leakage(double prior_v, double post_v, LeakageKind kind) {
  if (kind == LeakageKind::kAdditive) return {post_v - prior_v};
  if (prior_v <= 0.0) return {kInf, ReasonCode::kZeroPriorVulnerability};
  return {std::log(post_v / prior_v)};
}

LeakageValue GenMultiplicativeLeakage(const Prior& prior, const Channel& channel,
                                      const GainSpec& gain, const FMeanSpec& f,
                                      const FMeanSpec& h,
                                      PosteriorOptions options) {
  const double prior_v = GenPriorVulnerability(prior, gain, f);
  const double post_v =
      GenPosteriorVulnerabilityAvg(Push(prior, channel), gain, f, h, options);
  return Leakage(prior_v, post_v, LeakageKind::kMultiplicative);
}

LeakageValue GenMaxCaseLeakage(const Prior& prior, const Channel& channel,
                               const GainSpec& gain, const FMeanSpec& f) {
  const double prior_v = GenPriorVulnerability(prior, gain, f);
  const double post_v =
      GenPosteriorVulnerabilityMax(Push(prior, channel), gain, f);
  return Leakage(prior_v, post_v, LeakageKind::kMultiplicative);
}

}  // namespace qifkit
