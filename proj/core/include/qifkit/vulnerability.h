#ifndef QIFKIT_VULNERABILITY_H_
#define QIFKIT_VULNERABILITY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qifkit/core.h"
#include "qifkit/fmean.h"
#include "qifkit/gain.h"
#include "qifkit/report.h"

namespace qifkit {

// The optimal adversary action for one distribution.
struct GainOptimum {
  // V_{f,g}(pi).
  double value = 0.0;
  // opt_w sum_x pi_x f(g(w, x)), so value = f^{-1}(inner_expectation).
  // NaN for the limit generators.
  double inner_expectation = 0.0;
  // Finite gains: the lowest-index optimal action.
  std::optional<std::size_t> action;
  // Simplex-valued gains: an optimal guess w.
  std::vector<double> guess;
  // False when the generic multi-start ascent produced the value.
  bool closed_form = true;
};

// Classical g-vulnerability max_w sum_x pi_x g(w, x).
double PriorVulnerability(const Prior& prior, const GainSpec& gain);
double PosteriorVulnerabilityAvg(const Hyper& hyper, const GainSpec& gain);
double PosteriorVulnerabilityMax(const Hyper& hyper, const GainSpec& gain);

// sup_w f^{-1}(sum_x pi_x f(g(w, x))). Requires the gain values to lie in
// f's domain and f^{-1} convex or affine. Throws DomainError when the
// optimum is negative.
double GenPriorVulnerability(const Prior& prior, const GainSpec& gain,
                             const FMeanSpec& f);
GainOptimum GenPriorOptimum(const Prior& prior, const GainSpec& gain,
                            const FMeanSpec& f);

struct PosteriorOptions {
  // Reject h != f unless h is convex-increasing, concave-decreasing or
  // affine. Only negative-control harnesses turn this off.
  bool validate_h = true;
};

// h^{-1}(sum_y p(y) h(V_{f,g}(delta^y))). When h and f induce the same mean
// the collapsed form f^{-1}(sum_y p(y) opt_w sum_x delta^y_x f(g(w, x))) is
// used, with opt = sup for increasing f^{-1} and inf for decreasing.
double GenPosteriorVulnerabilityAvg(const Hyper& hyper, const GainSpec& gain,
                                    const FMeanSpec& f, const FMeanSpec& h,
                                    PosteriorOptions options = {});
// max_y V_{f,g}(delta^y).
double GenPosteriorVulnerabilityMax(const Hyper& hyper, const GainSpec& gain,
                                    const FMeanSpec& f);

enum class LeakageKind { kAdditive, kMultiplicative };

struct LeakageValue {
  double value = 0.0;
  ReasonCode reason = ReasonCode::kNone;
};

// Additive: post - prior. Multiplicative: log(post / prior), or +inf with
// kZeroPriorVulnerability when prior <= 0.
LeakageValue Leakage(double prior_v, double post_v, LeakageKind kind);

// log(V_hat_{h,f,g}[pi, C] / V_{f,g}(pi)).
LeakageValue GenMultiplicativeLeakage(const Prior& prior, const Channel& channel,
                                      const GainSpec& gain, const FMeanSpec& f,
                                      const FMeanSpec& h,
                                      PosteriorOptions options = {});
// log(V^max_{f,g}[pi, C] / V_{f,g}(pi)).
LeakageValue GenMaxCaseLeakage(const Prior& prior, const Channel& channel,
                               const GainSpec& gain, const FMeanSpec& f);

}  // namespace qifkit

#endif  // QIFKIT_VULNERABILITY_H_
