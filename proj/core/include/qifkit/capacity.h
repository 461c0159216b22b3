#ifndef QIFKIT_CAPACITY_H_
#define QIFKIT_CAPACITY_H_

#include <functional>

#include "qifkit/alpha_order.h"
#include "qifkit/core.h"
#include "qifkit/fmean.h"
#include "qifkit/report.h"
#include "qifkit/simplex.h"

namespace qifkit {

// log sum_y max_x C_{x,y}.
double BayesCapacity(const Channel& channel);

// log max_y (max_x C_{x,y} / min_x C_{x,y}); +inf (kZeroColumnEntry) when a
// reachable column contains a zero. All-zero columns are skipped.
LeakageReport LdpLeakage(const Channel& channel);

// max_{x,x'} (1/(alpha-1)) log sum_y C_{x',y}^{1-alpha} C_{x,y}^alpha for
// alpha in (1, inf); LdpLeakage at alpha = inf.
LeakageReport RenyiLdp(const Channel& channel, AlphaOrder alpha);

// Maximal (alpha, beta)-leakage of a fixed prior,
// (alpha/((alpha-1) beta)) log sum_y p(y)^{1-beta}
//     [sum_x pi_x^alpha C_{x,y}^alpha / sum_x pi_x^alpha]^{beta/alpha},
// with dedicated max branches for alpha = inf and beta = inf.
// alpha in (1, inf], beta in [1, inf].
double AlphaBetaLeakage(const Prior& prior, const Channel& channel,
                        AlphaOrder alpha, double beta);

struct PriorSupremum {
  double value;
  Prior witness;
  SimplexMaximum search;
};

// Lower bound on sup_pi objective(pi), attained at the witness.
PriorSupremum SupOverPrior(std::size_t num_secrets,
                           const std::function<double(const Prior&)>& objective,
                           const SimplexOptimizerConfig& config);

// log f^{-1}(sum_y max_x C_{x,y}); f^{-1} must be multiplicative.
double MultiplicativeFCapacity(const Channel& channel, const FMeanSpec& f);

// Upper bound on the max-case generalized leakage capacity:
// log max_y f^{-1}(max_x C / min_x C) for increasing f^{-1},
// log max_y f^{-1}(min_x C / max_x C) for decreasing. f^{-1} must be
// multiplicative.
LeakageReport MaxCaseCapacityBound(const Channel& channel, const FMeanSpec& f);

}  // namespace qifkit

#endif  // QIFKIT_CAPACITY_H_
