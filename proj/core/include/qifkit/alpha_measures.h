#ifndef QIFKIT_ALPHA_MEASURES_H_
#define QIFKIT_ALPHA_MEASURES_H_

#include <span>

#include "qifkit/alpha_order.h"
#include "qifkit/core.h"

namespace qifkit {

// All results are in nats.

// (1/(1-alpha)) log sum pi^alpha; Shannon at 1, -log max pi at inf,
// log |supp pi| at 0.
double RenyiEntropy(const Prior& prior, AlphaOrder alpha);

// (1/(alpha-1)) log sum_{supp mu} mu^alpha / pi^{alpha-1}; KL at 1,
// log max_{supp mu} mu/pi at inf, -log pi(supp mu) at 0. +inf when mu puts
// mass where pi has none (alpha > 0).
double RenyiDivergence(std::span<const double> mu, std::span<const double> pi,
                       AlphaOrder alpha);
double RenyiDivergence(const Prior& mu, const Prior& pi, AlphaOrder alpha);

// (alpha/(1-alpha)) log sum_y p(y) ||delta^y||_alpha with the Shannon,
// -log sum_y p(y) max delta^y and max_y log |supp delta^y| branches.
double ArimotoConditionalEntropy(const Hyper& hyper, AlphaOrder alpha);

// H_alpha(pi) - H_alpha(X|Y), pi recovered from the hyper.
double ArimotoMutualInformation(const Hyper& hyper, AlphaOrder alpha);

// (alpha/(alpha-1)) log sum_y (sum_x pi_x C_{x,y}^alpha)^{1/alpha}; Shannon
// mutual information at 1, log sum_y max_{supp pi} C_{x,y} at inf and
// -log max_y pi({x : C_{x,y} > 0}) at 0.
double SibsonMutualInformation(const Prior& prior, const Channel& channel,
                               AlphaOrder alpha);

// Shannon mutual information I(X;Y) of the joint pi_x C_{x,y}.
double ShannonMutualInformation(const Prior& prior, const Channel& channel);

// (alpha/(alpha-1)) (1 - p^{(alpha-1)/alpha}); log(1/p) at 1, 1 - p at inf.
// alpha = 0 is rejected.
double AlphaLoss(double p_hat, AlphaOrder alpha);

struct AlphaLossMinimum {
  double value;
  Prior minimizer;
};

// min over estimates q of sum_x pi_x AlphaLoss(q_x, alpha), attained at
// q = pi^alpha / sum pi^alpha (q = pi at 1, point mass at inf).
AlphaLossMinimum MinExpectedAlphaLoss(const Prior& prior, AlphaOrder alpha);

// D_alpha(posterior || prior).
double PointwiseAlphaLeakage(const Prior& prior, const Prior& posterior,
                             AlphaOrder alpha);

// ell_alpha^{-1}(sum_y p(y) ell_alpha(D_alpha(delta^y || pi))). Requires the
// hyper to reconstruct `prior` within kInputTolerance.
double SibsonViaPointwise(const Hyper& hyper, const Prior& prior,
                          AlphaOrder alpha);

}  // namespace qifkit

#endif  // QIFKIT_ALPHA_MEASURES_H_
