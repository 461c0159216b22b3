#ifndef QIFKIT_VERIFY_H_
#define QIFKIT_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qifkit/alpha_order.h"
#include "qifkit/core.h"
#include "qifkit/fmean.h"
#include "qifkit/gain.h"
#include "qifkit/simplex.h"

namespace qifkit {

// Invariant: passed == (max_violation <= tolerance).
struct VerificationResult {
  std::string theorem_id;
  std::size_t instances_checked = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  // Inputs of the instance attaining max_violation, as a JSON object.
  std::string worst_instance = "{}";
  bool passed = true;
  std::map<std::string, double> details;

  // Folds one instance in; keeps the first instance among equal violations.
  void Record(double violation, const std::string& instance);
  void Finish();
};

struct MaximalLeakageSizes {
  // Largest auxiliary alphabet |U| enumerated.
  std::size_t max_u = 4;
  // Random stochastic p_{U|X} spot checks per |U| >= 2.
  std::size_t stochastic_samples = 32;
  // |LHS - RHS| allowed; LHS <= RHS + 1e-9 is always required.
  double tolerance = 2e-2;
};

// Compares, for the multiplicative leakage L(pi, C) = log(V_hat / V):
//   LHS = max over grid priors pi on X (config.grid_resolution), every
//         deterministic map X -> U with |U| <= max_u, and sampled stochastic
//         p_{U|X}, of L(p_U, C_U) with C_U(y|u) = sum_x p(x|u) C_{x,y};
//   RHS = SupOverPrior of L(., C).
// The gain must be alphabet-generic (identity or simplex). |X| <= 3 and
// max_u <= 4. max_violation is |LHS - RHS|, or +inf when LHS > RHS + 1e-9.
VerificationResult VerifyMaximalEqualsCapacity(
    const Channel& channel, const GainSpec& gain, const FMeanSpec& f,
    const FMeanSpec& h, const MaximalLeakageSizes& sizes,
    const SimplexOptimizerConfig& config);

enum class AxiomGainFamily { kIdentity, kSimplex, kRandomMatrix };

struct AxiomSuiteConfig {
  AxiomSuiteConfig(FMeanSpec f_in, FMeanSpec h_in, AxiomGainFamily gain_in)
      : f(std::move(f_in)), h(std::move(h_in)), gain(gain_in) {}

  FMeanSpec f;
  FMeanSpec h;
  AxiomGainFamily gain;
  std::size_t min_secrets = 2;
  std::size_t max_secrets = 4;
  std::size_t max_outputs = 4;
  double tolerance = 1e-9;
  // Off only for negative controls built from an invalid h.
  bool validate_h = true;
};

// One result per axiom, in this order: NI, MONO, DPI-avg, DPI-max,
// CVX-prior, QCVX-prior, AVG<=MAX. Instances: |X| uniform in
// [min_secrets, max_secrets], |Y|, |Z| uniform in [2, max_outputs],
// Dirichlet(1) priors and channel rows, random-matrix gains with |W| in
// [1, 4] and entries U[0, 1], mixtures of 2 or 3 priors with Dirichlet(1)
// weights.
std::vector<VerificationResult> RunAxiomSuite(const AxiomSuiteConfig& config,
                                              std::size_t n_instances,
                                              std::uint64_t seed);

struct DualFormulaConfig {
  std::vector<AlphaOrder> alphas = {AlphaOrder::Zero(), AlphaOrder::Of(0.5),
                                    AlphaOrder::One(),  AlphaOrder::Of(2.0),
                                    AlphaOrder::Of(10.0), AlphaOrder::Infinity()};
  std::vector<double> betas = {1.0, 2.0, 4.0,
                               std::numeric_limits<double>::infinity()};
  std::size_t max_secrets = 3;
  std::size_t max_outputs = 3;
  double tolerance = 1e-8;
  // The alpha-loss grid oracle runs on this many of the instances.
  std::size_t grid_instances = 50;
  std::size_t grid_resolution = 200;
  // Allowed gap between the grid minimum and the closed form.
  double grid_gap_bound = 1e-2;
};

// Results, in order:
//   dual/arimoto_vs_generalized   alpha-leakage route vs Arimoto MI
//   dual/sibson_via_pointwise     pointwise average vs Sibson MI
//   dual/alpha_beta_vs_vulnerability closed form vs V_hat ratio route
//   dual/alpha_beta_beta1_vs_arimoto
//   dual/min_alpha_loss_lower     closed form <= grid minimum
//   dual/min_alpha_loss_gap       grid minimum - closed form <= bound
std::vector<VerificationResult> VerifyDualFormulas(std::size_t n_instances,
                                                   std::uint64_t seed,
                                                   const DualFormulaConfig& config = {});

// JSON text for a prior/channel pair and extra scalar fields.
std::string DescribeInstance(const std::vector<double>& prior,
                             const Channel* channel,
                             const std::map<std::string, std::string>& extra = {});

}  // namespace qifkit

#endif  // QIFKIT_VERIFY_H_
