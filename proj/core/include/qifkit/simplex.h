#ifndef QIFKIT_SIMPLEX_H_
#define QIFKIT_SIMPLEX_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qifkit/core.h"

namespace qifkit {

// Settings for maximizing a function over the probability simplex.
struct SimplexOptimizerConfig {
  // Dirichlet(1, ..., 1) starting points for projected-gradient ascent.
  std::size_t restarts = 16;
  // Denominator N of the exhaustive grid {k / N}; used when dim <= 3.
  std::size_t grid_resolution = 100;
  // n values of the near-vertex priors pi_{x*} = 1 - 1/n,
  // pi_x = 1 / (n (|X| - 1)), tried for every x*.
  std::vector<double> vertex_epsilon_sequence = {10, 100, 1000, 10000};
  // Ascent stops once an accepted step improves the objective by less.
  double ascent_tolerance = 1e-12;
  std::size_t max_iterations = 500;
  // Number of best grid / fixed candidates that are additionally polished
  // by ascent.
  std::size_t polish_candidates = 4;
  std::uint64_t seed = 0;

  // Throws InvalidArgument when restarts == 0 or the tolerance is not > 0.
  void Validate() const;
};

// Best value over the near-vertex family for one n.
struct VertexTrendPoint {
  double n = 0.0;
  double value = 0.0;
};

struct SimplexMaximum {
  double value = 0.0;
  std::vector<double> argmax;
  // Which candidate family produced the best point: "uniform", "grid",
  // "vertex", "ascent".
  std::string source;
  std::size_t evaluations = 0;
  std::size_t ascent_iterations = 0;
  std::size_t restarts = 0;
  std::vector<VertexTrendPoint> vertex_trend;
};

using SimplexObjective = std::function<double(std::span<const double>)>;

// Best point found over the union of the uniform distribution, the
// exhaustive grid (dim <= 3), the near-vertex family and projected-gradient
// ascent from random and polished starts. The returned value is attained at
// the returned point, so it is a certified lower bound on the supremum.
// Deterministic for a fixed config.seed.
SimplexMaximum MaximizeOverSimplex(std::size_t dim,
                                   const SimplexObjective& objective,
                                   const SimplexOptimizerConfig& config);

// Euclidean projection onto {p : p >= 0, sum p = 1} (sort-based).
std::vector<double> ProjectOntoSimplex(std::span<const double> point);

// Calls visit on every point {k / resolution} of the simplex in `dim`
// coordinates, in lexicographic order of the counts.
void ForEachGridPoint(std::size_t dim, std::size_t resolution,
                      const std::function<void(std::span<const double>)>& visit);

std::vector<double> SampleDirichlet(std::size_t dim, double concentration,
                                    std::mt19937_64& rng);

// Dirichlet(1, ..., 1) prior.
Prior RandomPrior(std::size_t n, std::mt19937_64& rng);
// Rows drawn independently from Dirichlet(1, ..., 1).
Channel RandomChannel(std::size_t num_inputs, std::size_t num_outputs,
                      std::mt19937_64& rng);

}  // namespace qifkit

#endif  // QIFKIT_SIMPLEX_H_
