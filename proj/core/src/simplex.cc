#include "qifkit/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "qifkit/errors.h"

namespace qifkit {
namespace {

constexpr double kFiniteDifferenceStep = 1e-6;

struct Candidate {
  double value;
  std::vector<double> point;
  std::string source;
};

class Evaluator {
 public:
  explicit Evaluator(const SimplexObjective& objective) : objective_(objective) {}

  double operator()(std::span<const double> p) {
    ++count_;
    const double v = objective_(p);
    if (std::isnan(v)) throw DomainError("simplex objective returned NaN");
    return v;
  }
  std::size_t count() const { return count_; }

 private:
  const SimplexObjective& objective_;
  std::size_t count_ = 0;
};

// Derivative along e_i - (1/d) 1, central where both probes stay feasible.
std::vector<double> TangentGradient(std::span<const double> p, double fp,
                                    Evaluator& eval) {
  const std::size_t d = p.size();
  const double h = kFiniteDifferenceStep;
  const double share = h / static_cast<double>(d);
  std::vector<double> grad(d, 0.0);
  std::vector<double> probe(p.begin(), p.end());
  auto shifted = [&](std::size_t i, double sign) -> std::optional<double> {
    for (std::size_t j = 0; j < d; ++j) {
      probe[j] = p[j] - sign * share + (j == i ? sign * h : 0.0);
      if (probe[j] < 0.0) {
        if (probe[j] < -1e-15) return std::nullopt;
        probe[j] = 0.0;
      }
    }
    return eval(probe);
  };
  for (std::size_t i = 0; i < d; ++i) {
    const auto forward = shifted(i, 1.0);
    const auto backward = shifted(i, -1.0);
    if (forward && backward) {
      grad[i] = (*forward - *backward) / (2.0 * h);
    } else if (forward) {
      grad[i] = (*forward - fp) / h;
    } else if (backward) {
      grad[i] = (fp - *backward) / h;
    }
    if (!std::isfinite(grad[i])) grad[i] = 0.0;
  }
  const double mean = std::accumulate(grad.begin(), grad.end(), 0.0) / d;
  for (double& g : grad) g -= mean;
  return grad;
}

// Projected gradient ascent with backtracking; returns the final point.
Candidate Ascend(std::vector<double> start, double start_value,
                 const SimplexOptimizerConfig& config, Evaluator& eval,
                 std::size_t& iterations) {
  std::vector<double> p = std::move(start);
  double fp = start_value;
  double step = 0.1;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    if (std::isinf(fp)) break;
    ++iterations;
    const std::vector<double> grad = TangentGradient(p, fp, eval);
    double norm = 0.0;
    for (double g : grad) norm += g * g;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    bool accepted = false;
    double gain = 0.0;
    for (int tries = 0; tries < 40; ++tries) {
      std::vector<double> trial(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        trial[i] = p[i] + step * grad[i] / norm;
      }
      trial = ProjectOntoSimplex(trial);
      const double ft = eval(trial);
      if (ft > fp) {
        gain = ft - fp;
        p = std::move(trial);
        fp = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || gain < config.ascent_tolerance) break;
    step = std::min(step * 2.0, 1.0);
  }
  return {fp, std::move(p), "ascent"};
}

void Consider(std::vector<Candidate>& pool, Candidate c) {
  pool.push_back(std::move(c));
}

}  // namespace

void SimplexOptimizerConfig::Validate() const {
  if (restarts == 0) throw InvalidArgument("optimizer needs restarts >= 1");
  if (!(ascent_tolerance > 0.0)) {
    throw InvalidArgument("optimizer needs ascent_tolerance > 0");
  }
  if (grid_resolution == 0) {
    throw InvalidArgument("optimizer needs grid_resolution >= 1");
  }
  for (double n : vertex_epsilon_sequence) {
    if (!(n > 1.0)) throw InvalidArgument("vertex sequence entries must exceed 1");
  }
}

std::vector<double> ProjectOntoSimplex(std::span<const double> point) {
  const std::size_t d = point.size();
  if (d == 0) throw InvalidArgument("cannot project an empty point");
  std::vector<double> sorted(point.begin(), point.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(d);
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = std::max(point[i] - theta, 0.0);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

void ForEachGridPoint(std::size_t dim, std::size_t resolution,
                      const std::function<void(std::span<const double>)>& visit) {
  if (dim == 0 || resolution == 0) {
    throw InvalidArgument("grid needs dim >= 1 and resolution >= 1");
  }
  std::vector<std::size_t> counts(dim, 0);
  std::vector<double> point(dim, 0.0);
  const double denom = static_cast<double>(resolution);
  // counts[0..dim-2] enumerate freely; the last coordinate takes the rest.
  std::function<void(std::size_t, std::size_t)> recurse =
      [&](std::size_t index, std::size_t remaining) {
        if (index + 1 == dim) {
          counts[index] = remaining;
          for (std::size_t i = 0; i < dim; ++i) point[i] = counts[i] / denom;
          visit(point);
          return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
          counts[index] = c;
          recurse(index + 1, remaining - c);
        }
      };
  recurse(0, resolution);
}

std::vector<double> SampleDirichlet(std::size_t dim, double concentration,
                                    std::mt19937_64& rng) {
  if (dim == 0 || !(concentration > 0.0)) {
    throw InvalidArgument("Dirichlet needs dim >= 1 and concentration > 0");
  }
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> out(dim);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& v : out) {
      v = gamma(rng);
      total += v;
    }
  } while (total <= 0.0);
  for (double& v : out) v /= total;
  return out;
}

Prior RandomPrior(std::size_t n, std::mt19937_64& rng) {
  return Prior(SampleDirichlet(n, 1.0, rng));
}

Channel RandomChannel(std::size_t num_inputs, std::size_t num_outputs,
                      std::mt19937_64& rng) {
  std::vector<double> data;
  data.reserve(num_inputs * num_outputs);
  for (std::size_t x = 0; x < num_inputs; ++x) {
    const std::vector<double> row = SampleDirichlet(num_outputs, 1.0, rng);
    data.insert(data.end(), row.begin(), row.end());
  }
  return Channel(num_inputs, num_outputs, std::move(data));
}

SimplexMaximum MaximizeOverSimplex(std::size_t dim,
                                   const SimplexObjective& objective,
                                   const SimplexOptimizerConfig& config) {
  config.Validate();
  if (dim == 0) throw InvalidArgument("simplex dimension must be >= 1");
  Evaluator eval(objective);
  SimplexMaximum result;

  if (dim == 1) {
    const std::vector<double> only{1.0};
    result.value = eval(only);
    result.argmax = only;
    result.source = "uniform";
    result.evaluations = eval.count();
    return result;
  }

  std::vector<Candidate> fixed;
  {
    std::vector<double> uniform(dim, 1.0 / static_cast<double>(dim));
    const double v = eval(uniform);
    Consider(fixed, {v, std::move(uniform), "uniform"});
  }
  if (dim <= 3) {
    // Keep only the best few grid points; the rest never reach the output.
    std::vector<Candidate> best_grid;
    const std::size_t keep = std::max<std::size_t>(config.polish_candidates, 1);
    ForEachGridPoint(dim, config.grid_resolution, [&](std::span<const double> p) {
      const double v = eval(p);
      if (best_grid.size() < keep || v > best_grid.back().value) {
        Candidate c{v, std::vector<double>(p.begin(), p.end()), "grid"};
        auto pos = std::upper_bound(
            best_grid.begin(), best_grid.end(), c,
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
        best_grid.insert(pos, std::move(c));
        if (best_grid.size() > keep) best_grid.pop_back();
      }
    });
    for (auto& c : best_grid) fixed.push_back(std::move(c));
  }
  for (double n : config.vertex_epsilon_sequence) {
    VertexTrendPoint trend{n, -std::numeric_limits<double>::infinity()};
    const double rest = 1.0 / (n * static_cast<double>(dim - 1));
    for (std::size_t star = 0; star < dim; ++star) {
      std::vector<double> p(dim, rest);
      p[star] = 1.0 - 1.0 / n;
      const double v = eval(p);
      trend.value = std::max(trend.value, v);
      Consider(fixed, {v, std::move(p), "vertex"});
    }
    result.vertex_trend.push_back(trend);
  }

  std::vector<Candidate> pool = fixed;

  // Polish the strongest fixed candidates.
  std::vector<std::size_t> order(fixed.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fixed[a].value > fixed[b].value;
  });
  const std::size_t polish = std::min(config.polish_candidates, order.size());
  for (std::size_t k = 0; k < polish; ++k) {
    const Candidate& c = fixed[order[k]];
    Candidate polished =
        Ascend(c.point, c.value, config, eval, result.ascent_iterations);
    if (polished.value > c.value) pool.push_back(std::move(polished));
  }

  std::mt19937_64 rng(config.seed);
  for (std::size_t r = 0; r < config.restarts; ++r) {
    std::vector<double> start = SampleDirichlet(dim, 1.0, rng);
    const double v = eval(start);
    pool.push_back(Ascend(std::move(start), v, config, eval,
                          result.ascent_iterations));
  }
  result.restarts = config.restarts;

  // First strictly best candidate in pool order wins ties.
  const Candidate* best = &pool.front();
  for (const Candidate& c : pool) {
    if (c.value > best->value) best = &c;
  }
  result.value = best->value;
  result.argmax = best->point;
  result.source = best->source;
  result.evaluations = eval.count();
  return result;
}

}  // namespace qifkit
