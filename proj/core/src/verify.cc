#include "qifkit/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "qifkit/alpha_measures.h"
#include "qifkit/capacity.h"
#include "qifkit/errors.h"
#include "qifkit/vulnerability.h"

namespace qifkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStructuralSlack = 1e-9;

std::string Number(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::isnan(v)) return "\"nan\"";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::size_t UniformCount(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string AlphaField(AlphaOrder alpha) { return "\"" + alpha.ToString() + "\""; }

// Leakage of the auxiliary secret U obtained from (pi, p_{U|X}); the map is
// |X| x |U| row-stochastic, row-major.
double AuxiliaryLeakage(std::span<const double> prior, std::span<const double> map,
                        std::size_t num_u, const Channel& channel,
                        const GainSpec& gain, const FMeanSpec& f,
                        const FMeanSpec& h) {
  const std::size_t nx = prior.size();
  const std::size_t ny = channel.num_outputs();
  std::vector<double> pu;
  std::vector<double> rows;
  for (std::size_t u = 0; u < num_u; ++u) {
    double mass = 0.0;
    for (std::size_t x = 0; x < nx; ++x) mass += prior[x] * map[x * num_u + u];
    if (mass <= 0.0) continue;
    pu.push_back(mass);
    for (std::size_t y = 0; y < ny; ++y) {
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        s += prior[x] * map[x * num_u + u] * channel(x, y);
      }
      rows.push_back(s / mass);
    }
  }
  const double total = std::accumulate(pu.begin(), pu.end(), 0.0);
  for (double& p : pu) p /= total;
  // Row sums can drift from 1 by a few ulps; the Channel ctor renormalizes.
  const Channel cu(pu.size(), ny, std::move(rows));
  return GenMultiplicativeLeakage(Prior(std::move(pu)), cu, gain, f, h).value;
}

std::string MapField(std::span<const double> map, std::size_t num_u) {
  std::ostringstream out;
  out.precision(17);
  out << "[";
  for (std::size_t i = 0; i < map.size(); i += num_u) {
    out << (i ? "," : "") << "[";
    for (std::size_t u = 0; u < num_u; ++u) out << (u ? "," : "") << map[i + u];
    out << "]";
  }
  out << "]";
  return out.str();
}

GainSpec DrawGain(AxiomGainFamily family, std::size_t nx, std::mt19937_64& rng) {
  switch (family) {
    case AxiomGainFamily::kIdentity:
      return GainSpec::Identity();
    case AxiomGainFamily::kSimplex:
      return GainSpec::Simplex();
    case AxiomGainFamily::kRandomMatrix:
      break;
  }
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  const std::size_t nw = UniformCount(rng, 1, 4);
  std::vector<std::vector<double>> rows(nw, std::vector<double>(nx));
  for (auto& row : rows) {
    for (double& v : row) v = entry(rng);
  }
  return GainSpec::FiniteMatrix(rows);
}

std::string GainField(const GainSpec& gain, std::size_t nx) {
  if (!gain.is_finite() || gain.kind() == GainSpec::Kind::kIdentity) {
    return "\"" + gain.name() + "\"";
  }
  const GainMatrix m = gain.AsMatrix(nx);
  std::ostringstream out;
  out.precision(17);
  out << "[";
  for (std::size_t w = 0; w < m.num_actions; ++w) {
    out << (w ? "," : "") << "[";
    for (std::size_t x = 0; x < nx; ++x) out << (x ? "," : "") << m(w, x);
    out << "]";
  }
  out << "]";
  return out.str();
}

VerificationResult Fresh(const std::string& id, double tolerance) {
  VerificationResult r;
  r.theorem_id = id;
  r.tolerance = tolerance;
  r.max_violation = 0.0;
  return r;
}

}  // namespace

void VerificationResult::Record(double violation, const std::string& instance) {
  ++instances_checked;
  if (std::isnan(violation)) violation = kInf;
  if (instances_checked == 1 || violation > max_violation) {
    max_violation = std::max(max_violation, violation);
    worst_instance = instance;
  }
}

void VerificationResult::Finish() { passed = max_violation <= tolerance; }

std::string DescribeInstance(const std::vector<double>& prior,
                             const Channel* channel,
                             const std::map<std::string, std::string>& extra) {
  std::ostringstream out;
  out << "{\"prior\":[";
  for (std::size_t x = 0; x < prior.size(); ++x) {
    out << (x ? "," : "") << Number(prior[x]);
  }
  out << "]";
  if (channel != nullptr) {
    out << ",\"channel\":[";
    for (std::size_t x = 0; x < channel->num_inputs(); ++x) {
      out << (x ? "," : "") << "[";
      for (std::size_t y = 0; y < channel->num_outputs(); ++y) {
        out << (y ? "," : "") << Number((*channel)(x, y));
      }
      out << "]";
    }
    out << "]";
  }
  for (const auto& [key, value] : extra) out << ",\"" << key << "\":" << value;
  out << "}";
  return out.str();
}

VerificationResult VerifyMaximalEqualsCapacity(
    const Channel& channel, const GainSpec& gain, const FMeanSpec& f,
    const FMeanSpec& h, const MaximalLeakageSizes& sizes,
    const SimplexOptimizerConfig& config) {
  const std::size_t nx = channel.num_inputs();
  if (nx > 3) throw InvalidArgument("maximal-leakage enumeration needs |X| <= 3");
  if (sizes.max_u == 0 || sizes.max_u > 4) {
    throw InvalidArgument("maximal-leakage enumeration needs 1 <= |U| <= 4");
  }
  if (gain.kind() == GainSpec::Kind::kFiniteMatrix ||
      gain.kind() == GainSpec::Kind::kPointwiseInfo) {
    throw InvalidArgument("maximal-leakage check needs an identity or simplex gain");
  }
  config.Validate();

  double lhs = -kInf;
  std::string lhs_instance = "{}";
  std::size_t evaluated = 0;
  auto consider = [&](std::span<const double> prior, std::span<const double> map,
                      std::size_t num_u) {
    const double v = AuxiliaryLeakage(prior, map, num_u, channel, gain, f, h);
    ++evaluated;
    if (v > lhs) {
      lhs = v;
      lhs_instance = DescribeInstance(
          std::vector<double>(prior.begin(), prior.end()), &channel,
          {{"p_u_given_x", MapField(map, num_u)}});
    }
  };

  // Deterministic maps onto exactly |U| labels; non-surjective maps repeat
  // a smaller |U|.
  for (std::size_t num_u = 1; num_u <= std::min(sizes.max_u, nx); ++num_u) {
    std::vector<std::vector<double>> maps;
    std::vector<std::size_t> labels(nx, 0);
    while (true) {
      std::vector<bool> hit(num_u, false);
      for (std::size_t l : labels) hit[l] = true;
      if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
        std::vector<double> m(nx * num_u, 0.0);
        for (std::size_t x = 0; x < nx; ++x) m[x * num_u + labels[x]] = 1.0;
        maps.push_back(std::move(m));
      }
      std::size_t pos = 0;
      while (pos < nx && ++labels[pos] == num_u) labels[pos++] = 0;
      if (pos == nx) break;
    }
    ForEachGridPoint(nx, config.grid_resolution, [&](std::span<const double> p) {
      for (const auto& m : maps) consider(p, m, num_u);
    });
  }

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t num_u = 2; num_u <= sizes.max_u; ++num_u) {
    for (std::size_t s = 0; s < sizes.stochastic_samples; ++s) {
      const std::vector<double> prior = SampleDirichlet(nx, 1.0, rng);
      std::vector<double> map;
      for (std::size_t x = 0; x < nx; ++x) {
        const std::vector<double> row = SampleDirichlet(num_u, 1.0, rng);
        map.insert(map.end(), row.begin(), row.end());
      }
      consider(prior, map, num_u);
    }
  }

  const PriorSupremum rhs = SupOverPrior(
      nx,
      [&](const Prior& p) {
        return GenMultiplicativeLeakage(p, channel, gain, f, h).value;
      },
      config);

  VerificationResult r = Fresh("maximal_equals_capacity", sizes.tolerance);
  const double gap = std::abs(lhs - rhs.value);
  const bool structural_ok = lhs <= rhs.value + kStructuralSlack;
  r.Record(structural_ok ? gap : kInf, lhs_instance);
  r.instances_checked = evaluated;
  r.details["lhs"] = lhs;
  r.details["rhs"] = rhs.value;
  r.details["lhs_minus_rhs"] = lhs - rhs.value;
  r.details["rhs_evaluations"] = static_cast<double>(rhs.search.evaluations);
  r.Finish();
  return r;
}

std::vector<VerificationResult> RunAxiomSuite(const AxiomSuiteConfig& config,
                                              std::size_t n_instances,
                                              std::uint64_t seed) {
  if (config.min_secrets < 1 || config.min_secrets > config.max_secrets ||
      config.max_outputs < 2) {
    throw InvalidArgument("axiom suite needs 1 <= min_secrets <= max_secrets "
                          "and max_outputs >= 2");
  }
  const double tol = config.tolerance;
  std::vector<VerificationResult> out = {
      Fresh("NI", tol),         Fresh("MONO", tol),      Fresh("DPI-avg", tol),
      Fresh("DPI-max", tol),    Fresh("CVX-prior", tol), Fresh("QCVX-prior", tol),
      Fresh("AVG<=MAX", tol)};
  const PosteriorOptions options{config.validate_h};
  const FMeanSpec& f = config.f;
  const FMeanSpec& h = config.h;
  std::mt19937_64 rng(seed);

  for (std::size_t i = 0; i < n_instances; ++i) {
    const std::size_t nx = UniformCount(rng, config.min_secrets, config.max_secrets);
    const std::size_t ny = UniformCount(rng, 2, config.max_outputs);
    const std::size_t nz = UniformCount(rng, 2, config.max_outputs);
    const Prior prior = RandomPrior(nx, rng);
    const Channel c = RandomChannel(nx, ny, rng);
    const Channel post = RandomChannel(ny, nz, rng);
    const GainSpec gain = DrawGain(config.gain, nx, rng);
    const std::size_t k = UniformCount(rng, 2, 3);
    std::vector<Prior> parts;
    for (std::size_t j = 0; j < k; ++j) parts.push_back(RandomPrior(nx, rng));
    const std::vector<double> weights = SampleDirichlet(k, 1.0, rng);

    const std::string gain_field = GainField(gain, nx);
    const std::map<std::string, std::string> base{{"gain", gain_field},
                                                   {"instance", std::to_string(i)}};

    const double v_prior = GenPriorVulnerability(prior, gain, f);
    const Hyper ni = Push(prior, NiChannel(nx));
    const double ni_avg = GenPosteriorVulnerabilityAvg(ni, gain, f, h, options);
    const double ni_max = GenPosteriorVulnerabilityMax(ni, gain, f);
    out[0].Record(std::max(std::abs(ni_avg - v_prior), std::abs(ni_max - v_prior)),
                  DescribeInstance({prior.probs().begin(), prior.probs().end()},
                                   nullptr, base));

    const Hyper hyper = Push(prior, c);
    const double avg = GenPosteriorVulnerabilityAvg(hyper, gain, f, h, options);
    const double mx = GenPosteriorVulnerabilityMax(hyper, gain, f);
    const std::string with_c =
        DescribeInstance({prior.probs().begin(), prior.probs().end()}, &c, base);
    out[1].Record(std::max(0.0, v_prior - avg), with_c);

    const Channel cr = Compose(c, post);
    const Hyper hyper_cr = Push(prior, cr);
    const double avg_cr = GenPosteriorVulnerabilityAvg(hyper_cr, gain, f, h, options);
    const double max_cr = GenPosteriorVulnerabilityMax(hyper_cr, gain, f);
    std::map<std::string, std::string> dpi_fields = base;
    {
      std::ostringstream r;
      r.precision(17);
      r << "[";
      for (std::size_t y = 0; y < ny; ++y) {
        r << (y ? "," : "") << "[";
        for (std::size_t z = 0; z < nz; ++z) r << (z ? "," : "") << post(y, z);
        r << "]";
      }
      r << "]";
      dpi_fields["post_processing"] = r.str();
    }
    const std::string dpi_instance =
        DescribeInstance({prior.probs().begin(), prior.probs().end()}, &c, dpi_fields);
    out[2].Record(std::max(0.0, avg_cr - avg), dpi_instance);
    out[3].Record(std::max(0.0, max_cr - mx), dpi_instance);

    std::vector<double> mix(nx, 0.0);
    double mixed_bound = 0.0;
    double quasi_bound = -kInf;
    std::ostringstream parts_field;
    parts_field.precision(17);
    parts_field << "[";
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t x = 0; x < nx; ++x) mix[x] += weights[j] * parts[j][x];
      const double v = GenPriorVulnerability(parts[j], gain, f);
      mixed_bound += weights[j] * v;
      quasi_bound = std::max(quasi_bound, v);
      parts_field << (j ? "," : "") << "[";
      for (std::size_t x = 0; x < nx; ++x) parts_field << (x ? "," : "") << parts[j][x];
      parts_field << "]";
    }
    parts_field << "]";
    const double v_mix = GenPriorVulnerability(Prior(mix), gain, f);
    std::map<std::string, std::string> cvx_fields = base;
    cvx_fields["components"] = parts_field.str();
    {
      std::ostringstream w;
      w.precision(17);
      w << "[";
      for (std::size_t j = 0; j < k; ++j) w << (j ? "," : "") << weights[j];
      w << "]";
      cvx_fields["weights"] = w.str();
    }
    const std::string cvx_instance = DescribeInstance(mix, nullptr, cvx_fields);
    out[4].Record(std::max(0.0, v_mix - mixed_bound), cvx_instance);
    out[5].Record(std::max(0.0, v_mix - quasi_bound), cvx_instance);

    out[6].Record(std::max(0.0, avg - mx), with_c);
  }
  for (auto& r : out) {
    r.details["instances"] = static_cast<double>(n_instances);
    r.Finish();
  }
  return out;
}

std::vector<VerificationResult> VerifyDualFormulas(std::size_t n_instances,
                                                   std::uint64_t seed,
                                                   const DualFormulaConfig& config) {
  const double tol = config.tolerance;
  VerificationResult arimoto = Fresh("dual/arimoto_vs_generalized", tol);
  VerificationResult sibson = Fresh("dual/sibson_via_pointwise", tol);
  VerificationResult ab_route = Fresh("dual/alpha_beta_vs_vulnerability", tol);
  VerificationResult ab_beta1 = Fresh("dual/alpha_beta_beta1_vs_arimoto", tol);
  VerificationResult loss_lower = Fresh("dual/min_alpha_loss_lower", tol);
  VerificationResult loss_gap = Fresh("dual/min_alpha_loss_gap", config.grid_gap_bound);

  std::mt19937_64 rng(seed);
  const GainSpec simplex = GainSpec::Simplex();
  for (std::size_t i = 0; i < n_instances; ++i) {
    const std::size_t nx = UniformCount(rng, 2, config.max_secrets);
    const std::size_t ny = UniformCount(rng, 2, config.max_outputs);
    const Prior prior = RandomPrior(nx, rng);
    const Channel c = RandomChannel(nx, ny, rng);
    const Hyper hyper = Push(prior, c);
    const std::vector<double> pv(prior.probs().begin(), prior.probs().end());

    for (AlphaOrder alpha : config.alphas) {
      const std::string instance =
          DescribeInstance(pv, &c, {{"alpha", AlphaField(alpha)}});
      const FMeanSpec fa = FAlpha(alpha);
      const double route =
          GenMultiplicativeLeakage(prior, c, simplex, fa, fa).value;
      arimoto.Record(std::abs(route - ArimotoMutualInformation(hyper, alpha)),
                     instance);
      sibson.Record(std::abs(SibsonViaPointwise(hyper, prior, alpha) -
                             SibsonMutualInformation(prior, c, alpha)),
                    instance);
      if (!(alpha.value() > 1.0)) continue;
      for (double beta : config.betas) {
        const FMeanSpec h = HAlphaBeta(alpha, beta);
        // The ratio identity is algebraic, so it is checked for the
        // non-convex h (flagged by a warning) as well.
        const PosteriorOptions options{h.warnings().empty()};
        const double v_prior = GenPriorVulnerability(prior, simplex, fa);
        const double v_post =
            GenPosteriorVulnerabilityAvg(hyper, simplex, fa, h, options);
        const double closed = AlphaBetaLeakage(prior, c, alpha, beta);
        std::ostringstream b;
        b.precision(17);
        b << (std::isinf(beta) ? std::string("\"inf\"") : Number(beta));
        ab_route.Record(std::abs(closed - std::log(v_post / v_prior)),
                        DescribeInstance(pv, &c, {{"alpha", AlphaField(alpha)},
                                                  {"beta", b.str()}}));
        if (beta == 1.0) {
          ab_beta1.Record(std::abs(closed - ArimotoMutualInformation(hyper, alpha)),
                          instance);
        }
      }
    }

    if (i >= config.grid_instances) continue;
    const std::size_t gx = UniformCount(rng, 2, 3);
    const Prior gp = RandomPrior(gx, rng);
    const std::vector<double> gpv(gp.probs().begin(), gp.probs().end());
    for (AlphaOrder alpha : config.alphas) {
      if (alpha.is_zero()) continue;
      const double closed = MinExpectedAlphaLoss(gp, alpha).value;
      double grid_min = kInf;
      ForEachGridPoint(gx, config.grid_resolution, [&](std::span<const double> q) {
        double loss = 0.0;
        for (std::size_t x = 0; x < gx; ++x) {
          if (gp[x] > 0.0) loss += gp[x] * AlphaLoss(q[x], alpha);
        }
        grid_min = std::min(grid_min, loss);
      });
      const std::string instance =
          DescribeInstance(gpv, nullptr, {{"alpha", AlphaField(alpha)}});
      loss_lower.Record(std::max(0.0, closed - grid_min), instance);
      loss_gap.Record(std::max(0.0, grid_min - closed), instance);
    }
  }

  std::vector<VerificationResult> out = {arimoto, sibson, ab_route,
                                         ab_beta1, loss_lower, loss_gap};
  for (auto& r : out) r.Finish();
  return out;
}

}  // namespace qifkit
