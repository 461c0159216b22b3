#include "cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include "io.h"
#include "qifkit/alpha_measures.h"
#include "qifkit/capacity.h"
#include "qifkit/errors.h"
#include "qifkit/fmean.h"
#include "qifkit/gain.h"
#include "qifkit/report.h"
#include "qifkit/verify.h"
#include "qifkit/vulnerability.h"

namespace qifkit::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

const std::vector<std::string> kMeasures = {
    "prior-v",       "post-avg",          "post-max",        "leakage-mult",
    "leakage-add",   "renyi-entropy",     "renyi-divergence", "arimoto-mi",
    "sibson-mi",     "alpha-loss-min",    "pointwise-alpha", "alpha-beta",
    "bayes-capacity", "ldp",              "renyi-ldp",       "max-alpha-capacity",
    "mult-f-capacity", "max-case-bound"};

const std::vector<std::string> kSuites = {"axioms", "duals", "maximal"};

// Non-finite doubles become strings so the report stays valid JSON.
json Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json Numbers(const std::vector<double>& vs) {
  json a = json::array();
  for (double v : vs) a.push_back(Number(v));
  return a;
}

double ParseReal(const std::string& text, const std::string& what) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument(what + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

AlphaOrder ParseAlpha(const std::string& text) {
  return AlphaOrder::Of(ParseReal(text, "alpha"));
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// Generator identifiers: affine, log, min, max, power:P, exp:R, alpha:A,
// h:A:B, ell:A.
FMeanSpec ParseGenerator(const std::string& text) {
  const std::vector<std::string> p = Split(text, ':');
  const std::string& kind = p[0];
  auto arity = [&](std::size_t n) {
    if (p.size() != n + 1) {
      throw InvalidArgument("generator '" + text + "' expects " + std::to_string(n) +
                            " parameter(s)");
    }
  };
  if (kind == "affine") { arity(0); return FMeanSpec::Affine(); }
  if (kind == "log") { arity(0); return FMeanSpec::Log(); }
  if (kind == "min") { arity(0); return FMeanSpec::MinLimit(); }
  if (kind == "max") { arity(0); return FMeanSpec::MaxLimit(); }
  if (kind == "power") { arity(1); return FMeanSpec::Power(ParseReal(p[1], "power")); }
  if (kind == "exp") { arity(1); return FMeanSpec::Exp(ParseReal(p[1], "exp")); }
  if (kind == "alpha") { arity(1); return FAlpha(ParseAlpha(p[1])); }
  if (kind == "ell") { arity(1); return EllAlpha(ParseAlpha(p[1])); }
  if (kind == "h") {
    arity(2);
    return HAlphaBeta(ParseAlpha(p[1]), ParseReal(p[2], "beta"));
  }
  throw InvalidArgument("unknown generator '" + text + "'");
}

struct Options {
  std::string measure;
  std::string suite;
  std::string channel_path;
  std::string prior_path;
  std::string prior2_path;
  std::string gain = "identity";
  std::string alpha;
  std::string beta;
  std::string f;
  std::string h;
  bool bits = false;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::size_t instances = 1000;
  std::size_t restarts = 16;
  std::size_t grid = 100;
  std::size_t max_u = 4;
  std::optional<double> tolerance;
};

// Parsed inputs plus their provenance.
class Inputs {
 public:
  explicit Inputs(const Options& o) : o_(o) {}

  const Channel& channel() {
    if (!channel_) {
      channel_.emplace(ParseCsvMatrix(Load("channel", o_.channel_path), o_.channel_path));
    }
    return *channel_;
  }

  const Prior& prior() {
    if (!prior_) prior_.emplace(Row("prior", o_.prior_path));
    return *prior_;
  }

  const Prior& prior2() {
    if (!prior2_) prior2_.emplace(Row("prior2", o_.prior2_path));
    return *prior2_;
  }

  GainSpec gain() {
    if (o_.gain == "identity") return GainSpec::Identity();
    if (o_.gain == "simplex") return GainSpec::Simplex();
    if (o_.gain == "pointwise") return GainSpec::PointwiseInfo(prior());
    return GainSpec::FiniteMatrix(ParseCsvMatrix(Load("gain", o_.gain), o_.gain));
  }

  AlphaOrder alpha() const {
    if (o_.alpha.empty()) throw InvalidArgument("--alpha is required");
    return ParseAlpha(o_.alpha);
  }

  double beta() const {
    if (o_.beta.empty()) throw InvalidArgument("--beta is required");
    return ParseReal(o_.beta, "beta");
  }

  FMeanSpec f() const { return o_.f.empty() ? FMeanSpec::Affine() : ParseGenerator(o_.f); }
  // h defaults to f.
  FMeanSpec h() const { return o_.h.empty() ? f() : ParseGenerator(o_.h); }

  const json& provenance_inputs() const { return hashes_; }

 private:
  const std::string& Load(const std::string& role, const std::string& path) {
    if (path.empty()) throw InvalidArgument("--" + role + " is required");
    auto it = text_.find(path);
    if (it == text_.end()) it = text_.emplace(path, ReadFile(path)).first;
    hashes_[role] = {{"path", path}, {"sha256", Sha256Hex(it->second)}};
    return it->second;
  }

  std::vector<double> Row(const std::string& role, const std::string& path) {
    const Matrix m = ParseCsvMatrix(Load(role, path), path);
    if (m.size() != 1) throw InvalidArgument(path + ": a distribution is a single CSV row");
    return m.front();
  }

  const Options& o_;
  std::optional<Channel> channel_;
  std::optional<Prior> prior_;
  std::optional<Prior> prior2_;
  std::map<std::string, std::string> text_;
  json hashes_ = json::object();
};

SimplexOptimizerConfig OptimizerConfig(const Options& o, std::uint64_t seed) {
  SimplexOptimizerConfig cfg;
  cfg.restarts = o.restarts;
  cfg.grid_resolution = o.grid;
  cfg.seed = seed;
  cfg.Validate();
  return cfg;
}

LeakageReport Vulnerability(const std::string& name, double v) {
  LeakageReport r;
  r.measure_name = name;
  r.value = v;
  r.unit = "vulnerability";
  return r;
}

LeakageReport Nats(const std::string& name, double v,
                   ReasonCode reason = ReasonCode::kNone) {
  LeakageReport r;
  r.measure_name = name;
  r.value = v;
  r.reason = reason;
  return r;
}

ReasonCode DivergenceReason(double v) {
  return std::isinf(v) ? ReasonCode::kSupportViolation : ReasonCode::kNone;
}

LeakageReport Compute(const Options& o, Inputs& in, std::uint64_t seed) {
  const std::string& m = o.measure;
  if (m == "prior-v") {
    const GainOptimum opt = GenPriorOptimum(in.prior(), in.gain(), in.f());
    LeakageReport r = Vulnerability(m, opt.value);
    r.params["f"] = in.f().name();
    if (opt.action) r.diagnostics["action"] = static_cast<double>(*opt.action);
    if (!opt.guess.empty()) r.witnesses["guess"] = opt.guess;
    if (!opt.closed_form) r.notes.push_back("value from multi-start ascent");
    return r;
  }
  if (m == "post-avg" || m == "post-max" || m == "leakage-mult" || m == "leakage-add") {
    const Prior& p = in.prior();
    const Channel& c = in.channel();
    const GainSpec g = in.gain();
    const FMeanSpec f = in.f();
    const FMeanSpec h = in.h();
    LeakageReport r;
    if (m == "post-avg") {
      r = Vulnerability(m, GenPosteriorVulnerabilityAvg(Push(p, c), g, f, h));
      r.params["h"] = h.name();
    } else if (m == "post-max") {
      r = Vulnerability(m, GenPosteriorVulnerabilityMax(Push(p, c), g, f));
    } else if (m == "leakage-mult") {
      const LeakageValue l = GenMultiplicativeLeakage(p, c, g, f, h);
      r = Nats(m, l.value, l.reason);
      r.params["h"] = h.name();
    } else {
      const double prior_v = GenPriorVulnerability(p, g, f);
      const double post_v = GenPosteriorVulnerabilityAvg(Push(p, c), g, f, h);
      r = Vulnerability(m, Leakage(prior_v, post_v, LeakageKind::kAdditive).value);
      r.params["h"] = h.name();
    }
    r.params["f"] = f.name();
    r.params["gain"] = g.name();
    return r;
  }
  if (m == "renyi-entropy") {
    LeakageReport r = Nats(m, RenyiEntropy(in.prior(), in.alpha()));
    r.params["alpha"] = in.alpha().ToString();
    return r;
  }
  if (m == "renyi-divergence" || m == "pointwise-alpha") {
    // D(prior2 || prior): prior2 is the posterior in the pointwise reading.
    const double v = RenyiDivergence(in.prior2(), in.prior(), in.alpha());
    LeakageReport r = Nats(m, v, DivergenceReason(v));
    r.params["alpha"] = in.alpha().ToString();
    return r;
  }
  if (m == "arimoto-mi") {
    LeakageReport r =
        Nats(m, ArimotoMutualInformation(Push(in.prior(), in.channel()), in.alpha()));
    r.params["alpha"] = in.alpha().ToString();
    return r;
  }
  if (m == "sibson-mi") {
    LeakageReport r = Nats(m, SibsonMutualInformation(in.prior(), in.channel(), in.alpha()));
    r.params["alpha"] = in.alpha().ToString();
    return r;
  }
  if (m == "alpha-loss-min") {
    const AlphaLossMinimum best = MinExpectedAlphaLoss(in.prior(), in.alpha());
    LeakageReport r = Nats(m, best.value);
    r.params["alpha"] = in.alpha().ToString();
    r.witnesses["minimizer"] = {best.minimizer.probs().begin(), best.minimizer.probs().end()};
    return r;
  }
  if (m == "alpha-beta") {
    LeakageReport r =
        Nats(m, AlphaBetaLeakage(in.prior(), in.channel(), in.alpha(), in.beta()));
    r.params["alpha"] = in.alpha().ToString();
    r.params["beta"] = o.beta;
    return r;
  }
  if (m == "bayes-capacity") return Nats(m, BayesCapacity(in.channel()));
  if (m == "ldp") {
    LeakageReport r = LdpLeakage(in.channel());
    r.measure_name = m;
    return r;
  }
  if (m == "renyi-ldp") {
    LeakageReport r = RenyiLdp(in.channel(), in.alpha());
    r.measure_name = m;
    return r;
  }
  if (m == "max-alpha-capacity") {
    const Channel& c = in.channel();
    const AlphaOrder a = in.alpha();
    std::function<double(const Prior&)> objective;
    LeakageReport r = Nats(m, 0.0);
    r.params["alpha"] = a.ToString();
    if (o.beta.empty()) {
      objective = [&](const Prior& p) { return ArimotoMutualInformation(Push(p, c), a); };
    } else {
      const double b = in.beta();
      r.params["beta"] = o.beta;
      objective = [&, b](const Prior& p) { return AlphaBetaLeakage(p, c, a, b); };
    }
    const PriorSupremum sup = SupOverPrior(c.num_inputs(), objective, OptimizerConfig(o, seed));
    r.value = sup.value;
    r.witnesses["prior"] = {sup.witness.probs().begin(), sup.witness.probs().end()};
    r.diagnostics["evaluations"] = static_cast<double>(sup.search.evaluations);
    r.diagnostics["ascent_iterations"] = static_cast<double>(sup.search.ascent_iterations);
    r.params["source"] = sup.search.source;
    std::vector<double> trend_n;
    std::vector<double> trend_v;
    for (const VertexTrendPoint& t : sup.search.vertex_trend) {
      trend_n.push_back(t.n);
      trend_v.push_back(t.value);
    }
    r.witnesses["vertex_trend_n"] = trend_n;
    r.witnesses["vertex_trend_value"] = trend_v;
    r.notes.push_back("lower bound");
    return r;
  }
  if (m == "mult-f-capacity") {
    LeakageReport r = Nats(m, MultiplicativeFCapacity(in.channel(), in.f()));
    r.params["f"] = in.f().name();
    return r;
  }
  if (m == "max-case-bound") {
    LeakageReport r = MaxCaseCapacityBound(in.channel(), in.f());
    r.measure_name = m;
    r.params["f"] = in.f().name();
    return r;
  }
  throw InvalidArgument("unknown measure " + m);
}

json ReportJson(const LeakageReport& r) {
  json j;
  j["measure"] = r.measure_name;
  j["value"] = Number(r.value);
  j["unit"] = r.unit;
  j["reason"] = ReasonCodeName(r.reason);
  j["params"] = r.params;
  json diag = json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = Number(v);
  j["diagnostics"] = diag;
  json wit = json::object();
  for (const auto& [k, v] : r.witnesses) wit[k] = Numbers(v);
  j["witnesses"] = wit;
  j["notes"] = r.notes;
  return j;
}

json ResultJson(const VerificationResult& r) {
  json j;
  j["theorem_id"] = r.theorem_id;
  j["instances_checked"] = r.instances_checked;
  j["max_violation"] = Number(r.max_violation);
  j["tolerance"] = Number(r.tolerance);
  j["passed"] = r.passed;
  j["worst_instance"] = json::parse(r.worst_instance);
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = Number(v);
  j["details"] = details;
  return j;
}

AxiomGainFamily ParseAxiomGain(const std::string& g) {
  if (g == "identity") return AxiomGainFamily::kIdentity;
  if (g == "simplex") return AxiomGainFamily::kSimplex;
  if (g == "matrix") return AxiomGainFamily::kRandomMatrix;
  throw InvalidArgument("axiom suite gain must be identity, simplex or matrix");
}

// Returns the results array and whether every result passed.
std::pair<json, bool> Verify(const Options& o, Inputs& in, std::uint64_t seed) {
  json results = json::array();
  bool all = true;
  auto add = [&](const VerificationResult& r, json config) {
    json j = ResultJson(r);
    j["config"] = std::move(config);
    all = all && r.passed;
    results.push_back(std::move(j));
  };
  if (o.suite == "axioms") {
    std::vector<std::pair<AxiomSuiteConfig, std::string>> configs;
    if (o.f.empty()) {
      configs.push_back({{FMeanSpec::Affine(), FMeanSpec::Affine(), AxiomGainFamily::kIdentity},
                         "identity"});
      for (double a : {0.5, 2.0, std::numeric_limits<double>::infinity()}) {
        const FMeanSpec f = FAlpha(AlphaOrder::Of(a));
        configs.push_back({{f, f, AxiomGainFamily::kSimplex}, "simplex"});
      }
    } else {
      configs.push_back({{in.f(), in.h(), ParseAxiomGain(o.gain)}, o.gain});
    }
    for (auto& [cfg, gain] : configs) {
      if (o.tolerance) cfg.tolerance = *o.tolerance;
      for (const VerificationResult& r : RunAxiomSuite(cfg, o.instances, seed)) {
        add(r, {{"f", cfg.f.name()}, {"h", cfg.h.name()}, {"gain", gain}});
      }
    }
  } else if (o.suite == "duals") {
    DualFormulaConfig cfg;
    if (o.tolerance) cfg.tolerance = *o.tolerance;
    for (const VerificationResult& r : VerifyDualFormulas(o.instances, seed, cfg)) {
      add(r, json::object());
    }
  } else {
    if (o.gain != "identity" && o.gain != "simplex") {
      throw InvalidArgument("maximal check needs --gain identity or simplex");
    }
    MaximalLeakageSizes sizes;
    sizes.max_u = o.max_u;
    if (o.tolerance) sizes.tolerance = *o.tolerance;
    const FMeanSpec f = in.f();
    const FMeanSpec h = in.h();
    add(VerifyMaximalEqualsCapacity(in.channel(), in.gain(), f, h, sizes,
                                    OptimizerConfig(o, seed)),
        {{"f", f.name()}, {"h", h.name()}, {"gain", o.gain}, {"max_u", o.max_u}});
  }
  return {results, all};
}

std::uint64_t DefaultSeed() {
  const char* env = std::getenv("QIFKIT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t v = 0;
  const char* last = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument(std::string("QIFKIT_SEED is not an unsigned integer: ") + env);
  }
  return v;
}

void Emit(const Options& o, const json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write " + o.out_path);
  file << text;
}

void AddSharedOptions(CLI::App& sub, Options& o) {
  sub.add_option("--channel", o.channel_path, "channel CSV (rows = inputs)");
  sub.add_option("--gain", o.gain,
                 "gain: identity, simplex, pointwise, or a CSV file |W| x |X|")
      ->capture_default_str();
  sub.add_option("--f", o.f, "f generator: affine, log, min, max, power:P, exp:R, alpha:A, "
                             "h:A:B, ell:A");
  sub.add_option("--h", o.h, "h generator (defaults to f)");
  sub.add_option("--seed", o.seed, "RNG seed (default: QIFKIT_SEED or 0)");
  sub.add_option("--out", o.out_path, "write the JSON report here instead of stdout");
  sub.add_option("--restarts", o.restarts, "optimizer random restarts")->capture_default_str();
  sub.add_option("--grid", o.grid, "optimizer grid points per axis")->capture_default_str();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Quantitative information flow measures over finite channels", "qifkit");
  // -h would collide with the --h generator option.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", QIFKIT_VERSION);

  CLI::App* compute = app.add_subcommand("compute", "compute one measure");
  compute->add_option("measure", o.measure, "measure name")
      ->required()
      ->check(CLI::IsMember(kMeasures));
  compute->add_option("--prior", o.prior_path, "prior CSV (single row)");
  compute->add_option("--prior2", o.prior2_path,
                      "second distribution (divergence numerator / posterior)");
  compute->add_option("--alpha", o.alpha, "order alpha in [0, inf]");
  compute->add_option("--beta", o.beta, "beta in [1, inf]");
  compute->add_flag("--bits", o.bits, "report logarithmic values in bits");
  AddSharedOptions(*compute, o);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "axioms, duals or maximal")
      ->required()
      ->check(CLI::IsMember(kSuites));
  verify->add_option("--instances", o.instances, "random instances")->capture_default_str();
  verify->add_option("--max-u", o.max_u, "largest auxiliary alphabet")->capture_default_str();
  verify->add_option("--tolerance", o.tolerance, "override the suite's violation tolerance");
  AddSharedOptions(*verify, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << QIFKIT_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    const std::uint64_t seed = o.seed ? *o.seed : DefaultSeed();
    Inputs in(o);
    json report;
    report["schema"] = kSchemaVersion;
    int code = kExitOk;
    if (compute->parsed()) {
      LeakageReport r = Compute(o, in, seed);
      if (o.bits && r.unit == "nats") {
        r.value /= std::log(2.0);
        r.unit = "bits";
      }
      r.Validate();
      report.update(ReportJson(r));
    } else {
      auto [results, passed] = Verify(o, in, seed);
      report["suite"] = o.suite;
      report["passed"] = passed;
      report["results"] = std::move(results);
      if (!passed) code = kExitVerificationFailed;
    }
    report["provenance"] = {{"tool", "qifkit"},
                            {"version", QIFKIT_VERSION},
                            {"seed", seed},
                            {"inputs", in.provenance_inputs()}};
    Emit(o, report, out);
    return code;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace qifkit::cli
