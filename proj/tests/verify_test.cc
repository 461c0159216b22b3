#include "qifkit/verify.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qifkit/capacity.h"
#include "qifkit/errors.h"

namespace qifkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(VerificationResultTest, TracksWorstInstance) {
  VerificationResult r;
  r.tolerance = 1e-9;
  r.Record(1e-12, "{\"i\":0}");
  r.Record(5e-10, "{\"i\":1}");
  r.Record(5e-10, "{\"i\":2}");
  r.Record(1e-11, "{\"i\":3}");
  r.Finish();
  EXPECT_EQ(r.instances_checked, 4u);
  EXPECT_EQ(r.max_violation, 5e-10);
  EXPECT_EQ(r.worst_instance, "{\"i\":1}");
  EXPECT_TRUE(r.passed);
  r.Record(std::nan(""), "{\"i\":4}");
  r.Finish();
  EXPECT_EQ(r.max_violation, kInf);
  EXPECT_FALSE(r.passed);
}

TEST(MaximalEqualsCapacityTest, BscIdentityAffine) {
  const Channel bsc = Channel::BinarySymmetric(0.1);
  const FMeanSpec affine = FMeanSpec::Affine();
  const VerificationResult r =
      VerifyMaximalEqualsCapacity(bsc, GainSpec::Identity(), affine, affine, {}, {});
  EXPECT_TRUE(r.passed) << r.max_violation;
  EXPECT_NEAR(r.details.at("lhs"), std::log(1.8), 1e-9);
  EXPECT_NEAR(r.details.at("rhs"), std::log(1.8), 1e-9);
}

TEST(MaximalEqualsCapacityTest, NiChannelBothZero) {
  const FMeanSpec affine = FMeanSpec::Affine();
  const VerificationResult r =
      VerifyMaximalEqualsCapacity(NiChannel(3), GainSpec::Identity(), affine, affine, {}, {});
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.details.at("lhs"), 0.0, 1e-12);
  EXPECT_NEAR(r.details.at("rhs"), 0.0, 1e-12);
}

TEST(MaximalEqualsCapacityTest, SimplexGainOrderTwo) {
  std::mt19937_64 rng(21);
  const FMeanSpec f2 = FAlpha(AlphaOrder::Of(2.0));
  for (int i = 0; i < 3; ++i) {
    const Channel c = RandomChannel(2, 2, rng);
    const VerificationResult r =
        VerifyMaximalEqualsCapacity(c, GainSpec::Simplex(), f2, f2, {}, {});
    EXPECT_TRUE(r.passed) << r.worst_instance;
    EXPECT_LE(r.details.at("lhs"), r.details.at("rhs") + 1e-9);
  }
}

TEST(MaximalEqualsCapacityTest, RejectsOversizedProblems) {
  const FMeanSpec affine = FMeanSpec::Affine();
  EXPECT_THROW(VerifyMaximalEqualsCapacity(Channel::Identity(4), GainSpec::Identity(), affine,
                                           affine, {}, {}),
               InvalidArgument);
  MaximalLeakageSizes sizes;
  sizes.max_u = 5;
  EXPECT_THROW(VerifyMaximalEqualsCapacity(Channel::Identity(2), GainSpec::Identity(), affine,
                                           affine, sizes, {}),
               InvalidArgument);
  EXPECT_THROW(VerifyMaximalEqualsCapacity(Channel::Identity(2),
                                           GainSpec::FiniteMatrix({{1.0, 0.0}}), affine,
                                           affine, {}, {}),
               InvalidArgument);
}

class AxiomSuiteTest : public ::testing::TestWithParam<int> {};

TEST_P(AxiomSuiteTest, ValidPairsPass) {
  const std::vector<AxiomSuiteConfig> configs = {
      {FMeanSpec::Affine(), FMeanSpec::Affine(), AxiomGainFamily::kIdentity},
      {FMeanSpec::Affine(), FMeanSpec::Affine(), AxiomGainFamily::kRandomMatrix},
      {FAlpha(AlphaOrder::Of(0.5)), FAlpha(AlphaOrder::Of(0.5)), AxiomGainFamily::kSimplex},
      {FAlpha(AlphaOrder::Of(2.0)), FAlpha(AlphaOrder::Of(2.0)), AxiomGainFamily::kSimplex},
      {FAlpha(AlphaOrder::Infinity()), FAlpha(AlphaOrder::Infinity()),
       AxiomGainFamily::kSimplex},
  };
  for (const AxiomSuiteConfig& cfg : configs) {
    const auto results = RunAxiomSuite(cfg, 100, GetParam());
    ASSERT_EQ(results.size(), 7u);
    for (const VerificationResult& r : results) {
      EXPECT_EQ(r.instances_checked, 100u) << r.theorem_id;
      EXPECT_TRUE(r.passed) << cfg.f.name() << " " << r.theorem_id << " " << r.max_violation
                            << " " << r.worst_instance;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, AxiomSuiteTest, ::testing::Values(1, 7));

TEST(AxiomSuiteTest, OrderOfResults) {
  const auto results = RunAxiomSuite(
      {FMeanSpec::Affine(), FMeanSpec::Affine(), AxiomGainFamily::kIdentity}, 5, 1);
  const std::vector<std::string> ids = {"NI", "MONO", "DPI-avg", "DPI-max",
                                        "CVX-prior", "QCVX-prior", "AVG<=MAX"};
  ASSERT_EQ(results.size(), ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_NE(results[i].theorem_id.find(ids[i]), std::string::npos) << results[i].theorem_id;
  }
}

// A convex decreasing h != f breaks monotonicity; the suite must notice.
TEST(AxiomSuiteTest, NegativeControlFails) {
  AxiomSuiteConfig cfg(FAlpha(AlphaOrder::Of(2.0)), FMeanSpec::Power(-4.0),
                       AxiomGainFamily::kSimplex);
  cfg.validate_h = false;
  const auto results = RunAxiomSuite(cfg, 200, 7);
  EXPECT_FALSE(results[1].passed);
  EXPECT_FALSE(results[2].passed);
}

TEST(AxiomSuiteTest, InvalidHIsRejectedWhenValidating) {
  const AxiomSuiteConfig cfg(FAlpha(AlphaOrder::Of(2.0)), FMeanSpec::Power(-4.0),
                             AxiomGainFamily::kSimplex);
  EXPECT_THROW(RunAxiomSuite(cfg, 10, 7), InvalidArgument);
}

TEST(AxiomSuiteTest, Reproducible) {
  const AxiomSuiteConfig cfg(FAlpha(AlphaOrder::Of(2.0)), FAlpha(AlphaOrder::Of(2.0)),
                             AxiomGainFamily::kSimplex);
  const auto a = RunAxiomSuite(cfg, 50, 3);
  const auto b = RunAxiomSuite(cfg, 50, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].max_violation, b[i].max_violation);
    EXPECT_EQ(a[i].worst_instance, b[i].worst_instance);
  }
}

TEST(DualFormulaTest, AllPass) {
  const auto results = VerifyDualFormulas(200, 5);
  ASSERT_EQ(results.size(), 6u);
  for (const VerificationResult& r : results) {
    EXPECT_TRUE(r.passed) << r.theorem_id << " " << r.max_violation << " " << r.worst_instance;
  }
}

TEST(DualFormulaTest, Reproducible) {
  DualFormulaConfig cfg;
  cfg.grid_instances = 5;
  const auto a = VerifyDualFormulas(30, 9, cfg);
  const auto b = VerifyDualFormulas(30, 9, cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].max_violation, b[i].max_violation);
  }
}

TEST(DescribeInstanceTest, ProducesJsonObject) {
  const Channel c = Channel::Identity(2);
  const std::string s = DescribeInstance({0.25, 0.75}, &c, {{"alpha", "2"}});
  EXPECT_EQ(s.front(), '{');
  EXPECT_EQ(s.back(), '}');
  EXPECT_NE(s.find("0.25"), std::string::npos);
  EXPECT_NE(s.find("alpha"), std::string::npos);
}

}  // namespace
}  // namespace qifkit
