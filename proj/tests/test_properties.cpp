#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "suites.hpp"
#include "formalframes/errors.hpp"

namespace {

using ff::verify::SuiteResult;
using ff::verify::VerifyConfig;

/// Every suite at a reduced trial count; kept small so the unit test run stays short.
class SuiteTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesAtReducedTrials)
{
    VerifyConfig config;
    config.seed = 7;
    config.trials = 10;
    config.only = {GetParam()};
    const std::vector<SuiteResult> results = ff::verify::run_verification(config);
    const auto it = std::find_if(results.begin(), results.end(), [&](const SuiteResult& s) { return s.name == config.only.front(); });
    ASSERT_NE(it, results.end());
    const SuiteResult& r = *it;
    EXPECT_GT(r.trials, 0);
    if (r.name == "jetgroup.kappa_homomorphism") {
        // kappa only respects products up to order 2; at order 3 the formal product
        // carries antisymmetric second-order parts into the symmetric third-order part.
        EXPECT_FALSE(r.passed) << r.note;
    } else {
        EXPECT_TRUE(r.passed) << r.name << " worst=" << r.worst << " tol=" << r.tolerance << " " << r.note;
    }
}

std::vector<std::string> all_suites() { return ff::verify::suite_names(); }

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest, ::testing::ValuesIn(all_suites()),
                         [](const ::testing::TestParamInfo<std::string>& info) {
                             std::string s = info.param;
                             for (char& c : s) {
                                 if (c == '.') c = '_';
                             }
                             return s;
                         });

TEST(Verification, KappaHomomorphismHoldsUpToOrderTwo)
{
    VerifyConfig config;
    config.seed = 3;
    config.trials = 20;
    config.r_max = 2;
    config.only = {"jetgroup.kappa_homomorphism"};
    const auto results = ff::verify::run_verification(config);
    ASSERT_EQ(results.size(), 1U);
    EXPECT_TRUE(results.front().passed) << results.front().worst;
}

TEST(Verification, ReportIsDeterministic)
{
    VerifyConfig config;
    config.seed = 11;
    config.trials = 5;
    config.only = {"jetgroup", "bundle"};
    const auto a = ff::verify::verification_report(config, ff::verify::run_verification(config));
    const auto b = ff::verify::verification_report(config, ff::verify::run_verification(config));
    EXPECT_EQ(a.dump(), b.dump());
}

TEST(Verification, SuiteSeedsDoNotDependOnSelection)
{
    VerifyConfig all;
    all.seed = 13;
    all.trials = 5;
    all.only = {"jetgroup"};
    VerifyConfig one = all;
    one.only = {"jetgroup.associativity"};
    const auto many = ff::verify::run_verification(all);
    const auto single = ff::verify::run_verification(one);
    ASSERT_EQ(single.size(), 1U);
    for (const auto& r : many) {
        if (r.name == single.front().name) EXPECT_EQ(r.worst, single.front().worst);
    }
}

TEST(Verification, ToleranceOverrideForcesFailure)
{
    VerifyConfig config;
    config.trials = 5;
    config.rtol = 1e-300;
    config.only = {"jetgroup.bundle_map_oracle"};
    const auto results = ff::verify::run_verification(config);
    ASSERT_EQ(results.size(), 1U);
    EXPECT_FALSE(results.front().passed);
}

TEST(Verification, InvalidConfigIsRejected)
{
    VerifyConfig config;
    config.n_max = 4;
    EXPECT_THROW(config.validate(), ff::DomainError);
    config.n_max = 3;
    config.trials = 0;
    EXPECT_THROW(config.validate(), ff::DomainError);
}

}  // namespace
