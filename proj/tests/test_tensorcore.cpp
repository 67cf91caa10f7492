#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/taylor.hpp"
#include "formalframes/tensor.hpp"

namespace {

using ff::LowerTensor;

TEST(Symmetrize, AveragesTheTwoLowerSlots)
{
    LowerTensor t(2, 2);
    t.at(0, {0, 1}) = 4.0;
    t.at(0, {1, 0}) = 2.0;
    const LowerTensor s = ff::symmetrize(t);
    EXPECT_DOUBLE_EQ(s.at(0, {0, 1}), 3.0);
    EXPECT_DOUBLE_EQ(s.at(0, {1, 0}), 3.0);
    EXPECT_DOUBLE_EQ(s.at(1, {0, 1}), 0.0);
}

TEST(Symmetrize, FixesSymmetricAndOneDimensionalTensors)
{
    ff::verify::Sampler rng(3);
    const LowerTensor sym = rng.symmetric_tensor(3, 3);
    EXPECT_LE(ff::max_abs_diff(ff::symmetrize(sym), sym), 1e-15);
    const LowerTensor one = rng.tensor(1, 4);
    EXPECT_EQ(ff::symmetrize(one).entries(), one.entries());
}

TEST(Symmetrize, IsIdempotentAndKillsAsymmetry)
{
    ff::verify::Sampler rng(5);
    for (int k = 1; k <= 4; ++k) {
        const LowerTensor t = rng.tensor(3, k);
        const LowerTensor s = ff::symmetrize(t);
        EXPECT_LE(ff::max_abs_diff(ff::symmetrize(s), s), 1e-14);
        EXPECT_LE(ff::max_asymmetry(s), 1e-14);
    }
}

TEST(MaxAsymmetry, ReportsGapAndWitness)
{
    LowerTensor t(2, 2);
    t.at(0, {0, 1}) = 5.0;
    t.at(0, {1, 0}) = 3.0;
    const ff::AsymmetryWitness w = ff::max_asymmetry_witness(t);
    EXPECT_DOUBLE_EQ(w.gap, 2.0);
    EXPECT_EQ(w.upper, 0);
    EXPECT_DOUBLE_EQ(ff::max_asymmetry(ff::symmetrize(t)), 0.0);
    EXPECT_DOUBLE_EQ(ff::max_asymmetry(LowerTensor(1, 3, std::vector<double>{7.0})), 0.0);
}

TEST(Tensor, RejectsWrongEntryCount)
{
    EXPECT_THROW(LowerTensor(2, 2, std::vector<double>(5, 0.0)), ff::ShapeError);
}

TEST(TaylorCompose, SquareOfShiftedVariable)
{
    const ff::TaylorScalar x = ff::TaylorScalar::variable(1, 2, 0);
    const ff::TaylorTuple outer{x * x};
    const ff::TaylorTuple inner{ff::TaylorScalar::variable(1, 2, 0) + 1.0};
    const ff::TaylorTuple out = ff::taylor_compose(outer, inner);
    EXPECT_DOUBLE_EQ(out[0].coeffs()[0], 1.0);
    EXPECT_DOUBLE_EQ(out[0].coeffs()[1], 2.0);
    EXPECT_DOUBLE_EQ(out[0].coeffs()[2], 1.0);
}

TEST(TaylorCompose, ExponentialOfQuadratic)
{
    // exp truncated at order 3 applied to t + t^2.
    const ff::TaylorScalar x = ff::TaylorScalar::variable(1, 3, 0);
    const ff::TaylorTuple outer{x + 0.5 * (x * x) + (1.0 / 6.0) * (x * x * x) + 1.0};
    const ff::TaylorScalar t = ff::TaylorScalar::variable(1, 3, 0);
    const ff::TaylorTuple out = ff::taylor_compose(outer, {t + t * t});
    const std::vector<double> expected{1.0, 1.0, 1.5, 7.0 / 6.0};
    for (int k = 0; k <= 3; ++k) EXPECT_NEAR(out[0].coeffs()[static_cast<std::size_t>(k)], expected[static_cast<std::size_t>(k)], 1e-15);
}

TEST(TaylorCompose, IdentityOuterLeavesInnerUnchanged)
{
    ff::verify::Sampler rng(9);
    const ff::Polynomial p = rng.polynomial(2, 3);
    const ff::TaylorTuple inner{p.taylor_at(std::vector{0.0, 0.0}, 3)};
    ff::TaylorTuple shifted = inner;
    shifted[0] += -shifted[0].constant_term();
    const ff::TaylorTuple out = ff::taylor_compose(ff::taylor_identity(1, 3), shifted);
    for (std::size_t q = 0; q < out[0].coeffs().size(); ++q) EXPECT_NEAR(out[0].coeffs()[q], shifted[0].coeffs()[q], 1e-15);
}

}  // namespace
