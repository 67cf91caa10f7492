#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sampling.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/jetgroup.hpp"
#include "formalframes/linalg.hpp"

namespace {

using ff::JetGroupElement;
using ff::LowerTensor;

/// One-dimensional group element from its scalar entries a_1, ..., a_r.
JetGroupElement scalar_jet(const std::vector<double>& a)
{
    std::vector<LowerTensor> ts;
    for (std::size_t k = 0; k < a.size(); ++k) ts.emplace_back(1, static_cast<int>(k) + 1, std::vector<double>(1, a[k]));
    return JetGroupElement(1, static_cast<int>(a.size()), std::move(ts));
}

double entry(const JetGroupElement& a, int k) { return a.tensor(k)[0]; }

TEST(JetIdentity, HasIdentityMatrixAndZeroHigherTensors)
{
    const JetGroupElement e = ff::jet_identity(2, 3);
    EXPECT_EQ(ff::to_matrix(e.tensor(1)), Eigen::MatrixXd::Identity(2, 2));
    EXPECT_DOUBLE_EQ(ff::max_abs(e.tensor(2)), 0.0);
    EXPECT_DOUBLE_EQ(ff::max_abs(e.tensor(3)), 0.0);
}

TEST(JetCompose, OrderTwoScalarExample)
{
    const JetGroupElement ab = ff::jet_compose(scalar_jet({2.0, 3.0}), scalar_jet({5.0, 7.0}));
    EXPECT_DOUBLE_EQ(entry(ab, 1), 10.0);
    EXPECT_DOUBLE_EQ(entry(ab, 2), 89.0);
}

TEST(JetCompose, OrderThreeScalarExample)
{
    const JetGroupElement ab = ff::jet_compose(scalar_jet({1.0, 1.0, 1.0}), scalar_jet({1.0, 1.0, 1.0}));
    EXPECT_DOUBLE_EQ(entry(ab, 1), 1.0);
    EXPECT_DOUBLE_EQ(entry(ab, 2), 2.0);
    EXPECT_DOUBLE_EQ(entry(ab, 3), 5.0);
}

TEST(JetCompose, ProductTermCountsAreBellNumbers)
{
    const std::vector<std::size_t> bell{1, 2, 5, 15};
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(ff::product_terms(k).size(), bell[static_cast<std::size_t>(k - 1)]);
}

TEST(JetCompose, MatchesBundleMapOracle)
{
    ff::verify::Sampler rng(11);
    for (int n = 1; n <= 2; ++n) {
        for (int r = 2; r <= 3; ++r) {
            const JetGroupElement a = rng.jet(n, r);
            const JetGroupElement b = rng.jet(n, r);
            const auto expected = ff::verify::product_oracle(a.tensors(), b.tensors());
            const JetGroupElement ab = ff::jet_compose(a, b);
            for (int k = 1; k <= r; ++k) EXPECT_LE(ff::max_abs_diff(ab.tensor(k), expected[static_cast<std::size_t>(k - 1)]), 1e-10);
        }
    }
}

TEST(JetCompose, RejectsMismatchedShapes)
{
    EXPECT_THROW((void)ff::jet_compose(ff::jet_identity(2, 2), ff::jet_identity(2, 3)), ff::ShapeError);
    EXPECT_THROW((void)ff::jet_compose(ff::jet_identity(1, 2), ff::jet_identity(2, 2)), ff::ShapeError);
}

TEST(JetInverse, OrderTwoScalarExample)
{
    const JetGroupElement inv = ff::jet_inverse(scalar_jet({2.0, 3.0}));
    EXPECT_DOUBLE_EQ(entry(inv, 1), 0.5);
    EXPECT_DOUBLE_EQ(entry(inv, 2), -0.375);
}

TEST(JetInverse, SingularLeadingTensorThrows)
{
    std::vector<LowerTensor> ts{LowerTensor(2, 1), LowerTensor(2, 2)};
    EXPECT_THROW(JetGroupElement(2, 2, ts), ff::SingularError);
}

TEST(JetInverse, IdentityIsItsOwnInverse)
{
    const JetGroupElement e = ff::jet_identity(3, 4);
    const JetGroupElement inv = ff::jet_inverse(e);
    for (int k = 1; k <= 4; ++k) EXPECT_DOUBLE_EQ(ff::max_abs_diff(inv.tensor(k), e.tensor(k)), 0.0);
}

TEST(Epsilon, ScalarQuadraticExample)
{
    // f(x) = x + x^2 has (f', f'') = (1, 2) at the origin.
    ff::ClassicalJet c{1, 2, std::nullopt, {LowerTensor(1, 1, std::vector<double>{1.0}), LowerTensor(1, 2, std::vector<double>{2.0})}};
    const JetGroupElement a = ff::epsilon_embed(c);
    EXPECT_DOUBLE_EQ(entry(a, 1), 1.0);
    EXPECT_DOUBLE_EQ(entry(a, 2), 2.0);
}

TEST(Epsilon, RejectsAsymmetricInput)
{
    LowerTensor s2(2, 2);
    s2.at(0, {0, 1}) = 1.0;
    ff::ClassicalJet c{2, 2, std::nullopt, {ff::identity_tensor(2), s2}};
    EXPECT_THROW((void)ff::epsilon_embed(c), ff::DomainError);
}

TEST(Kappa, AveragesOrderTwoExample)
{
    LowerTensor a2(2, 2);
    a2.at(0, {0, 1}) = 4.0;
    a2.at(0, {1, 0}) = 2.0;
    const ff::ClassicalJet c = ff::kappa_project(JetGroupElement(2, 2, {ff::identity_tensor(2), a2}));
    EXPECT_DOUBLE_EQ(c.s[1].at(0, {0, 1}), 3.0);
    EXPECT_DOUBLE_EQ(c.s[1].at(0, {1, 0}), 3.0);
}

TEST(Kappa, IsLeftInverseOfEpsilon)
{
    ff::verify::Sampler rng(13);
    const ff::ClassicalJet c = rng.classical_jet(3, 4);
    const ff::ClassicalJet back = ff::kappa_project(ff::epsilon_embed(c));
    for (std::size_t k = 0; k < c.s.size(); ++k) EXPECT_LE(ff::max_abs_diff(back.s[k], c.s[k]), 1e-15);
}

TEST(Kappa, IsHomomorphismAtOrderTwo)
{
    ff::verify::Sampler rng(17);
    for (int t = 0; t < 20; ++t) {
        const JetGroupElement a = rng.jet(2, 2);
        const JetGroupElement b = rng.jet(2, 2);
        const ff::ClassicalJet lhs = ff::kappa_project(ff::jet_compose(a, b));
        const ff::ClassicalJet rhs = ff::classical_compose(ff::kappa_project(a), ff::kappa_project(b));
        for (std::size_t k = 0; k < 2; ++k) EXPECT_LE(ff::max_abs_diff(lhs.s[k], rhs.s[k]), 1e-12);
    }
}

TEST(Kappa, FailsToBeHomomorphismAtOrderThree)
{
    // a has an antisymmetric order-2 part and b a symmetric one. The order-3
    // product contains a^i_{ab} b^a_{jk} b^b_l and its relabelings; symmetrizing
    // after the product keeps a contribution of the antisymmetric part that the
    // classical product of the symmetrized factors does not see.
    LowerTensor a2(2, 2);
    a2.at(0, {0, 1}) = 1.0;
    a2.at(0, {1, 0}) = -1.0;
    const JetGroupElement a(2, 3, {ff::identity_tensor(2), a2, LowerTensor(2, 3)});
    LowerTensor b2(2, 2);
    b2.at(1, {0, 0}) = 1.0;
    const JetGroupElement b(2, 3, {ff::identity_tensor(2), b2, LowerTensor(2, 3)});
    const ff::ClassicalJet lhs = ff::kappa_project(ff::jet_compose(a, b));
    const ff::ClassicalJet rhs = ff::classical_compose(ff::kappa_project(a), ff::kappa_project(b));
    EXPECT_LE(ff::max_abs_diff(lhs.s[1], rhs.s[1]), 1e-15);
    EXPECT_GT(ff::max_abs_diff(lhs.s[2], rhs.s[2]), 0.1);
}

TEST(IsClassical, ReportsWitness)
{
    LowerTensor a2(2, 2);
    a2.at(0, {0, 1}) = 5.0;
    a2.at(0, {1, 0}) = 3.0;
    const ff::ClassicalCheck check = ff::is_classical(JetGroupElement(2, 2, {ff::identity_tensor(2), a2}), 1e-12);
    EXPECT_FALSE(check.classical);
    EXPECT_EQ(check.order, 2);
    EXPECT_DOUBLE_EQ(check.witness.gap, 2.0);
    EXPECT_TRUE(ff::is_classical(ff::jet_identity(3, 4), 0.0).classical);
}

TEST(Adjoint, OrderTwoScalarExample)
{
    ff::JetAlgebraElement x{1, 2, {LowerTensor(1, 1, std::vector<double>{1.0}), LowerTensor(1, 2, std::vector<double>{1.0})}};
    const ff::JetAlgebraElement y = ff::adjoint_action(scalar_jet({2.0, 3.0}), x);
    // For n = 1 this is the pullback X(a(x)) / a'(x) = x + x^2 / 4 + O(x^3) of the vector field X.
    EXPECT_NEAR(y.tensors[0][0], 1.0, 1e-15);
    EXPECT_NEAR(y.tensors[1][0], 0.5, 1e-15);
}

TEST(Adjoint, OnAlgebraVectorsMatchesClosedFormAtOrderTwo)
{
    // Base part a_1^{-1} Y^0; the first tensor part is -a_1^{-1} a_2 (a_1^{-1} Y^0) + a_1^{-1} Y^1 a_1,
    // because the conjugated curve is based at the displaced point a^{-1}(t Y^0).
    ff::AlgebraVector y{1, 2, {1.0}, {LowerTensor(1, 1, std::vector<double>{1.0})}};
    const ff::AlgebraVector z = ff::adjoint_action(scalar_jet({2.0, 3.0}), y);
    EXPECT_NEAR(z.base[0], 0.5, 1e-15);
    EXPECT_NEAR(z.tensors[0][0], 0.25, 1e-15);
}

TEST(Adjoint, IdentityActsTrivially)
{
    ff::verify::Sampler rng(19);
    const ff::AlgebraVector y = rng.algebra_vector(3, 4);
    EXPECT_LE(ff::max_abs_diff(ff::adjoint_action(ff::jet_identity(3, 4), y), y), 1e-15);
}

TEST(Adjoint, ComposesContravariantly)
{
    ff::verify::Sampler rng(23);
    const JetGroupElement a = rng.jet(2, 3);
    const JetGroupElement b = rng.jet(2, 3);
    const ff::AlgebraVector y = rng.algebra_vector(2, 3);
    const ff::AlgebraVector lhs = ff::adjoint_action(ff::jet_compose(a, b), y);
    const ff::AlgebraVector rhs = ff::adjoint_action(b, ff::adjoint_action(a, y));
    EXPECT_LE(ff::max_abs_diff(lhs, rhs), 1e-10);
}

}  // namespace
