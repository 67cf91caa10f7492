#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sampling.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/forms.hpp"

namespace {

using ff::BundleTangent;
using ff::FrameCoords;
using ff::LowerTensor;
using ff::TorsionType;

LowerTensor scalar(int k, double v) { return LowerTensor(1, k, std::vector<double>{v}); }

std::vector<std::string> sorted_terms(const TorsionType& t)
{
    std::vector<std::string> out;
    for (const auto& w : ff::torsion_wedge_terms(t)) out.push_back(ff::format_wedge_term(w));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

/// Unit tangent along the base coordinate i of the order-r bundle.
BundleTangent base_direction(int n, int r, int i)
{
    BundleTangent x = BundleTangent::zero(n, r);
    x.base[static_cast<std::size_t>(i)] = 1.0;
    return x;
}

TEST(CanonicalForm, ScalarOrderTwoExample)
{
    const FrameCoords u{1, 2, "", {0.0}, {scalar(1, 2.0), scalar(2, 6.0)}};
    const ff::AlgebraVector theta = ff::canonical_form(u, base_direction(1, 2, 0));
    EXPECT_DOUBLE_EQ(theta.base[0], 0.5);
    EXPECT_DOUBLE_EQ(theta.tensors[0][0], -1.5);
}

TEST(CanonicalForm, MatchesWrittenOutOrderTwoFormula)
{
    ff::verify::Sampler rng(61);
    for (int n = 1; n <= 3; ++n) {
        const FrameCoords u = rng.frame(n, 2);
        const BundleTangent x = rng.tangent(n, 2);
        EXPECT_LE(ff::max_abs_diff(ff::canonical_form(u, x), ff::verify::canonical_form_r2(u, x)), 1e-10);
    }
}

TEST(CanonicalForm, IsEquivariant)
{
    // theta(R_a* X) at u.a equals Ad_{a^{-1}} theta(X) at u.
    ff::verify::Sampler rng(67);
    for (int r = 2; r <= 4; ++r) {
        const FrameCoords u = rng.frame(2, r);
        const BundleTangent x = rng.tangent(2, r);
        const ff::JetGroupElement a = rng.jet(2, r);
        const ff::AlgebraVector lhs = ff::canonical_form(ff::right_action(u, a), ff::right_action_pushforward(u, x, a));
        const ff::AlgebraVector rhs = ff::adjoint_action(a, ff::canonical_form(u, x));
        EXPECT_LE(ff::max_abs_diff(lhs, rhs), 1e-8) << "r=" << r;
    }
}

TEST(CanonicalForm, ReproducesFundamentalVectorGenerators)
{
    ff::verify::Sampler rng(71);
    const FrameCoords u = rng.frame(2, 3);
    const ff::JetAlgebraElement x = rng.algebra_element(2, 3);
    const ff::AlgebraVector theta = ff::canonical_form(u, ff::fundamental_vector(u, x));
    for (double b : theta.base) EXPECT_LE(std::abs(b), 1e-12);
    for (std::size_t q = 0; q < theta.tensors.size(); ++q) EXPECT_LE(ff::max_abs_diff(theta.tensors[q], x.tensors[q]), 1e-10);
}

TEST(CanonicalForm, SingularFrameThrows)
{
    const FrameCoords u{2, 2, "", {0.0, 0.0}, {LowerTensor(2, 1), LowerTensor(2, 2)}};
    EXPECT_THROW((void)ff::canonical_form(u, BundleTangent::zero(2, 2)), ff::SingularError);
}

TEST(ExteriorDerivative, IsAntisymmetric)
{
    ff::verify::Sampler rng(73);
    const ff::CanonicalForm form(rng.frame(2, 3));
    const BundleTangent x = rng.tangent(2, 3);
    const BundleTangent y = rng.tangent(2, 3);
    const Eigen::VectorXd xy = form.exterior_derivative(x, y).flatten();
    const Eigen::VectorXd yx = form.exterior_derivative(y, x).flatten();
    EXPECT_EQ((xy + yx).cwiseAbs().maxCoeff(), 0.0);
}

TEST(TorsionTypes, CountsAreFactorials)
{
    EXPECT_EQ(ff::enumerate_torsion_types(1).size(), 1U);
    EXPECT_EQ(ff::enumerate_torsion_types(2).size(), 2U);
    EXPECT_EQ(ff::enumerate_torsion_types(3).size(), 6U);
    EXPECT_EQ(ff::enumerate_torsion_types(4).size(), 24U);
    EXPECT_EQ(ff::enumerate_torsion_types(3).front().label(), "3(1,1)");
}

TEST(TorsionTypes, InvalidTupleIsRejected)
{
    EXPECT_THROW((TorsionType{3, {3, 1}}.validate()), ff::DomainError);
    EXPECT_THROW((TorsionType{2, {1, 1}}.validate()), ff::DomainError);
}

TEST(TorsionTerms, OrderTwoLists)
{
    EXPECT_EQ(sorted_terms({2, {1}}), sorted({"theta^i_{l j1} ^ theta^l", "theta^i_{l} ^ theta^l_{j1}"}));
    EXPECT_EQ(sorted_terms({2, {2}}), sorted({"theta^i_{j1 l} ^ theta^l", "theta^i_{l} ^ theta^l_{j1}"}));
}

TEST(TorsionTerms, OrderThreeLists)
{
    EXPECT_EQ(sorted_terms({3, {1, 3}}), sorted({"theta^i_{l} ^ theta^l_{j1 j2}", "theta^i_{l j1} ^ theta^l_{j2}",
                                                  "theta^i_{l j2} ^ theta^l_{j1}", "theta^i_{j1 j2 l} ^ theta^l"}));
    EXPECT_EQ(sorted_terms({3, {2, 2}}), sorted({"theta^i_{l} ^ theta^l_{j1 j2}", "theta^i_{j1 l} ^ theta^l_{j2}",
                                                  "theta^i_{j2 l} ^ theta^l_{j1}", "theta^i_{j1 l j2} ^ theta^l"}));
}

TEST(Torsion, FirstTorsionDetectsAsymmetricSecondOrderPart)
{
    LowerTensor h2(2, 2);
    h2.at(0, {0, 1}) = 5.0;
    h2.at(0, {1, 0}) = 3.0;
    const FrameCoords u{2, 2, "", {0.0, 0.0}, {ff::identity_tensor(2), h2}};
    const LowerTensor t = ff::torsion(u, {1, {}}, base_direction(2, 2, 0), base_direction(2, 2, 1));
    EXPECT_NEAR(std::abs(t[0]), 2.0, 1e-14);
    EXPECT_NEAR(t[1], 0.0, 1e-14);
}

TEST(Torsion, FirstTorsionMatchesOracle)
{
    ff::verify::Sampler rng(79);
    const FrameCoords u = rng.frame(2, 2);
    const BundleTangent x = rng.tangent(2, 2);
    const BundleTangent y = rng.tangent(2, 2);
    const LowerTensor t = ff::torsion(u, {1, {}}, x, y);
    const std::vector<double> expected = ff::verify::first_torsion_oracle(u, x, y);
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(t[i], expected[i], 1e-8);
}

TEST(Torsion, OrderAboveFrameOrderIsRejected)
{
    ff::verify::Sampler rng(83);
    EXPECT_THROW((void)ff::torsion(rng.frame(2, 2), {2, {1}}, rng.tangent(2, 2), rng.tangent(2, 2)), ff::DomainError);
}

TEST(Torsion, AllVanishOnClassicalFrames)
{
    ff::verify::Sampler rng(89);
    const FrameCoords u = rng.frame(2, 4, true);
    const ff::TorsionSweep sweep = ff::torsion_sweep(u, ff::symmetric_coordinate_directions(2, 4));
    EXPECT_LE(sweep.max, 1e-9 * std::max(1.0, sweep.scale));
}

TEST(StructuralEquations, VanishOnEpsilonImages)
{
    ff::verify::Sampler rng(97);
    const ff::JetGroupElement a = ff::epsilon_embed(rng.classical_jet(2, 4));
    const FrameCoords u{2, 4, "", rng.vector(2), a.tensors()};
    const auto dirs = ff::symmetric_coordinate_directions(2, 4);
    for (int k = 1; k <= 3; ++k) {
        const LowerTensor res = ff::structural_residual(u, k, dirs[1], dirs[static_cast<std::size_t>(dirs.size() - 1)]);
        EXPECT_LE(ff::max_abs(res), 1e-7) << "k=" << k;
    }
}

TEST(StructuralEquations, RejectNonClassicalFrames)
{
    ff::verify::Sampler rng(101);
    const FrameCoords u = rng.frame(2, 3);
    EXPECT_THROW((void)ff::structural_residual(u, 1, rng.tangent(2, 3), rng.tangent(2, 3)), ff::DomainError);
}

TEST(Curvature, MatchesFourTermFormula)
{
    ff::verify::Sampler rng(103);
    const FrameCoords u = rng.frame(2, 2);
    const BundleTangent x = rng.tangent(2, 2);
    const BundleTangent y = rng.tangent(2, 2);
    EXPECT_LE(ff::max_abs_diff(ff::curvature(u, x, y), ff::verify::curvature_oracle(u, x, y)), 1e-8);
}

TEST(Realizability, ClassicalFrameIsRealizable)
{
    ff::verify::Sampler rng(107);
    const ff::RealizabilityReport report = ff::realizability_check(rng.frame(3, 3, true));
    EXPECT_TRUE(report.realizable);
    EXPECT_TRUE(report.torsion_verdict);
    EXPECT_TRUE(report.symmetry_verdict);
}

TEST(Realizability, PerturbedFrameIsNotRealizable)
{
    ff::verify::Sampler rng(109);
    FrameCoords u = rng.frame(2, 3, true);
    u.tensors[2].at(1, {0, 1, 1}) += 1e-3;
    const ff::RealizabilityReport report = ff::realizability_check(u);
    EXPECT_FALSE(report.realizable);
    EXPECT_FALSE(report.torsion_verdict);
    EXPECT_EQ(report.asymmetry_order, 3);
    EXPECT_NEAR(report.max_asymmetry, 1e-3, 1e-12);
}

TEST(Schwarzian, VanishesOnMoebiusJets)
{
    ff::verify::Sampler rng(113);
    for (int t = 0; t < 20; ++t) {
        const double x = rng.uniform(-1.0, 1.0);
        const ff::TransitionJet jet = ff::transition_jet(rng.moebius(x), std::vector{x}, 3);
        EXPECT_LE(std::abs(ff::schwarzian(jet.D[0][0], jet.D[1][0], jet.D[2][0])), 1e-10);
    }
}

TEST(Schwarzian, CubicExampleAndZeroDerivative)
{
    // f = x + x^3 at 0: f' = 1, f'' = 0, f''' = 6.
    EXPECT_DOUBLE_EQ(ff::schwarzian(1.0, 0.0, 6.0), 6.0);
    EXPECT_DOUBLE_EQ(ff::schwarzian(2.0, 4.0, 0.0), ff::verify::schwarzian_oracle(2.0, 4.0, 0.0));
    EXPECT_THROW((void)ff::schwarzian(0.0, 1.0, 1.0), ff::DomainError);
}

}  // namespace
