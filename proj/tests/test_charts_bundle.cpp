#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sampling.hpp"
#include "formalframes/bundle.hpp"
#include "formalframes/charts.hpp"
#include "formalframes/errors.hpp"

namespace {

using ff::FrameCoords;
using ff::LowerTensor;
using ff::Polynomial;
using ff::SmoothMapSpec;

LowerTensor scalar(int k, double v) { return LowerTensor(1, k, std::vector<double>{v}); }

/// x + x^2 / 2 in one variable.
SmoothMapSpec half_square_map()
{
    return SmoothMapSpec::polynomial({Polynomial::variable(1, 0) + Polynomial::monomial(0.5, {2})});
}

TEST(TransitionJet, QuadraticMapAtOrigin)
{
    const ff::TransitionJet t = ff::transition_jet(half_square_map(), std::vector{0.0}, 2);
    EXPECT_DOUBLE_EQ(t.value[0], 0.0);
    EXPECT_DOUBLE_EQ(t.D[0][0], 1.0);
    EXPECT_DOUBLE_EQ(t.D[1][0], 1.0);
}

TEST(TransitionJet, MoebiusReciprocalAtTwo)
{
    const ff::TransitionJet t = ff::transition_jet(SmoothMapSpec::moebius(0, 1, 1, 0), std::vector{2.0}, 3);
    EXPECT_DOUBLE_EQ(t.value[0], 0.5);
    EXPECT_DOUBLE_EQ(t.D[0][0], -0.25);
    EXPECT_DOUBLE_EQ(t.D[1][0], 0.25);
    EXPECT_DOUBLE_EQ(t.D[2][0], -0.375);
}

TEST(TransitionJet, MoebiusPoleAndDegenerateMapAreRejected)
{
    EXPECT_THROW((void)SmoothMapSpec::moebius(1, 1, 1, 1), ff::DomainError);
    EXPECT_THROW((void)ff::transition_jet(SmoothMapSpec::moebius(0, 1, 1, 0), std::vector{0.0}, 2), ff::DomainError);
}

TEST(TransitionJet, MatchesSymbolicDerivativesOfRandomPolynomials)
{
    ff::verify::Sampler rng(29);
    for (int n = 1; n <= 3; ++n) {
        const std::vector<double> p = rng.vector(n);
        ff::PolynomialMap inverse;
        const ff::PolynomialMap phi = rng.triangular_map(n, inverse);
        const ff::TransitionJet t = ff::transition_jet(SmoothMapSpec::polynomial(phi), p, 3);
        const auto expected = ff::verify::polynomial_derivatives(phi, p, 3);
        for (int k = 0; k < 3; ++k) {
            EXPECT_LE(ff::max_abs_diff(t.D[static_cast<std::size_t>(k)], expected[static_cast<std::size_t>(k)]), 1e-12);
            EXPECT_LE(ff::max_asymmetry(t.D[static_cast<std::size_t>(k)]), 1e-12);
        }
    }
}

TEST(TransitionJet, CompositeFollowsChainRule)
{
    // The jet of g o f at p is the jet product of the jet of g at f(p) and the jet of f at p.
    ff::verify::Sampler rng(31);
    const std::vector<double> p{0.2, -0.1};
    const SmoothMapSpec f = rng.polynomial_map(2, p);
    const std::vector<double> fp = f.evaluate(p);
    const SmoothMapSpec g = rng.polynomial_map(2, fp);
    const ff::TransitionJet composite = ff::transition_jet(SmoothMapSpec::composite({f, g}), p, 3);
    const ff::JetGroupElement product = ff::jet_compose(ff::jet_of_transition_as_group(ff::transition_jet(g, fp, 3)),
                                                        ff::jet_of_transition_as_group(ff::transition_jet(f, p, 3)));
    for (int k = 1; k <= 3; ++k) EXPECT_LE(ff::max_abs_diff(composite.D[static_cast<std::size_t>(k - 1)], product.tensor(k)), 1e-10);
}

TEST(RightAction, ScalarExample)
{
    const FrameCoords u{1, 2, "U", {1.0}, {scalar(1, 2.0), scalar(2, 3.0)}};
    const ff::JetGroupElement a(1, 2, {scalar(1, 5.0), scalar(2, 7.0)});
    const FrameCoords ua = ff::right_action(u, a);
    EXPECT_DOUBLE_EQ(ua.base[0], 1.0);
    EXPECT_DOUBLE_EQ(ua.tensors[0][0], 10.0);
    EXPECT_DOUBLE_EQ(ua.tensors[1][0], 89.0);
    EXPECT_EQ(ua.chart, "U");
}

TEST(RightAction, IsAssociativeAndUnital)
{
    ff::verify::Sampler rng(37);
    const FrameCoords u = rng.frame(2, 3);
    const ff::JetGroupElement a = rng.jet(2, 3);
    const ff::JetGroupElement b = rng.jet(2, 3);
    const FrameCoords lhs = ff::right_action(ff::right_action(u, a), b);
    const FrameCoords rhs = ff::right_action(u, ff::jet_compose(a, b));
    for (std::size_t q = 0; q < 3; ++q) {
        EXPECT_LE(ff::max_abs_diff(lhs.tensors[q], rhs.tensors[q]), 1e-10);
        EXPECT_LE(ff::max_abs_diff(ff::right_action(u, ff::jet_identity(2, 3)).tensors[q], u.tensors[q]), 1e-15);
    }
}

TEST(RightAction, RejectsMismatchedOrder)
{
    ff::verify::Sampler rng(41);
    EXPECT_THROW((void)ff::right_action(rng.frame(2, 3), rng.jet(2, 2)), ff::ShapeError);
}

TEST(ChangeChart, QuadraticMapExample)
{
    const FrameCoords u{1, 2, "U", {0.0}, {scalar(1, 2.0), scalar(2, 0.0)}};
    const FrameCoords v = ff::change_chart(u, ff::transition_jet(half_square_map(), std::vector{0.0}, 2), "V");
    EXPECT_DOUBLE_EQ(v.base[0], 0.0);
    EXPECT_DOUBLE_EQ(v.tensors[0][0], 2.0);
    EXPECT_DOUBLE_EQ(v.tensors[1][0], 4.0);
    EXPECT_EQ(v.chart, "V");
}

TEST(ChangeChart, RejectsJetAtAnotherPoint)
{
    const FrameCoords u{1, 2, "U", {0.5}, {scalar(1, 2.0), scalar(2, 0.0)}};
    EXPECT_THROW((void)ff::change_chart(u, ff::transition_jet(half_square_map(), std::vector{0.0}, 2)), ff::DomainError);
}

TEST(ChangeChart, CommutesWithRightAction)
{
    ff::verify::Sampler rng(43);
    const FrameCoords u = rng.frame(2, 3);
    const ff::JetGroupElement a = rng.jet(2, 3);
    const ff::TransitionJet t = ff::transition_jet(rng.polynomial_map(2, u.base), u.base, 3);
    const FrameCoords lhs = ff::change_chart(ff::right_action(u, a), t);
    const FrameCoords rhs = ff::right_action(ff::change_chart(u, t), a);
    for (std::size_t q = 0; q < 3; ++q) EXPECT_LE(ff::max_abs_diff(lhs.tensors[q], rhs.tensors[q]), 1e-10);
}

TEST(FrameCoords, SingularFrameIsRejected)
{
    const FrameCoords u{2, 2, "", {0.0, 0.0}, {LowerTensor(2, 1), LowerTensor(2, 2)}};
    EXPECT_THROW(u.validate(), ff::SingularError);
    EXPECT_THROW(ff::TangentIso{u}, ff::SingularError);
}

TEST(TangentIso, ScalarExample)
{
    const FrameCoords u{1, 2, "", {0.0}, {scalar(1, 2.0), scalar(2, 6.0)}};
    const ff::AlgebraVector y{1, 2, {1.0}, {scalar(1, 0.0)}};
    const ff::BundleTangent v = ff::TangentIso(u).apply(y);
    EXPECT_DOUBLE_EQ(v.base[0], 2.0);
    EXPECT_DOUBLE_EQ(v.tensors[0][0], 6.0);
}

TEST(TangentIso, SolveInvertsApply)
{
    ff::verify::Sampler rng(47);
    for (int n = 1; n <= 3; ++n) {
        for (int r = 2; r <= 4; ++r) {
            const FrameCoords u = rng.frame(n, r);
            const ff::TangentIso iso(u);
            const ff::AlgebraVector y = rng.algebra_vector(n, r);
            EXPECT_LE(ff::max_abs_diff(iso.solve(iso.apply(y)), y), 1e-9) << "n=" << n << " r=" << r;
        }
    }
}

TEST(TangentIso, IsLinearInTheFrameTensors)
{
    ff::verify::Sampler rng(53);
    const FrameCoords u = rng.frame(2, 3);
    const FrameCoords w = rng.frame(2, 3);
    const ff::AlgebraVector y = rng.algebra_vector(2, 3);
    std::vector<LowerTensor> sum;
    for (std::size_t q = 0; q < 3; ++q) sum.push_back(u.tensors[q] + w.tensors[q]);
    const Eigen::VectorXd lhs = ff::tangent_map_apply(sum, y).flatten();
    const Eigen::VectorXd rhs = ff::tangent_map_apply(u.tensors, y).flatten() + ff::tangent_map_apply(w.tensors, y).flatten();
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FundamentalVector, MatchesCentralDifferenceOfTheAction)
{
    ff::verify::Sampler rng(59);
    const FrameCoords u = rng.frame(2, 3);
    const ff::JetAlgebraElement x = rng.algebra_element(2, 3);
    const ff::BundleTangent v = ff::fundamental_vector(u, x);
    auto curve = [&](const Eigen::VectorXd& s) {
        std::vector<LowerTensor> ts;
        for (std::size_t q = 0; q < 3; ++q) ts.push_back(ff::jet_identity(2, 3).tensor(static_cast<int>(q) + 1) + s[0] * x.tensors[q]);
        const FrameCoords moved = ff::right_action(u, ff::JetGroupElement(2, 3, ts));
        ff::BundleTangent as_vector{2, 3, moved.base, moved.tensors};
        return as_vector.flatten();
    };
    const Eigen::VectorXd fd = ff::verify::central_difference(curve, Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 1e-4);
    EXPECT_LE((v.flatten() - fd).cwiseAbs().maxCoeff(), 1e-7);
}

}  // namespace
