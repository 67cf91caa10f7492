#include <vector>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "formalframes/connection.hpp"
#include "formalframes/deform.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/linalg.hpp"

namespace {

using ff::LowerTensor;
using ff::Polynomial;
using ff::TangentAlgebraElement;
using ff::TangentGroupElement;

LowerTensor scalar(int k, double v) { return LowerTensor(1, k, std::vector<double>{v}); }

double max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TangentGroupElement random_tg(ff::verify::Sampler& rng, int n)
{
    return {rng.invertible(n), ff::to_matrix(rng.tensor(n, 1))};
}

TangentAlgebraElement random_algebra(ff::verify::Sampler& rng, int n)
{
    return {ff::to_matrix(rng.tensor(n, 1)), ff::to_matrix(rng.tensor(n, 1))};
}

/// x + x^2 / 2 in one variable.
ff::SmoothMapSpec half_square_map()
{
    return ff::SmoothMapSpec::polynomial({Polynomial::variable(1, 0) + Polynomial::monomial(0.5, {2})});
}

TEST(TangentGroup, MatrixRepresentationIsHomomorphism)
{
    ff::verify::Sampler rng(163);
    for (int n = 1; n <= 3; ++n) {
        const TangentGroupElement p = random_tg(rng, n);
        const TangentGroupElement q = random_tg(rng, n);
        EXPECT_LE(max_diff(ff::tg_matrix(ff::tg_compose(p, q)), ff::tg_matrix(p) * ff::tg_matrix(q)), 1e-10);
        const TangentGroupElement e = ff::tg_compose(p, ff::tg_inverse(p));
        EXPECT_LE(max_diff(ff::tg_matrix(e), Eigen::MatrixXd::Identity(2 * n, 2 * n)), 1e-10);
    }
}

TEST(TangentGroup, SingularBlockIsRejected)
{
    const TangentGroupElement p{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
    EXPECT_THROW(p.validate(), ff::SingularError);
    const TangentGroupElement q{Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(3, 3)};
    EXPECT_THROW(q.validate(), ff::ShapeError);
}

TEST(TangentGroup, BracketAndAdjointMatchMatrices)
{
    ff::verify::Sampler rng(167);
    const TangentAlgebraElement u = random_algebra(rng, 2);
    const TangentAlgebraElement v = random_algebra(rng, 2);
    const Eigen::MatrixXd mu = ff::tg_matrix(u);
    const Eigen::MatrixXd mv = ff::tg_matrix(v);
    EXPECT_LE(max_diff(ff::tg_matrix(ff::tg_bracket(u, v)), mu * mv - mv * mu), 1e-10);
    const TangentGroupElement p = random_tg(rng, 2);
    const Eigen::MatrixXd mp = ff::tg_matrix(p);
    EXPECT_LE(max_diff(ff::tg_matrix(ff::tg_adjoint(p, v)), mp * mv * mp.inverse()), 1e-10);
}

TEST(TangentGroup, AlgebraRoundTripsThroughMatrix)
{
    ff::verify::Sampler rng(173);
    const TangentAlgebraElement u = random_algebra(rng, 3);
    const TangentAlgebraElement back = ff::tg_algebra_from_matrix(ff::tg_matrix(u));
    EXPECT_EQ(back.A, u.A);
    EXPECT_EQ(back.X, u.X);
}

TEST(LiftBlock, WorkedScalarInstance)
{
    // Gamma = 5, phi = x + x^2 / 2 at 0: hatGamma = 4 and the block product equals diag(D phi, D phi).
    const ff::TransitionJet t = ff::transition_jet(half_square_map(), std::vector{0.0}, 2);
    for (double v : {0.0, 1.0, -2.5}) {
        const Eigen::MatrixXd r = ff::lift_block_identity(scalar(2, 5.0), t, std::vector{v});
        EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-15) << "v=" << v;
    }
}

TEST(LiftBlock, VanishesForRandomConnections)
{
    ff::verify::Sampler rng(179);
    for (int n = 1; n <= 3; ++n) {
        const std::vector<double> p = rng.vector(n);
        const ff::TransitionJet t = ff::transition_jet(rng.polynomial_map(n, p), p, 2);
        const Eigen::MatrixXd r = ff::lift_block_identity(rng.tensor(n, 2), t, rng.vector(n));
        EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(T2Transition, ComposesAlongComposites)
{
    ff::verify::Sampler rng(181);
    const std::vector<double> x{0.1, -0.2};
    const ff::SmoothMapSpec f = rng.polynomial_map(2, x);
    const std::vector<double> fx = f.evaluate(x);
    const ff::SmoothMapSpec g = rng.polynomial_map(2, fx);
    const ff::T2Point c{x, rng.vector(2), rng.vector(2), rng.vector(2)};
    const ff::T2Point direct = ff::t2m_transition(c, ff::transition_jet(ff::SmoothMapSpec::composite({f, g}), x, 2));
    const ff::T2Point stepwise = ff::t2m_transition(ff::t2m_transition(c, ff::transition_jet(f, x, 2)), ff::transition_jet(g, fx, 2));
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(direct.x[i], stepwise.x[i], 1e-12);
        EXPECT_NEAR(direct.v[i], stepwise.v[i], 1e-12);
        EXPECT_NEAR(direct.xdot[i], stepwise.xdot[i], 1e-12);
        EXPECT_NEAR(direct.vdot[i], stepwise.vdot[i], 1e-12);
    }
}

TEST(Covariant, ResidualVanishesForPolynomialFields)
{
    ff::verify::Sampler rng(191);
    for (int n = 1; n <= 3; ++n) {
        ff::PolynomialMap field;
        for (int i = 0; i < n; ++i) field.push_back(rng.polynomial(n, 3));
        const std::vector<double> res = ff::covariant_derivative_residual(rng.tensor(n, 2), field, rng.vector(n), rng.vector(n));
        for (double r : res) EXPECT_LE(std::abs(r), 1e-9);
    }
}

TEST(PairLaw, AcceptsTransformedDataAndRejectsPerturbation)
{
    ff::verify::Sampler rng(193);
    const std::vector<double> p{0.2, 0.1};
    const ff::TransitionJet t = ff::transition_jet(rng.polynomial_map(2, p), p, 2);
    const LowerTensor gamma = rng.tensor(2, 2);
    const LowerTensor mu = rng.tensor(2, 2);
    const LowerTensor gamma_hat = ff::christoffel_transform(gamma, t);
    const LowerTensor mu_hat = ff::deformation_transform(mu, t);
    const ff::PairLawResidual ok = ff::pair_law_residual_at(gamma, mu, gamma_hat, mu_hat, t);
    EXPECT_LE(ok.componentwise, 1e-10);
    EXPECT_LE(ok.gauge, 1e-10);
    LowerTensor broken = mu_hat;
    broken[0] += 0.1;
    const ff::PairLawResidual bad = ff::pair_law_residual_at(gamma, mu, gamma_hat, broken, t);
    EXPECT_GT(bad.componentwise, 1e-3);
    EXPECT_GT(bad.gauge, 1e-3);
}

TEST(PairLaw, ConstantPairOnIdentityOverlapIsValid)
{
    ff::verify::Sampler rng(197);
    const LowerTensor gamma = rng.tensor(2, 2);
    const LowerTensor mu = rng.tensor(2, 2);
    ff::DeformationPair pair(2);
    const ff::DeformationChart chart{ff::PolynomialTensorField::constant(gamma, 2), ff::PolynomialTensorField::constant(mu, 2)};
    pair.set_chart("A", chart);
    pair.set_chart("B", chart);
    const std::vector<ff::ChartTransition> transitions{{"A", "B", ff::SmoothMapSpec::identity(2)}};
    const ff::DeformationPairReport report = ff::check_deformation_pair(pair, transitions, {{0.0, 0.0}, {0.5, -0.5}});
    EXPECT_TRUE(report.valid);
    EXPECT_EQ(report.evaluations, 2U);
}

TEST(FrameIso, IsEquivariant)
{
    ff::verify::Sampler rng(199);
    const int n = 2;
    const ff::GarciaPairCoords s{rng.vector(n), ff::from_matrix(rng.invertible(n)), rng.tensor(n, 1), rng.tensor(n, 2), rng.tensor(n, 2)};
    const TangentGroupElement gx = random_tg(rng, n);
    const ff::FramePairCoords lhs = ff::deform_frame_iso(ff::garcia_pair_action(s, gx));
    const ff::FramePairCoords rhs = ff::frame_pair_action(ff::deform_frame_iso(s), gx);
    for (std::size_t q = 0; q < 2; ++q) {
        EXPECT_LE(ff::max_abs_diff(lhs.u.tensors[q], rhs.u.tensors[q]), 1e-10);
        EXPECT_LE(ff::max_abs_diff(lhs.y.tensors[q], rhs.y.tensors[q]), 1e-10);
    }
}

TEST(FrameIso, CanonicalFormsAgree)
{
    ff::verify::Sampler rng(211);
    const int n = 2;
    const ff::GarciaPairCoords s{rng.vector(n), ff::from_matrix(rng.invertible(n)), rng.tensor(n, 1), rng.tensor(n, 2), rng.tensor(n, 2)};
    const ff::GarciaPairTangent ds{rng.vector(n), rng.tensor(n, 1), rng.tensor(n, 1), rng.tensor(n, 2), rng.tensor(n, 2)};
    const TangentAlgebraElement lhs = ff::deform_canonical_form(s, ds);
    const TangentAlgebraElement rhs = ff::frame_pair_canonical_form(ff::deform_frame_iso(s), ff::deform_frame_iso_pushforward(s, ds));
    EXPECT_LE(max_diff(lhs.A, rhs.A), 1e-9);
    EXPECT_LE(max_diff(lhs.X, rhs.X), 1e-9);
}

}  // namespace
