#include <vector>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "formalframes/connection.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/forms.hpp"
#include "formalframes/garcia.hpp"
#include "formalframes/linalg.hpp"

namespace {

using ff::BundleTangent;
using ff::FrameCoords;
using ff::LowerTensor;

LowerTensor scalar(int k, double v) { return LowerTensor(1, k, std::vector<double>{v}); }

TEST(Garcia, PhiOfScalarFrame)
{
    // z = u_{11} / u_1 in one dimension.
    const FrameCoords u{1, 2, "U", {0.5}, {scalar(1, 2.0), scalar(2, 6.0)}};
    const ff::GarciaCoords g = ff::phi_map(u);
    EXPECT_DOUBLE_EQ(g.x[0], 0.5);
    EXPECT_DOUBLE_EQ(g.y[0], 2.0);
    EXPECT_DOUBLE_EQ(g.z[0], 3.0);
    EXPECT_EQ(g.chart, "U");
}

TEST(Garcia, PsiInvertsPhi)
{
    ff::verify::Sampler rng(127);
    for (int n = 1; n <= 3; ++n) {
        const FrameCoords u = rng.frame(n, 2);
        const FrameCoords back = ff::psi_map(ff::phi_map(u));
        EXPECT_EQ(back.base, u.base);
        EXPECT_LE(ff::max_abs_diff(back.tensors[0], u.tensors[0]), 0.0);
        EXPECT_LE(ff::max_abs_diff(back.tensors[1], u.tensors[1]), 1e-12 * std::max(1.0, ff::max_abs(u.tensors[1])));
    }
}

TEST(Garcia, PhiNeedsOrderTwo)
{
    ff::verify::Sampler rng(131);
    EXPECT_THROW((void)ff::phi_map(rng.frame(2, 3)), ff::ShapeError);
}

TEST(Garcia, ActionMatchesClosedFormula)
{
    ff::verify::Sampler rng(137);
    for (int n = 1; n <= 3; ++n) {
        const ff::GarciaCoords g = ff::phi_map(rng.frame(n, 2));
        EXPECT_LE(ff::garcia_action_discrepancy(g, rng.jet(n, 2)), 1e-12 * 100.0);
        EXPECT_LE(ff::garcia_action_discrepancy(g, ff::gl_inclusion(rng.invertible(n), 2)), 1e-12 * 100.0);
    }
}

TEST(Garcia, PullbackOfFormIsFirstComponent)
{
    ff::verify::Sampler rng(139);
    for (int n = 1; n <= 3; ++n) {
        const FrameCoords u = rng.frame(n, 2);
        const BundleTangent x = rng.tangent(n, 2);
        const LowerTensor lhs = ff::garcia_canonical_form(ff::phi_map(u), ff::phi_pushforward(u, x));
        const LowerTensor rhs = ff::canonical_form(u, x).tensors[0];
        EXPECT_LE(ff::max_abs_diff(lhs, rhs), 1e-8);
    }
}

TEST(Connection, ScalarChristoffelTransform)
{
    // Gamma = 5 under phi = x + x^2 / 2 at 0: -H + D Gamma psi^2 = -1 + 5 = 4.
    const ff::SmoothMapSpec phi = ff::SmoothMapSpec::polynomial({ff::Polynomial::variable(1, 0) + ff::Polynomial::monomial(0.5, {2})});
    const LowerTensor hat = ff::christoffel_transform(scalar(2, 5.0), ff::transition_jet(phi, std::vector{0.0}, 2));
    EXPECT_DOUBLE_EQ(hat[0], 4.0);
}

TEST(Connection, SectionIsEquivariantUnderGl)
{
    ff::verify::Sampler rng(149);
    const LowerTensor gamma = rng.tensor(2, 2);
    const FrameCoords u = rng.frame(2, 1);
    const Eigen::MatrixXd g = rng.invertible(2);
    const FrameCoords lhs = ff::connection_section(gamma, ff::right_action(u, ff::gl_inclusion(g, 1)));
    const FrameCoords rhs = ff::right_action(ff::connection_section(gamma, u), ff::gl_inclusion(g, 2));
    for (std::size_t q = 0; q < 2; ++q) EXPECT_LE(ff::max_abs_diff(lhs.tensors[q], rhs.tensors[q]), 1e-10);
}

TEST(Connection, SectionsAgreeAcrossCharts)
{
    ff::verify::Sampler rng(151);
    const std::vector<double> p{0.1, 0.3};
    const LowerTensor gamma = rng.tensor(2, 2);
    const ff::SmoothMapSpec phi = rng.polynomial_map(2, p);
    const ff::TransitionJet t = ff::transition_jet(phi, p, 2);
    const FrameCoords u = ff::identity_frame(2, 1, p, "U");
    const FrameCoords lhs = ff::change_chart(ff::connection_section(gamma, u), t, "V");
    const FrameCoords rhs = ff::connection_section(ff::christoffel_transform(gamma, t), ff::change_chart(u, t, "V"));
    for (std::size_t q = 0; q < 2; ++q) EXPECT_LE(ff::max_abs_diff(lhs.tensors[q], rhs.tensors[q]), 1e-10);
}

TEST(Connection, PulledBackFormHasLocalExpression)
{
    // At h_j = I the pulled-back form is dh^i_j + Gamma^i_{jb} dh^b.
    ff::verify::Sampler rng(157);
    const LowerTensor gamma = rng.tensor(2, 2);
    const ff::ChristoffelField field = ff::ChristoffelField::constant(gamma, "U");
    const FrameCoords u = ff::identity_frame(2, 1, {0.2, -0.4}, "U");
    const BundleTangent x = rng.tangent(2, 1);
    const LowerTensor omega = ff::section_pullback_connection(field, u, x);
    LowerTensor expected = x.tensors[0];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int b = 0; b < 2; ++b) expected.at(i, {j}) += gamma.at(i, {j, b}) * x.base[static_cast<std::size_t>(b)];
        }
    }
    EXPECT_LE(ff::max_abs_diff(omega, expected), 1e-10);
}

TEST(Connection, UnknownChartIsRejected)
{
    const ff::ChristoffelField field = ff::ChristoffelField::constant(LowerTensor(2, 2), "U");
    EXPECT_THROW((void)field.evaluate("V", std::vector{0.0, 0.0}), ff::DomainError);
}

TEST(Connection, SymmetrizeAveragesLowerIndices)
{
    LowerTensor gamma(2, 2);
    gamma.at(1, {0, 1}) = 1.0;
    const LowerTensor s = ff::symmetrize_connection(gamma);
    EXPECT_DOUBLE_EQ(s.at(1, {0, 1}), 0.5);
    EXPECT_DOUBLE_EQ(s.at(1, {1, 0}), 0.5);
}

}  // namespace
