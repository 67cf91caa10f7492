#include <vector>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/foliation.hpp"

namespace {

using ff::FormMatrix;
using ff::LowerTensor;
using ff::Polynomial;

double max_entry(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

TEST(PolyOneForm, ExteriorDerivativeOfYDx)
{
    // d(y dx) = dy ^ dx, which is -1 on (e_x, e_y).
    const ff::PolyOneForm f = ff::PolyOneForm::basis(2, 0, Polynomial::variable(2, 1));
    const std::vector<double> p{0.3, 0.4};
    EXPECT_DOUBLE_EQ(f.exterior_derivative(p, std::vector{1.0, 0.0}, std::vector{0.0, 1.0}), -1.0);
    EXPECT_DOUBLE_EQ(f.evaluate(p, std::vector{2.0, 5.0}), 0.8);
}

TEST(FoliationAtlas, RejectsTransverseDependenceOnLeaves)
{
    ff::FoliationAtlas atlas(2, 1);
    atlas.add_chart("A");
    atlas.add_chart("B");
    const Polynomial x = Polynomial::variable(2, 0);
    const Polynomial y = Polynomial::variable(2, 1);
    EXPECT_NO_THROW(atlas.add_transition({"A", "B", {x + y * y, 2.0 * y}}));
    EXPECT_THROW(atlas.add_transition({"B", "A", {x, y + x}}), ff::DomainError);
    EXPECT_TRUE(ff::is_foliated_map({x * y, y * y}, 1));
    EXPECT_FALSE(ff::is_foliated_map({x, x * y}, 1));
}

TEST(Bott, DyOnlyFormsVanishOnLeavesExactly)
{
    ff::verify::Sampler rng(223);
    const int m = 3;
    const int q = 2;
    const FormMatrix theta = ff::bott_form(rng.field(q, 2, m, 2));
    const Eigen::MatrixXd r = ff::bott_residual(theta, rng.vector(m), rng.vector(m - q));
    EXPECT_EQ(r.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Bott, LeafVectorOfWrongLengthIsRejected)
{
    ff::verify::Sampler rng(227);
    const FormMatrix theta = ff::bott_form(rng.field(1, 2, 2, 1));
    EXPECT_THROW((void)ff::bott_residual(theta, std::vector{0.0, 0.0}, std::vector{1.0, 1.0}), ff::ShapeError);
}

TEST(TransversePushforward, MoebiusHolonomyExample)
{
    // gamma = 1/y at y = 2 sends the base to 0.5 and scales h_1 by -0.25.
    const ff::FrameCoords u{1, 2, "U", {2.0}, {LowerTensor(1, 1, std::vector<double>{3.0}), LowerTensor(1, 2, std::vector<double>{0.0})}};
    const ff::FrameCoords v = ff::transverse_pushforward(u, ff::SmoothMapSpec::moebius(0, 1, 1, 0), "V");
    EXPECT_DOUBLE_EQ(v.base[0], 0.5);
    EXPECT_DOUBLE_EQ(v.tensors[0][0], -0.75);
    EXPECT_DOUBLE_EQ(v.tensors[1][0], 0.25 * 9.0);
    EXPECT_EQ(v.chart, "V");
}

TEST(TransversePushforward, IsCocycleAlongComposites)
{
    ff::verify::Sampler rng(229);
    const ff::FrameCoords u = rng.frame(2, 3);
    const ff::SmoothMapSpec f = rng.polynomial_map(2, u.base);
    const ff::SmoothMapSpec g = rng.polynomial_map(2, f.evaluate(u.base));
    const ff::FrameCoords direct = ff::transverse_pushforward(u, ff::SmoothMapSpec::composite({f, g}));
    const ff::FrameCoords stepwise = ff::transverse_pushforward(ff::transverse_pushforward(u, f), g);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(ff::max_abs_diff(direct.tensors[k], stepwise.tensors[k]), 1e-9);
}

TEST(DeformationEquation, WorkedCodimensionTwoExample)
{
    // omega = (dy1, dy2), theta = 0, omegadot = (y2 dy1, 0).
    const int m = 2;
    const FormMatrix omega = ff::transverse_coframe(m, 2);
    const FormMatrix theta(2, 2, m);
    FormMatrix omega_dot(2, 1, m);
    omega_dot(0, 0).coefficient(0) = Polynomial::variable(m, 1);
    FormMatrix valid(2, 2, m);
    valid(0, 0).coefficient(1) = Polynomial::constant(m, -1.0);
    FormMatrix invalid(2, 2, m);
    invalid(0, 1).coefficient(1) = Polynomial::constant(m, -1.0);
    const std::vector<double> p{0.3, -0.7};
    const std::vector<double> e1{1.0, 0.0};
    const std::vector<double> e2{0.0, 1.0};
    EXPECT_EQ(max_entry(ff::deformation_equation_residual(omega, theta, omega_dot, valid, p, e1, e2)), 0.0);
    EXPECT_GT(max_entry(ff::deformation_equation_residual(omega, theta, omega_dot, invalid, p, e1, e2)), 1e-3);
}

TEST(DeformationEquation, ShapeMismatchIsRejected)
{
    const FormMatrix omega = ff::transverse_coframe(2, 2);
    const FormMatrix square(2, 2, 2);
    const std::vector<double> p{0.0, 0.0};
    EXPECT_THROW((void)ff::deformation_equation_residual(omega, square, square, square, p, p, p), ff::ShapeError);
}

TEST(TransversePairLaw, HoldsForTransportedConstantData)
{
    // On y -> 2y the Christoffel law gives hatGamma = Gamma / 2 and mu transforms the same way.
    const int m = 2;
    const Polynomial x = Polynomial::variable(m, 0);
    const Polynomial y = Polynomial::variable(m, 1);
    const ff::FoliationTransition t{"A", "B", {x + y, 2.0 * y}};
    const auto constant = [&](double v) { return ff::PolynomialTensorField::constant(LowerTensor(1, 2, std::vector<double>{v}), m); };
    const ff::PairLawResidual ok = ff::transverse_pair_law_residual(constant(3.0), constant(1.0), constant(1.5), constant(0.5), t, 1,
                                                                    std::vector{0.1, 0.2});
    EXPECT_LE(ok.componentwise, 1e-15);
    EXPECT_LE(ok.gauge, 1e-15);
    const ff::PairLawResidual bad = ff::transverse_pair_law_residual(constant(3.0), constant(1.0), constant(1.5), constant(0.7), t, 1,
                                                                     std::vector{0.1, 0.2});
    EXPECT_GT(bad.componentwise, 0.1);
}

}  // namespace
