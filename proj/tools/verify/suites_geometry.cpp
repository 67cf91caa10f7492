#include <cmath>
#include <cstdio>
#include <limits>

#include "oracles.hpp"
#include "suite_support.hpp"
#include "formalframes/connection.hpp"
#include "formalframes/deform.hpp"
#include "formalframes/foliation.hpp"
#include "formalframes/forms.hpp"
#include "formalframes/garcia.hpp"
#include "formalframes/linalg.hpp"

namespace ff::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double matrix_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) return kInf;
    const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

double frame_diff(const FrameCoords& a, const FrameCoords& b)
{
    return std::max(relative_diff(a.base, b.base), relative_diff(a.tensors, b.tensors));
}

double tangent_algebra_diff(const TangentAlgebraElement& a, const TangentAlgebraElement& b)
{
    return std::max(matrix_diff(a.A, b.A), matrix_diff(a.X, b.X));
}

LowerTensor gl_tensor(Sampler& rng, int n) { return from_matrix(rng.invertible(n)); }

/// GL_n element g viewed in the order-r jet group as (g, 0, ..., 0).
JetGroupElement linear_jet(const LowerTensor& g, int r)
{
    std::vector<LowerTensor> ts{g};
    for (int k = 2; k <= r; ++k) ts.emplace_back(g.dim(), k);
    return JetGroupElement(g.dim(), r, std::move(ts));
}

GarciaCoords random_garcia(Sampler& rng, int n)
{
    return GarciaCoords{rng.vector(n), gl_tensor(rng, n), rng.tensor(n, 2, -1.0, 1.0), ""};
}

FrameCoords first_order_frame(Sampler& rng, int n, const std::string& chart)
{
    FrameCoords u = rng.frame(n, 1);
    u.chart = chart;
    return u;
}

ChristoffelField random_christoffel(Sampler& rng, int n, const std::string& chart)
{
    ChristoffelField gamma(n);
    gamma.set_chart(chart, rng.field(n, 2, n, 2));
    return gamma;
}

TangentGroupElement random_tg(Sampler& rng, int n) { return {rng.invertible(n), to_matrix(rng.tensor(n, 1, -1.0, 1.0))}; }

TangentAlgebraElement random_tg_algebra(Sampler& rng, int n)
{
    return {to_matrix(rng.tensor(n, 1, -1.0, 1.0)), to_matrix(rng.tensor(n, 1, -1.0, 1.0))};
}

GarciaPairCoords random_garcia_pair(Sampler& rng, int n)
{
    return GarciaPairCoords{rng.vector(n), gl_tensor(rng, n), rng.tensor(n, 1, -1.0, 1.0), rng.tensor(n, 2, -1.0, 1.0),
                            rng.tensor(n, 2, -1.0, 1.0)};
}

GarciaPairTangent random_garcia_pair_tangent(Sampler& rng, int n)
{
    return GarciaPairTangent{rng.vector(n), rng.tensor(n, 1, -1.0, 1.0), rng.tensor(n, 1, -1.0, 1.0), rng.tensor(n, 2, -1.0, 1.0),
                             rng.tensor(n, 2, -1.0, 1.0)};
}

/// A polynomial in q variables rewritten in the last q of m variables.
Polynomial transverse_lift(const Polynomial& p, int m)
{
    const int q = p.vars();
    PolynomialMap inner;
    for (int k = 0; k < q; ++k) inner.push_back(Polynomial::variable(m, m - q + k));
    return p.compose(inner);
}

PolynomialTensorField transverse_lift(const PolynomialTensorField& f, int m)
{
    std::vector<Polynomial> entries;
    for (const auto& e : f.entries()) entries.push_back(transverse_lift(e, m));
    return PolynomialTensorField(f.dim(), f.order(), m, std::move(entries));
}

// ---------------------------------------------------------------- garcia

SuiteOutcome garcia_inverse_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            out.record(frame_diff(psi_map(phi_map(u)), u));
            const GarciaCoords g = random_garcia(ctx.rng, n);
            const GarciaCoords back = phi_map(psi_map(g));
            out.record(std::max({relative_diff(back.x, g.x), relative_diff(back.y, g.y), relative_diff(back.z, g.z)}));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome garcia_closed_form_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const GarciaCoords g = random_garcia(ctx.rng, n);
            const double scale = std::max({1.0, max_abs(g.y), max_abs(g.z)});
            out.record(garcia_action_discrepancy(g, linear_jet(gl_tensor(ctx.rng, n), r)) / scale);
            out.record(garcia_action_discrepancy(g, ctx.rng.jet(n, r)) / scale);
            // The action transported from the frame bundle agrees with the closed form.
            const FrameCoords u = ctx.rng.frame(n, r);
            const JetGroupElement a = ctx.rng.jet(n, r);
            const GarciaCoords lhs = phi_map(right_action(u, a));
            const GarciaCoords rhs = garcia_action_closed_form(phi_map(u), a);
            out.record(std::max({relative_diff(lhs.x, rhs.x), relative_diff(lhs.y, rhs.y), relative_diff(lhs.z, rhs.z)}));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome garcia_pullback_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const BundleTangent x = ctx.rng.tangent(n, r);
            const LowerTensor lhs = garcia_canonical_form(phi_map(u), phi_pushforward(u, x));
            out.record(relative_diff(lhs, component(canonical_form(u, x), 1)));
            ++out.trials;
        }
    }
    return out;
}

// ---------------------------------------------------------------- connection

SuiteOutcome section_equivariance_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const ChristoffelField gamma = random_christoffel(ctx.rng, n, "U");
            const FrameCoords u = first_order_frame(ctx.rng, n, "U");
            const LowerTensor g = gl_tensor(ctx.rng, n);
            const FrameCoords lhs = connection_section(gamma, right_action(u, linear_jet(g, 1)));
            const FrameCoords rhs = right_action(connection_section(gamma, u), linear_jet(g, r));
            out.record(frame_diff(lhs, rhs));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome chart_compatibility_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const LowerTensor gamma = ctx.rng.tensor(n, 2, -1.0, 1.0);
            const FrameCoords u = first_order_frame(ctx.rng, n, "");
            const TransitionJet jet = transition_jet(ctx.rng.polynomial_map(n, u.base), u.base, 2);
            const FrameCoords lhs = connection_section(christoffel_transform(gamma, jet), change_chart(u, jet));
            const FrameCoords rhs = change_chart(connection_section(gamma, u), jet);
            out.record(frame_diff(lhs, rhs));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome christoffel_cocycle_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const LowerTensor gamma = ctx.rng.tensor(n, 2, -1.0, 1.0);
            const std::vector<double> p = ctx.rng.vector(n);
            const SmoothMapSpec phi1 = ctx.rng.polynomial_map(n, p);
            const std::vector<double> p1 = phi1.evaluate(p);
            const SmoothMapSpec phi2 = ctx.rng.polynomial_map(n, p1);
            const LowerTensor two_step = christoffel_transform(christoffel_transform(gamma, transition_jet(phi1, p, 2)), transition_jet(phi2, p1, 2));
            const LowerTensor direct = christoffel_transform(gamma, transition_jet(SmoothMapSpec::composite({phi1, phi2}), p, 2));
            out.record(relative_diff(two_step, direct));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome pullback_axioms_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const ChristoffelField gamma = random_christoffel(ctx.rng, n, "U");
            const FrameCoords u = first_order_frame(ctx.rng, n, "U");

            // Vertical vectors: omega(A*) = A.
            JetAlgebraElement a = JetAlgebraElement::zero(n, 1);
            a.tensors[0] = ctx.rng.tensor(n, 1, -1.0, 1.0);
            out.record(relative_diff(section_pullback_connection(gamma, u, fundamental_vector(u, a)), a.tensors[0]));

            // Equivariance: R_g^* omega = g^{-1} omega g.
            const LowerTensor g = gl_tensor(ctx.rng, n);
            const JetGroupElement gj = linear_jet(g, 1);
            const BundleTangent x = ctx.rng.tangent(n, 1);
            const Eigen::MatrixXd gm = to_matrix(g);
            const Eigen::MatrixXd moved = to_matrix(section_pullback_connection(gamma, right_action(u, gj), right_action_pushforward(u, x, gj)));
            const Eigen::MatrixXd expected = gm.inverse() * to_matrix(section_pullback_connection(gamma, u, x)) * gm;
            out.record(matrix_diff(moved, expected));

            // At h_j = I the form reads dh^i_j + Gamma^i_{jb} dh^b.
            const FrameCoords id = identity_frame(n, 1, u.base, "U");
            const LowerTensor gv = gamma.evaluate("U", u.base);
            LowerTensor local = x.tensors[0];
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    for (int b = 0; b < n; ++b) local.at(i, {j}) += gv.at(i, {j, b}) * x.base[static_cast<std::size_t>(b)];
                }
            }
            out.record(relative_diff(section_pullback_connection(gamma, id, x), local));
            ++out.trials;
        }
    }
    return out;
}

// ---------------------------------------------------------------- deform

SuiteOutcome tangent_group_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 1)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const TangentGroupElement p = random_tg(ctx.rng, n);
            const TangentGroupElement q = random_tg(ctx.rng, n);
            const TangentGroupElement s = random_tg(ctx.rng, n);
            out.record(matrix_diff(tg_matrix(tg_compose(p, q)), tg_matrix(p) * tg_matrix(q)));
            out.record(matrix_diff(tg_matrix(tg_compose(tg_compose(p, q), s)), tg_matrix(tg_compose(p, tg_compose(q, s)))));
            out.record(matrix_diff(tg_matrix(tg_compose(p, tg_inverse(p))), Eigen::MatrixXd::Identity(2 * n, 2 * n)));
            out.record(matrix_diff(tg_matrix(tg_inverse(p)), tg_matrix(p).inverse()));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome bracket_adjoint_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 1)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const TangentAlgebraElement u = random_tg_algebra(ctx.rng, n);
            const TangentAlgebraElement v = random_tg_algebra(ctx.rng, n);
            const Eigen::MatrixXd mu = tg_matrix(u);
            const Eigen::MatrixXd mv = tg_matrix(v);
            out.record(matrix_diff(tg_matrix(tg_bracket(u, v)), mu * mv - mv * mu));
            const TangentGroupElement p = random_tg(ctx.rng, n);
            const Eigen::MatrixXd mp = tg_matrix(p);
            out.record(matrix_diff(tg_matrix(tg_adjoint(p, v)), mp * mv * mp.inverse()));
            out.record(tangent_algebra_diff(tg_algebra_from_matrix(mv), v));
            ++out.trials;
        }
    }
    return out;
}

struct Atlas {
    DeformationPair pair;
    std::vector<ChartTransition> transitions;
};

/// Three charts A, B, C with data on B and C transported from A, and transitions both ways.
Atlas random_deformation_atlas(Sampler& rng, int n)
{
    const int degree = n <= 2 ? 1 : 0;
    const PolynomialTensorField gamma = rng.field(n, 2, n, degree);
    const PolynomialTensorField mu = rng.field(n, 2, n, degree);
    PolynomialMap phi1_inv;
    PolynomialMap phi2_inv;
    // Mild nonlinearity keeps the twice-transported symbolic data well conditioned under evaluation.
    const PolynomialMap phi1 = rng.triangular_map(n, phi1_inv, 0.1);
    const PolynomialMap phi2 = rng.triangular_map(n, phi2_inv, 0.1);
    const TransformedPair on_b = transform_pair_symbolic(gamma, mu, phi1, phi1_inv);
    const TransformedPair on_c = transform_pair_symbolic(on_b.gamma, on_b.mu, phi2, phi2_inv);

    Atlas atlas{DeformationPair(n), {}};
    atlas.pair.set_chart("A", {gamma, mu});
    atlas.pair.set_chart("B", {on_b.gamma, on_b.mu});
    atlas.pair.set_chart("C", {on_c.gamma, on_c.mu});
    auto poly = [](const PolynomialMap& f) { return SmoothMapSpec::polynomial(f); };
    atlas.transitions = {{"A", "B", poly(phi1)},
                         {"B", "C", poly(phi2)},
                         {"A", "C", poly(compose(phi2, phi1))},
                         {"B", "A", poly(phi1_inv)},
                         {"C", "B", poly(phi2_inv)},
                         {"C", "A", poly(compose(phi1_inv, phi2_inv))}};
    return atlas;
}

SuiteOutcome pair_law_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    constexpr int kPoints = 5;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 1)) {
        const int atlases = std::max(1, ctx.trials / 20);
        for (int t = 0; t < atlases; ++t) {
            Atlas atlas = random_deformation_atlas(ctx.rng, n);
            std::vector<std::vector<double>> points;
            for (int k = 0; k < kPoints; ++k) points.push_back(ctx.rng.vector(n, -0.5, 0.5));
            const DeformationPairReport valid = check_deformation_pair(atlas.pair, atlas.transitions, points);
            out.record(std::max(valid.max_componentwise, valid.max_gauge));
            out.trials += static_cast<int>(valid.evaluations);
            if (!valid.valid && out.note.empty()) out.note = "transported pair rejected";

            // A perturbed deformation tensor on one chart breaks both laws.
            DeformationChart c = atlas.pair.chart("C");
            PolynomialTensorField bumped = c.mu;
            bumped.entry(0, std::vector<int>{0, 0}) += Polynomial::constant(n, ctx.rng.uniform(0.1, 1.0));
            atlas.pair.set_chart("C", {c.theta, bumped});
            const DeformationPairReport invalid = check_deformation_pair(atlas.pair, atlas.transitions, points);
            if (invalid.valid) {
                out.record(kInf);
                if (out.note.empty()) out.note = "perturbed pair accepted";
            }
        }
    }
    return out;
}

SuiteOutcome frame_iso_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const GarciaPairCoords s = random_garcia_pair(ctx.rng, n);
            const TangentGroupElement gx = random_tg(ctx.rng, n);
            const FramePairCoords lhs = deform_frame_iso(garcia_pair_action(s, gx));
            const FramePairCoords rhs = frame_pair_action(deform_frame_iso(s), gx);
            out.record(std::max(frame_diff(lhs.u, rhs.u), relative_diff(lhs.y.tensors, rhs.y.tensors)));

            const GarciaPairTangent ds = random_garcia_pair_tangent(ctx.rng, n);
            const TangentAlgebraElement direct = deform_canonical_form(s, ds);
            const TangentAlgebraElement via_frames = frame_pair_canonical_form(deform_frame_iso(s), deform_frame_iso_pushforward(s, ds));
            out.record(tangent_algebra_diff(direct, via_frames));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome lift_block_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    {
        // Gamma = 5 and phi(x) = x + x^2 / 2 at x = 0 give hatGamma = 4.
        const LowerTensor gamma(1, 2, std::vector<double>{5.0});
        const Polynomial x = Polynomial::variable(1, 0);
        const SmoothMapSpec phi = SmoothMapSpec::polynomial({x + 0.5 * (x * x)});
        const TransitionJet jet = transition_jet(phi, std::vector<double>{0.0}, 2);
        out.record(std::abs(christoffel_transform(gamma, jet)[0] - 4.0));
        out.record(lift_block_identity(gamma, jet, std::vector<double>{1.0}).cwiseAbs().maxCoeff());
    }
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 1)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const LowerTensor gamma = ctx.rng.tensor(n, 2, -1.0, 1.0);
            const std::vector<double> p = ctx.rng.vector(n);
            const TransitionJet jet = transition_jet(ctx.rng.polynomial_map(n, p), p, 2);
            const Eigen::MatrixXd res = lift_block_identity(gamma, jet, ctx.rng.vector(n));
            const double scale = std::max({1.0, max_abs(jet.D[0]), max_abs(jet.D[1])});
            out.record(res.cwiseAbs().maxCoeff() / scale);
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome covariant_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 1)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const LowerTensor gamma = ctx.rng.tensor(n, 2, -1.0, 1.0);
            PolynomialMap field;
            for (int i = 0; i < n; ++i) field.push_back(ctx.rng.polynomial(n, 3));
            const std::vector<double> res = covariant_derivative_residual(gamma, field, ctx.rng.vector(n), ctx.rng.vector(n));
            double worst = 0.0;
            for (double v : res) worst = std::max(worst, std::abs(v));
            out.record(worst);
            ++out.trials;
        }
    }
    return out;
}

// ---------------------------------------------------------------- foliation

/// Codimensions q = 1, 2 with leaf dimension 1 or 2, limited by the configured n.
std::vector<std::pair<int, int>> foliation_shapes(const SuiteContext& ctx)
{
    std::vector<std::pair<int, int>> out;
    for (int q = 1; q <= std::min(2, ctx.n_max); ++q) {
        for (int leaf = 1; leaf <= 2; ++leaf) out.emplace_back(q + leaf, q);
    }
    return out;
}

/// Components of a leafwise vector (w, 0) along the m - q leaf coordinates.
std::vector<double> leaf_vector(Sampler& rng, int m, int q) { return rng.vector(m - q); }

SuiteOutcome bott_residual_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [m, q] : foliation_shapes(ctx)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FormMatrix theta = bott_form(ctx.rng.field(q, 2, m, 2));
            const Eigen::MatrixXd r = bott_residual(theta, ctx.rng.vector(m), leaf_vector(ctx.rng, m, q));
            out.record(r.cwiseAbs().maxCoeff());
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome bott_gauge_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [m, q] : foliation_shapes(ctx)) {
        for (int t = 0; t < ctx.trials; ++t) {
            FormMatrix theta = bott_form(ctx.rng.field(q, 2, m, 2));
            const bool leafwise_term = t % 2 == 1;
            if (leafwise_term) theta(0, 0).coefficient(0) += ctx.rng.polynomial(m, 1);
            // Foliated frame: coefficients depend on y only.
            std::vector<Polynomial> frame;
            for (int i = 0; i < q; ++i) {
                for (int j = 0; j < q; ++j) {
                    Polynomial e = transverse_lift(ctx.rng.polynomial(q, 2, 0.2), m);
                    if (i == j) e += Polynomial::constant(m, 1.0);
                    frame.push_back(std::move(e));
                }
            }
            const std::vector<double> p = ctx.rng.vector(m, -0.5, 0.5);
            const std::vector<double> w = leaf_vector(ctx.rng, m, q);
            Eigen::MatrixXd e(q, q);
            for (int i = 0; i < q; ++i) {
                for (int j = 0; j < q; ++j) e(i, j) = frame[static_cast<std::size_t>(i * q + j)].evaluate(p);
            }
            const Eigen::MatrixXd gauged = gauge_bott_residual(theta, frame, p, w);
            out.record(matrix_diff(gauged, e.inverse() * bott_residual(theta, p, w) * e));
            if (!leafwise_term) out.record(gauged.cwiseAbs().maxCoeff());
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome pushforward_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [q, r] : ctx.cells(1, 2, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(q, r);
            const SmoothMapSpec g1 = ctx.rng.polynomial_map(q, u.base);
            const FrameCoords once = transverse_pushforward(u, g1);
            const SmoothMapSpec g2 = ctx.rng.polynomial_map(q, once.base);
            out.record(frame_diff(transverse_pushforward(once, g2), transverse_pushforward(u, SmoothMapSpec::composite({g1, g2}))));
            const JetGroupElement a = ctx.rng.jet(q, r);
            out.record(frame_diff(transverse_pushforward(right_action(u, a), g1), right_action(once, a)));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome bott_pair_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [m, q] : foliation_shapes(ctx)) {
        const int atlases = std::max(1, ctx.trials / 10);
        for (int t = 0; t < atlases; ++t) {
            // Transverse data depending on y only, carried through a holonomy with polynomial inverse.
            const PolynomialTensorField gamma = ctx.rng.field(q, 2, q, 1);
            const PolynomialTensorField mu = ctx.rng.field(q, 2, q, 1);
            PolynomialMap hol_inv;
            const PolynomialMap hol = ctx.rng.triangular_map(q, hol_inv);
            const TransformedPair target = transform_pair_symbolic(gamma, mu, hol, hol_inv);

            FoliationTransition tr{"U", "V", {}};
            for (int k = 0; k < m - q; ++k) {
                Polynomial c = Polynomial::variable(m, k) + ctx.rng.polynomial(m, 2, 0.2);
                tr.map.push_back(std::move(c));
            }
            for (const auto& h : hol) tr.map.push_back(transverse_lift(h, m));

            const PolynomialTensorField g_src = transverse_lift(gamma, m);
            const PolynomialTensorField m_src = transverse_lift(mu, m);
            const PolynomialTensorField g_dst = transverse_lift(target.gamma, m);
            const PolynomialTensorField m_dst = transverse_lift(target.mu, m);
            for (int k = 0; k < 10; ++k) {
                const std::vector<double> p = ctx.rng.vector(m, -0.5, 0.5);
                const PairLawResidual res = transverse_pair_law_residual(g_src, m_src, g_dst, m_dst, tr, q, p);
                out.record(std::max(res.componentwise, res.gauge));
                const std::vector<double> w = leaf_vector(ctx.rng, m, q);
                out.record(bott_residual(bott_form(g_src), p, w).cwiseAbs().maxCoeff());
                out.record(bott_residual(bott_form(g_dst), evaluate(tr.map, p), w).cwiseAbs().maxCoeff());
                ++out.trials;
            }
        }
    }
    return out;
}

/// theta^i_j = c^i_{jk} dy^k with c symmetric in (j, k), built from random polynomials.
FormMatrix symmetric_transverse_form(Sampler& rng, int m, int q)
{
    FormMatrix f(q, q, m);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            for (int k = j; k < q; ++k) {
                const Polynomial c = rng.polynomial(m, 2);
                f(i, j).coefficient(m - q + k) = c;
                f(i, k).coefficient(m - q + j) = c;
            }
        }
    }
    return f;
}

double max_entry(const std::vector<double>& v)
{
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

SuiteOutcome deformation_equation_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    {
        // omega = (dy1, dy2), theta = 0, omegadot = (y2 dy1, 0); thetadot^1_1 = -dy2 is valid, thetadot^1_2 = -dy2 is not.
        const int m = 2;
        const FormMatrix omega = transverse_coframe(m, 2);
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
        out.record(max_entry(deformation_equation_residual(omega, theta, omega_dot, valid, p, e1, e2)));
        if (max_entry(deformation_equation_residual(omega, theta, omega_dot, invalid, p, e1, e2)) <= 1e-3) {
            out.record(kInf);
            out.note = "worked invalid pair accepted";
        }
    }
    for (const auto& [m, q] : foliation_shapes(ctx)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FormMatrix omega = transverse_coframe(m, q);
            const FormMatrix theta_dot = symmetric_transverse_form(ctx.rng, m, q);
            FormMatrix theta(q, q, m);
            FormMatrix omega_dot(q, 1, m);
            if (t % 2 == 0) {
                // Any Bott connection with omegadot = 0.
                theta = bott_form(ctx.rng.field(q, 2, m, 2));
            } else {
                // theta = 0 with a closed omegadot = d f.
                for (int i = 0; i < q; ++i) {
                    const Polynomial f = ctx.rng.polynomial(m, 3);
                    for (int k = 0; k < m; ++k) omega_dot(i, 0).coefficient(k) = f.derivative(k);
                }
            }
            const std::vector<double> p = ctx.rng.vector(m);
            const std::vector<double> x = ctx.rng.vector(m);
            const std::vector<double> y = ctx.rng.vector(m);
            const double scale = std::max(1.0, theta_dot.evaluate(p, x).cwiseAbs().maxCoeff() + theta_dot.evaluate(p, y).cwiseAbs().maxCoeff());
            out.record(max_entry(deformation_equation_residual(omega, theta, omega_dot, theta_dot, p, x, y)) / scale);

            if (q >= 2) {
                // An antisymmetric transverse part survives on the (dy^1, dy^2) pair.
                FormMatrix broken = theta_dot;
                broken(0, 0).coefficient(m - q + 1) += Polynomial::constant(m, ctx.rng.uniform(0.1, 1.0));
                std::vector<double> a(static_cast<std::size_t>(m), 0.0);
                std::vector<double> b(static_cast<std::size_t>(m), 0.0);
                a[static_cast<std::size_t>(m - q)] = 1.0;
                b[static_cast<std::size_t>(m - q + 1)] = 1.0;
                if (max_entry(deformation_equation_residual(omega, theta, omega_dot, broken, p, a, b)) <= 1e-3) {
                    out.record(kInf);
                    if (out.note.empty()) out.note = "perturbed pair accepted";
                }
            }
            ++out.trials;
        }
    }
    return out;
}

}  // namespace

void register_geometry_suites(std::vector<SuiteDef>& out)
{
    const auto rel = Measure::relative;
    const auto abs = Measure::absolute;
    out.push_back({"garcia.inverse", "Psi o Phi and Phi o Psi are identities", rel, 1e-12, garcia_inverse_suite});
    out.push_back({"garcia.closed_form", "transported action equals the closed formula, GL_n and general jets", rel, 1e-12,
                   garcia_closed_form_suite});
    out.push_back({"garcia.pullback", "Phi^* theta' equals theta^1", rel, 1e-8, garcia_pullback_suite});
    out.push_back({"connection.section_equivariance", "sigma(u g) = sigma(u) (g, 0)", rel, 1e-8, section_equivariance_suite});
    out.push_back({"connection.chart_compatibility", "sections built in two charts agree", rel, 1e-8, chart_compatibility_suite});
    out.push_back({"connection.cocycle", "Christoffel law composes over two transitions", rel, 1e-8, christoffel_cocycle_suite});
    out.push_back({"connection.pullback_axioms", "pulled-back form reproduces A, is equivariant and has the local form", rel, 1e-8,
                   pullback_axioms_suite});
    out.push_back({"deform.tangent_group", "block matrices represent the tangent group", rel, 1e-10, tangent_group_suite});
    out.push_back({"deform.bracket_adjoint", "bracket and adjoint agree with matrix commutator and conjugation", rel, 1e-10,
                   bracket_adjoint_suite});
    out.push_back({"deform.pair_law", "componentwise and gauge laws agree on a three-chart atlas; perturbed pairs fail", rel, 1e-8,
                   pair_law_suite});
    out.push_back({"deform.frame_iso", "jet-bundle isomorphism is equivariant and matches the canonical forms", rel, 1e-8, frame_iso_suite});
    out.push_back({"deform.lift_block", "lifted block product equals diag(D phi, D phi)", rel, 1e-9, lift_block_suite});
    out.push_back({"deform.covariant", "covariant derivative plus torsion equals the vertical difference", abs, 1e-9, covariant_suite});
    out.push_back({"foliation.bott_residual", "dy-only connection forms vanish on leaves", abs, 0.0, bott_residual_suite});
    out.push_back({"foliation.bott_gauge", "leafwise residual transforms by conjugation under foliated frames", rel, 1e-9,
                   bott_gauge_suite});
    out.push_back({"foliation.pushforward", "holonomy pushforward is a cocycle and commutes with the right action", rel, 1e-9,
                   pushforward_suite});
    out.push_back({"foliation.bott_pair", "transverse pair laws hold and both connections are Bott", rel, 1e-8, bott_pair_suite});
    out.push_back({"foliation.deformation_equation", "valid pairs give zero and perturbed pairs do not", rel, 1e-9,
                   deformation_equation_suite});
}

}  // namespace ff::verify
