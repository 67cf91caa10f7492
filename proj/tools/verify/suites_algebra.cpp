#include <cmath>
#include <cstdio>

#include "oracles.hpp"
#include "suite_support.hpp"
#include "formalframes/charts.hpp"
#include "formalframes/linalg.hpp"
#include "formalframes/taylor.hpp"

namespace ff::verify {

namespace {

TaylorScalar random_taylor(Sampler& rng, int m, int d, bool zero_constant)
{
    TaylorScalar t = TaylorScalar::constant(m, d, 0.0);
    for (auto& c : t.coeffs()) c = rng.uniform(-1.0, 1.0);
    if (zero_constant) t.coeffs()[0] = 0.0;
    return t;
}

TaylorTuple random_tuple(Sampler& rng, int count, int m, int d, bool zero_constant)
{
    TaylorTuple out;
    for (int q = 0; q < count; ++q) out.push_back(random_taylor(rng, m, d, zero_constant));
    return out;
}

double coefficient_diff(const TaylorTuple& a, const TaylorTuple& b)
{
    double worst = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) {
        for (std::size_t c = 0; c < a[q].coeffs().size(); ++c) worst = std::max(worst, std::abs(a[q].coeffs()[c] - b[q].coeffs()[c]));
    }
    return worst;
}

JetAlgebraElement combine(const JetAlgebraElement& x, double s, const JetAlgebraElement& y, double t)
{
    JetAlgebraElement out = x;
    for (std::size_t q = 0; q < out.tensors.size(); ++q) {
        for (std::size_t e = 0; e < out.tensors[q].size(); ++e) out.tensors[q][e] = s * x.tensors[q][e] + t * y.tensors[q][e];
    }
    return out;
}

/// e + t X as a group element.
JetGroupElement exp_line(const JetAlgebraElement& x, double t)
{
    std::vector<LowerTensor> ts;
    for (std::size_t q = 0; q < x.tensors.size(); ++q) {
        LowerTensor v = x.tensors[q];
        for (auto& e : v.entries()) e *= t;
        if (q == 0) {
            for (int i = 0; i < x.n; ++i) v(i, i) += 1.0;
        }
        ts.push_back(std::move(v));
    }
    return JetGroupElement(x.n, x.r, std::move(ts));
}

SuiteOutcome symmetrize_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (int t = 0; t < ctx.trials; ++t) {
        const int n = ctx.rng.integer(1, 3);
        const int k = ctx.rng.integer(1, 4);
        const LowerTensor a = ctx.rng.tensor(n, k);
        const LowerTensor b = ctx.rng.tensor(n, k);
        const double s = ctx.rng.uniform(-2.0, 2.0);
        const LowerTensor sa = symmetrize(a);
        LowerTensor combo = a;
        LowerTensor sym_combo = sa;
        const LowerTensor sb = symmetrize(b);
        for (std::size_t e = 0; e < a.size(); ++e) {
            combo[e] = a[e] + s * b[e];
            sym_combo[e] = sa[e] + s * sb[e];
        }
        out.record(max_abs_diff(symmetrize(sa), sa));
        out.record(max_abs_diff(symmetrize(combo), sym_combo));
        out.record(max_asymmetry(sa));
        ++out.trials;
    }
    return out;
}

SuiteOutcome taylor_product_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (int t = 0; t < ctx.trials; ++t) {
        const int m = ctx.rng.integer(1, 3);
        const int d = ctx.rng.integer(1, 4);
        const TaylorScalar a = random_taylor(ctx.rng, m, d, false);
        const TaylorScalar b = random_taylor(ctx.rng, m, d, false);
        const TaylorScalar c = random_taylor(ctx.rng, m, d, false);
        out.record(coefficient_diff({(a * b) * c}, {a * (b * c)}));
        out.record(coefficient_diff({a * b}, {b * a}));
        ++out.trials;
    }
    return out;
}

SuiteOutcome taylor_compose_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (int t = 0; t < ctx.trials; ++t) {
        const int m = ctx.rng.integer(1, 3);
        const int d = ctx.rng.integer(1, 4);
        const TaylorTuple f = random_tuple(ctx.rng, m, m, d, false);
        const TaylorTuple g = random_tuple(ctx.rng, m, m, d, true);
        const TaylorTuple h = random_tuple(ctx.rng, m, m, d, true);
        out.record(coefficient_diff(taylor_compose(taylor_compose(f, g), h), taylor_compose(f, taylor_compose(g, h))));
        ++out.trials;
    }
    return out;
}

SuiteOutcome associativity_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetGroupElement b = ctx.rng.jet(n, r);
            const JetGroupElement c = ctx.rng.jet(n, r);
            out.record(relative_diff(jet_compose(jet_compose(a, b), c).tensors(), jet_compose(a, jet_compose(b, c)).tensors()));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome unit_inverse_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        const JetGroupElement e = jet_identity(n, r);
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetGroupElement b = jet_inverse(a);
            out.record(relative_diff(jet_compose(a, e).tensors(), a.tensors()));
            out.record(relative_diff(jet_compose(e, a).tensors(), a.tensors()));
            // a a^-1 = e is judged against the size of the factors, which grows quickly with r.
            double scale = 1.0;
            for (const auto& q : a.tensors()) scale = std::max(scale, max_abs(q));
            double scale_b = 1.0;
            for (const auto& q : b.tensors()) scale_b = std::max(scale_b, max_abs(q));
            out.record(abs_diff(jet_compose(a, b).tensors(), e.tensors()) / (scale * scale_b));
            out.record(abs_diff(jet_compose(b, a).tensors(), e.tensors()) / (scale * scale_b));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome closed_formula_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 3)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetGroupElement b = ctx.rng.jet(n, r);
            const JetGroupElement ab = jet_compose(a, b);
            const LowerTensor expected = r == 2 ? product_closed_r2(a.tensors(), b.tensors()) : product_closed_r3(a.tensors(), b.tensors());
            out.record(relative_diff(ab.tensor(r), expected));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome bundle_map_oracle_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 2, 1, 3)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetGroupElement b = ctx.rng.jet(n, r);
            out.record(relative_diff(jet_compose(a, b).tensors(), product_oracle(a.tensors(), b.tensors())));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome kappa_section_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const ClassicalJet c = ctx.rng.classical_jet(n, r);
            const JetGroupElement e = epsilon_embed(c);
            out.record(abs_diff(kappa_project(e).s, c.s));
            const ClassicalCheck check = is_classical(e, 1e-12);
            if (!check.classical) out.record(std::numeric_limits<double>::infinity());
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome epsilon_homomorphism_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const ClassicalJet c1 = ctx.rng.classical_jet(n, r);
            const ClassicalJet c2 = ctx.rng.classical_jet(n, r);
            const std::vector<LowerTensor> composed = classical_compose_oracle(c1.s, c2.s);
            out.record(relative_diff(jet_compose(epsilon_embed(c1), epsilon_embed(c2)).tensors(), composed));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome kappa_homomorphism_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    double worst_r2 = 0.0;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetGroupElement b = ctx.rng.jet(n, r);
            const std::vector<LowerTensor> lhs = kappa_project(jet_compose(a, b)).s;
            const std::vector<LowerTensor> rhs = classical_compose_oracle(kappa_project(a).s, kappa_project(b).s);
            const double e = relative_diff(lhs, rhs);
            out.record(e);
            if (r <= 2) worst_r2 = std::max(worst_r2, e);
            ++out.trials;
        }
    }
    if (ctx.r_max >= 3) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "worst over r <= 2 is %.3g", worst_r2);
        out.note = buf;
    }
    return out;
}

SuiteOutcome adjoint_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetAlgebraElement x = ctx.rng.algebra_element(n, r);
            const JetAlgebraElement y = ctx.rng.algebra_element(n, r);
            const double s = ctx.rng.uniform(-2.0, 2.0);
            const JetAlgebraElement lhs = adjoint_action(a, combine(x, s, y, 1.0));
            const JetAlgebraElement rhs = combine(adjoint_action(a, x), s, adjoint_action(a, y), 1.0);
            out.record(relative_diff(lhs.tensors, rhs.tensors));

            // The matrix of X -> Ad X on the basis must be invertible; checked on the first trials of each cell.
            if (t >= 3) {
                ++out.trials;
                continue;
            }
            const std::size_t dim = algebra_dimension(n, r + 1) - static_cast<std::size_t>(n);
            Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            JetAlgebraElement unit = JetAlgebraElement::zero(n, r);
            std::size_t col = 0;
            for (auto& ut : unit.tensors) {
                for (std::size_t e = 0; e < ut.size(); ++e, ++col) {
                    ut[e] = 1.0;
                    const JetAlgebraElement img = adjoint_action(a, unit);
                    std::size_t row = 0;
                    for (const auto& it : img.tensors) {
                        for (double v : it.entries()) m(static_cast<Eigen::Index>(row++), static_cast<Eigen::Index>(col)) = v;
                    }
                    ut[e] = 0.0;
                }
            }
            const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
            if (svd.singularValues().minCoeff() < 1e-10) out.record(std::numeric_limits<double>::infinity());

            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome adjoint_derivative_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetAlgebraElement x = ctx.rng.algebra_element(n, r);
            // Central differences of the conjugation curve a^-1 (e + hX) a, Richardson-extrapolated.
            const JetGroupElement ai = jet_inverse(a);
            auto central = [&](double h) {
                const auto plus = jet_compose(jet_compose(ai, exp_line(x, h)), a).tensors();
                const auto minus = jet_compose(jet_compose(ai, exp_line(x, -h)), a).tensors();
                std::vector<LowerTensor> d = plus;
                for (std::size_t q = 0; q < d.size(); ++q) {
                    for (std::size_t e = 0; e < d[q].size(); ++e) d[q][e] = (plus[q][e] - minus[q][e]) / (2.0 * h);
                }
                return d;
            };
            const double h = 1e-3;
            const auto coarse = central(h);
            std::vector<LowerTensor> fd = central(h / 2.0);
            for (std::size_t q = 0; q < fd.size(); ++q) {
                for (std::size_t e = 0; e < fd[q].size(); ++e) fd[q][e] = (4.0 * fd[q][e] - coarse[q][e]) / 3.0;
            }
            out.record(relative_diff(adjoint_action(a, x).tensors, fd));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome chain_rule_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 2, 1, 3)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const std::vector<double> p = ctx.rng.vector(n, -0.5, 0.5);
            const SmoothMapSpec f = ctx.rng.polynomial_map(n, p);
            const std::vector<double> fp = f.evaluate(p);
            const SmoothMapSpec g = ctx.rng.polynomial_map(n, fp);
            const TransitionJet composite = transition_jet(SmoothMapSpec::composite({f, g}), p, r);
            const TransitionJet tf = transition_jet(f, p, r);
            const TransitionJet tg = transition_jet(g, fp, r);
            const JetGroupElement chained = jet_compose(jet_of_transition_as_group(tg), jet_of_transition_as_group(tf));
            out.record(relative_diff(composite.D, chained.tensors()));
            out.record(relative_diff(composite.value, g.evaluate(fp)));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome polynomial_jet_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const std::vector<double> p = ctx.rng.vector(n, -0.5, 0.5);
            const SmoothMapSpec f = ctx.rng.polynomial_map(n, p);
            const TransitionJet jet = transition_jet(f, p, r);
            out.record(relative_diff(jet.D, polynomial_derivatives(f.polynomial_components(), p, r)));
            for (const auto& d : jet.D) out.record(max_asymmetry(d));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome right_action_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const JetGroupElement a = ctx.rng.jet(n, r);
            const JetGroupElement b = ctx.rng.jet(n, r);
            out.record(relative_diff(right_action(right_action(u, a), b).tensors, right_action(u, jet_compose(a, b)).tensors));
            out.record(relative_diff(right_action(u, jet_identity(n, r)).tensors, u.tensors));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome chart_cocycle_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            FrameCoords u = ctx.rng.frame(n, r);
            u.base = ctx.rng.vector(n, -0.5, 0.5);
            const SmoothMapSpec f = ctx.rng.polynomial_map(n, u.base);
            const std::vector<double> fp = f.evaluate(u.base);
            const SmoothMapSpec g = ctx.rng.polynomial_map(n, fp);
            const FrameCoords twice = change_chart(change_chart(u, transition_jet(f, u.base, r)), transition_jet(g, fp, r));
            const FrameCoords once = change_chart(u, transition_jet(SmoothMapSpec::composite({f, g}), u.base, r));
            out.record(relative_diff(twice.tensors, once.tensors));
            out.record(relative_diff(twice.base, once.base));
            ++out.trials;
        }
    }
    return out;
}

}  // namespace

void register_algebra_suites(std::vector<SuiteDef>& out)
{
    out.push_back({"tensorcore.symmetrize", "symmetrization is idempotent, linear and yields symmetric tensors", Measure::absolute, 1e-12,
                   symmetrize_suite});
    out.push_back({"tensorcore.taylor_product", "truncated Taylor multiplication is associative and commutative", Measure::absolute, 1e-12,
                   taylor_product_suite});
    out.push_back({"tensorcore.taylor_compose", "truncated Taylor substitution is associative", Measure::absolute, 1e-9,
                   taylor_compose_suite});
    out.push_back({"jetgroup.associativity", "the jet product is associative on every (n, r) cell", Measure::relative, 1e-9,
                   associativity_suite});
    out.push_back({"jetgroup.unit_inverse", "identity is a two-sided unit and jet_inverse a two-sided inverse", Measure::relative, 1e-9,
                   unit_inverse_suite});
    out.push_back({"jetgroup.closed_formula", "the product matches the written-out order-2 and order-3 formulas", Measure::relative, 1e-12,
                   closed_formula_suite});
    out.push_back({"jetgroup.bundle_map_oracle", "the product matches the 1-jet of the composed bundle map", Measure::relative, 1e-7,
                   bundle_map_oracle_suite});
    out.push_back({"jetgroup.kappa_section", "kappa o epsilon is the identity and epsilon images are classical", Measure::absolute, 1e-14,
                   kappa_section_suite});
    out.push_back({"jetgroup.epsilon_homomorphism", "epsilon turns classical composition into the jet product", Measure::relative, 1e-9,
                   epsilon_homomorphism_suite});
    out.push_back({"jetgroup.kappa_homomorphism", "kappa turns the jet product into classical composition", Measure::relative, 1e-9,
                   kappa_homomorphism_suite});
    out.push_back({"jetgroup.adjoint", "the adjoint action is linear and invertible", Measure::relative,
                   1e-10, adjoint_suite});
    out.push_back({"jetgroup.adjoint_derivative", "the adjoint action is the derivative of conjugation by the inverse",
                   Measure::relative, 1e-6, adjoint_derivative_suite});
    out.push_back({"charts.chain_rule", "the jet of a composite map is the product of the jets", Measure::relative, 1e-9, chain_rule_suite});
    out.push_back({"charts.polynomial_jet", "transition jets equal symbolic derivatives and are symmetric", Measure::relative, 1e-9,
                   polynomial_jet_suite});
    out.push_back({"bundle.right_action", "the right action is associative and unital", Measure::relative, 1e-9, right_action_suite});
    out.push_back({"bundle.chart_cocycle", "chart changes compose along composite transitions", Measure::relative, 1e-9,
                   chart_cocycle_suite});
}

}  // namespace ff::verify
