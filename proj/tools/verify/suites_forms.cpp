#include <cmath>
#include <cstdio>

#include "oracles.hpp"
#include "suite_support.hpp"
#include "formalframes/charts.hpp"
#include "formalframes/forms.hpp"

namespace ff::verify {

namespace {

double algebra_diff(const AlgebraVector& a, const AlgebraVector& b)
{
    const Eigen::VectorXd fa = a.flatten();
    const Eigen::VectorXd fb = b.flatten();
    const double scale = std::max({1.0, fa.cwiseAbs().maxCoeff(), fb.cwiseAbs().maxCoeff()});
    return (fa - fb).cwiseAbs().maxCoeff() / scale;
}

/// Frame with coordinates perturbed along a flat direction of the natural coordinates.
FrameCoords shifted(const FrameCoords& u, const Eigen::VectorXd& delta)
{
    BundleTangent coords{u.n, u.r, u.base, u.tensors};
    const BundleTangent moved = BundleTangent::unflatten(coords.flatten() + delta, u.n, u.r);
    return FrameCoords{u.n, u.r, u.chart, moved.base, moved.tensors};
}

SuiteOutcome closed_form_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const BundleTangent x = ctx.rng.tangent(n, r);
            out.record(algebra_diff(canonical_form(u, x), canonical_form_r2(u, x)));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome equivariance_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const BundleTangent x = ctx.rng.tangent(n, r);
            const JetGroupElement a = ctx.rng.jet(n, r);
            const AlgebraVector moved = canonical_form(right_action(u, a), right_action_pushforward(u, x, a));
            out.record(algebra_diff(moved, adjoint_action(a, canonical_form(u, x))));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome fundamental_vector_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const JetAlgebraElement x = ctx.rng.algebra_element(n, r);
            AlgebraVector expected = AlgebraVector::zero(n, r);
            for (std::size_t q = 0; q < expected.tensors.size(); ++q) expected.tensors[q] = x.tensors[q];
            out.record(algebra_diff(canonical_form(u, fundamental_vector(u, x)), expected));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome naturality_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 1, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            FrameCoords u = ctx.rng.frame(n, r);
            u.base = ctx.rng.vector(n, -0.5, 0.5);
            const BundleTangent x = ctx.rng.tangent(n, r);
            const TransitionJet jet = transition_jet(ctx.rng.polynomial_map(n, u.base), u.base, r + 1);
            const FrameCoords v = change_chart(u, jet, "target");
            out.record(algebra_diff(canonical_form(v, change_chart_pushforward(u, x, jet)), canonical_form(u, x)));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome antisymmetry_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const BundleTangent x = ctx.rng.tangent(n, r);
            const BundleTangent y = ctx.rng.tangent(n, r);
            const CanonicalForm form(u);
            const Eigen::VectorXd dxy = form.exterior_derivative(x, y).flatten();
            const Eigen::VectorXd dyx = form.exterior_derivative(y, x).flatten();
            out.record((dxy + dyx).cwiseAbs().maxCoeff());
            for (int k = 1; k < r; ++k) {
                for (const auto& type : enumerate_torsion_types(k)) {
                    const LowerTensor a = torsion(u, type, x, y);
                    LowerTensor b = torsion(u, type, y, x);
                    for (std::size_t e = 0; e < b.size(); ++e) b[e] = -b[e];
                    out.record(max_abs_diff(a, b));
                }
            }
            LowerTensor c = curvature(u, y, x);
            for (auto& e : c.entries()) e = -e;
            out.record(max_abs_diff(curvature(u, x, y), c));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome realizability_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    const auto cells = ctx.cells(1, 3, 2, 4);
    if (cells.empty()) return out;
    const int frames = std::max(1, (ctx.trials * 5) / 2);
    int disagreements = 0;
    for (int t = 0; t < frames; ++t) {
        const auto [n, r] = cells[static_cast<std::size_t>(t) % cells.size()];
        FrameCoords u = ctx.rng.frame(n, r, true);
        bool symmetric = true;
        if (t % 2 == 1 && n >= 2) {
            // Perturb one tensor by an asymmetric term of magnitude between 1e-3 and 1.
            const int k = ctx.rng.integer(2, r);
            const double size = std::pow(10.0, ctx.rng.uniform(-3.0, 0.0));
            const LowerTensor noise = ctx.rng.tensor(n, k, -1.0, 1.0);
            LowerTensor& target = u.tensors[static_cast<std::size_t>(k - 1)];
            for (std::size_t e = 0; e < target.size(); ++e) target[e] += size * noise[e];
            symmetric = max_asymmetry(target) <= 1e-8;
        }
        const RealizabilityReport report = realizability_report(u, 1e-8);
        if (report.torsion_verdict != report.symmetry_verdict || report.realizable != symmetric) {
            if (disagreements == 0) {
                char buf[200];
                std::snprintf(buf, sizeof buf, "first disagreement: n=%d r=%d max_torsion=%.3g scale=%.3g max_asymmetry=%.3g witness=%s", n, r,
                              report.max_torsion, report.torsions.scale, report.max_asymmetry, report.torsions.witness.c_str());
                out.note = buf;
            }
            ++disagreements;
        }
        ++out.trials;
    }
    out.record(disagreements);
    return out;
}

SuiteOutcome partials_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    const auto cells = ctx.cells(1, 2, 2, 3);
    if (cells.empty()) return out;
    const int frames = std::max(1, ctx.trials / 2);
    for (int t = 0; t < frames; ++t) {
        const auto [n, r] = cells[static_cast<std::size_t>(t) % cells.size()];
        const FrameCoords u = ctx.rng.frame(n, r);
        const BundleTangent y = ctx.rng.tangent(n, r);
        const Eigen::MatrixXd exact = form_partials(u, y);
        auto theta = [&](const Eigen::VectorXd& delta) { return canonical_form(shifted(u, delta), y).flatten(); };
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(exact.cols());
        for (Eigen::Index q = 0; q < exact.cols(); ++q) {
            const Eigen::VectorXd fd = central_difference(theta, zero, Eigen::VectorXd::Unit(exact.cols(), q), 1e-5);
            const double scale = std::max(1.0, fd.cwiseAbs().maxCoeff());
            out.record((exact.col(q) - fd).cwiseAbs().maxCoeff() / scale);
        }
        ++out.trials;
    }
    return out;
}

SuiteOutcome first_torsion_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const BundleTangent x = ctx.rng.tangent(n, r);
            const BundleTangent y = ctx.rng.tangent(n, r);
            const LowerTensor got = torsion(u, TorsionType{1, {}}, x, y);
            out.record(relative_diff(got.entries(), first_torsion_oracle(u, x, y)));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome structural_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 4)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r, true);
            const BundleTangent x = ctx.rng.tangent(n, r, true);
            const BundleTangent y = ctx.rng.tangent(n, r, true);
            // Residuals are measured against the size of d theta(X, Y), which grows quickly with r.
            const CanonicalForm form(u);
            const double scale = std::max(1.0, form.exterior_derivative(x, y).flatten().cwiseAbs().maxCoeff());
            for (int k = 1; k < r; ++k) {
                out.record(max_abs(structural_residual(u, k, x, y)) / scale);
                for (const auto& type : enumerate_torsion_types(k)) out.record(max_abs(torsion(u, type, x, y)) / scale);
            }
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome curvature_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    for (const auto& [n, r] : ctx.cells(1, 3, 2, 2)) {
        for (int t = 0; t < ctx.trials; ++t) {
            const FrameCoords u = ctx.rng.frame(n, r);
            const BundleTangent x = ctx.rng.tangent(n, r);
            const BundleTangent y = ctx.rng.tangent(n, r);
            out.record(relative_diff(curvature(u, x, y), curvature_oracle(u, x, y)));
            ++out.trials;
        }
    }
    return out;
}

SuiteOutcome schwarzian_moebius_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    if (ctx.r_max < 3) return out;
    for (int t = 0; t < ctx.trials; ++t) {
        const double x = ctx.rng.uniform(-1.0, 1.0);
        const SmoothMapSpec m = ctx.rng.moebius(x);
        const FrameCoords u = change_chart(identity_frame(1, 3, {x}), transition_jet(m, std::vector<double>{x}, 3));
        out.record(std::abs(schwarzian(u)));
        ++out.trials;
    }
    return out;
}

SuiteOutcome schwarzian_cocycle_suite(SuiteContext& ctx)
{
    SuiteOutcome out;
    if (ctx.r_max < 3) return out;
    while (out.trials < ctx.trials) {
        const double x = ctx.rng.uniform(-0.5, 0.5);
        const SmoothMapSpec f = SmoothMapSpec::polynomial({ctx.rng.polynomial(1, 4, 1.0)});
        const SmoothMapSpec g = SmoothMapSpec::polynomial({ctx.rng.polynomial(1, 4, 1.0)});
        const std::vector<double> px{x};
        const TransitionJet jf = transition_jet(f, px, 3);
        const TransitionJet jg = transition_jet(g, jf.value, 3);
        if (std::abs(jf.D[0][0]) < 0.2 || std::abs(jg.D[0][0]) < 0.2) continue;
        const TransitionJet jgf = transition_jet(SmoothMapSpec::composite({f, g}), px, 3);
        const double lhs = schwarzian(jgf.D[0][0], jgf.D[1][0], jgf.D[2][0]);
        const double sg = schwarzian_oracle(jg.D[0][0], jg.D[1][0], jg.D[2][0]);
        const double sf = schwarzian_oracle(jf.D[0][0], jf.D[1][0], jf.D[2][0]);
        const double rhs = sg * jf.D[0][0] * jf.D[0][0] + sf;
        out.record(std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        ++out.trials;
    }
    return out;
}

}  // namespace

void register_forms_suites(std::vector<SuiteDef>& out)
{
    out.push_back({"forms.closed_form_r2", "the order-2 canonical form matches its written-out formula", Measure::relative, 1e-10,
                   closed_form_suite});
    out.push_back({"forms.equivariance", "R_a^* theta = Ad(a^-1) theta", Measure::relative, 1e-8, equivariance_suite});
    out.push_back({"forms.fundamental_vector", "theta reproduces the generator of a fundamental vector field", Measure::relative, 1e-10,
                   fundamental_vector_suite});
    out.push_back({"forms.naturality", "theta is invariant under chart changes", Measure::relative, 1e-8, naturality_suite});
    out.push_back({"forms.antisymmetry", "two-form values change sign exactly under argument swap", Measure::absolute, 0.0,
                   antisymmetry_suite});
    out.push_back({"forms.realizability", "vanishing torsions and symmetric tensors classify frames identically (disagreement count)",
                   Measure::absolute, 0.0, realizability_suite});
    out.push_back({"forms.partials", "exact partials of theta agree with central differences", Measure::relative, 1e-6, partials_suite});
    out.push_back({"forms.first_torsion", "the first torsion equals the antisymmetrized second-order tensor term", Measure::relative, 1e-8,
                   first_torsion_suite});
    out.push_back({"forms.structural", "structural equations and all torsions vanish on classical frames", Measure::relative, 1e-7,
                   structural_suite});
    out.push_back({"forms.curvature", "curvature matches the four-term local formula", Measure::relative, 1e-8, curvature_suite});
    out.push_back({"forms.schwarzian_moebius", "the Schwarzian of a Moebius map vanishes", Measure::absolute, 1e-10,
                   schwarzian_moebius_suite});
    out.push_back({"forms.schwarzian_cocycle", "S(g o f) = f'^2 S(g) o f + S(f)", Measure::relative, 1e-8, schwarzian_cocycle_suite});
}

}  // namespace ff::verify
