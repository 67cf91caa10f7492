#include "formalframes/deform.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "formalframes/connection.hpp"
#include "formalframes/forms.hpp"
#include "formalframes/linalg.hpp"

namespace ff {

namespace {

void require_square_pair(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x, const char* what)
{
    if (a.rows() != a.cols() || x.rows() != a.rows() || x.cols() != a.cols() || a.rows() < 1) {
        throw ShapeError(std::string(what) + ": blocks must be square of equal size");
    }
}

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a * b - b * a; }

Eigen::MatrixXd inverse_checked(const Eigen::MatrixXd& m, const char* what)
{
    require_invertible(m, what);
    return m.inverse();
}

std::vector<double> matvec(const Eigen::MatrixXd& m, std::span<const double> v)
{
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t q = 0; q < v.size(); ++q) x(static_cast<Eigen::Index>(q)) = v[q];
    const Eigen::VectorXd y = m * x;
    return {y.data(), y.data() + y.size()};
}

/// Matrix (t . w)^i_j = t^i_{jk} w^k.
Eigen::MatrixXd contract_direction(const LowerTensor& t, std::span<const double> w)
{
    return to_matrix(contract_last(t, std::vector<double>(w.begin(), w.end())));
}

/// out^i_{jk} = t^i_{jl} m^l_k.
LowerTensor times_last(const LowerTensor& t, const Eigen::MatrixXd& m)
{
    const int n = t.dim();
    LowerTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l) acc += t.at(i, {j, l}) * m(l, k);
                out.at(i, {j, k}) = acc;
            }
        }
    }
    return out;
}

/// out^i_{jk} = h^i_a t^a_{bc} g^b_j g^c_k.
LowerTensor conjugate_tensor(const LowerTensor& t, const Eigen::MatrixXd& h, const Eigen::MatrixXd& g)
{
    const int n = t.dim();
    LowerTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) {
                        for (int c = 0; c < n; ++c) acc += h(i, a) * t.at(a, {b, c}) * g(b, j) * g(c, k);
                    }
                }
                out.at(i, {j, k}) = acc;
            }
        }
    }
    return out;
}

/// out^i_{jk} = h^i_a t^a_{bk} g^b_j (derivative slot untouched).
LowerTensor conjugate_first_slot(const LowerTensor& t, const Eigen::MatrixXd& h, const Eigen::MatrixXd& g)
{
    const int n = t.dim();
    LowerTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) acc += h(i, a) * t.at(a, {b, k}) * g(b, j);
                }
                out.at(i, {j, k}) = acc;
            }
        }
    }
    return out;
}

}  // namespace

void TangentGroupElement::validate() const
{
    require_square_pair(A, X, "tangent group element");
    require_invertible(A, "tangent group element block A");
}

void TangentAlgebraElement::validate() const { require_square_pair(A, X, "tangent algebra element"); }

TangentGroupElement tg_identity(int n)
{
    if (n < 1) throw ShapeError("tangent group needs n >= 1");
    return {Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, n)};
}

TangentGroupElement tg_compose(const TangentGroupElement& p, const TangentGroupElement& q)
{
    p.validate();
    q.validate();
    if (p.dim() != q.dim()) throw ShapeError("tangent group elements have different sizes");
    const Eigen::MatrixXd binv = inverse_checked(q.A, "tangent group element block B");
    return {p.A * q.A, binv * p.X * q.A + q.X};
}

TangentGroupElement tg_inverse(const TangentGroupElement& p)
{
    p.validate();
    const Eigen::MatrixXd ainv = inverse_checked(p.A, "tangent group element block A");
    return {ainv, -p.A * p.X * ainv};
}

Eigen::MatrixXd tg_matrix(const TangentGroupElement& p)
{
    require_square_pair(p.A, p.X, "tangent group element");
    const Eigen::Index n = p.A.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = p.A;
    m.bottomRightCorner(n, n) = p.A;
    m.bottomLeftCorner(n, n) = p.A * p.X;
    return m;
}

Eigen::MatrixXd tg_matrix(const TangentAlgebraElement& v)
{
    v.validate();
    const Eigen::Index n = v.A.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = v.A;
    m.bottomRightCorner(n, n) = v.A;
    m.bottomLeftCorner(n, n) = v.X;
    return m;
}

TangentAlgebraElement tg_algebra_from_matrix(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) throw ShapeError("block matrix must be 2n x 2n");
    const Eigen::Index n = m.rows() / 2;
    return {0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n)), m.bottomLeftCorner(n, n)};
}

TangentAlgebraElement tg_bracket(const TangentAlgebraElement& u, const TangentAlgebraElement& v)
{
    u.validate();
    v.validate();
    if (u.dim() != v.dim()) throw ShapeError("tangent algebra elements have different sizes");
    return {commutator(u.A, v.A), commutator(u.X, v.A) + commutator(u.A, v.X)};
}

TangentAlgebraElement tg_adjoint(const TangentGroupElement& p, const TangentAlgebraElement& v)
{
    p.validate();
    v.validate();
    if (p.dim() != v.dim()) throw ShapeError("tangent group and algebra elements have different sizes");
    const Eigen::MatrixXd ainv = inverse_checked(p.A, "tangent group element block A");
    return {p.A * v.A * ainv, p.A * (commutator(p.X, v.A) + v.X) * ainv};
}

LowerTensor deformation_transform(const LowerTensor& mu, const TransitionJet& t)
{
    if (mu.order() != 2 || mu.dim() != t.dim()) throw ShapeError("deformation tensor must be order 2 of the chart dimension");
    if (t.order() < 1) throw ShapeError("deformation transform needs the first derivative");
    const Eigen::MatrixXd dphi = to_matrix(t.D[0]);
    const Eigen::MatrixXd psi = to_matrix(inverse_matrix_tensor(t.D[0], "transition derivative"));
    return conjugate_tensor(mu, dphi, psi);
}

T2Point t2m_transition(const T2Point& c, const TransitionJet& t)
{
    const int n = t.dim();
    if (t.order() < 2) throw ShapeError("second tangent bundle transitions need a jet of order 2");
    for (const auto* v : {&c.x, &c.v, &c.xdot, &c.vdot}) {
        if (static_cast<int>(v->size()) != n) throw ShapeError("second tangent bundle point has the wrong dimension");
    }
    const Eigen::MatrixXd dphi = to_matrix(t.D[0]);
    T2Point out{t.value, matvec(dphi, c.v), matvec(dphi, c.xdot), matvec(dphi, c.vdot)};
    const Eigen::MatrixXd hv = contract_direction(t.D[1], c.v);
    const std::vector<double> extra = matvec(hv, c.xdot);
    for (int i = 0; i < n; ++i) out.vdot[static_cast<std::size_t>(i)] += extra[static_cast<std::size_t>(i)];
    return out;
}

Eigen::MatrixXd gamma_contract(const LowerTensor& gamma, std::span<const double> v)
{
    if (gamma.order() != 2 || static_cast<int>(v.size()) != gamma.dim()) throw ShapeError("Gamma contraction shape mismatch");
    return contract_direction(gamma, v);
}

T2Vector horizontal_lift(const LowerTensor& gamma, std::span<const double> v, std::span<const double> w)
{
    if (static_cast<int>(w.size()) != gamma.dim()) throw ShapeError("lifted vector has the wrong dimension");
    const std::vector<double> vd = matvec(-gamma_contract(gamma, v), w);
    return {std::vector<double>(w.begin(), w.end()), vd};
}

T2Vector vertical_lift(std::span<const double> w)
{
    return {std::vector<double>(w.size(), 0.0), std::vector<double>(w.begin(), w.end())};
}

Eigen::MatrixXd lift_block_identity(const LowerTensor& gamma, const TransitionJet& t, std::span<const double> v)
{
    const int n = t.dim();
    const LowerTensor gamma_hat = christoffel_transform(gamma, t);
    const Eigen::MatrixXd dphi = to_matrix(t.D[0]);
    const std::vector<double> v_hat = matvec(dphi, v);
    Eigen::MatrixXd left = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    left.bottomLeftCorner(n, n) = gamma_contract(gamma_hat, v_hat);
    Eigen::MatrixXd middle = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    middle.topLeftCorner(n, n) = dphi;
    middle.bottomRightCorner(n, n) = dphi;
    middle.bottomLeftCorner(n, n) = contract_direction(t.D[1], v);
    Eigen::MatrixXd right = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    right.bottomLeftCorner(n, n) = -gamma_contract(gamma, v);
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    target.topLeftCorner(n, n) = dphi;
    target.bottomRightCorner(n, n) = dphi;
    return left * middle * right - target;
}

std::vector<double> christoffel_torsion(const LowerTensor& gamma, std::span<const double> a, std::span<const double> b)
{
    const int n = gamma.dim();
    if (gamma.order() != 2 || static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) throw ShapeError("torsion shape mismatch");
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double g = gamma.at(i, {j, k});
                out[static_cast<std::size_t>(i)] += g * (a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)] -
                                                         b[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(k)]);
            }
        }
    }
    return out;
}

std::vector<double> covariant_derivative_residual(const LowerTensor& gamma, const PolynomialMap& field, std::span<const double> v,
                                                  std::span<const double> p)
{
    const int n = gamma.dim();
    if (gamma.order() != 2 || static_cast<int>(field.size()) != n || static_cast<int>(v.size()) != n || static_cast<int>(p.size()) != n) {
        throw ShapeError("covariant derivative inputs have inconsistent dimensions");
    }
    const std::vector<double> f = evaluate(field, p);
    std::vector<double> df(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) df[static_cast<std::size_t>(a)] += field[static_cast<std::size_t>(a)].derivative(b).evaluate(p) * v[static_cast<std::size_t>(b)];
    }
    // nabla_v X = DX(v) + Gamma^a_{bc} X^b v^c.
    std::vector<double> lhs = df;
    const std::vector<double> gfv = matvec(gamma_contract(gamma, v), f);
    const std::vector<double> tor = christoffel_torsion(gamma, v, f);
    for (int a = 0; a < n; ++a) lhs[static_cast<std::size_t>(a)] += gfv[static_cast<std::size_t>(a)] + tor[static_cast<std::size_t>(a)];
    // Vertical parts of DX(v) and of the horizontal lift of v at X(p).
    const T2Vector h = horizontal_lift(gamma, f, v);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) out[static_cast<std::size_t>(a)] = lhs[static_cast<std::size_t>(a)] - (df[static_cast<std::size_t>(a)] - h.vdot[static_cast<std::size_t>(a)]);
    return out;
}

void DeformationPair::set_chart(const std::string& chart, DeformationChart data)
{
    for (const auto* f : {&data.theta, &data.mu}) {
        if (f->dim() != n_ || f->order() != 2 || f->vars() != n_) throw ShapeError("deformation chart data must be order 2 in n variables");
    }
    charts_.insert_or_assign(chart, std::move(data));
}

const DeformationChart& DeformationPair::chart(const std::string& chart) const
{
    const auto it = charts_.find(chart);
    if (it == charts_.end()) throw DomainError("deformation pair is not defined on chart '" + chart + "'");
    return it->second;
}

PairLawResidual pair_law_residual_at(const LowerTensor& gamma, const LowerTensor& mu, const LowerTensor& gamma_hat, const LowerTensor& mu_hat,
                                     const TransitionJet& t)
{
    const int n = t.dim();
    if (t.order() < 2) throw ShapeError("transformation laws need a transition jet of order 2");
    PairLawResidual res;
    const LowerTensor gamma_moved = christoffel_transform(gamma, t);
    const LowerTensor mu_moved = deformation_transform(mu, t);
    // The Christoffel law subtracts two terms of size |H phi| |psi|^2 and |D phi| |Gamma| |psi|^2; rounding scales with them.
    const double psi = max_abs(inverse_matrix_tensor(t.D[0], "transition derivative"));
    const double terms = psi * psi * std::max(max_abs(t.D[1]), max_abs(t.D[0]) * std::max(max_abs(gamma), max_abs(mu)));
    const double scale = std::max({1.0, terms, max_abs(gamma_moved), max_abs(gamma_hat), max_abs(mu_moved), max_abs(mu_hat)});
    res.componentwise = std::max(max_abs_diff(gamma_moved, gamma_hat), max_abs_diff(mu_moved, mu_hat)) / scale;

    const Eigen::MatrixXd dphi = to_matrix(t.D[0]);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n) = dphi;
    g.bottomRightCorner(n, n) = dphi;
    const Eigen::MatrixXd ginv = inverse_checked(g, "transition gauge");
    for (int k = 0; k < n; ++k) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(k)] = 1.0;
        const std::vector<double> pushed = matvec(dphi, e);
        const Eigen::MatrixXd w = tg_matrix(TangentAlgebraElement{contract_direction(gamma, e), contract_direction(mu, e)});
        const Eigen::MatrixXd w_hat = tg_matrix(TangentAlgebraElement{contract_direction(gamma_hat, pushed), contract_direction(mu_hat, pushed)});
        Eigen::MatrixXd dg = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        const Eigen::MatrixXd hk = contract_direction(t.D[1], e);
        dg.topLeftCorner(n, n) = hk;
        dg.bottomRightCorner(n, n) = hk;
        const Eigen::MatrixXd inhomogeneous = ginv * dg;
        const Eigen::MatrixXd conjugated = ginv * w_hat * g;
        const Eigen::MatrixXd expected = inhomogeneous + conjugated;
        const double spread = ginv.cwiseAbs().maxCoeff() * w_hat.cwiseAbs().maxCoeff() * g.cwiseAbs().maxCoeff();
        const double size = std::max({1.0, w.cwiseAbs().maxCoeff(), inhomogeneous.cwiseAbs().maxCoeff(), conjugated.cwiseAbs().maxCoeff(), spread});
        res.gauge = std::max(res.gauge, (w - expected).cwiseAbs().maxCoeff() / size);
    }
    return res;
}

PairLawResidual pair_law_residual(const DeformationChart& source, const DeformationChart& target, const SmoothMapSpec& phi,
                                  std::span<const double> p)
{
    const TransitionJet t = transition_jet(phi, p, 2);
    return pair_law_residual_at(source.theta.evaluate(p), source.mu.evaluate(p), target.theta.evaluate(t.value), target.mu.evaluate(t.value), t);
}

DeformationPairReport check_deformation_pair(const DeformationPair& pair, const std::vector<ChartTransition>& transitions,
                                             const std::vector<std::vector<double>>& points, double tol)
{
    DeformationPairReport rep;
    for (const auto& tr : transitions) {
        const DeformationChart& source = pair.chart(tr.from);
        const DeformationChart& target = pair.chart(tr.to);
        for (const auto& p : points) {
            const PairLawResidual r = pair_law_residual(source, target, tr.phi, p);
            rep.max_componentwise = std::max(rep.max_componentwise, r.componentwise);
            rep.max_gauge = std::max(rep.max_gauge, r.gauge);
            ++rep.evaluations;
        }
    }
    const bool by_components = rep.max_componentwise <= tol;
    const bool by_gauge = rep.max_gauge <= tol;
    if (by_components != by_gauge) {
        std::ostringstream os;
        os << "componentwise and gauge transformation laws disagree (" << rep.max_componentwise << " vs " << rep.max_gauge << ")";
        throw ConsistencyError(os.str());
    }
    rep.valid = by_components;
    return rep;
}

void GarciaPairCoords::validate() const
{
    const int n = dim();
    if (n < 1) throw ShapeError("jet point needs n >= 1");
    for (const auto* t : {&a, &b}) {
        if (t->dim() != n || t->order() != 1) throw ShapeError("jet point order-1 blocks have the wrong shape");
    }
    for (const auto* t : {&a2, &b2}) {
        if (t->dim() != n || t->order() != 2) throw ShapeError("jet point order-2 blocks have the wrong shape");
    }
    require_invertible(to_matrix(a), "jet point frame block");
}

GarciaPairTangent GarciaPairTangent::zero(int n)
{
    return {std::vector<double>(static_cast<std::size_t>(n), 0.0), LowerTensor(n, 1), LowerTensor(n, 1), LowerTensor(n, 2), LowerTensor(n, 2)};
}

FramePairCoords deform_frame_iso(const GarciaPairCoords& s)
{
    s.validate();
    const int n = s.dim();
    const Eigen::MatrixXd a = to_matrix(s.a);
    FrameCoords u{n, 2, "", s.x, {s.a, times_last(s.a2, a)}};
    JetAlgebraElement y{n, 2, {s.b, times_last(s.b2, a)}};
    return {std::move(u), std::move(y)};
}

FramePairTangent deform_frame_iso_pushforward(const GarciaPairCoords& s, const GarciaPairTangent& ds)
{
    s.validate();
    const Eigen::MatrixXd a = to_matrix(s.a);
    const Eigen::MatrixXd da = to_matrix(ds.da);
    const int n = s.dim();
    BundleTangent du{n, 2, ds.dx, {ds.da, times_last(ds.da2, a) + times_last(s.a2, da)}};
    JetAlgebraElement dy{n, 2, {ds.db, times_last(ds.db2, a) + times_last(s.b2, da)}};
    return {std::move(du), std::move(dy)};
}

GarciaPairCoords garcia_pair_action(const GarciaPairCoords& s, const TangentGroupElement& gx)
{
    s.validate();
    gx.validate();
    if (gx.dim() != s.dim()) throw ShapeError("action element size differs from the jet point");
    const Eigen::MatrixXd g = gx.A;
    const Eigen::MatrixXd h = inverse_checked(g, "action block g");
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(g.rows(), g.cols());
    return {s.x,
            from_matrix(to_matrix(s.a) * g),
            from_matrix(h * to_matrix(s.b) * g + gx.X),
            conjugate_first_slot(s.a2, id, g),
            conjugate_first_slot(s.b2, h, g)};
}

GarciaPairTangent garcia_pair_action_pushforward(const GarciaPairTangent& ds, const TangentGroupElement& gx)
{
    gx.validate();
    const Eigen::MatrixXd g = gx.A;
    const Eigen::MatrixXd h = inverse_checked(g, "action block g");
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(g.rows(), g.cols());
    return {ds.dx,
            from_matrix(to_matrix(ds.da) * g),
            from_matrix(h * to_matrix(ds.db) * g),
            conjugate_first_slot(ds.da2, id, g),
            conjugate_first_slot(ds.db2, h, g)};
}

FramePairCoords frame_pair_action(const FramePairCoords& f, const TangentGroupElement& gx)
{
    gx.validate();
    if (gx.dim() != f.u.n || f.u.r != 2 || f.y.r != 2) throw ShapeError("frame pair action needs order-2 data of matching size");
    const JetGroupElement g = gl_inclusion(gx.A, 2);
    JetAlgebraElement y = adjoint_action(g, f.y);
    y.tensors[0] += from_matrix(gx.X);
    return {right_action(f.u, g), std::move(y)};
}

TangentAlgebraElement deform_canonical_form(const GarciaPairCoords& s, const GarciaPairTangent& ds)
{
    s.validate();
    const Eigen::MatrixXd c = to_matrix(inverse_matrix_tensor(s.a, "jet point frame block"));
    const Eigen::MatrixXd delta_a = to_matrix(ds.da) - contract_direction(s.a2, ds.dx);
    const Eigen::MatrixXd delta_b = to_matrix(ds.db) - contract_direction(s.b2, ds.dx);
    const Eigen::MatrixXd b = to_matrix(s.b);
    return {c * delta_a, delta_b - b * c * delta_a + c * delta_a * b};
}

TangentAlgebraElement frame_pair_canonical_form(const FramePairCoords& f, const FramePairTangent& df)
{
    const AlgebraVector theta = canonical_form(f.u, df.du);
    const Eigen::MatrixXd t1 = to_matrix(component(theta, 1));
    const Eigen::MatrixXd y1 = to_matrix(f.y.tensors[0]);
    const Eigen::MatrixXd y2t0 = contract_direction(f.y.tensors[1], theta.base);
    return {t1, to_matrix(df.dy.tensors[0]) - y2t0 + commutator(t1, y1)};
}

}  // namespace ff
