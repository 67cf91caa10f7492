#include "formalframes/bundle.hpp"

#include <string>
#include <utility>

#include "formalframes/linalg.hpp"

namespace ff {

namespace {

void validate_tensors(int n, int count, const std::vector<LowerTensor>& ts, const char* what)
{
    if (static_cast<int>(ts.size()) != count) throw ShapeError(std::string(what) + ": wrong number of tensors");
    for (std::size_t q = 0; q < ts.size(); ++q) {
        if (ts[q].dim() != n || ts[q].order() != static_cast<int>(q) + 1) {
            throw ShapeError(std::string(what) + ": tensor shape does not match (n, order)");
        }
    }
}

std::vector<double> matvec(const LowerTensor& m, const std::vector<double>& x)
{
    const int n = m.dim();
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(i)] += m(i, j) * x[static_cast<std::size_t>(j)];
    }
    return y;
}

}  // namespace

void FrameCoords::validate() const
{
    if (n < 1 || r < 1) throw ShapeError("frame needs n >= 1 and r >= 1");
    if (static_cast<int>(base.size()) != n) throw ShapeError("frame base point has the wrong dimension");
    validate_tensors(n, r, tensors, "frame");
    require_invertible(to_matrix(tensors.front()), "order-1 frame tensor");
}

JetGroupElement FrameCoords::fiber() const { return JetGroupElement(n, r, tensors); }

FrameCoords FrameCoords::truncated(int s) const
{
    if (s < 1 || s > r) throw ShapeError("truncation order out of range");
    return FrameCoords{n, s, chart, base, std::vector<LowerTensor>(tensors.begin(), tensors.begin() + s)};
}

FrameCoords identity_frame(int n, int r, std::vector<double> base, std::string chart)
{
    FrameCoords u{n, r, std::move(chart), std::move(base), jet_identity(n, r).tensors()};
    u.validate();
    return u;
}

BundleTangent BundleTangent::zero(int n, int r)
{
    BundleTangent x{n, r, std::vector<double>(static_cast<std::size_t>(n), 0.0), {}};
    for (int k = 1; k <= r; ++k) x.tensors.emplace_back(n, k);
    return x;
}

void BundleTangent::validate() const
{
    if (n < 1 || r < 0) throw ShapeError("tangent needs n >= 1 and r >= 0");
    if (static_cast<int>(base.size()) != n) throw ShapeError("tangent base component has the wrong dimension");
    validate_tensors(n, r, tensors, "tangent");
}

std::size_t BundleTangent::size() const { return algebra_dimension(n, r + 1); }

Eigen::VectorXd BundleTangent::flatten() const
{
    validate();
    Eigen::VectorXd v(static_cast<Eigen::Index>(size()));
    Eigen::Index q = 0;
    for (double b : base) v(q++) = b;
    for (const auto& t : tensors) {
        for (double e : t.entries()) v(q++) = e;
    }
    return v;
}

BundleTangent BundleTangent::unflatten(const Eigen::VectorXd& v, int n, int r)
{
    BundleTangent x = zero(n, r);
    if (static_cast<std::size_t>(v.size()) != x.size()) throw ShapeError("flat tangent has the wrong length");
    Eigen::Index q = 0;
    for (auto& b : x.base) b = v(q++);
    for (auto& t : x.tensors) {
        for (auto& e : t.entries()) e = v(q++);
    }
    return x;
}

BundleTangent BundleTangent::coordinate(int n, int r, std::size_t q)
{
    BundleTangent x = zero(n, r);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.size()));
    if (q >= x.size()) throw ShapeError("coordinate index out of range");
    v(static_cast<Eigen::Index>(q)) = 1.0;
    return unflatten(v, n, r);
}

BundleTangent BundleTangent::projected(int s) const
{
    if (s < 0 || s > r) throw ShapeError("projection order out of range");
    return BundleTangent{n, s, base, std::vector<LowerTensor>(tensors.begin(), tensors.begin() + s)};
}

FrameCoords right_action(const FrameCoords& u, const JetGroupElement& a)
{
    u.validate();
    if (u.n != a.dim() || u.r != a.order()) throw ShapeError("frame and group element have different (n, r)");
    return FrameCoords{u.n, u.r, u.chart, u.base, compose_tensors(u.tensors, a.tensors(), u.r)};
}

FrameCoords change_chart(const FrameCoords& u, const TransitionJet& t, std::string new_chart, const Tolerance& tol)
{
    u.validate();
    if (t.dim() != u.n) throw ShapeError("transition jet dimension differs from the frame dimension");
    if (t.order() < u.r) throw ShapeError("transition jet order is lower than the frame order");
    for (int i = 0; i < u.n; ++i) {
        if (!tol.close(t.p[static_cast<std::size_t>(i)], u.base[static_cast<std::size_t>(i)])) {
            throw DomainError("transition jet is not evaluated at the frame base point");
        }
    }
    const JetGroupElement left = jet_of_transition_as_group(t.truncated(u.r));
    return FrameCoords{u.n, u.r, std::move(new_chart), t.value, compose_tensors(left.tensors(), u.tensors, u.r)};
}

BundleTangent right_action_pushforward(const FrameCoords& u, const BundleTangent& x, const JetGroupElement& a)
{
    u.validate();
    x.validate();
    if (x.n != u.n || x.r != u.r || a.dim() != u.n || a.order() != u.r) throw ShapeError("pushforward shapes do not match");
    TensorList<DualD> moving;
    for (int k = 0; k < u.r; ++k) moving.push_back(lift(u.tensors[static_cast<std::size_t>(k)], x.tensors[static_cast<std::size_t>(k)]));
    const TensorList<DualD> prod = compose_tensors(moving, lift(a.tensors()), u.r);
    BundleTangent out{u.n, u.r, x.base, {}};
    for (const auto& t : prod) out.tensors.push_back(eps_part(t));
    return out;
}

BundleTangent change_chart_pushforward(const FrameCoords& u, const BundleTangent& x, const TransitionJet& t)
{
    u.validate();
    x.validate();
    if (x.n != u.n || x.r != u.r || t.dim() != u.n) throw ShapeError("pushforward shapes do not match");
    if (t.order() < u.r + 1) throw ShapeError("chart pushforward needs a transition jet of order r + 1");
    // Along the curve h + s X^0 the derivative of D^k phi is D^{k+1} phi contracted with X^0.
    TensorList<DualD> left;
    for (int k = 1; k <= u.r; ++k) {
        left.push_back(lift(t.D[static_cast<std::size_t>(k - 1)], contract_last(t.D[static_cast<std::size_t>(k)], x.base)));
    }
    TensorList<DualD> moving;
    for (int k = 0; k < u.r; ++k) moving.push_back(lift(u.tensors[static_cast<std::size_t>(k)], x.tensors[static_cast<std::size_t>(k)]));
    const TensorList<DualD> prod = compose_tensors(left, moving, u.r);
    BundleTangent out{u.n, u.r, matvec(t.D.front(), x.base), {}};
    for (const auto& p : prod) out.tensors.push_back(eps_part(p));
    return out;
}

BundleTangent fundamental_vector(const FrameCoords& u, const JetAlgebraElement& x)
{
    u.validate();
    x.validate();
    if (x.n != u.n || x.r != u.r) throw ShapeError("algebra element shape does not match the frame");
    TensorList<DualD> curve;
    for (int k = 1; k <= u.r; ++k) {
        const LowerTensor id = k == 1 ? identity_tensor(u.n) : LowerTensor(u.n, k);
        curve.push_back(lift(id, x.tensors[static_cast<std::size_t>(k - 1)]));
    }
    const TensorList<DualD> prod = compose_tensors(lift(u.tensors), curve, u.r);
    BundleTangent out = BundleTangent::zero(u.n, u.r);
    for (int k = 0; k < u.r; ++k) out.tensors[static_cast<std::size_t>(k)] = eps_part(prod[static_cast<std::size_t>(k)]);
    return out;
}

BundleTangent tangent_map_apply(const std::vector<LowerTensor>& u_tensors, const AlgebraVector& y)
{
    y.validate();
    const int n = y.n;
    const int r = y.r;
    if (static_cast<int>(u_tensors.size()) != r) throw ShapeError("tangent map needs r tensors");
    const int s = r - 1;
    BundleTangent out{n, s, matvec(u_tensors.front(), y.base), {}};
    if (s == 0) return out;
    std::vector<DualD> y0;
    for (double v : y.base) y0.emplace_back(0.0, v);
    const TensorList<DualD> moved = translate_tensors(lift(u_tensors), y0, s);
    TensorList<DualD> curve;
    for (int k = 1; k <= s; ++k) {
        const LowerTensor id = k == 1 ? identity_tensor(n) : LowerTensor(n, k);
        curve.push_back(lift(id, y.tensors[static_cast<std::size_t>(k - 1)]));
    }
    const TensorList<DualD> prod = compose_tensors(moved, curve, s);
    for (const auto& p : prod) out.tensors.push_back(eps_part(p));
    return out;
}

Eigen::MatrixXd tangent_map_matrix(const std::vector<LowerTensor>& u_tensors, int n, int r)
{
    const std::size_t size = algebra_dimension(n, r);
    Eigen::MatrixXd l(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
    for (std::size_t q = 0; q < size; ++q) {
        unit.setZero();
        unit(static_cast<Eigen::Index>(q)) = 1.0;
        l.col(static_cast<Eigen::Index>(q)) = tangent_map_apply(u_tensors, AlgebraVector::unflatten(unit, n, r)).flatten();
    }
    return l;
}

TangentIso::TangentIso(const FrameCoords& u) : n_(u.n), r_(u.r)
{
    u.validate();
    l_ = tangent_map_matrix(u.tensors, n_, r_);
    lu_.compute(l_);
    if (!l_.allFinite()) throw SingularError("tangent isomorphism has non-finite entries");
}

BundleTangent TangentIso::apply(const AlgebraVector& y) const
{
    if (y.n != n_ || y.r != r_) throw ShapeError("algebra vector shape does not match the frame");
    return BundleTangent::unflatten(l_ * y.flatten(), n_, r_ - 1);
}

AlgebraVector TangentIso::solve(const BundleTangent& v) const
{
    if (v.n != n_ || v.r != r_ - 1) throw ShapeError("tangent vector must belong to the order-(r-1) bundle");
    return AlgebraVector::unflatten(solve_flat(v.flatten()), n_, r_);
}

Eigen::VectorXd TangentIso::solve_flat(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }

}  // namespace ff
