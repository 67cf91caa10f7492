#include "formalframes/jetgroup.hpp"

#include <array>
#include <mutex>
#include <string>

#include "formalframes/linalg.hpp"
#include "formalframes/taylor.hpp"

namespace ff {

namespace {

std::vector<std::vector<ProductTerm>> build_term_table()
{
    std::vector<std::vector<ProductTerm>> table(static_cast<std::size_t>(kMaxJetOrder) + 1);
    table[1] = {ProductTerm{1, {{0}}}};
    for (int k = 2; k <= kMaxJetOrder; ++k) {
        const int pos = k - 1;
        auto& out = table[static_cast<std::size_t>(k)];
        for (const ProductTerm& t : table[static_cast<std::size_t>(k - 1)]) {
            // Derivative of the a-factor: one more a-slot, fed by b[1] carrying the new index.
            ProductTerm da = t;
            ++da.a_order;
            da.slots.push_back({pos});
            out.push_back(std::move(da));
            // Derivative of each b-factor: the new index is appended to that factor.
            for (std::size_t s = 0; s < t.slots.size(); ++s) {
                ProductTerm db = t;
                db.slots[s].push_back(pos);
                out.push_back(std::move(db));
            }
        }
    }
    return table;
}

void require_same_shape(const JetGroupElement& a, const JetGroupElement& b)
{
    if (a.dim() != b.dim() || a.order() != b.order()) throw ShapeError("jet group elements have different (n, r)");
}

void validate_tensor_list(int n, int first_order, const std::vector<LowerTensor>& ts, std::size_t count, const char* what)
{
    if (ts.size() != count) throw ShapeError(std::string(what) + ": wrong number of tensors");
    for (std::size_t q = 0; q < ts.size(); ++q) {
        if (ts[q].dim() != n || ts[q].order() != first_order + static_cast<int>(q)) {
            throw ShapeError(std::string(what) + ": tensor shape does not match (n, order)");
        }
    }
}

}  // namespace

const std::vector<ProductTerm>& product_terms(int k)
{
    static const std::vector<std::vector<ProductTerm>> table = build_term_table();
    if (k < 1 || k > kMaxJetOrder) throw DomainError("product order outside the supported range");
    return table[static_cast<std::size_t>(k)];
}

BasicTensor<DualD> lift(const LowerTensor& t)
{
    return t.map([](double x) { return DualD(x); });
}

BasicTensor<DualD> lift(const LowerTensor& value, const LowerTensor& deriv)
{
    if (!value.same_shape(deriv)) throw ShapeError("value and derivative shapes differ");
    std::vector<DualD> e;
    e.reserve(value.size());
    for (std::size_t q = 0; q < value.size(); ++q) e.emplace_back(value[q], deriv[q]);
    return BasicTensor<DualD>(value.dim(), value.order(), std::move(e));
}

TensorList<DualD> lift(const std::vector<LowerTensor>& ts)
{
    TensorList<DualD> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(lift(t));
    return out;
}

LowerTensor value_part(const BasicTensor<DualD>& t)
{
    return t.map([](const DualD& x) { return x.v; });
}

LowerTensor eps_part(const BasicTensor<DualD>& t)
{
    return t.map([](const DualD& x) { return x.d; });
}

JetGroupElement::JetGroupElement(int n, int r, std::vector<LowerTensor> tensors) : n_(n), r_(r), tensors_(std::move(tensors))
{
    if (n < 1 || r < 1) throw ShapeError("jet group needs n >= 1 and r >= 1");
    if (r > kMaxJetOrder) throw DomainError("jet order exceeds the supported maximum");
    validate_tensor_list(n, 1, tensors_, static_cast<std::size_t>(r), "jet group element");
    require_invertible(to_matrix(tensors_.front()), "order-1 tensor of a jet group element");
}

const LowerTensor& JetGroupElement::tensor(int k) const
{
    if (k < 1 || k > r_) throw ShapeError("tensor order out of range");
    return tensors_[static_cast<std::size_t>(k - 1)];
}

JetGroupElement JetGroupElement::truncated(int s) const
{
    if (s < 1 || s > r_) throw ShapeError("truncation order out of range");
    return JetGroupElement(n_, s, std::vector<LowerTensor>(tensors_.begin(), tensors_.begin() + s));
}

JetAlgebraElement JetAlgebraElement::zero(int n, int r)
{
    JetAlgebraElement x{n, r, {}};
    for (int k = 1; k <= r; ++k) x.tensors.emplace_back(n, k);
    return x;
}

void JetAlgebraElement::validate() const
{
    if (n < 1 || r < 1) throw ShapeError("algebra element needs n >= 1 and r >= 1");
    validate_tensor_list(n, 1, tensors, static_cast<std::size_t>(r), "jet algebra element");
}

AlgebraVector AlgebraVector::zero(int n, int r)
{
    AlgebraVector y{n, r, std::vector<double>(static_cast<std::size_t>(n), 0.0), {}};
    for (int k = 1; k <= r - 1; ++k) y.tensors.emplace_back(n, k);
    return y;
}

void AlgebraVector::validate() const
{
    if (n < 1 || r < 1) throw ShapeError("algebra vector needs n >= 1 and r >= 1");
    if (static_cast<int>(base.size()) != n) throw ShapeError("algebra vector base has the wrong length");
    validate_tensor_list(n, 1, tensors, static_cast<std::size_t>(r - 1), "algebra vector");
}

std::size_t algebra_dimension(int n, int r)
{
    std::size_t total = 0;
    for (int k = 1; k <= r; ++k) total += ipow(n, k);
    return total;
}

std::size_t AlgebraVector::size() const { return algebra_dimension(n, r); }

Eigen::VectorXd AlgebraVector::flatten() const
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

AlgebraVector AlgebraVector::unflatten(const Eigen::VectorXd& v, int n, int r)
{
    AlgebraVector y = zero(n, r);
    if (static_cast<std::size_t>(v.size()) != y.size()) throw ShapeError("flat vector has the wrong length");
    Eigen::Index q = 0;
    for (auto& b : y.base) b = v(q++);
    for (auto& t : y.tensors) {
        for (auto& e : t.entries()) e = v(q++);
    }
    return y;
}

double max_abs_diff(const AlgebraVector& a, const AlgebraVector& b)
{
    if (a.n != b.n || a.r != b.r) throw ShapeError("algebra vectors have different shapes");
    return (a.flatten() - b.flatten()).cwiseAbs().maxCoeff();
}

JetGroupElement jet_identity(int n, int r)
{
    std::vector<LowerTensor> ts;
    ts.push_back(identity_tensor(n));
    for (int k = 2; k <= r; ++k) ts.emplace_back(n, k);
    return JetGroupElement(n, r, std::move(ts));
}

JetGroupElement jet_compose(const JetGroupElement& a, const JetGroupElement& b)
{
    require_same_shape(a, b);
    return JetGroupElement(a.dim(), a.order(), compose_tensors(a.tensors(), b.tensors(), a.order()));
}

JetGroupElement jet_inverse(const JetGroupElement& a)
{
    const int n = a.dim();
    const int r = a.order();
    const LowerTensor inv1 = inverse_matrix_tensor(a.tensor(1), "order-1 tensor");
    std::vector<LowerTensor> b;
    b.push_back(inv1);
    for (int k = 2; k <= r; ++k) b.emplace_back(n, k);
    for (int k = 2; k <= r; ++k) {
        // With b[k] = 0, (ab)[k] collects exactly the terms not containing b[k].
        const LowerTensor rest = product_component(a.tensors(), b, k);
        LowerTensor bk(n, k);
        const std::size_t lower = bk.lower_size();
        for (int i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < lower; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l) acc += inv1(i, l) * rest[static_cast<std::size_t>(l) * lower + j];
                bk[static_cast<std::size_t>(i) * lower + j] = -acc;
            }
        }
        b[static_cast<std::size_t>(k - 1)] = std::move(bk);
    }
    return JetGroupElement(n, r, std::move(b));
}

JetGroupElement epsilon_embed(const ClassicalJet& c, const Tolerance& tol)
{
    for (std::size_t q = 1; q < c.s.size(); ++q) {
        const double gap = max_asymmetry(c.s[q]);
        if (gap > tol.atol + tol.rtol * max_abs(c.s[q])) {
            throw DomainError("classical jet has an asymmetric tensor of order " + std::to_string(q + 1));
        }
    }
    return JetGroupElement(c.n, c.r, c.s);
}

ClassicalJet kappa_project(const JetGroupElement& a)
{
    ClassicalJet c{a.dim(), a.order(), std::nullopt, {}};
    for (const auto& t : a.tensors()) c.s.push_back(symmetrize(t));
    return c;
}

ClassicalJet classical_compose(const ClassicalJet& c1, const ClassicalJet& c2)
{
    if (c1.n != c2.n || c1.r != c2.r) throw ShapeError("classical jets have different (n, r)");
    const int r = c1.r;
    const TaylorTuple f = taylor_from_derivatives(c1.s, r);
    const TaylorTuple g = taylor_from_derivatives(c2.s, r);
    const TaylorTuple fg = taylor_compose(f, g);
    ClassicalJet out{c1.n, r, std::nullopt, {}};
    for (int k = 1; k <= r; ++k) out.s.push_back(derivative_tensor(fg, k));
    return out;
}

AlgebraVector adjoint_action(const JetGroupElement& a, const AlgebraVector& y)
{
    y.validate();
    if (y.n != a.dim() || y.r != a.order()) throw ShapeError("algebra vector shape does not match the group element");
    const int n = a.dim();
    const int r = a.order();
    const int s = r - 1;
    const JetGroupElement b = jet_inverse(a);

    AlgebraVector out = AlgebraVector::zero(n, r);
    const LowerTensor& b1 = b.tensor(1);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += b1(i, l) * y.base[static_cast<std::size_t>(l)];
        out.base[static_cast<std::size_t>(i)] = acc;
    }
    if (s == 0) return out;

    std::vector<DualD> y0;
    for (double v : y.base) y0.emplace_back(0.0, v);
    const TensorList<DualD> moved = translate_tensors(lift(b.tensors()), y0, s);
    TensorList<DualD> curve;
    for (int k = 1; k <= s; ++k) {
        const LowerTensor id = k == 1 ? identity_tensor(n) : LowerTensor(n, k);
        curve.push_back(lift(id, y.tensors[static_cast<std::size_t>(k - 1)]));
    }
    const TensorList<DualD> left = compose_tensors(moved, curve, s);
    TensorList<DualD> right = lift(a.tensors());
    right.resize(static_cast<std::size_t>(s));
    const TensorList<DualD> conj = compose_tensors(left, right, s);
    for (int k = 1; k <= s; ++k) out.tensors[static_cast<std::size_t>(k - 1)] = eps_part(conj[static_cast<std::size_t>(k - 1)]);
    return out;
}

JetAlgebraElement adjoint_action(const JetGroupElement& a, const JetAlgebraElement& x)
{
    x.validate();
    if (x.n != a.dim() || x.r != a.order()) throw ShapeError("algebra element shape does not match the group element");
    const int n = a.dim();
    const int r = a.order();
    const JetGroupElement b = jet_inverse(a);
    TensorList<DualD> curve;
    for (int k = 1; k <= r; ++k) {
        const LowerTensor id = k == 1 ? identity_tensor(n) : LowerTensor(n, k);
        curve.push_back(lift(id, x.tensors[static_cast<std::size_t>(k - 1)]));
    }
    const TensorList<DualD> conj = compose_tensors(compose_tensors(lift(b.tensors()), curve, r), lift(a.tensors()), r);
    JetAlgebraElement out{n, r, {}};
    for (const auto& t : conj) out.tensors.push_back(eps_part(t));
    return out;
}

ClassicalCheck is_classical(const JetGroupElement& a, double tol)
{
    ClassicalCheck check;
    for (int k = 2; k <= a.order(); ++k) {
        AsymmetryWitness w = max_asymmetry_witness(a.tensor(k));
        if (w.gap > check.witness.gap) {
            check.witness = std::move(w);
            check.order = k;
        }
    }
    check.classical = check.witness.gap <= tol;
    return check;
}

JetGroupElement gl_inclusion(const Eigen::MatrixXd& a, int r)
{
    const LowerTensor a1 = from_matrix(a);
    std::vector<LowerTensor> ts{a1};
    for (int k = 2; k <= r; ++k) ts.emplace_back(a1.dim(), k);
    return JetGroupElement(a1.dim(), r, std::move(ts));
}

}  // namespace ff
