#pragma once

/**
 * @file jetgroup.hpp
 * @brief The non-commutative jet groups of formal frames at the origin of R^n.
 *
 * An element a of the order-r group is a list of tensors a[1..r]; a[k] has k
 * lower indices that need not commute and a[1] is invertible. The product is
 * generated by formal differentiation: starting from (ab)[1] = a[1] b[1],
 * each order is obtained from the previous one by replacing the derivative
 * of a^i_J with a^i_{J,alpha} b^alpha_{new} and the derivative of b^i_J with
 * b^i_{J,new}. ProductTerm records the resulting terms, each an a-tensor of
 * order m contracted against m b-factors.
 *
 * @code
 * auto a = ff::JetGroupElement(1, 2, {t1, t2});
 * auto ab = ff::jet_compose(a, b);
 * auto e = ff::jet_compose(a, ff::jet_inverse(a));   // identity
 * @endcode
 */

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/dual.hpp"
#include "formalframes/tensor.hpp"
#include "formalframes/tolerance.hpp"

namespace ff {

using DualD = Dual<double>;

template <class T>
using TensorList = std::vector<BasicTensor<T>>;

/// Highest product order supported by the term table.
inline constexpr int kMaxJetOrder = 8;

/**
 * @brief One term of the order-k product.
 *
 * The term is a^i_{alpha_1..alpha_m} times the product over s of
 * b^{alpha_s}_{J_s}, where J_s lists the output lower positions in slots[s]
 * (in order). Every output position occurs in exactly one slot.
 */
struct ProductTerm {
    int a_order = 1;
    std::vector<std::vector<int>> slots;
};

/// Terms of the order-k product, 1 <= k <= kMaxJetOrder; counts are 1, 2, 5, 15, ...
[[nodiscard]] const std::vector<ProductTerm>& product_terms(int k);

/// Evaluates a single product term for tensor lists a, b (index 0 holds order 1).
template <class T>
void accumulate_product_term(const ProductTerm& term, const TensorList<T>& a, const TensorList<T>& b, BasicTensor<T>& out)
{
    const int n = out.dim();
    const int k = out.order();
    const int m = term.a_order;
    const BasicTensor<T>& A = a[static_cast<std::size_t>(m - 1)];
    const std::size_t nk = ipow(n, k);
    std::vector<int> J(static_cast<std::size_t>(k));
    std::vector<std::vector<T>> factors(static_cast<std::size_t>(m), std::vector<T>(static_cast<std::size_t>(n)));
    std::vector<T> buf;
    std::vector<T> next;
    for (std::size_t jflat = 0; jflat < nk; ++jflat) {
        decode_multi_index(jflat, n, J);
        for (int s = 0; s < m; ++s) {
            const auto& slot = term.slots[static_cast<std::size_t>(s)];
            const BasicTensor<T>& B = b[slot.size() - 1];
            std::size_t off = 0;
            for (int pos : slot) off = off * static_cast<std::size_t>(n) + static_cast<std::size_t>(J[static_cast<std::size_t>(pos)]);
            const std::size_t stride = ipow(n, static_cast<int>(slot.size()));
            auto& f = factors[static_cast<std::size_t>(s)];
            for (int al = 0; al < n; ++al) f[static_cast<std::size_t>(al)] = B[static_cast<std::size_t>(al) * stride + off];
        }
        // Contract the a-slots from last to first.
        const std::vector<T>* src = &A.entries();
        std::size_t len = A.size();
        for (int s = m - 1; s >= 0; --s) {
            const auto& f = factors[static_cast<std::size_t>(s)];
            const std::size_t rows = len / static_cast<std::size_t>(n);
            next.assign(rows, T{});
            for (std::size_t row = 0; row < rows; ++row) {
                T acc{};
                const std::size_t base = row * static_cast<std::size_t>(n);
                for (int l = 0; l < n; ++l) acc += (*src)[base + static_cast<std::size_t>(l)] * f[static_cast<std::size_t>(l)];
                next[row] = acc;
            }
            buf.swap(next);
            src = &buf;
            len = rows;
        }
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i) * nk + jflat] += (*src)[static_cast<std::size_t>(i)];
    }
}

/// Component (ab)[k] of the formal product; a and b must hold at least k tensors.
template <class T>
[[nodiscard]] BasicTensor<T> product_component(const TensorList<T>& a, const TensorList<T>& b, int k)
{
    if (k < 1 || static_cast<int>(a.size()) < k || static_cast<int>(b.size()) < k) {
        throw ShapeError("product order exceeds available tensors");
    }
    BasicTensor<T> out(a.front().dim(), k);
    for (const ProductTerm& term : product_terms(k)) accumulate_product_term(term, a, b, out);
    return out;
}

/// Product tensors of orders 1..order.
template <class T>
[[nodiscard]] TensorList<T> compose_tensors(const TensorList<T>& a, const TensorList<T>& b, int order)
{
    TensorList<T> out;
    out.reserve(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) out.push_back(product_component(a, b, k));
    return out;
}

/// Lifts a tensor to dual numbers with zero infinitesimal part.
[[nodiscard]] BasicTensor<DualD> lift(const LowerTensor& t);
/// Lifts a tensor to dual numbers with the given infinitesimal part.
[[nodiscard]] BasicTensor<DualD> lift(const LowerTensor& value, const LowerTensor& deriv);
[[nodiscard]] TensorList<DualD> lift(const std::vector<LowerTensor>& ts);
/// Value parts of a dual tensor.
[[nodiscard]] LowerTensor value_part(const BasicTensor<DualD>& t);
/// Infinitesimal parts of a dual tensor.
[[nodiscard]] LowerTensor eps_part(const BasicTensor<DualD>& t);

/**
 * @brief Translated jet: orders 1..s of u_k + u_{k+1} . x (x contracted into the last slot).
 *
 * This is the order-s jet of the same frame read at the displaced point x.
 * u must hold at least s + 1 tensors.
 */
template <class T, class V>
[[nodiscard]] TensorList<T> translate_tensors(const TensorList<T>& u, const std::vector<V>& x, int s)
{
    if (static_cast<int>(u.size()) < s + 1) throw ShapeError("translation needs one more order than requested");
    TensorList<T> out;
    out.reserve(static_cast<std::size_t>(s));
    for (int k = 1; k <= s; ++k) {
        BasicTensor<T> t = u[static_cast<std::size_t>(k - 1)];
        t += contract_last(u[static_cast<std::size_t>(k)], x);
        out.push_back(std::move(t));
    }
    return out;
}

/// A point of the order-r jet group: tensors a[1..r] with a[1] invertible.
class JetGroupElement {
public:
    /**
     * @brief Validates shapes (tensor q has dimension n and order q+1) and invertibility of a[1].
     * @throws ShapeError, SingularError
     */
    JetGroupElement(int n, int r, std::vector<LowerTensor> tensors);

    [[nodiscard]] int dim() const { return n_; }
    [[nodiscard]] int order() const { return r_; }
    /// Tensor a[k], 1 <= k <= r.
    [[nodiscard]] const LowerTensor& tensor(int k) const;
    [[nodiscard]] const std::vector<LowerTensor>& tensors() const { return tensors_; }
    /// Projection to the order-s group (first s tensors).
    [[nodiscard]] JetGroupElement truncated(int s) const;

private:
    int n_;
    int r_;
    std::vector<LowerTensor> tensors_;
};

/// A tangent vector at the identity of the order-r jet group: tensors X[1..r], unconstrained.
struct JetAlgebraElement {
    int n = 0;
    int r = 0;
    std::vector<LowerTensor> tensors;

    /// Zero element with the right shapes.
    static JetAlgebraElement zero(int n, int r);
    /// Throws ShapeError unless the tensor shapes match (n, r).
    void validate() const;
};

/**
 * @brief A tangent vector at the identity of the order-(r-1) frame bundle of R^n.
 *
 * It holds the base displacement Y^i and tensors Y^i_{j1..jk} for k = 1..r-1.
 * This is the value space of the canonical form of the order-r bundle and the
 * space on which the order-r group acts by its adjoint action.
 */
struct AlgebraVector {
    int n = 0;
    int r = 0;
    std::vector<double> base;
    std::vector<LowerTensor> tensors;

    static AlgebraVector zero(int n, int r);
    void validate() const;
    /// Total number of components n + n^2 + ... + n^r.
    [[nodiscard]] std::size_t size() const;
    /// Flattened components: base first, then each tensor row-major.
    [[nodiscard]] Eigen::VectorXd flatten() const;
    static AlgebraVector unflatten(const Eigen::VectorXd& v, int n, int r);
};

/// Number of components of an AlgebraVector for (n, r).
[[nodiscard]] std::size_t algebra_dimension(int n, int r);

/// Largest absolute component difference between two algebra vectors of equal shape.
[[nodiscard]] double max_abs_diff(const AlgebraVector& a, const AlgebraVector& b);

/// A classical jet: symmetric tensors s[1..r] and an optional base point.
struct ClassicalJet {
    int n = 0;
    int r = 0;
    std::optional<std::vector<double>> base;
    std::vector<LowerTensor> s;
};

/// Unit of the order-r group: a[1] = I and a[k] = 0 for k >= 2.
[[nodiscard]] JetGroupElement jet_identity(int n, int r);

/// Group product; throws ShapeError when (n, r) differ.
[[nodiscard]] JetGroupElement jet_compose(const JetGroupElement& a, const JetGroupElement& b);

/// Group inverse, solved order by order; throws SingularError for a singular a[1].
[[nodiscard]] JetGroupElement jet_inverse(const JetGroupElement& a);

/// Embeds a classical jet as a group element; throws DomainError on asymmetric input.
[[nodiscard]] JetGroupElement epsilon_embed(const ClassicalJet& c, const Tolerance& tol = {});

/// Symmetrizes every tensor of a.
[[nodiscard]] ClassicalJet kappa_project(const JetGroupElement& a);

/**
 * @brief Product of two classical group elements (composition of r-jets of maps fixing the origin).
 *
 * Computed by composing the Taylor polynomials of the two jets, independently
 * of the formal product.
 */
[[nodiscard]] ClassicalJet classical_compose(const ClassicalJet& c1, const ClassicalJet& c2);

/**
 * @brief Adjoint action Ad_{a^{-1}} on tangent vectors at the identity of the order-(r-1) bundle.
 *
 * Returns the derivative at t = 0 of a^{-1} g_t a where g_t is a curve of
 * order-(r-1) frames at the origin with velocity Y. The base part is
 * a[1]^{-1} Y^0; the tensor parts come from exact dual-number expansion of
 * the product. This is the action under which the canonical form is
 * equivariant.
 */
[[nodiscard]] AlgebraVector adjoint_action(const JetGroupElement& a, const AlgebraVector& y);

/// Adjoint action Ad_{a^{-1}} X = d/dt a^{-1} (e + tX) a on the Lie algebra of the order-r group.
[[nodiscard]] JetAlgebraElement adjoint_action(const JetGroupElement& a, const JetAlgebraElement& x);

/// Verdict of is_classical: the worst asymmetry over orders 2..r.
struct ClassicalCheck {
    bool classical = true;
    int order = 0;  ///< tensor order carrying the witness (0 when every tensor is symmetric)
    AsymmetryWitness witness;
};

/// True iff every a[k], k >= 2, is symmetric up to tol (absolute).
[[nodiscard]] ClassicalCheck is_classical(const JetGroupElement& a, double tol);

/// Inclusion of GL_n as (A, 0, ..., 0); a convention at orders above 2.
[[nodiscard]] JetGroupElement gl_inclusion(const Eigen::MatrixXd& a, int r);

}  // namespace ff
