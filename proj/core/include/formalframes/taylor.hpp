#pragma once

/**
 * @file taylor.hpp
 * @brief Truncated multivariate Taylor polynomials and their composition.
 *
 * A TaylorScalar holds the coefficients of a polynomial in m variables,
 * truncated at total degree d. Products drop every monomial above degree d,
 * so the ring operations are exact up to the truncation order. Derivative
 * tensors of a map at a point are read from the coefficients of its
 * expansion in the displacement variables.
 *
 * @code
 * auto t = ff::TaylorScalar::variable(1, 3, 0);      // t, order 3
 * auto e = ff::TaylorScalar::constant(1, 3, 1.0) + t + t * t;
 * auto r = e.reciprocal();                            // 1/(1+t+t^2) to order 3
 * @endcode
 */

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "formalframes/tensor.hpp"

namespace ff {

/// Graded-lexicographic monomial basis shared by all Taylor scalars with the same (m, d).
struct MonomialBasis {
    int vars = 0;
    int order = 0;
    std::vector<std::vector<int>> exponents;  ///< exponent vector of each basis monomial
    std::vector<int> degree;                  ///< total degree of each basis monomial
    std::vector<int> product;                 ///< index of exponent sum, -1 when truncated; row-major size^2

    [[nodiscard]] std::size_t size() const { return exponents.size(); }
    /// Index of an exponent vector, or -1 if its degree exceeds the order.
    [[nodiscard]] int index_of(std::span<const int> exps) const;

    /// Shared basis for (m, d); thread safe.
    static std::shared_ptr<const MonomialBasis> get(int m, int d);
};

class TaylorScalar {
public:
    TaylorScalar() = default;

    /// The constant c as a polynomial in m variables truncated at order d.
    static TaylorScalar constant(int m, int d, double c);
    /// The coordinate variable t_i (plus an optional constant offset).
    static TaylorScalar variable(int m, int d, int i, double offset = 0.0);

    [[nodiscard]] int vars() const { return basis_ ? basis_->vars : 0; }
    [[nodiscard]] int order() const { return basis_ ? basis_->order : 0; }
    [[nodiscard]] const MonomialBasis& basis() const { return *basis_; }
    [[nodiscard]] const std::vector<double>& coeffs() const { return c_; }
    [[nodiscard]] std::vector<double>& coeffs() { return c_; }

    /// Coefficient of the monomial with the given exponents (0 beyond the order).
    [[nodiscard]] double coefficient(std::span<const int> exps) const;
    [[nodiscard]] double constant_term() const { return c_.empty() ? 0.0 : c_[0]; }

    TaylorScalar& operator+=(const TaylorScalar& o);
    TaylorScalar& operator-=(const TaylorScalar& o);
    TaylorScalar& operator*=(const TaylorScalar& o);
    TaylorScalar& operator*=(double s);
    TaylorScalar& operator+=(double s);
    friend TaylorScalar operator+(TaylorScalar a, const TaylorScalar& b) { return a += b; }
    friend TaylorScalar operator-(TaylorScalar a, const TaylorScalar& b) { return a -= b; }
    friend TaylorScalar operator*(TaylorScalar a, const TaylorScalar& b) { return a *= b; }
    friend TaylorScalar operator*(double s, TaylorScalar a) { return a *= s; }
    friend TaylorScalar operator*(TaylorScalar a, double s) { return a *= s; }
    friend TaylorScalar operator+(TaylorScalar a, double s) { return a += s; }
    friend TaylorScalar operator-(const TaylorScalar& a) { return -1.0 * a; }

    /**
     * @brief Multiplicative inverse of a unit, by the geometric series.
     * @throws DomainError if the constant term is zero.
     */
    [[nodiscard]] TaylorScalar reciprocal() const;

    /// Integer power by repeated multiplication.
    [[nodiscard]] TaylorScalar pow(int e) const;

    /// Evaluates the truncated polynomial at a point of R^m.
    [[nodiscard]] double evaluate(std::span<const double> x) const;

private:
    void require_compatible(const TaylorScalar& o) const;

    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<double> c_;
};

using TaylorTuple = std::vector<TaylorScalar>;

/**
 * @brief Formal substitution outer(inner).
 *
 * outer holds polynomials in m variables; inner holds m polynomials in the
 * result variables. Constant terms of inner are substituted as they stand.
 * @throws ShapeError on a variable-count mismatch, DomainError on an order mismatch.
 */
[[nodiscard]] TaylorTuple taylor_compose(const TaylorTuple& outer, const TaylorTuple& inner);

/// Identity tuple (t_0, ..., t_{m-1}) shifted by offset.
[[nodiscard]] TaylorTuple taylor_identity(int m, int d, std::span<const double> offset = {});

/**
 * @brief Derivative tensor D^k f at the expansion point, read from coefficients.
 *
 * Entry (i; j1..jk) equals the k-th partial derivative of f_i, i.e. the
 * coefficient of the corresponding monomial times the product of the
 * factorials of its exponents. Requires square tuples (m_out == m).
 */
[[nodiscard]] LowerTensor derivative_tensor(const TaylorTuple& f, int k);

/**
 * @brief Polynomial map x -> sum_k (1/k!) D_k(x, ..., x) built from derivative tensors.
 *
 * D[q] is the order-(q+1) tensor; the result has zero constant term and order d.
 */
[[nodiscard]] TaylorTuple taylor_from_derivatives(const std::vector<LowerTensor>& d_tensors, int d);

}  // namespace ff
