#pragma once

/**
 * @file polynomial.hpp
 * @brief Exact sparse multivariate polynomials.
 *
 * Polynomials carry chart maps, Christoffel fields and differential-form
 * coefficients. Unlike TaylorScalar they are never truncated, so
 * composition and differentiation are exact.
 *
 * @code
 * auto x = ff::Polynomial::variable(2, 0);
 * auto y = ff::Polynomial::variable(2, 1);
 * auto p = x * x + 3.0 * y;               // x^2 + 3y
 * double v = p.evaluate(std::vector{1.0, 2.0});  // 7
 * @endcode
 */

#include <map>
#include <span>
#include <vector>

#include "formalframes/taylor.hpp"

namespace ff {

class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    /// Zero polynomial in m variables.
    explicit Polynomial(int m);

    static Polynomial constant(int m, double c);
    static Polynomial variable(int m, int i);
    /// Single monomial c * x^exps.
    static Polynomial monomial(double c, Exponents exps);

    [[nodiscard]] int vars() const { return m_; }
    [[nodiscard]] const std::map<Exponents, double>& terms() const { return terms_; }
    /// Total degree (0 for the zero polynomial).
    [[nodiscard]] int degree() const;
    /// Coefficient of x^exps (0 when absent).
    [[nodiscard]] double coefficient(const Exponents& exps) const;
    /// Adds c to the coefficient of x^exps.
    void add_term(const Exponents& exps, double c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(const Polynomial& a) { return -1.0 * a; }

    [[nodiscard]] double evaluate(std::span<const double> x) const;
    /// Exact partial derivative with respect to variable i.
    [[nodiscard]] Polynomial derivative(int i) const;
    /// Substitutes inner[v] for variable v; the result lives in the variables of inner.
    [[nodiscard]] Polynomial compose(const std::vector<Polynomial>& inner) const;
    /// Expansion at p in displacement variables, truncated at order d.
    [[nodiscard]] TaylorScalar taylor_at(std::span<const double> p, int d) const;

private:
    int m_ = 0;
    std::map<Exponents, double> terms_;
};

using PolynomialMap = std::vector<Polynomial>;

/// Evaluates every component of a polynomial map.
[[nodiscard]] std::vector<double> evaluate(const PolynomialMap& f, std::span<const double> x);

/// Componentwise composition f(g(x)).
[[nodiscard]] PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g);

/// Identity map on R^m.
[[nodiscard]] PolynomialMap polynomial_identity(int m);

}  // namespace ff
