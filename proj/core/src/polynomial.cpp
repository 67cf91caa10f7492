#include "formalframes/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ff {

Polynomial::Polynomial(int m) : m_(m)
{
    if (m < 1) throw ShapeError("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(int m, double c)
{
    Polynomial p(m);
    p.add_term(Exponents(static_cast<std::size_t>(m), 0), c);
    return p;
}

Polynomial Polynomial::variable(int m, int i)
{
    if (i < 0 || i >= m) throw ShapeError("polynomial variable index out of range");
    Polynomial p(m);
    Exponents e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, 1.0);
    return p;
}

Polynomial Polynomial::monomial(double c, Exponents exps)
{
    Polynomial p(static_cast<int>(exps.size()));
    p.add_term(exps, c);
    return p;
}

int Polynomial::degree() const
{
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int q : e) s += q;
        d = std::max(d, s);
    }
    return d;
}

double Polynomial::coefficient(const Exponents& exps) const
{
    auto it = terms_.find(exps);
    return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Exponents& exps, double c)
{
    if (static_cast<int>(exps.size()) != m_) throw ShapeError("monomial exponent length differs from variable count");
    for (int e : exps) {
        if (e < 0) throw DomainError("negative exponent");
    }
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.m_ != m_) throw ShapeError("polynomials have different variable counts");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.m_ != m_) throw ShapeError("polynomials have different variable counts");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o)
{
    if (o.m_ != m_) throw ShapeError("polynomials have different variable counts");
    Polynomial out(m_);
    Exponents sum(static_cast<std::size_t>(m_));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = ea[v] + eb[v];
            out.add_term(sum, ca * cb);
        }
    }
    *this = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator*=(double s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

double Polynomial::evaluate(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != m_) throw ShapeError("evaluation point has the wrong dimension");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (std::size_t v = 0; v < e.size(); ++v) {
            for (int q = 0; q < e[v]; ++q) term *= x[v];
        }
        acc += term;
    }
    return acc;
}

Polynomial Polynomial::derivative(int i) const
{
    if (i < 0 || i >= m_) throw ShapeError("derivative variable index out of range");
    Polynomial out(m_);
    for (const auto& [e, c] : terms_) {
        const int p = e[static_cast<std::size_t>(i)];
        if (p == 0) continue;
        Exponents d = e;
        --d[static_cast<std::size_t>(i)];
        out.add_term(d, c * p);
    }
    return out;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& inner) const
{
    if (static_cast<int>(inner.size()) != m_) throw ShapeError("inner map length differs from variable count");
    const int k = inner.front().vars();
    for (const auto& p : inner) {
        if (p.vars() != k) throw ShapeError("inner map mixes variable counts");
    }
    std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(m_));
    const int deg = degree();
    for (int v = 0; v < m_; ++v) {
        auto& pv = powers[static_cast<std::size_t>(v)];
        pv.push_back(constant(k, 1.0));
        for (int q = 1; q <= deg; ++q) pv.push_back(pv.back() * inner[static_cast<std::size_t>(v)]);
    }
    Polynomial out(k);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(k, c);
        for (int v = 0; v < m_; ++v) {
            const int q = e[static_cast<std::size_t>(v)];
            if (q > 0) term *= powers[static_cast<std::size_t>(v)][static_cast<std::size_t>(q)];
        }
        out += term;
    }
    return out;
}

TaylorScalar Polynomial::taylor_at(std::span<const double> p, int d) const
{
    if (static_cast<int>(p.size()) != m_) throw ShapeError("expansion point has the wrong dimension");
    const TaylorTuple shifted = taylor_identity(m_, d, p);
    TaylorScalar acc = TaylorScalar::constant(m_, d, 0.0);
    for (const auto& [e, c] : terms_) {
        TaylorScalar term = TaylorScalar::constant(m_, d, c);
        for (int v = 0; v < m_; ++v) {
            const int q = e[static_cast<std::size_t>(v)];
            if (q > 0) term *= shifted[static_cast<std::size_t>(v)].pow(q);
        }
        acc += term;
    }
    return acc;
}

std::vector<double> evaluate(const PolynomialMap& f, std::span<const double> x)
{
    std::vector<double> out;
    out.reserve(f.size());
    for (const auto& p : f) out.push_back(p.evaluate(x));
    return out;
}

PolynomialMap compose(const PolynomialMap& f, const PolynomialMap& g)
{
    PolynomialMap out;
    out.reserve(f.size());
    for (const auto& p : f) out.push_back(p.compose(g));
    return out;
}

PolynomialMap polynomial_identity(int m)
{
    PolynomialMap out;
    for (int i = 0; i < m; ++i) out.push_back(Polynomial::variable(m, i));
    return out;
}

}  // namespace ff
