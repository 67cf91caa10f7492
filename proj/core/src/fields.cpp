#include "formalframes/fields.hpp"

#include <utility>

namespace ff {

PolynomialTensorField::PolynomialTensorField(int n, int k, int m)
    : n_(n), k_(k), m_(m), entries_(LowerTensor(n, k).size(), Polynomial(m))
{
    if (m < 1) throw ShapeError("field needs at least one variable");
}

PolynomialTensorField::PolynomialTensorField(int n, int k, int m, std::vector<Polynomial> entries)
    : n_(n), k_(k), m_(m), entries_(std::move(entries))
{
    if (m < 1) throw ShapeError("field needs at least one variable");
    if (entries_.size() != LowerTensor(n, k).size()) throw ShapeError("field entries length does not equal n^(k+1)");
    for (const auto& e : entries_) {
        if (e.vars() != m) throw ShapeError("field entry has the wrong number of variables");
    }
}

PolynomialTensorField PolynomialTensorField::constant(const LowerTensor& t, int m)
{
    std::vector<Polynomial> entries;
    entries.reserve(t.size());
    for (double e : t.entries()) entries.push_back(Polynomial::constant(m, e));
    return PolynomialTensorField(t.dim(), t.order(), m, std::move(entries));
}

Polynomial& PolynomialTensorField::entry(int i, std::span<const int> lower)
{
    return entries_[LowerTensor(n_, k_).offset(i, lower)];
}

const Polynomial& PolynomialTensorField::entry(int i, std::span<const int> lower) const
{
    return entries_[LowerTensor(n_, k_).offset(i, lower)];
}

LowerTensor PolynomialTensorField::evaluate(std::span<const double> p) const
{
    if (static_cast<int>(p.size()) != m_) throw ShapeError("field evaluation point has the wrong dimension");
    LowerTensor out(n_, k_);
    for (std::size_t q = 0; q < entries_.size(); ++q) out[q] = entries_[q].evaluate(p);
    return out;
}

PolynomialTensorField PolynomialTensorField::derivative(int v) const
{
    if (v < 0 || v >= m_) throw ShapeError("derivative variable out of range");
    std::vector<Polynomial> d;
    d.reserve(entries_.size());
    for (const auto& e : entries_) d.push_back(e.derivative(v));
    return PolynomialTensorField(n_, k_, m_, std::move(d));
}

LowerTensor PolynomialTensorField::directional_derivative(std::span<const double> p, std::span<const double> w) const
{
    if (static_cast<int>(w.size()) != m_) throw ShapeError("direction has the wrong dimension");
    LowerTensor out(n_, k_);
    for (int v = 0; v < m_; ++v) {
        if (w[static_cast<std::size_t>(v)] == 0.0) continue;
        out += w[static_cast<std::size_t>(v)] * derivative(v).evaluate(p);
    }
    return out;
}

}  // namespace ff
