#include "formalframes/charts.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ff {

SmoothMapSpec SmoothMapSpec::polynomial(PolynomialMap components)
{
    if (components.empty()) throw ShapeError("polynomial map needs at least one component");
    const int m = components.front().vars();
    for (const auto& c : components) {
        if (c.vars() != m) throw ShapeError("polynomial map components have different variable counts");
    }
    SmoothMapSpec s;
    s.kind_ = Kind::polynomial;
    s.poly_ = std::move(components);
    return s;
}

SmoothMapSpec SmoothMapSpec::moebius(double a, double b, double c, double d)
{
    if (a * d - b * c == 0.0) throw DomainError("Moebius map with ad - bc = 0");
    SmoothMapSpec s;
    s.kind_ = Kind::moebius;
    s.abcd_ = {a, b, c, d};
    return s;
}

SmoothMapSpec SmoothMapSpec::composite(std::vector<SmoothMapSpec> maps)
{
    if (maps.empty()) throw ShapeError("composite map needs at least one part");
    for (std::size_t q = 1; q < maps.size(); ++q) {
        if (maps[q].input_dim() != maps[q - 1].output_dim()) throw ShapeError("composite parts do not chain");
    }
    SmoothMapSpec s;
    s.kind_ = Kind::composite;
    s.parts_ = std::move(maps);
    return s;
}

SmoothMapSpec SmoothMapSpec::identity(int m) { return polynomial(polynomial_identity(m)); }

int SmoothMapSpec::input_dim() const
{
    switch (kind_) {
    case Kind::polynomial:
        return poly_.front().vars();
    case Kind::moebius:
        return 1;
    case Kind::composite:
        return parts_.front().input_dim();
    }
    return 0;
}

int SmoothMapSpec::output_dim() const
{
    switch (kind_) {
    case Kind::polynomial:
        return static_cast<int>(poly_.size());
    case Kind::moebius:
        return 1;
    case Kind::composite:
        return parts_.back().output_dim();
    }
    return 0;
}

std::vector<double> SmoothMapSpec::evaluate(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != input_dim()) throw ShapeError("evaluation point has the wrong dimension");
    switch (kind_) {
    case Kind::polynomial:
        return ff::evaluate(poly_, x);
    case Kind::moebius: {
        const auto [a, b, c, d] = abcd_;
        const double den = c * x[0] + d;
        if (den == 0.0) throw DomainError("point is a pole of the Moebius map");
        return {(a * x[0] + b) / den};
    }
    case Kind::composite: {
        std::vector<double> y(x.begin(), x.end());
        for (const auto& part : parts_) y = part.evaluate(y);
        return y;
    }
    }
    return {};
}

TaylorTuple SmoothMapSpec::expand(std::span<const double> p, int d) const
{
    if (static_cast<int>(p.size()) != input_dim()) throw ShapeError("expansion point has the wrong dimension");
    switch (kind_) {
    case Kind::polynomial: {
        TaylorTuple out;
        for (const auto& c : poly_) out.push_back(c.taylor_at(p, d));
        return out;
    }
    case Kind::moebius: {
        const auto [a, b, c, dd] = abcd_;
        const double den0 = c * p[0] + dd;
        if (den0 == 0.0) throw DomainError("point is a pole of the Moebius map");
        const TaylorScalar x = TaylorScalar::variable(1, d, 0, p[0]);
        const TaylorScalar num = a * x + b;
        const TaylorScalar den = c * x + dd;
        return {num * den.reciprocal()};
    }
    case Kind::composite: {
        TaylorTuple acc = parts_.front().expand(p, d);
        for (std::size_t q = 1; q < parts_.size(); ++q) {
            std::vector<double> at;
            TaylorTuple shift = acc;
            for (auto& s : shift) {
                at.push_back(s.constant_term());
                s += -s.constant_term();
            }
            acc = taylor_compose(parts_[q].expand(at, d), shift);
        }
        return acc;
    }
    }
    return {};
}

TransitionJet TransitionJet::truncated(int s) const
{
    if (s < 1 || s > order()) throw ShapeError("truncation order out of range");
    return TransitionJet{p, value, std::vector<LowerTensor>(D.begin(), D.begin() + s)};
}

TransitionJet transition_jet(const SmoothMapSpec& map, std::span<const double> p, int r)
{
    if (map.input_dim() != map.output_dim()) throw ShapeError("transition jets need a square map");
    if (r < 1 || r > kMaxJetOrder + 1) throw DomainError("requested order exceeds the Taylor engine limit");
    const TaylorTuple f = map.expand(p, r);
    TransitionJet t;
    t.p.assign(p.begin(), p.end());
    for (const auto& c : f) t.value.push_back(c.constant_term());
    for (int k = 1; k <= r; ++k) t.D.push_back(derivative_tensor(f, k));
    return t;
}

JetGroupElement jet_of_transition_as_group(const TransitionJet& t)
{
    return JetGroupElement(t.dim(), t.order(), t.D);
}

}  // namespace ff
