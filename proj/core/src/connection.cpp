#include "formalframes/connection.hpp"

#include <utility>

#include "formalframes/forms.hpp"
#include "formalframes/linalg.hpp"

namespace ff {

namespace {

void require_christoffel_shape(const LowerTensor& gamma, int n)
{
    if (gamma.dim() != n || gamma.order() != 2) throw ShapeError("Christoffel symbols must be an order-2 tensor of the frame dimension");
}

/// out^i_{jk} = g^i_{ab} m^a_j m^b_k.
LowerTensor pull_back_pair(const LowerTensor& g, const Eigen::MatrixXd& m)
{
    const int n = g.dim();
    LowerTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) acc += g.at(i, {a, b}) * m(a, j) * m(b, k);
                }
                out.at(i, {j, k}) = acc;
            }
        }
    }
    return out;
}

/// out^i_{jk} = g^i_{ab} (m1^a_j m2^b_k + m2^a_j m1^b_k).
LowerTensor pull_back_pair_derivative(const LowerTensor& g, const Eigen::MatrixXd& m1, const Eigen::MatrixXd& m2)
{
    const int n = g.dim();
    LowerTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) acc += g.at(i, {a, b}) * (m1(a, j) * m2(b, k) + m2(a, j) * m1(b, k));
                }
                out.at(i, {j, k}) = acc;
            }
        }
    }
    return out;
}

void require_order1_frame(const FrameCoords& u)
{
    u.validate();
    if (u.r != 1) throw ShapeError("connection sections start from a frame of order 1");
}

}  // namespace

ChristoffelField ChristoffelField::constant(const LowerTensor& gamma, const std::string& chart)
{
    require_christoffel_shape(gamma, gamma.dim());
    ChristoffelField f(gamma.dim());
    f.set_chart(chart, PolynomialTensorField::constant(gamma, gamma.dim()));
    return f;
}

void ChristoffelField::set_chart(const std::string& chart, PolynomialTensorField symbols)
{
    if (symbols.dim() != n_ || symbols.order() != 2 || symbols.vars() != n_) {
        throw ShapeError("Christoffel chart data must be order 2 in n variables");
    }
    charts_.insert_or_assign(chart, std::move(symbols));
}

const PolynomialTensorField& ChristoffelField::chart(const std::string& chart) const
{
    const auto it = charts_.find(chart);
    if (it == charts_.end()) throw DomainError("Christoffel symbols are not defined on chart '" + chart + "'");
    return it->second;
}

LowerTensor ChristoffelField::evaluate(const std::string& c, std::span<const double> p) const { return chart(c).evaluate(p); }

LowerTensor christoffel_transform(const LowerTensor& gamma, const TransitionJet& t)
{
    require_christoffel_shape(gamma, t.dim());
    if (t.order() < 2) throw ShapeError("Christoffel transformation needs a transition jet of order 2");
    const Eigen::MatrixXd dphi = to_matrix(t.D[0]);
    const Eigen::MatrixXd psi = to_matrix(inverse_matrix_tensor(t.D[0], "transition derivative"));
    LowerTensor homogeneous = pull_back_pair(gamma, psi);
    const int n = t.dim();
    LowerTensor out(n, 2);
    const LowerTensor inhomogeneous = pull_back_pair(t.D[1], psi);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = -inhomogeneous.at(i, {j, k});
                for (int a = 0; a < n; ++a) acc += dphi(i, a) * homogeneous.at(a, {j, k});
                out.at(i, {j, k}) = acc;
            }
        }
    }
    return out;
}

FrameCoords connection_section(const LowerTensor& gamma, const FrameCoords& u)
{
    require_order1_frame(u);
    require_christoffel_shape(gamma, u.n);
    LowerTensor second = pull_back_pair(gamma, to_matrix(u.tensors[0]));
    second *= -1.0;
    return FrameCoords{u.n, 2, u.chart, u.base, {u.tensors[0], std::move(second)}};
}

FrameCoords connection_section(const ChristoffelField& gamma, const FrameCoords& u)
{
    return connection_section(gamma.evaluate(u.chart, u.base), u);
}

BundleTangent connection_section_pushforward(const ChristoffelField& gamma, const FrameCoords& u, const BundleTangent& x)
{
    require_order1_frame(u);
    x.validate();
    if (x.n != u.n || x.r != 1) throw ShapeError("tangent vector does not belong to the order-1 bundle");
    const PolynomialTensorField& field = gamma.chart(u.chart);
    const LowerTensor g = field.evaluate(u.base);
    const LowerTensor dg = field.directional_derivative(u.base, x.base);
    const Eigen::MatrixXd h = to_matrix(u.tensors[0]);
    LowerTensor second = pull_back_pair(dg, h);
    second += pull_back_pair_derivative(g, h, to_matrix(x.tensors[0]));
    second *= -1.0;
    return BundleTangent{u.n, 2, x.base, {x.tensors[0], std::move(second)}};
}

LowerTensor section_pullback_connection(const ChristoffelField& gamma, const FrameCoords& u, const BundleTangent& x)
{
    const FrameCoords s = connection_section(gamma, u);
    const AlgebraVector value = canonical_form(s, connection_section_pushforward(gamma, u, x));
    return component(value, 1);
}

LowerTensor symmetrize_connection(const LowerTensor& gamma)
{
    if (gamma.order() != 2) throw ShapeError("Christoffel symbols must be an order-2 tensor");
    return symmetrize(gamma);
}

ChristoffelField symmetrize_connection(const ChristoffelField& gamma)
{
    ChristoffelField out(gamma.dim());
    const int n = gamma.dim();
    for (const auto& [name, field] : gamma.charts()) {
        PolynomialTensorField sym(n, 2, field.vars());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    const std::vector<int> jk{j, k};
                    const std::vector<int> kj{k, j};
                    sym.entry(i, jk) = 0.5 * (field.entry(i, jk) + field.entry(i, kj));
                }
            }
        }
        out.set_chart(name, std::move(sym));
    }
    return out;
}

}  // namespace ff
