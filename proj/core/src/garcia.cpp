#include "formalframes/garcia.hpp"

#include <utility>

#include "formalframes/linalg.hpp"

namespace ff {

namespace {

/// out^i_{j k} = t^i_{j l} m^l_k for an order-2 tensor t and a matrix m.
LowerTensor contract_last_with_matrix(const LowerTensor& t, const LowerTensor& m)
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

void require_order2_frame(const FrameCoords& u)
{
    u.validate();
    if (u.r != 2) throw ShapeError("the 1-jet picture needs a frame of order 2");
}

}  // namespace

void GarciaCoords::validate() const
{
    const int n = dim();
    if (n < 1) throw ShapeError("Garcia point needs n >= 1");
    if (y.dim() != n || y.order() != 1 || z.dim() != n || z.order() != 2) throw ShapeError("Garcia point tensors have the wrong shape");
    require_invertible(to_matrix(y), "Garcia y block");
}

GarciaTangent GarciaTangent::zero(int n) { return GarciaTangent{std::vector<double>(static_cast<std::size_t>(n), 0.0), LowerTensor(n, 1), LowerTensor(n, 2)}; }

void GarciaTangent::validate(int n) const
{
    if (static_cast<int>(dx.size()) != n || dy.dim() != n || dy.order() != 1 || dz.dim() != n || dz.order() != 2) {
        throw ShapeError("Garcia tangent has the wrong shape");
    }
}

GarciaCoords phi_map(const FrameCoords& u)
{
    require_order2_frame(u);
    const LowerTensor v = inverse_matrix_tensor(u.tensors[0], "order-1 frame tensor");
    return GarciaCoords{u.base, u.tensors[0], contract_last_with_matrix(u.tensors[1], v), u.chart};
}

FrameCoords psi_map(const GarciaCoords& g)
{
    g.validate();
    FrameCoords u{g.dim(), 2, g.chart, g.x, {g.y, contract_last_with_matrix(g.z, g.y)}};
    return u;
}

GarciaTangent phi_pushforward(const FrameCoords& u, const BundleTangent& x)
{
    require_order2_frame(u);
    x.validate();
    if (x.n != u.n || x.r != 2) throw ShapeError("tangent vector does not belong to the order-2 bundle");
    const Eigen::MatrixXd v = to_matrix(inverse_matrix_tensor(u.tensors[0], "order-1 frame tensor"));
    const LowerTensor dv = from_matrix(-v * to_matrix(x.tensors[0]) * v);
    LowerTensor dz = contract_last_with_matrix(x.tensors[1], from_matrix(v));
    dz += contract_last_with_matrix(u.tensors[1], dv);
    return GarciaTangent{x.base, x.tensors[0], std::move(dz)};
}

GarciaCoords garcia_action(const GarciaCoords& g, const JetGroupElement& a)
{
    g.validate();
    if (a.dim() != g.dim() || a.order() != 2) throw ShapeError("Garcia action needs an order-2 group element of matching dimension");
    GarciaCoords out = phi_map(right_action(psi_map(g), a));
    out.chart = g.chart;
    return out;
}

GarciaCoords garcia_action_closed_form(const GarciaCoords& g, const JetGroupElement& a)
{
    g.validate();
    if (a.dim() != g.dim() || a.order() != 2) throw ShapeError("Garcia action needs an order-2 group element of matching dimension");
    const int n = g.dim();
    const LowerTensor& a1 = a.tensor(1);
    const LowerTensor& a2 = a.tensor(2);
    const LowerTensor b = inverse_matrix_tensor(a1, "group element order-1 tensor");
    const LowerTensor w = inverse_matrix_tensor(g.y, "Garcia y block");
    const Eigen::MatrixXd bw = to_matrix(b) * to_matrix(w);
    LowerTensor z(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int al = 0; al < n; ++al) {
                    acc += g.z.at(i, {al, k}) * a1(al, j);
                    for (int be = 0; be < n; ++be) acc += g.y(i, al) * a2.at(al, {j, be}) * bw(be, k);
                }
                z.at(i, {j, k}) = acc;
            }
        }
    }
    return GarciaCoords{g.x, from_matrix(to_matrix(g.y) * to_matrix(a1)), std::move(z), g.chart};
}

double garcia_action_discrepancy(const GarciaCoords& g, const JetGroupElement& a)
{
    const GarciaCoords p = garcia_action(g, a);
    const GarciaCoords q = garcia_action_closed_form(g, a);
    return std::max(max_abs_diff(p.y, q.y), max_abs_diff(p.z, q.z));
}

LowerTensor garcia_canonical_form(const GarciaCoords& g, const GarciaTangent& x)
{
    g.validate();
    x.validate(g.dim());
    const int n = g.dim();
    Eigen::MatrixXd m = to_matrix(x.dy);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int be = 0; be < n; ++be) m(i, j) -= g.z.at(i, {j, be}) * x.dx[static_cast<std::size_t>(be)];
        }
    }
    const Eigen::MatrixXd w = to_matrix(inverse_matrix_tensor(g.y, "Garcia y block"));
    return from_matrix(w * m);
}

}  // namespace ff
