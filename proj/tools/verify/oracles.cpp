#include "oracles.hpp"

#include <cmath>

#include "formalframes/dual.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/linalg.hpp"

namespace ff::verify {

namespace {

template <class S>
using Flat = std::vector<std::vector<S>>;

/// Order-K component of the formal product; a[m] and b[m] hold order m + 1 in row-major layout.
template <int K, class S>
std::vector<S> product_component_oracle(const Flat<S>& a, const Flat<S>& b, int n)
{
    const std::size_t nn = static_cast<std::size_t>(n);
    if constexpr (K == 1) {
        std::vector<S> out(nn * nn, S{});
        for (std::size_t i = 0; i < nn; ++i) {
            for (std::size_t j = 0; j < nn; ++j) {
                for (std::size_t al = 0; al < nn; ++al) out[i * nn + j] += a[0][i * nn + al] * b[0][al * nn + j];
            }
        }
        return out;
    } else {
        using D = Dual<S>;
        std::size_t lower = ipow(n, K);
        std::vector<S> out(lower * nn, S{});
        for (std::size_t l = 0; l < nn; ++l) {
            Flat<D> aa(K - 1);
            Flat<D> bb(K - 1);
            for (int m = 0; m + 1 < K; ++m) {
                const auto& am = a[static_cast<std::size_t>(m)];
                const auto& an = a[static_cast<std::size_t>(m + 1)];
                const auto& bm = b[static_cast<std::size_t>(m)];
                const auto& bn = b[static_cast<std::size_t>(m + 1)];
                auto& A = aa[static_cast<std::size_t>(m)];
                auto& B = bb[static_cast<std::size_t>(m)];
                for (std::size_t q = 0; q < am.size(); ++q) {
                    S slope{};
                    for (std::size_t g = 0; g < nn; ++g) slope += an[q * nn + g] * b[0][g * nn + l];
                    A.emplace_back(am[q], slope);
                    B.emplace_back(bm[q], bn[q * nn + l]);
                }
            }
            const std::vector<D> p = product_component_oracle<K - 1, D>(aa, bb, n);
            for (std::size_t q = 0; q < p.size(); ++q) out[q * nn + l] = p[q].d;
        }
        return out;
    }
}

template <int K>
LowerTensor product_oracle_order(const Flat<double>& a, const Flat<double>& b, int n)
{
    return LowerTensor(n, K, product_component_oracle<K, double>(a, b, n));
}

double at(const LowerTensor& t, std::initializer_list<int> idx)
{
    std::size_t q = 0;
    for (int i : idx) q = q * static_cast<std::size_t>(t.dim()) + static_cast<std::size_t>(i);
    return t[q];
}

Eigen::VectorXd matvec(const Eigen::MatrixXd& m, const std::vector<double>& x)
{
    return m * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

double factorial(int k)
{
    double f = 1.0;
    for (int q = 2; q <= k; ++q) f *= q;
    return f;
}

}  // namespace

std::vector<LowerTensor> product_oracle(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b)
{
    if (a.size() != b.size() || a.empty() || a.size() > 4) throw ShapeError("product oracle supports 1 <= r <= 4");
    const int n = a.front().dim();
    Flat<double> fa;
    Flat<double> fb;
    for (std::size_t q = 0; q < a.size(); ++q) {
        fa.push_back(a[q].entries());
        fb.push_back(b[q].entries());
    }
    std::vector<LowerTensor> out{product_oracle_order<1>(fa, fb, n)};
    if (a.size() >= 2) out.push_back(product_oracle_order<2>(fa, fb, n));
    if (a.size() >= 3) out.push_back(product_oracle_order<3>(fa, fb, n));
    if (a.size() >= 4) out.push_back(product_oracle_order<4>(fa, fb, n));
    return out;
}

LowerTensor product_closed_r2(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b)
{
    const int n = a[0].dim();
    LowerTensor out(n, 2);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int al = 0; al < n; ++al) {
                    for (int be = 0; be < n; ++be) s += at(a[1], {i, al, be}) * at(b[0], {al, j}) * at(b[0], {be, k});
                    s += at(a[0], {i, al}) * at(b[1], {al, j, k});
                }
                out[static_cast<std::size_t>((i * n + j) * n + k)] = s;
            }
        }
    }
    return out;
}

LowerTensor product_closed_r3(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b)
{
    const int n = a[0].dim();
    LowerTensor out(n, 3);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    double s = 0.0;
                    for (int al = 0; al < n; ++al) {
                        for (int be = 0; be < n; ++be) {
                            for (int ga = 0; ga < n; ++ga) {
                                s += at(a[2], {i, al, be, ga}) * at(b[0], {al, j}) * at(b[0], {be, k}) * at(b[0], {ga, l});
                            }
                            s += at(a[1], {i, al, be}) * at(b[1], {al, j, l}) * at(b[0], {be, k});
                            s += at(a[1], {i, al, be}) * at(b[0], {al, j}) * at(b[1], {be, k, l});
                            s += at(a[1], {i, al, be}) * at(b[1], {al, j, k}) * at(b[0], {be, l});
                        }
                        s += at(a[0], {i, al}) * at(b[2], {al, j, k, l});
                    }
                    out[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = s;
                }
            }
        }
    }
    return out;
}

PolynomialMap jet_polynomial(const std::vector<LowerTensor>& s)
{
    const int n = s.front().dim();
    PolynomialMap f(static_cast<std::size_t>(n), Polynomial(n));
    for (const auto& t : s) {
        const int k = t.order();
        const double w = 1.0 / factorial(k);
        const std::size_t lower = t.lower_size();
        for (int i = 0; i < n; ++i) {
            for (std::size_t q = 0; q < lower; ++q) {
                Polynomial::Exponents e(static_cast<std::size_t>(n), 0);
                std::size_t rest = q;
                for (int slot = 0; slot < k; ++slot) {
                    ++e[rest % static_cast<std::size_t>(n)];
                    rest /= static_cast<std::size_t>(n);
                }
                f[static_cast<std::size_t>(i)].add_term(e, w * t[static_cast<std::size_t>(i) * lower + q]);
            }
        }
    }
    return f;
}

std::vector<LowerTensor> polynomial_derivatives(const PolynomialMap& f, std::span<const double> p, int r)
{
    const int n = f.front().vars();
    const int out_dim = static_cast<int>(f.size());
    std::vector<LowerTensor> out;
    std::vector<Polynomial> level(f.begin(), f.end());  // all partials of the current order, row-major in (i, J)
    for (int k = 1; k <= r; ++k) {
        std::vector<Polynomial> next;
        next.reserve(level.size() * static_cast<std::size_t>(n));
        for (const auto& g : level) {
            for (int v = 0; v < n; ++v) next.push_back(g.derivative(v));
        }
        level = std::move(next);
        if (out_dim != n) throw ShapeError("derivative tensors need a square map");
        LowerTensor t(n, k);
        for (std::size_t q = 0; q < level.size(); ++q) t[q] = level[q].evaluate(p);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<LowerTensor> classical_compose_oracle(const std::vector<LowerTensor>& c1, const std::vector<LowerTensor>& c2)
{
    const int n = c1.front().dim();
    const int r = static_cast<int>(c1.size());
    const PolynomialMap f = jet_polynomial(c1);
    const PolynomialMap g = jet_polynomial(c2);
    // Substitute g into f term by term, dropping every monomial above degree r as soon as it appears.
    auto truncate = [r](const Polynomial& p) {
        Polynomial out(p.vars());
        for (const auto& [e, c] : p.terms()) {
            int deg = 0;
            for (int v : e) deg += v;
            if (deg <= r) out.add_term(e, c);
        }
        return out;
    };
    PolynomialMap fg;
    for (const auto& fi : f) {
        Polynomial acc(n);
        for (const auto& [e, c] : fi.terms()) {
            Polynomial term = Polynomial::constant(n, c);
            for (int v = 0; v < n; ++v) {
                for (int k = 0; k < e[static_cast<std::size_t>(v)]; ++k) term = truncate(term * g[static_cast<std::size_t>(v)]);
            }
            acc += term;
        }
        fg.push_back(std::move(acc));
    }
    const std::vector<double> o(static_cast<std::size_t>(n), 0.0);
    return polynomial_derivatives(fg, o, r);
}

AlgebraVector canonical_form_r2(const FrameCoords& u, const BundleTangent& x)
{
    const int n = u.n;
    const Eigen::MatrixXd v = to_matrix(u.tensors[0]).inverse();
    const Eigen::VectorXd w = matvec(v, x.base);
    AlgebraVector out = AlgebraVector::zero(n, 2);
    for (int i = 0; i < n; ++i) out.base[static_cast<std::size_t>(i)] = w(i);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int a = 0; a < n; ++a) {
                double inner = at(x.tensors[0], {a, j});
                for (int be = 0; be < n; ++be) inner -= at(u.tensors[1], {a, j, be}) * w(be);
                s += v(i, a) * inner;
            }
            out.tensors[0](i, j) = s;
        }
    }
    return out;
}

std::vector<double> first_torsion_oracle(const FrameCoords& u, const BundleTangent& x, const BundleTangent& y)
{
    const int n = u.n;
    const Eigen::MatrixXd v = to_matrix(u.tensors[0]).inverse();
    const Eigen::VectorXd wx = matvec(v, x.base);
    const Eigen::VectorXd wy = matvec(v, y.base);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < n; ++a) {
            for (int b1 = 0; b1 < n; ++b1) {
                for (int b2 = 0; b2 < n; ++b2) {
                    out[static_cast<std::size_t>(i)] += v(i, a) * at(u.tensors[1], {a, b1, b2}) * (wx(b1) * wy(b2) - wy(b1) * wx(b2));
                }
            }
        }
    }
    return out;
}

LowerTensor curvature_oracle(const FrameCoords& u, const BundleTangent& x, const BundleTangent& y)
{
    const int n = u.n;
    const Eigen::MatrixXd v = to_matrix(u.tensors[0]).inverse();
    const LowerTensor& h2 = u.tensors[1];
    const Eigen::VectorXd wx = matvec(v, x.base);
    const Eigen::VectorXd wy = matvec(v, y.base);
    // Tensors of the one-forms appearing in the four terms, evaluated on X and on Y.
    auto v_dh1 = [&](const BundleTangent& z, int g, int d) {  // (v dh1)^g_d
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += v(g, a) * at(z.tensors[0], {a, d});
        return s;
    };
    auto v_dh2 = [&](const BundleTangent& z, int i, int j, int be) {  // (v dh2)^i_{j be}
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += v(i, a) * at(z.tensors[1], {a, j, be});
        return s;
    };
    auto v_h2 = [&](int i, int j, int be) {  // (v h2)^i_{j be}
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += v(i, a) * at(h2, {a, j, be});
        return s;
    };
    LowerTensor out(n, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int be = 0; be < n; ++be) {
                // T1 = -(v dh2)^i_{j be} ^ w^be
                s -= v_dh2(x, i, j, be) * wy(be) - v_dh2(y, i, j, be) * wx(be);
                // T2 = (v h2)^i_{j be} (v dh1)^be_d ^ w^d
                for (int d = 0; d < n; ++d) s += v_h2(i, j, be) * (v_dh1(x, be, d) * wy(d) - v_dh1(y, be, d) * wx(d));
            }
            for (int b1 = 0; b1 < n; ++b1) {
                for (int b2 = 0; b2 < n; ++b2) {
                    const double c = v_h2(i, b1, b2);
                    // T3 = (v h2)^i_{b1 b2} (v dh1)^b1_j ^ w^b2
                    s += c * (v_dh1(x, b1, j) * wy(b2) - v_dh1(y, b1, j) * wx(b2));
                    // T4 = -(v h2)^i_{b1 b2} (v h2)^b1_{j d} w^d ^ w^b2
                    for (int d = 0; d < n; ++d) s -= c * v_h2(b1, j, d) * (wx(d) * wy(b2) - wy(d) * wx(b2));
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

Eigen::VectorXd central_difference(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& e, double h)
{
    return (f(x + h * e) - f(x - h * e)) / (2.0 * h);
}

double schwarzian_oracle(double d1, double d2, double d3)
{
    const double q = d2 / d1;
    return d3 / d1 - 1.5 * q * q;
}

TransformedPair transform_pair_symbolic(const PolynomialTensorField& gamma, const PolynomialTensorField& mu, const PolynomialMap& phi,
                                       const PolynomialMap& phi_inverse)
{
    const int n = gamma.dim();
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::vector<Polynomial>> dphi(un, std::vector<Polynomial>(un));
    std::vector<std::vector<std::vector<Polynomial>>> hphi(un, std::vector<std::vector<Polynomial>>(un, std::vector<Polynomial>(un)));
    std::vector<std::vector<Polynomial>> psi(un, std::vector<Polynomial>(un));
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t a = 0; a < un; ++a) {
            const Polynomial d = phi[i].derivative(static_cast<int>(a));
            dphi[i][a] = d.compose(phi_inverse);
            for (std::size_t b = 0; b < un; ++b) hphi[i][a][b] = d.derivative(static_cast<int>(b)).compose(phi_inverse);
            psi[i][a] = phi_inverse[i].derivative(static_cast<int>(a));
        }
    }
    std::vector<Polynomial> g_src;
    std::vector<Polynomial> m_src;
    for (const auto& e : gamma.entries()) g_src.push_back(e.compose(phi_inverse));
    for (const auto& e : mu.entries()) m_src.push_back(e.compose(phi_inverse));
    auto at = [n](const std::vector<Polynomial>& t, std::size_t i, std::size_t j, std::size_t k) -> const Polynomial& {
        return t[(i * static_cast<std::size_t>(n) + j) * static_cast<std::size_t>(n) + k];
    };

    TransformedPair out{PolynomialTensorField(n, 2, n), PolynomialTensorField(n, 2, n)};
    for (std::size_t i = 0; i < un; ++i) {
        // Contract the upper index first: (D phi Gamma)^i_{bc} and (D phi mu)^i_{bc}.
        std::vector<Polynomial> g_up(un * un, Polynomial(n));
        std::vector<Polynomial> m_up(un * un, Polynomial(n));
        for (std::size_t b = 0; b < un; ++b) {
            for (std::size_t c = 0; c < un; ++c) {
                for (std::size_t a = 0; a < un; ++a) {
                    g_up[b * un + c] += dphi[i][a] * at(g_src, a, b, c);
                    m_up[b * un + c] += dphi[i][a] * at(m_src, a, b, c);
                }
                g_up[b * un + c] -= hphi[i][b][c];
            }
        }
        for (std::size_t j = 0; j < un; ++j) {
            for (std::size_t k = 0; k < un; ++k) {
                Polynomial g(n);
                Polynomial m(n);
                for (std::size_t b = 0; b < un; ++b) {
                    for (std::size_t c = 0; c < un; ++c) {
                        const Polynomial w = psi[b][j] * psi[c][k];
                        g += g_up[b * un + c] * w;
                        m += m_up[b * un + c] * w;
                    }
                }
                const std::vector<int> jk{static_cast<int>(j), static_cast<int>(k)};
                out.gamma.entry(static_cast<int>(i), jk) = std::move(g);
                out.mu.entry(static_cast<int>(i), jk) = std::move(m);
            }
        }
    }
    return out;
}

}  // namespace ff::verify
