#include "sampling.hpp"

#include <cmath>

#include "formalframes/linalg.hpp"

namespace ff::verify {

namespace {

void multi_indices(int m, int degree, std::vector<int>& cur, int var, std::vector<Polynomial::Exponents>& out)
{
    if (var == m) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int e : cur) used += e;
    for (int e = 0; used + e <= degree; ++e) {
        cur[static_cast<std::size_t>(var)] = e;
        multi_indices(m, degree, cur, var + 1, out);
    }
    cur[static_cast<std::size_t>(var)] = 0;
}

std::vector<Polynomial::Exponents> exponents_up_to(int m, int degree)
{
    std::vector<Polynomial::Exponents> out;
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    multi_indices(m, degree, cur, 0, out);
    return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name)
{
    std::uint64_t h = 1469598103934665603ULL ^ seed;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

std::vector<double> Sampler::vector(int n, double lo, double hi)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = uniform(lo, hi);
    return v;
}

LowerTensor Sampler::tensor(int n, int k, double lo, double hi)
{
    LowerTensor t(n, k);
    for (auto& e : t.entries()) e = uniform(lo, hi);
    return t;
}

LowerTensor Sampler::symmetric_tensor(int n, int k, double lo, double hi) { return symmetrize(tensor(n, k, lo, hi)); }

Eigen::MatrixXd Sampler::invertible(int n)
{
    for (;;) {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m(i, j) = uniform(-2.0, 2.0);
        }
        if (std::abs(m.determinant()) >= 0.3 && condition_number(m) <= 20.0) return m;
    }
}

JetGroupElement Sampler::jet(int n, int r)
{
    std::vector<LowerTensor> ts{from_matrix(invertible(n))};
    for (int k = 2; k <= r; ++k) ts.push_back(tensor(n, k));
    return JetGroupElement(n, r, std::move(ts));
}

ClassicalJet Sampler::classical_jet(int n, int r)
{
    ClassicalJet c{n, r, std::nullopt, {from_matrix(invertible(n))}};
    for (int k = 2; k <= r; ++k) c.s.push_back(symmetric_tensor(n, k));
    return c;
}

JetAlgebraElement Sampler::algebra_element(int n, int r)
{
    JetAlgebraElement x = JetAlgebraElement::zero(n, r);
    for (auto& t : x.tensors) t = tensor(n, t.order(), -1.0, 1.0);
    return x;
}

AlgebraVector Sampler::algebra_vector(int n, int r)
{
    AlgebraVector y = AlgebraVector::zero(n, r);
    y.base = vector(n);
    for (auto& t : y.tensors) t = tensor(n, t.order(), -1.0, 1.0);
    return y;
}

FrameCoords Sampler::frame(int n, int r, bool classical)
{
    FrameCoords u{n, r, "", vector(n), {}};
    if (classical) {
        u.tensors = classical_jet(n, r).s;
    } else {
        u.tensors = jet(n, r).tensors();
    }
    return u;
}

BundleTangent Sampler::tangent(int n, int r, bool symmetric)
{
    BundleTangent x = BundleTangent::zero(n, r);
    x.base = vector(n);
    for (auto& t : x.tensors) t = symmetric ? symmetric_tensor(n, t.order(), -1.0, 1.0) : tensor(n, t.order(), -1.0, 1.0);
    return x;
}

SmoothMapSpec Sampler::polynomial_map(int n, std::span<const double> p, double scale)
{
    for (;;) {
        const Eigen::MatrixXd a = invertible(n);
        PolynomialMap comps;
        for (int i = 0; i < n; ++i) {
            Polynomial c = Polynomial::constant(n, uniform(-1.0, 1.0));
            for (int j = 0; j < n; ++j) c += a(i, j) * Polynomial::variable(n, j);
            for (const auto& e : exponents_up_to(n, 3)) {
                int deg = 0;
                for (int v : e) deg += v;
                if (deg >= 2) c.add_term(e, uniform(-scale, scale));
            }
            comps.push_back(std::move(c));
        }
        SmoothMapSpec s = SmoothMapSpec::polynomial(std::move(comps));
        const TransitionJet t = transition_jet(s, p, 1);
        const Eigen::MatrixXd jac = to_matrix(t.D.front());
        if (std::abs(jac.determinant()) >= 0.1 && condition_number(jac) <= 1e3) return s;
    }
}

SmoothMapSpec Sampler::moebius(double x)
{
    for (;;) {
        const double a = uniform(-2.0, 2.0);
        const double b = uniform(-2.0, 2.0);
        const double c = uniform(-2.0, 2.0);
        const double d = uniform(-2.0, 2.0);
        if (std::abs(a * d - b * c) >= 0.3 && std::abs(c * x + d) >= 0.3) return SmoothMapSpec::moebius(a, b, c, d);
    }
}

Polynomial Sampler::polynomial(int m, int degree, double scale)
{
    Polynomial p(m);
    for (const auto& e : exponents_up_to(m, degree)) p.add_term(e, uniform(-scale, scale));
    return p;
}

PolynomialTensorField Sampler::field(int n, int k, int m, int degree, double scale)
{
    std::vector<Polynomial> entries;
    const std::size_t size = ipow(n, k + 1);
    for (std::size_t q = 0; q < size; ++q) entries.push_back(polynomial(m, degree, scale));
    return PolynomialTensorField(n, k, m, std::move(entries));
}

PolynomialMap Sampler::triangular_map(int n, PolynomialMap& inverse, double scale)
{
    const Eigen::MatrixXd l = invertible(n);
    const Eigen::MatrixXd l_inv = l.inverse();
    const auto un = static_cast<std::size_t>(n);
    PolynomialMap tri;
    std::vector<double> c(un);
    std::vector<double> s(un);
    std::vector<double> q1(un);
    std::vector<double> q2(un);
    std::vector<std::vector<double>> lower(un, std::vector<double>(un, 0.0));
    for (std::size_t i = 0; i < un; ++i) {
        c[i] = uniform(-0.5, 0.5);
        s[i] = (integer(0, 1) == 0 ? -1.0 : 1.0) * uniform(0.5, 1.5);
        q1[i] = i == 0 ? 0.0 : uniform(-scale, scale);
        q2[i] = i == 0 ? 0.0 : uniform(-scale, scale);
        for (std::size_t j = 0; j < i; ++j) lower[i][j] = uniform(-scale, scale);
    }
    const Polynomial x0 = Polynomial::variable(n, 0);
    for (std::size_t i = 0; i < un; ++i) {
        const auto vi = static_cast<int>(i);
        Polynomial t = Polynomial::constant(n, c[i]) + s[i] * Polynomial::variable(n, vi);
        if (i > 0) t += q1[i] * x0 + q2[i] * (x0 * x0);
        for (std::size_t j = 0; j < i; ++j) t += lower[i][j] * Polynomial::variable(n, static_cast<int>(j));
        tri.push_back(std::move(t));
    }
    PolynomialMap out;
    for (std::size_t i = 0; i < un; ++i) {
        Polynomial comp(n);
        for (std::size_t j = 0; j < un; ++j) comp += l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * tri[j];
        out.push_back(std::move(comp));
    }
    // Invert T row by row, then precompose with L^{-1}.
    PolynomialMap w;
    for (std::size_t i = 0; i < un; ++i) {
        Polynomial comp(n);
        for (std::size_t j = 0; j < un; ++j) {
            comp += l_inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * Polynomial::variable(n, static_cast<int>(j));
        }
        w.push_back(std::move(comp));
    }
    PolynomialMap t_inv;
    for (std::size_t i = 0; i < un; ++i) {
        Polynomial rest = w[i] - Polynomial::constant(n, c[i]);
        if (i > 0) rest -= q1[i] * t_inv[0] + q2[i] * (t_inv[0] * t_inv[0]);
        for (std::size_t j = 0; j < i; ++j) rest -= lower[i][j] * t_inv[j];
        t_inv.push_back((1.0 / s[i]) * rest);
    }
    inverse = std::move(t_inv);
    return out;
}

}  // namespace ff::verify
