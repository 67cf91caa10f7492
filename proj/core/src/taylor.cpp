#include "formalframes/taylor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace ff {

namespace {

void enumerate_exponents(int m, int degree, int var, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (var == m - 1) {
        cur[static_cast<std::size_t>(var)] = degree;
        out.push_back(cur);
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur[static_cast<std::size_t>(var)] = e;
        enumerate_exponents(m, degree - e, var + 1, cur, out);
    }
}

double factorial(int k)
{
    double f = 1.0;
    for (int q = 2; q <= k; ++q) f *= q;
    return f;
}

}  // namespace

int MonomialBasis::index_of(std::span<const int> exps) const
{
    int deg = 0;
    for (int e : exps) deg += e;
    if (deg > order) return -1;
    // Monomials of lower degree come first; within a degree the order is lexicographic descending.
    for (std::size_t q = 0; q < exponents.size(); ++q) {
        if (degree[q] != deg) continue;
        if (std::equal(exps.begin(), exps.end(), exponents[q].begin())) return static_cast<int>(q);
    }
    return -1;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int m, int d)
{
    if (m < 1 || d < 0) throw ShapeError("Taylor basis needs m >= 1 and d >= 0");
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({m, d});
    if (it != cache.end()) return it->second;

    auto b = std::make_shared<MonomialBasis>();
    b->vars = m;
    b->order = d;
    std::vector<int> cur(static_cast<std::size_t>(m), 0);
    for (int deg = 0; deg <= d; ++deg) {
        const std::size_t before = b->exponents.size();
        enumerate_exponents(m, deg, 0, cur, b->exponents);
        b->degree.insert(b->degree.end(), b->exponents.size() - before, deg);
    }
    std::map<std::vector<int>, int> lookup;
    for (std::size_t q = 0; q < b->exponents.size(); ++q) lookup[b->exponents[q]] = static_cast<int>(q);
    const std::size_t s = b->exponents.size();
    b->product.assign(s * s, -1);
    std::vector<int> sum(static_cast<std::size_t>(m));
    for (std::size_t p = 0; p < s; ++p) {
        for (std::size_t q = 0; q < s; ++q) {
            if (b->degree[p] + b->degree[q] > d) continue;
            for (int v = 0; v < m; ++v) sum[static_cast<std::size_t>(v)] = b->exponents[p][static_cast<std::size_t>(v)] + b->exponents[q][static_cast<std::size_t>(v)];
            b->product[p * s + q] = lookup.at(sum);
        }
    }
    cache.emplace(std::make_pair(m, d), b);
    return b;
}

TaylorScalar TaylorScalar::constant(int m, int d, double c)
{
    TaylorScalar t;
    t.basis_ = MonomialBasis::get(m, d);
    t.c_.assign(t.basis_->size(), 0.0);
    t.c_[0] = c;
    return t;
}

TaylorScalar TaylorScalar::variable(int m, int d, int i, double offset)
{
    if (i < 0 || i >= m) throw ShapeError("Taylor variable index out of range");
    TaylorScalar t = constant(m, d, offset);
    if (d >= 1) {
        std::vector<int> e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(i)] = 1;
        t.c_[static_cast<std::size_t>(t.basis_->index_of(e))] = 1.0;
    }
    return t;
}

double TaylorScalar::coefficient(std::span<const int> exps) const
{
    const int q = basis_->index_of(exps);
    return q < 0 ? 0.0 : c_[static_cast<std::size_t>(q)];
}

void TaylorScalar::require_compatible(const TaylorScalar& o) const
{
    if (!basis_ || !o.basis_) throw ShapeError("uninitialized Taylor scalar");
    if (basis_->vars != o.basis_->vars) throw ShapeError("Taylor scalars have different variable counts");
    if (basis_->order != o.basis_->order) throw DomainError("Taylor truncation orders differ");
}

TaylorScalar& TaylorScalar::operator+=(const TaylorScalar& o)
{
    require_compatible(o);
    for (std::size_t q = 0; q < c_.size(); ++q) c_[q] += o.c_[q];
    return *this;
}

TaylorScalar& TaylorScalar::operator-=(const TaylorScalar& o)
{
    require_compatible(o);
    for (std::size_t q = 0; q < c_.size(); ++q) c_[q] -= o.c_[q];
    return *this;
}

TaylorScalar& TaylorScalar::operator*=(const TaylorScalar& o)
{
    require_compatible(o);
    const std::size_t s = c_.size();
    std::vector<double> out(s, 0.0);
    for (std::size_t p = 0; p < s; ++p) {
        if (c_[p] == 0.0) continue;
        for (std::size_t q = 0; q < s; ++q) {
            const int r = basis_->product[p * s + q];
            if (r >= 0) out[static_cast<std::size_t>(r)] += c_[p] * o.c_[q];
        }
    }
    c_ = std::move(out);
    return *this;
}

TaylorScalar& TaylorScalar::operator*=(double s)
{
    for (auto& c : c_) c *= s;
    return *this;
}

TaylorScalar& TaylorScalar::operator+=(double s)
{
    c_[0] += s;
    return *this;
}

TaylorScalar TaylorScalar::reciprocal() const
{
    const double c0 = constant_term();
    if (c0 == 0.0) throw DomainError("reciprocal of a Taylor scalar with zero constant term");
    // 1/(c0 (1 + n)) = (1/c0) * sum_{q=0}^{d} (-n)^q, with n nilpotent of order d+1.
    TaylorScalar nil = *this;
    nil.c_[0] = 0.0;
    nil *= -1.0 / c0;
    TaylorScalar sum = constant(vars(), order(), 1.0);
    TaylorScalar power = sum;
    for (int q = 1; q <= order(); ++q) {
        power *= nil;
        sum += power;
    }
    sum *= 1.0 / c0;
    return sum;
}

TaylorScalar TaylorScalar::pow(int e) const
{
    if (e < 0) return reciprocal().pow(-e);
    TaylorScalar out = constant(vars(), order(), 1.0);
    for (int q = 0; q < e; ++q) out *= *this;
    return out;
}

double TaylorScalar::evaluate(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != vars()) throw ShapeError("evaluation point has the wrong dimension");
    double acc = 0.0;
    for (std::size_t q = 0; q < c_.size(); ++q) {
        if (c_[q] == 0.0) continue;
        double term = c_[q];
        for (int v = 0; v < vars(); ++v) {
            for (int e = 0; e < basis_->exponents[q][static_cast<std::size_t>(v)]; ++e) term *= x[static_cast<std::size_t>(v)];
        }
        acc += term;
    }
    return acc;
}

TaylorTuple taylor_compose(const TaylorTuple& outer, const TaylorTuple& inner)
{
    if (outer.empty()) return {};
    const int m = outer.front().vars();
    const int d = outer.front().order();
    if (static_cast<int>(inner.size()) != m) throw ShapeError("inner tuple length differs from outer variable count");
    if (inner.empty()) throw ShapeError("empty inner tuple");
    const int k = inner.front().vars();
    for (const auto& o : outer) {
        if (o.vars() != m) throw ShapeError("outer tuple mixes variable counts");
        if (o.order() != d) throw DomainError("outer tuple mixes truncation orders");
    }
    for (const auto& in : inner) {
        if (in.vars() != k) throw ShapeError("inner tuple mixes variable counts");
        if (in.order() != d) throw DomainError("truncation order mismatch between outer and inner");
    }
    // powers[v][e] = inner[v]^e for e = 0..d
    std::vector<std::vector<TaylorScalar>> powers(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) {
        auto& pv = powers[static_cast<std::size_t>(v)];
        pv.push_back(TaylorScalar::constant(k, d, 1.0));
        for (int e = 1; e <= d; ++e) pv.push_back(pv.back() * inner[static_cast<std::size_t>(v)]);
    }
    const MonomialBasis& ob = outer.front().basis();
    std::vector<TaylorScalar> monomials;
    monomials.reserve(ob.size());
    for (std::size_t q = 0; q < ob.size(); ++q) {
        TaylorScalar mono = TaylorScalar::constant(k, d, 1.0);
        for (int v = 0; v < m; ++v) {
            const int e = ob.exponents[q][static_cast<std::size_t>(v)];
            if (e > 0) mono *= powers[static_cast<std::size_t>(v)][static_cast<std::size_t>(e)];
        }
        monomials.push_back(std::move(mono));
    }
    TaylorTuple out;
    out.reserve(outer.size());
    for (const auto& o : outer) {
        TaylorScalar acc = TaylorScalar::constant(k, d, 0.0);
        for (std::size_t q = 0; q < ob.size(); ++q) {
            const double c = o.coeffs()[q];
            if (c != 0.0) acc += c * monomials[q];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

TaylorTuple taylor_identity(int m, int d, std::span<const double> offset)
{
    TaylorTuple out;
    for (int i = 0; i < m; ++i) {
        const double off = offset.empty() ? 0.0 : offset[static_cast<std::size_t>(i)];
        out.push_back(TaylorScalar::variable(m, d, i, off));
    }
    return out;
}

LowerTensor derivative_tensor(const TaylorTuple& f, int k)
{
    if (f.empty()) throw ShapeError("empty Taylor tuple");
    const int m = f.front().vars();
    if (static_cast<int>(f.size()) != m) throw ShapeError("derivative tensors need a square map");
    if (k > f.front().order()) throw DomainError("derivative order exceeds Taylor truncation order");
    LowerTensor out(m, k);
    std::vector<int> exps(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for_each_multi_index(m, k, [&](const std::vector<int>& j) {
            std::fill(exps.begin(), exps.end(), 0);
            for (int jj : j) ++exps[static_cast<std::size_t>(jj)];
            double scale = 1.0;
            for (int e : exps) scale *= factorial(e);
            out.at(i, j) = scale * f[static_cast<std::size_t>(i)].coefficient(exps);
        });
    }
    return out;
}

TaylorTuple taylor_from_derivatives(const std::vector<LowerTensor>& d_tensors, int d)
{
    if (d_tensors.empty()) throw ShapeError("no derivative tensors");
    const int m = d_tensors.front().dim();
    TaylorTuple out(static_cast<std::size_t>(m), TaylorScalar::constant(m, d, 0.0));
    std::vector<int> exps(static_cast<std::size_t>(m));
    for (std::size_t q = 0; q < d_tensors.size() && static_cast<int>(q) < d; ++q) {
        const LowerTensor& t = d_tensors[q];
        const int k = t.order();
        const double inv_fact = 1.0 / factorial(k);
        for (int i = 0; i < m; ++i) {
            auto& coeffs = out[static_cast<std::size_t>(i)].coeffs();
            const MonomialBasis& b = out[static_cast<std::size_t>(i)].basis();
            for_each_multi_index(m, k, [&](const std::vector<int>& j) {
                std::fill(exps.begin(), exps.end(), 0);
                for (int jj : j) ++exps[static_cast<std::size_t>(jj)];
                coeffs[static_cast<std::size_t>(b.index_of(exps))] += inv_fact * t.at(i, j);
            });
        }
    }
    return out;
}

}  // namespace ff
