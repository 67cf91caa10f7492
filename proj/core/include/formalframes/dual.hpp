#pragma once

/**
 * @file dual.hpp
 * @brief First-order dual numbers v + d*eps with eps^2 = 0.
 *
 * Every operation in the jet product is polynomial, so pushing Dual<double>
 * through it yields exact directional derivatives.
 *
 * @code
 * ff::Dual<double> x{3.0, 1.0};
 * auto y = x * x;   // y.v == 9, y.d == 6
 * @endcode
 */

namespace ff {

template <class T>
struct Dual {
    T v{};  ///< value part
    T d{};  ///< infinitesimal part

    constexpr Dual() = default;
    constexpr Dual(T value) : v(value), d{} {}  // NOLINT(google-explicit-constructor)
    constexpr Dual(T value, T deriv) : v(value), d(deriv) {}

    Dual& operator+=(const Dual& o)
    {
        v += o.v;
        d += o.d;
        return *this;
    }
    Dual& operator-=(const Dual& o)
    {
        v -= o.v;
        d -= o.d;
        return *this;
    }
    Dual& operator*=(const Dual& o)
    {
        d = d * o.v + v * o.d;
        v *= o.v;
        return *this;
    }
    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator-(const Dual& a) { return Dual(-a.v, -a.d); }
    friend Dual operator/(const Dual& a, const Dual& b)
    {
        const T inv = T(1) / b.v;
        return Dual(a.v * inv, (a.d * b.v - a.v * b.d) * inv * inv);
    }
};

/// Value part of a scalar (identity for plain numbers).
inline double primal(double x) { return x; }
template <class T>
auto primal(const Dual<T>& x)
{
    return primal(x.v);
}

}  // namespace ff
