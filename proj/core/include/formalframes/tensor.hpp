#pragma once

/**
 * @file tensor.hpp
 * @brief Dense tensors T^i_{j1...jk} with one upper and k ordered lower indices.
 *
 * Entries are stored row-major in (i, j1, ..., jk), so the last lower index
 * varies fastest. Indices are zero based in code and multi-indices are
 * enumerated in lexicographic order. Lower indices are not assumed to commute:
 * permuting them is a relabeling that generally changes the tensor.
 *
 * @code
 * ff::LowerTensor t(2, 2);          // n = 2, k = 2, all zero
 * t.at(0, {0, 1}) = 4.0;            // T^1_{12} = 4 in one-based notation
 * t.at(0, {1, 0}) = 2.0;
 * auto s = ff::symmetrize(t);       // s.at(0, {0, 1}) == 3.0
 * @endcode
 */

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "formalframes/errors.hpp"

namespace ff {

/// Integer power n^k for small non-negative k.
[[nodiscard]] constexpr std::size_t ipow(int n, int k)
{
    std::size_t p = 1;
    for (int q = 0; q < k; ++q) p *= static_cast<std::size_t>(n);
    return p;
}

/**
 * @brief Calls fn(idx) for every multi-index idx in {0..n-1}^len in lexicographic order.
 *
 * For len == 0 the callback is invoked once with an empty index.
 */
inline void for_each_multi_index(int n, int len, const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> idx(static_cast<std::size_t>(len), 0);
    const std::size_t total = ipow(n, len);
    for (std::size_t c = 0; c < total; ++c) {
        fn(idx);
        for (int p = len - 1; p >= 0; --p) {
            if (++idx[static_cast<std::size_t>(p)] < n) break;
            idx[static_cast<std::size_t>(p)] = 0;
        }
    }
}

/// Decodes a flat lower-index offset into its digits (base n, most significant first).
inline void decode_multi_index(std::size_t flat, int n, std::span<int> out)
{
    for (std::size_t p = out.size(); p-- > 0;) {
        out[p] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
}

/**
 * @brief Tensor with one upper index and k lower indices over a scalar type T.
 *
 * T is double for ordinary data; dual numbers are used to differentiate the
 * same code paths exactly.
 */
template <class T>
class BasicTensor {
public:
    BasicTensor() = default;

    /// Zero tensor of dimension n and lower order k.
    BasicTensor(int n, int k) : n_(n), k_(k), entries_(checked_size(n, k), T{}) {}

    /// Tensor with the given row-major entries; throws ShapeError on a length mismatch.
    BasicTensor(int n, int k, std::vector<T> entries) : n_(n), k_(k), entries_(std::move(entries))
    {
        if (entries_.size() != checked_size(n, k)) {
            throw ShapeError("tensor entries length does not equal n^(k+1)");
        }
    }

    [[nodiscard]] int dim() const { return n_; }
    [[nodiscard]] int order() const { return k_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::size_t lower_size() const { return ipow(n_, k_); }

    [[nodiscard]] const std::vector<T>& entries() const { return entries_; }
    [[nodiscard]] std::vector<T>& entries() { return entries_; }

    T& operator[](std::size_t flat) { return entries_[flat]; }
    const T& operator[](std::size_t flat) const { return entries_[flat]; }

    /// Flat offset of (i, J) where J has exactly k entries.
    [[nodiscard]] std::size_t offset(int i, std::span<const int> lower) const
    {
        std::size_t f = static_cast<std::size_t>(i);
        for (int j : lower) f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
        return f;
    }

    T& at(int i, std::span<const int> lower) { return entries_[offset(i, lower)]; }
    const T& at(int i, std::span<const int> lower) const { return entries_[offset(i, lower)]; }
    T& at(int i, std::initializer_list<int> lower)
    {
        return at(i, std::span<const int>(lower.begin(), lower.size()));
    }
    const T& at(int i, std::initializer_list<int> lower) const
    {
        return at(i, std::span<const int>(lower.begin(), lower.size()));
    }

    /// Entry (i, j) of an order-1 tensor viewed as a matrix.
    T& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
    const T& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }

    BasicTensor& operator+=(const BasicTensor& o)
    {
        require_same_shape(o);
        for (std::size_t q = 0; q < entries_.size(); ++q) entries_[q] += o.entries_[q];
        return *this;
    }
    BasicTensor& operator-=(const BasicTensor& o)
    {
        require_same_shape(o);
        for (std::size_t q = 0; q < entries_.size(); ++q) entries_[q] -= o.entries_[q];
        return *this;
    }
    BasicTensor& operator*=(double s)
    {
        for (auto& e : entries_) e = e * s;
        return *this;
    }
    friend BasicTensor operator+(BasicTensor a, const BasicTensor& b) { return a += b; }
    friend BasicTensor operator-(BasicTensor a, const BasicTensor& b) { return a -= b; }
    friend BasicTensor operator*(double s, BasicTensor a) { return a *= s; }

    /// True when both tensors have the same dimension and order.
    [[nodiscard]] bool same_shape(const BasicTensor& o) const { return n_ == o.n_ && k_ == o.k_; }

    /// Applies f to every entry, producing a tensor over another scalar type.
    template <class F>
    [[nodiscard]] auto map(F&& f) const -> BasicTensor<decltype(f(std::declval<const T&>()))>
    {
        using U = decltype(f(std::declval<const T&>()));
        std::vector<U> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(f(e));
        return BasicTensor<U>(n_, k_, std::move(out));
    }

private:
    static std::size_t checked_size(int n, int k)
    {
        if (n < 1 || k < 0) throw ShapeError("tensor needs n >= 1 and k >= 0");
        return ipow(n, k + 1);
    }
    void require_same_shape(const BasicTensor& o) const
    {
        if (!same_shape(o)) throw ShapeError("tensor shapes differ");
    }

    int n_ = 0;
    int k_ = 0;
    std::vector<T> entries_;
};

using LowerTensor = BasicTensor<double>;

/// Identity matrix as an order-1 tensor.
[[nodiscard]] LowerTensor identity_tensor(int n);

/**
 * @brief Permutes lower slots: out^i_{j1..jk} = T^i_{j_{perm[0]} .. j_{perm[k-1]}}.
 * @throws ShapeError if perm is not a permutation of 0..k-1.
 */
[[nodiscard]] LowerTensor permute_lower(const LowerTensor& t, std::span<const int> perm);

/// Average of T over all permutations of its lower indices.
[[nodiscard]] LowerTensor symmetrize(const LowerTensor& t);

/// Location and size of the largest violation of lower-index symmetry.
struct AsymmetryWitness {
    double gap = 0.0;        ///< |T - T o swap| at the witness
    int upper = 0;           ///< upper index i
    std::vector<int> lower;  ///< lower multi-index J
    int slot_a = 0;          ///< first transposed slot
    int slot_b = 0;          ///< second transposed slot
};

/// Maximum of |T - T o swap| over all entries and all transpositions of two lower slots.
[[nodiscard]] AsymmetryWitness max_asymmetry_witness(const LowerTensor& t);

/// Value part of max_asymmetry_witness.
[[nodiscard]] double max_asymmetry(const LowerTensor& t);

/// Largest absolute entry.
[[nodiscard]] double max_abs(const LowerTensor& t);

/// Largest absolute entrywise difference; throws ShapeError on shape mismatch.
[[nodiscard]] double max_abs_diff(const LowerTensor& a, const LowerTensor& b);

/**
 * @brief Contracts the last lower index with a vector: out^i_{J} = T^i_{J l} x^l.
 * @throws ShapeError if T has no lower index or x has the wrong length.
 */
template <class T, class V>
[[nodiscard]] BasicTensor<T> contract_last(const BasicTensor<T>& t, const std::vector<V>& x)
{
    const int n = t.dim();
    if (t.order() < 1 || static_cast<int>(x.size()) != n) throw ShapeError("contract_last shape mismatch");
    BasicTensor<T> out(n, t.order() - 1);
    const std::size_t rows = out.size();
    for (std::size_t q = 0; q < rows; ++q) {
        T acc{};
        for (int l = 0; l < n; ++l) acc += t[q * static_cast<std::size_t>(n) + static_cast<std::size_t>(l)] * x[static_cast<std::size_t>(l)];
        out[q] = acc;
    }
    return out;
}

}  // namespace ff
