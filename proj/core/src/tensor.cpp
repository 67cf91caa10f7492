#include "formalframes/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ff {

LowerTensor identity_tensor(int n)
{
    LowerTensor t(n, 1);
    for (int i = 0; i < n; ++i) t(i, i) = 1.0;
    return t;
}

LowerTensor permute_lower(const LowerTensor& t, std::span<const int> perm)
{
    const int k = t.order();
    if (static_cast<int>(perm.size()) != k) throw ShapeError("permutation length differs from tensor order");
    std::vector<int> seen(static_cast<std::size_t>(k), 0);
    for (int p : perm) {
        if (p < 0 || p >= k || seen[static_cast<std::size_t>(p)]++) throw ShapeError("not a permutation");
    }
    const int n = t.dim();
    LowerTensor out(n, k);
    std::vector<int> src(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) {
        for_each_multi_index(n, k, [&](const std::vector<int>& j) {
            for (int q = 0; q < k; ++q) src[static_cast<std::size_t>(q)] = j[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])];
            out.at(i, j) = t.at(i, src);
        });
    }
    return out;
}

LowerTensor symmetrize(const LowerTensor& t)
{
    const int k = t.order();
    if (k < 2 || t.dim() == 1) return t;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    LowerTensor acc(t.dim(), k);
    double count = 0.0;
    do {
        acc += permute_lower(t, perm);
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc *= 1.0 / count;
    return acc;
}

AsymmetryWitness max_asymmetry_witness(const LowerTensor& t)
{
    AsymmetryWitness w;
    const int k = t.order();
    const int n = t.dim();
    if (k < 2 || n == 1) return w;
    std::vector<int> swapped(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i) {
        for_each_multi_index(n, k, [&](const std::vector<int>& j) {
            for (int a = 0; a < k; ++a) {
                for (int b = a + 1; b < k; ++b) {
                    if (j[static_cast<std::size_t>(a)] == j[static_cast<std::size_t>(b)]) continue;
                    std::copy(j.begin(), j.end(), swapped.begin());
                    std::swap(swapped[static_cast<std::size_t>(a)], swapped[static_cast<std::size_t>(b)]);
                    const double gap = std::abs(t.at(i, j) - t.at(i, swapped));
                    if (gap > w.gap) {
                        w.gap = gap;
                        w.upper = i;
                        w.lower = j;
                        w.slot_a = a;
                        w.slot_b = b;
                    }
                }
            }
        });
    }
    return w;
}

double max_asymmetry(const LowerTensor& t) { return max_asymmetry_witness(t).gap; }

double max_abs(const LowerTensor& t)
{
    double m = 0.0;
    for (double e : t.entries()) m = std::max(m, std::abs(e));
    return m;
}

double max_abs_diff(const LowerTensor& a, const LowerTensor& b)
{
    if (!a.same_shape(b)) throw ShapeError("tensor shapes differ");
    double m = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) m = std::max(m, std::abs(a[q] - b[q]));
    return m;
}

}  // namespace ff
