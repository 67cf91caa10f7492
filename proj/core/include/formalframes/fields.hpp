#pragma once

/**
 * @file fields.hpp
 * @brief Tensor fields with polynomial entries over a chart.
 *
 * A field assigns to each point of R^m a tensor T^i_{j1..jk} with indices in
 * 1..n; m and n differ for transverse data on foliation charts. Entries are
 * exact polynomials, so values and derivatives are evaluated without
 * discretization error.
 */

#include <span>
#include <vector>

#include "formalframes/polynomial.hpp"
#include "formalframes/tensor.hpp"

namespace ff {

class PolynomialTensorField {
public:
    PolynomialTensorField() = default;
    /// Zero field of tensors with dimension n and lower order k over R^m.
    PolynomialTensorField(int n, int k, int m);
    /// Field with the given row-major entries; throws ShapeError on bad lengths or variable counts.
    PolynomialTensorField(int n, int k, int m, std::vector<Polynomial> entries);
    /// Constant field.
    static PolynomialTensorField constant(const LowerTensor& t, int m);

    [[nodiscard]] int dim() const { return n_; }
    [[nodiscard]] int order() const { return k_; }
    [[nodiscard]] int vars() const { return m_; }
    [[nodiscard]] const std::vector<Polynomial>& entries() const { return entries_; }
    [[nodiscard]] Polynomial& entry(int i, std::span<const int> lower);
    [[nodiscard]] const Polynomial& entry(int i, std::span<const int> lower) const;

    /// Value at p (length m).
    [[nodiscard]] LowerTensor evaluate(std::span<const double> p) const;
    /// Field of partial derivatives with respect to variable v.
    [[nodiscard]] PolynomialTensorField derivative(int v) const;
    /// Directional derivative at p along w (length m).
    [[nodiscard]] LowerTensor directional_derivative(std::span<const double> p, std::span<const double> w) const;

private:
    int n_ = 0;
    int k_ = 0;
    int m_ = 0;
    std::vector<Polynomial> entries_;
};

}  // namespace ff
