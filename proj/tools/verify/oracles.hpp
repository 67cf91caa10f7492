#pragma once

/**
 * @file oracles.hpp
 * @brief Reference computations that avoid the library's own code paths.
 *
 * Each oracle reaches the same quantity by a different route: nested dual
 * numbers instead of the term tree, written-out index formulas instead of
 * generic contractions, polynomial differentiation instead of Taylor
 * arithmetic, and central differences instead of exact derivatives.
 */

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/bundle.hpp"
#include "formalframes/fields.hpp"
#include "formalframes/jetgroup.hpp"
#include "formalframes/polynomial.hpp"

namespace ff::verify {

/**
 * @brief Formal product from the 1-jet of the composed bundle map.
 *
 * (ab)[k] is read as the derivative at x = 0 of the order-(k-1) product of
 * A(x) = a + a'(b1 x) and B(x) = b + b' x, where primes shift the order by
 * one and the new index is contracted last. Each level of the recursion adds
 * one layer of dual numbers. Supports r <= 4.
 */
[[nodiscard]] std::vector<LowerTensor> product_oracle(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b);

/// Order-2 product written out index by index.
[[nodiscard]] LowerTensor product_closed_r2(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b);
/// Order-3 product as the explicit five-term sum.
[[nodiscard]] LowerTensor product_closed_r3(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b);

/// Polynomial x -> sum_k s[k](x, ..., x) / k! with symmetric s.
[[nodiscard]] PolynomialMap jet_polynomial(const std::vector<LowerTensor>& s);
/// Derivative tensors of orders 1..r of a polynomial map at p, by repeated symbolic differentiation.
[[nodiscard]] std::vector<LowerTensor> polynomial_derivatives(const PolynomialMap& f, std::span<const double> p, int r);
/// Classical composition c1 o c2 of base-free jets through polynomial substitution.
[[nodiscard]] std::vector<LowerTensor> classical_compose_oracle(const std::vector<LowerTensor>& c1, const std::vector<LowerTensor>& c2);

/// theta^0 and theta^1 of an order-2 frame from the written-out formula.
[[nodiscard]] AlgebraVector canonical_form_r2(const FrameCoords& u, const BundleTangent& x);
/// First torsion of an order-2 frame as v u_{b1 b2} w^{b1} ^ w^{b2} with w = v dh.
[[nodiscard]] std::vector<double> first_torsion_oracle(const FrameCoords& u, const BundleTangent& x, const BundleTangent& y);
/// Curvature of an order-2 frame from the four-term local formula.
[[nodiscard]] LowerTensor curvature_oracle(const FrameCoords& u, const BundleTangent& x, const BundleTangent& y);

/// Central difference (f(x + h e) - f(x - h e)) / 2h of a vector-valued function along e.
[[nodiscard]] Eigen::VectorXd central_difference(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& e, double h);

/**
 * @brief Christoffel symbols and a deformation tensor carried through a polynomial diffeomorphism.
 *
 * phi_inverse must be the exact polynomial inverse of phi. The target fields
 * are produced by symbolic substitution: every source quantity is composed
 * with phi_inverse and psi = D(phi_inverse) replaces (D phi)^{-1}, so the
 * results are polynomials in the target coordinates.
 */
struct TransformedPair {
    PolynomialTensorField gamma;
    PolynomialTensorField mu;
};
[[nodiscard]] TransformedPair transform_pair_symbolic(const PolynomialTensorField& gamma, const PolynomialTensorField& mu,
                                                      const PolynomialMap& phi, const PolynomialMap& phi_inverse);

/// Schwarzian of a one-variable map from its first three derivatives.
[[nodiscard]] double schwarzian_oracle(double d1, double d2, double d3);

}  // namespace ff::verify
