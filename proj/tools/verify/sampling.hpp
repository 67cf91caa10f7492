#pragma once

/**
 * @file sampling.hpp
 * @brief Seeded random generation of jets, frames, tangents and maps.
 *
 * All randomness flows from one explicit 64-bit seed. Tensor entries are
 * uniform in [-2, 2]; order-1 blocks are redrawn until |det| >= 0.3 and the
 * condition number is at most 20.
 */

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/bundle.hpp"
#include "formalframes/charts.hpp"
#include "formalframes/fields.hpp"
#include "formalframes/jetgroup.hpp"

namespace ff::verify {

/// Derives a per-suite seed from the run seed and a suite name (FNV-1a mix).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    [[nodiscard]] double uniform(double lo, double hi);
    [[nodiscard]] int integer(int lo, int hi);
    [[nodiscard]] std::vector<double> vector(int n, double lo = -1.0, double hi = 1.0);

    [[nodiscard]] LowerTensor tensor(int n, int k, double lo = -2.0, double hi = 2.0);
    [[nodiscard]] LowerTensor symmetric_tensor(int n, int k, double lo = -2.0, double hi = 2.0);
    [[nodiscard]] Eigen::MatrixXd invertible(int n);

    [[nodiscard]] JetGroupElement jet(int n, int r);
    [[nodiscard]] ClassicalJet classical_jet(int n, int r);
    [[nodiscard]] JetAlgebraElement algebra_element(int n, int r);
    [[nodiscard]] AlgebraVector algebra_vector(int n, int r);

    /// Random frame; classical frames have symmetric tensors.
    [[nodiscard]] FrameCoords frame(int n, int r, bool classical = false);
    /// Random tangent; symmetric tangents have symmetric tensor components.
    [[nodiscard]] BundleTangent tangent(int n, int r, bool symmetric = false);

    /**
     * @brief Random polynomial diffeomorphism germ in n variables.
     *
     * phi(x) = c + A x + quadratic and cubic terms with coefficients in
     * [-scale, scale]; the Jacobian at p is checked to be well conditioned.
     */
    [[nodiscard]] SmoothMapSpec polynomial_map(int n, std::span<const double> p, double scale = 0.3);
    /**
     * @brief Polynomial diffeomorphism of R^n with a polynomial inverse.
     *
     * phi = L o T where T is triangular, T_i(x) = c_i + s_i x_i + q_i(x_1) +
     * sum_{j < i} l_ij x_j with q_i quadratic, and L is a random invertible
     * matrix. The inverse is written to inverse.
     */
    [[nodiscard]] PolynomialMap triangular_map(int n, PolynomialMap& inverse, double scale = 0.3);
    /// Random Moebius map with ad - bc of modulus >= 0.3 and no pole near x.
    [[nodiscard]] SmoothMapSpec moebius(double x);
    /// Random polynomial tensor field of degree <= degree.
    [[nodiscard]] PolynomialTensorField field(int n, int k, int m, int degree, double scale = 0.5);
    /// Random polynomial in m variables with total degree <= degree.
    [[nodiscard]] Polynomial polynomial(int m, int degree, double scale = 0.5);

private:
    std::mt19937_64 rng_;
};

}  // namespace ff::verify
