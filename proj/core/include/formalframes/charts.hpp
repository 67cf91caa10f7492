#pragma once

/**
 * @file charts.hpp
 * @brief Symbolic smooth maps and their exact derivative tensors at a point.
 *
 * A map is a polynomial, a one-dimensional Moebius map x -> (ax+b)/(cx+d),
 * or a composite of maps applied in list order. Its derivatives at p are
 * read from a truncated Taylor expansion in the displacement from p, which
 * is exact for polynomials and for the geometric-series expansion of a
 * Moebius map.
 *
 * @code
 * auto phi = ff::SmoothMapSpec::moebius(0, 1, 1, 0);       // 1/x
 * auto jet = ff::transition_jet(phi, std::vector{2.0}, 3);
 * // jet.value = {0.5}; jet.D[0] = -0.25, jet.D[1] = 0.25, jet.D[2] = -0.375
 * @endcode
 */

#include <array>
#include <span>
#include <vector>

#include "formalframes/jetgroup.hpp"
#include "formalframes/polynomial.hpp"
#include "formalframes/taylor.hpp"

namespace ff {

class SmoothMapSpec {
public:
    enum class Kind { polynomial, moebius, composite };

    /// Polynomial map R^m -> R^k given componentwise.
    static SmoothMapSpec polynomial(PolynomialMap components);
    /// One-dimensional Moebius map (ax+b)/(cx+d); throws DomainError when ad - bc = 0.
    static SmoothMapSpec moebius(double a, double b, double c, double d);
    /// Composite applying maps[0] first, then maps[1], and so on.
    static SmoothMapSpec composite(std::vector<SmoothMapSpec> maps);
    /// Identity map of R^m.
    static SmoothMapSpec identity(int m);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] int input_dim() const;
    [[nodiscard]] int output_dim() const;
    [[nodiscard]] const PolynomialMap& polynomial_components() const { return poly_; }
    [[nodiscard]] const std::array<double, 4>& moebius_coefficients() const { return abcd_; }
    [[nodiscard]] const std::vector<SmoothMapSpec>& parts() const { return parts_; }

    /// Value at x; throws DomainError at a Moebius pole.
    [[nodiscard]] std::vector<double> evaluate(std::span<const double> x) const;

    /// Expansion at p in the displacement variables, truncated at order d.
    [[nodiscard]] TaylorTuple expand(std::span<const double> p, int d) const;

private:
    SmoothMapSpec() = default;

    Kind kind_ = Kind::polynomial;
    PolynomialMap poly_;
    std::array<double, 4> abcd_{};
    std::vector<SmoothMapSpec> parts_;
};

/// Value and derivative tensors D^1..D^r of a map at a point.
struct TransitionJet {
    std::vector<double> p;
    std::vector<double> value;
    std::vector<LowerTensor> D;  ///< D[q] is the order-(q+1) derivative tensor

    [[nodiscard]] int order() const { return static_cast<int>(D.size()); }
    [[nodiscard]] int dim() const { return static_cast<int>(p.size()); }
    /// The first s derivative tensors.
    [[nodiscard]] TransitionJet truncated(int s) const;
};

/**
 * @brief Exact derivative tensors of a square map at p up to order r.
 * @throws DomainError at a Moebius pole or when r exceeds the supported order; ShapeError for non-square maps.
 */
[[nodiscard]] TransitionJet transition_jet(const SmoothMapSpec& map, std::span<const double> p, int r);

/// Left multiplier (D phi, H phi, ...) acting on frame coordinates; throws SingularError for singular D phi.
[[nodiscard]] JetGroupElement jet_of_transition_as_group(const TransitionJet& t);

}  // namespace ff
