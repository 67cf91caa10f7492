#pragma once

/**
 * @file garcia.hpp
 * @brief The 1-jet-bundle coordinates (x, y, z) of the order-2 formal frame bundle.
 *
 * A point (x, y, z) stands for the 1-jet at x of a frame field h with
 * h(x) = y and derivative z, where z^i_{jk} is the derivative of y^i_j in the
 * direction k. Phi sends frame coordinates (u, u_j, u_{jk}) to
 * (u, u_j, u_{jl} v^l_k) with v = u_j^{-1}; Psi is its inverse.
 *
 * @code
 * auto g = ff::phi_map(u);                  // u of order 2
 * auto back = ff::psi_map(g);               // equals u
 * auto m = ff::garcia_canonical_form(g, dg); // y^{-1}(dy - z dx)
 * @endcode
 */

#include <string>
#include <vector>

#include "formalframes/bundle.hpp"

namespace ff {

/// Coordinates (x^i, y^i_j, z^i_{jk}) on the 1-jet bundle of frames.
struct GarciaCoords {
    std::vector<double> x;
    LowerTensor y;  ///< order 1, invertible
    LowerTensor z;  ///< order 2
    std::string chart;

    [[nodiscard]] int dim() const { return static_cast<int>(x.size()); }
    /// Throws ShapeError on bad shapes and SingularError for singular y.
    void validate() const;
};

/// Tangent components (dx, dy, dz) at a point of the 1-jet bundle.
struct GarciaTangent {
    std::vector<double> dx;
    LowerTensor dy;
    LowerTensor dz;

    static GarciaTangent zero(int n);
    void validate(int n) const;
};

/// Phi: z^i_{jk} = u^i_{jl} v^l_k; needs a frame of order 2.
[[nodiscard]] GarciaCoords phi_map(const FrameCoords& u);

/// Psi: u^i_{jk} = z^i_{jl} y^l_k; the inverse of phi_map.
[[nodiscard]] FrameCoords psi_map(const GarciaCoords& g);

/// Differential of Phi at u applied to X (exact).
[[nodiscard]] GarciaTangent phi_pushforward(const FrameCoords& u, const BundleTangent& x);

/// Right action of the order-2 jet group, defined as Phi(Psi(g).a).
[[nodiscard]] GarciaCoords garcia_action(const GarciaCoords& g, const JetGroupElement& a);

/**
 * @brief The closed-form action (x, y a, z_{alpha k} a^alpha_j + y_alpha a^alpha_{j beta} b^beta_gamma w^gamma_k).
 *
 * Here b = a_1^{-1} and w = y^{-1}. Kept as an independent cross-check of garcia_action.
 */
[[nodiscard]] GarciaCoords garcia_action_closed_form(const GarciaCoords& g, const JetGroupElement& a);

/// Largest entrywise difference between garcia_action and garcia_action_closed_form.
[[nodiscard]] double garcia_action_discrepancy(const GarciaCoords& g, const JetGroupElement& a);

/// theta'(X) = y^{-1}(dy - z dx), with (z dx)^i_j = z^i_{j beta} dx^beta.
[[nodiscard]] LowerTensor garcia_canonical_form(const GarciaCoords& g, const GarciaTangent& x);

}  // namespace ff
