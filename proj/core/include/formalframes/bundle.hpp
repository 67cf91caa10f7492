#pragma once

/**
 * @file bundle.hpp
 * @brief Formal frame bundles in natural coordinates.
 *
 * A frame u over a chart is (h^i, h^i_j, h^i_{jk}, ...) up to order r. The
 * jet group acts on the right by the jet product on the tensor part, and a
 * chart transition acts on the left by its derivative jet. TangentIso is the
 * linear isomorphism from tangent vectors at the identity of the order-(r-1)
 * bundle of R^n to tangent vectors of the order-(r-1) bundle at the
 * projection of u; it is the derivative of g -> u g along curves through the
 * identity, including the base displacement.
 */

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/charts.hpp"
#include "formalframes/jetgroup.hpp"

namespace ff {

/// Natural coordinates of a formal frame of order r.
struct FrameCoords {
    int n = 0;
    int r = 0;
    std::string chart;
    std::vector<double> base;
    std::vector<LowerTensor> tensors;  ///< tensors[q] has lower order q + 1

    /// Throws ShapeError on bad shapes and SingularError when h^i_j is singular.
    void validate() const;
    /// Tensor part as a jet group element.
    [[nodiscard]] JetGroupElement fiber() const;
    /// Frame with tensors of orders 1..s only.
    [[nodiscard]] FrameCoords truncated(int s) const;
};

/// The identity frame at a base point: h_j = I, higher tensors zero.
[[nodiscard]] FrameCoords identity_frame(int n, int r, std::vector<double> base, std::string chart = "");

/**
 * @brief Tangent vector components (dh^i, dh^i_j, ...) at a frame of order r.
 *
 * r may be 0, in which case only the base component is present.
 */
struct BundleTangent {
    int n = 0;
    int r = 0;
    std::vector<double> base;
    std::vector<LowerTensor> tensors;

    static BundleTangent zero(int n, int r);
    void validate() const;
    /// Number of components n + n^2 + ... + n^{r+1}.
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] Eigen::VectorXd flatten() const;
    static BundleTangent unflatten(const Eigen::VectorXd& v, int n, int r);
    /// Unit vector along the flat coordinate q.
    static BundleTangent coordinate(int n, int r, std::size_t q);
    /// Pushforward under the projection to order s (drops tensors above s).
    [[nodiscard]] BundleTangent projected(int s) const;
};

/// Right action u.a; throws ShapeError on mismatched (n, r).
[[nodiscard]] FrameCoords right_action(const FrameCoords& u, const JetGroupElement& a);

/**
 * @brief Chart change: base -> phi(h), tensors -> (D phi, H phi, ...) * tensors.
 *
 * The transition jet must be evaluated at u.base (checked with tol) and have
 * order at least r.
 */
[[nodiscard]] FrameCoords change_chart(const FrameCoords& u, const TransitionJet& t, std::string new_chart = "", const Tolerance& tol = {});

/// Pushforward of X at u under the right action of a (dual-number derivative of right_action).
[[nodiscard]] BundleTangent right_action_pushforward(const FrameCoords& u, const BundleTangent& x, const JetGroupElement& a);

/// Pushforward of X at u under a chart change; needs a transition jet of order r + 1.
[[nodiscard]] BundleTangent change_chart_pushforward(const FrameCoords& u, const BundleTangent& x, const TransitionJet& t);

/// Vertical vector d/dt u.(e + tX) generated by a Lie algebra element of the order-r group.
[[nodiscard]] BundleTangent fundamental_vector(const FrameCoords& u, const JetAlgebraElement& x);

/**
 * @brief The bilinear map (u, Y) -> L_u(Y) for arbitrary tensors u of orders 1..r.
 *
 * The result is a tangent vector of the order-(r-1) bundle. It does not
 * depend on the base point and is linear in u, which is what makes
 * derivatives of the canonical form exact.
 */
[[nodiscard]] BundleTangent tangent_map_apply(const std::vector<LowerTensor>& u_tensors, const AlgebraVector& y);

/// The tangent isomorphism at a frame, materialized as a dense matrix with its LU factorization.
class TangentIso {
public:
    /// Throws SingularError when the frame is singular.
    explicit TangentIso(const FrameCoords& u);

    [[nodiscard]] int dim() const { return n_; }
    [[nodiscard]] int order() const { return r_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const { return l_; }

    /// L_u(Y), a tangent vector of the order-(r-1) bundle.
    [[nodiscard]] BundleTangent apply(const AlgebraVector& y) const;
    /// L_u^{-1}(v) for a tangent vector v of the order-(r-1) bundle.
    [[nodiscard]] AlgebraVector solve(const BundleTangent& v) const;
    /// L_u^{-1} applied to a flat right-hand side.
    [[nodiscard]] Eigen::VectorXd solve_flat(const Eigen::VectorXd& rhs) const;

private:
    int n_;
    int r_;
    Eigen::MatrixXd l_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Dense matrix of Y -> L(Y) for the given tensors (column q is the image of the q-th unit vector).
[[nodiscard]] Eigen::MatrixXd tangent_map_matrix(const std::vector<LowerTensor>& u_tensors, int n, int r);

}  // namespace ff
