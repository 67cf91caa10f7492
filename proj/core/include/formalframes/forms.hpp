#pragma once

/**
 * @file forms.hpp
 * @brief Canonical forms, their exterior derivatives, torsions, curvature and realizability.
 *
 * The canonical form of the order-r bundle sends a tangent vector X at u to
 * L_u^{-1} of the projection of X to the order-(r-1) bundle. Its components
 * are theta^0 (a vector) and theta^1, ..., theta^{r-1} (tensors with 1..r-1
 * lower indices).
 *
 * Exterior derivatives are taken on constant coordinate fields, so
 * d theta(X, Y) = D_X theta(Y) - D_Y theta(X). Since L_u is linear in the
 * tensor coordinates of u, D_X theta(Y) = -L_u^{-1} L_X theta(Y), where L_X is
 * built from the tensor components of X; this is evaluated as a dual-number
 * linear solve. Two-forms use the convention
 * (alpha ^ beta)(X, Y) = alpha(X) beta(Y) - alpha(Y) beta(X).
 */

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/bundle.hpp"

namespace ff {

/// Torsion of order k and type (p_1, ..., p_{k-1}) with 1 <= p_a <= a + 1.
struct TorsionType {
    int k = 1;
    std::vector<int> p;

    /// Throws DomainError unless the tuple is admissible.
    void validate() const;
    /// Human-readable label such as "3(1,3)".
    [[nodiscard]] std::string label() const;
    friend bool operator==(const TorsionType&, const TorsionType&) = default;
};

/// All k! types of order k in lexicographic order of p.
[[nodiscard]] std::vector<TorsionType> enumerate_torsion_types(int k);

/**
 * @brief One wedge term theta^i_{left} ^ theta^l_{right} of a torsion.
 *
 * Index lists hold positions 0..k-2 of the free lower indices j_1..j_{k-1}
 * and the marker kContracted for the summed index l.
 */
struct WedgeTerm {
    static constexpr int kContracted = -1;
    std::vector<int> left;
    std::vector<int> right;
};

/// The wedge terms of a torsion type, in the order of the defining sum (subset size, then subsets in order).
[[nodiscard]] std::vector<WedgeTerm> torsion_wedge_terms(const TorsionType& t);

/// Formats a wedge term as "theta^i_{l j1} ^ theta^l_{j2}".
[[nodiscard]] std::string format_wedge_term(const WedgeTerm& w);

/// Component theta^m of an algebra vector as a tensor with m lower indices (m = 0 gives the base part).
[[nodiscard]] LowerTensor component(const AlgebraVector& y, int m);

/// The canonical form at a fixed frame, with the tangent isomorphism factored once.
class CanonicalForm {
public:
    explicit CanonicalForm(FrameCoords u);

    [[nodiscard]] const FrameCoords& frame() const { return u_; }
    [[nodiscard]] const TangentIso& iso() const { return iso_; }

    /// theta_u(X).
    [[nodiscard]] AlgebraVector operator()(const BundleTangent& x) const;
    /// Directional derivative D_along theta(arg) with arg held at constant coordinates.
    [[nodiscard]] AlgebraVector derivative(const BundleTangent& along, const BundleTangent& arg) const;
    /// d theta(X, Y).
    [[nodiscard]] AlgebraVector exterior_derivative(const BundleTangent& x, const BundleTangent& y) const;
    /// d theta(X, Y) reusing already computed values theta(X) and theta(Y).
    [[nodiscard]] AlgebraVector exterior_derivative(const BundleTangent& x, const BundleTangent& y, const AlgebraVector& theta_x,
                                                    const AlgebraVector& theta_y) const;

private:
    FrameCoords u_;
    TangentIso iso_;
};

/// theta_u(X); throws SingularError for singular frames.
[[nodiscard]] AlgebraVector canonical_form(const FrameCoords& u, const BundleTangent& x);

/**
 * @brief Partial derivatives of theta(Y) along every natural coordinate of the bundle.
 *
 * Column q is d/ds theta_{u + s e_q}(Y) with Y held at constant coordinates;
 * rows follow AlgebraVector::flatten.
 */
[[nodiscard]] Eigen::MatrixXd form_partials(const FrameCoords& u, const BundleTangent& y);

/// Combines theta(X), theta(Y) and d theta(X, Y) into the torsion of the given type.
[[nodiscard]] LowerTensor torsion_from_values(const TorsionType& t, const AlgebraVector& theta_x, const AlgebraVector& theta_y,
                                              const AlgebraVector& dtheta_xy);

/**
 * @brief Torsion of the given type on (X, Y).
 *
 * The result has t.k - 1 lower indices (a vector for t.k = 1).
 * @throws DomainError when t.k > r - 1 or the type tuple is invalid.
 */
[[nodiscard]] LowerTensor torsion(const FrameCoords& u, const TorsionType& t, const BundleTangent& x, const BundleTangent& y);

/// Curvature d theta^1 + theta^1 ^ theta^1 on (X, Y); needs r >= 2.
[[nodiscard]] LowerTensor curvature(const FrameCoords& u, const BundleTangent& x, const BundleTangent& y);

/**
 * @brief Structural-equation residual of order k at a classical frame.
 *
 * Evaluates d theta^{k-1} plus the wedge sum with the contracted index placed
 * last. Throws DomainError when u is not classical within tol.
 */
[[nodiscard]] LowerTensor structural_residual(const FrameCoords& u, int k, const BundleTangent& x, const BundleTangent& y,
                                              double tol = 1e-9);

/// Unit vectors along every natural coordinate of the order-r bundle.
[[nodiscard]] std::vector<BundleTangent> coordinate_directions(int n, int r);

/**
 * @brief Base coordinate directions and symmetrized tensor coordinate directions.
 *
 * One tensor direction is produced per upper index and unordered lower
 * multi-index. At a classical frame these span the tangent space of the
 * classical sub-bundle.
 */
[[nodiscard]] std::vector<BundleTangent> symmetric_coordinate_directions(int n, int r);

/// Largest torsion magnitudes over all pairs of a direction set.
struct TorsionSweep {
    double max = 0.0;
    double scale = 0.0;                                    ///< largest entry of d theta over all pairs
    std::string witness;                                   ///< label of the type attaining max
    std::array<int, 2> pair{0, 0};                         ///< indices of the direction pair attaining max
    std::vector<std::pair<std::string, double>> per_type;  ///< max magnitude per type, orders 1..r-1
};

/// Evaluates every torsion of every order <= r - 1 on every pair of distinct directions.
[[nodiscard]] TorsionSweep torsion_sweep(const FrameCoords& u, const std::vector<BundleTangent>& directions);

/// Outcome of realizability_check.
struct RealizabilityReport {
    bool realizable = false;
    bool torsion_verdict = false;   ///< all torsions vanish within tolerance
    bool symmetry_verdict = false;  ///< all tensors symmetric within tolerance
    double max_torsion = 0.0;
    double max_asymmetry = 0.0;
    int asymmetry_order = 0;  ///< tensor order carrying the asymmetry witness
    AsymmetryWitness asymmetry_witness;
    TorsionSweep torsions;
};

/**
 * @brief Decides whether u is a classical frame in two independent ways.
 *
 * (i) every torsion of every order <= r - 1 and every type vanishes on all
 * pairs drawn from symmetric_coordinate_directions; (ii) every tensor is
 * symmetric. Tensor asymmetry is compared with tol. Torsions are compared
 * with tol * max(1, s), where s is the largest entry of d theta over the
 * direction pairs, so that rounding in the wedge sums of large frames is not
 * read as torsion.
 * @throws ConsistencyError if the two verdicts disagree.
 */
[[nodiscard]] RealizabilityReport realizability_check(const FrameCoords& u, double tol = 1e-8);

/// Same as realizability_check but returns the report even when the verdicts disagree.
[[nodiscard]] RealizabilityReport realizability_report(const FrameCoords& u, double tol = 1e-8);

/// Schwarzian derivative f'''/f' - 1.5 (f''/f')^2; throws DomainError when f' = 0.
[[nodiscard]] double schwarzian(double f1, double f2, double f3);

/// Schwarzian read from the coordinates of a one-dimensional frame of order >= 3.
[[nodiscard]] double schwarzian(const FrameCoords& u);

}  // namespace ff
