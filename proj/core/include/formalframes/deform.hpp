#pragma once

/**
 * @file deform.hpp
 * @brief Infinitesimal deformations of connections and the tangent group of GL_n.
 *
 * The tangent group is modelled as pairs (A, X) with A invertible and product
 * (A, X)(B, Y) = (AB, B^{-1} X B + Y); it is represented faithfully by the
 * block matrices [[A, 0], [AX, A]]. A connection together with an
 * infinitesimal deformation is a pair (theta, mu) of gl_n-valued 1-forms per
 * chart with theta = Gamma^i_{jk} dx^k and mu = mu^i_{jk} dx^k; it is valid
 * when theta changes by the gauge term and mu tensorially across overlaps.
 *
 * The second tangent bundle T(TM) is handled in coordinates (x, v; xdot, vdot).
 *
 * @code
 * ff::TangentGroupElement p{a, x};
 * auto pq = ff::tg_compose(p, q);
 * auto r = ff::lift_block_identity(gamma, jet, v);   // ~ 0
 * @endcode
 */

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/bundle.hpp"
#include "formalframes/charts.hpp"
#include "formalframes/fields.hpp"

namespace ff {

/// Element (A, X) of GL_n semidirect gl_n.
struct TangentGroupElement {
    Eigen::MatrixXd A;
    Eigen::MatrixXd X;

    [[nodiscard]] int dim() const { return static_cast<int>(A.rows()); }
    /// Throws ShapeError on non-square or mismatched blocks and SingularError for singular A.
    void validate() const;
};

/// Element (Adot, Xdot) of the Lie algebra gl_n x gl_n.
struct TangentAlgebraElement {
    Eigen::MatrixXd A;
    Eigen::MatrixXd X;

    [[nodiscard]] int dim() const { return static_cast<int>(A.rows()); }
    void validate() const;
};

[[nodiscard]] TangentGroupElement tg_identity(int n);
/// (AB, B^{-1} X B + Y).
[[nodiscard]] TangentGroupElement tg_compose(const TangentGroupElement& p, const TangentGroupElement& q);
/// (A^{-1}, -A X A^{-1}).
[[nodiscard]] TangentGroupElement tg_inverse(const TangentGroupElement& p);
/// [[A, 0], [AX, A]].
[[nodiscard]] Eigen::MatrixXd tg_matrix(const TangentGroupElement& p);
/// [[Adot, 0], [Xdot, Adot]].
[[nodiscard]] Eigen::MatrixXd tg_matrix(const TangentAlgebraElement& v);
/// Reads (Adot, Xdot) back from a lower block-triangular 2n x 2n matrix (diagonal blocks averaged).
[[nodiscard]] TangentAlgebraElement tg_algebra_from_matrix(const Eigen::MatrixXd& m);

/// ([Adot, Bdot], [Xdot, Bdot] + [Adot, Ydot]).
[[nodiscard]] TangentAlgebraElement tg_bracket(const TangentAlgebraElement& u, const TangentAlgebraElement& v);
/// Ad_{(A, X)}(Bdot, Ydot) = (A Bdot A^{-1}, A([X, Bdot] + Ydot) A^{-1}).
[[nodiscard]] TangentAlgebraElement tg_adjoint(const TangentGroupElement& p, const TangentAlgebraElement& v);

/**
 * @brief Deformation tensor in the target chart: hatmu^i_{ab} Dphi^a_j Dphi^b_k = Dphi^i_a mu^a_{jk}.
 * @throws SingularError for singular D phi.
 */
[[nodiscard]] LowerTensor deformation_transform(const LowerTensor& mu, const TransitionJet& t);

/// A point (x, v; xdot, vdot) of the second tangent bundle.
struct T2Point {
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> xdot;
    std::vector<double> vdot;
};

/// (phi(x), Dphi v; Dphi xdot, Hphi(v, xdot) + Dphi vdot); t must be taken at x with order >= 2.
[[nodiscard]] T2Point t2m_transition(const T2Point& c, const TransitionJet& t);

/// A tangent vector (xdot, vdot) to TM at some point (x, v).
struct T2Vector {
    std::vector<double> xdot;
    std::vector<double> vdot;
};

/// Horizontal lift of w at (x, v): (w, -Gamma^a_{ib} w^i v^b), Gamma taken at x.
[[nodiscard]] T2Vector horizontal_lift(const LowerTensor& gamma, std::span<const double> v, std::span<const double> w);
/// Vertical lift (0, w).
[[nodiscard]] T2Vector vertical_lift(std::span<const double> w);

/// Matrix (Gamma v)^a_i = Gamma^a_{ib} v^b.
[[nodiscard]] Eigen::MatrixXd gamma_contract(const LowerTensor& gamma, std::span<const double> v);

/**
 * @brief [[I, 0], [hatGamma hatv, I]] [[Dphi, 0], [Hphi v, Dphi]] [[I, 0], [-Gamma v, I]] - diag(Dphi, Dphi).
 *
 * hatGamma is obtained from gamma by christoffel_transform and hatv = Dphi v.
 * The residual vanishes for every connection.
 */
[[nodiscard]] Eigen::MatrixXd lift_block_identity(const LowerTensor& gamma, const TransitionJet& t, std::span<const double> v);

/// Torsion tensor of the reversed-index symbols: T(a, b)^i = Gamma^i_{jk} a^j b^k - Gamma^i_{jk} b^j a^k.
[[nodiscard]] std::vector<double> christoffel_torsion(const LowerTensor& gamma, std::span<const double> a, std::span<const double> b);

/**
 * @brief Residual of (nabla_v X + T(v, X))^V = DX(v) - v^H at p.
 *
 * nabla_v X = DX(v) + Gamma^a_{bc} X^b v^c, T is christoffel_torsion and the
 * vertical parts of DX(v) and of the horizontal lift of v at X(p) are
 * compared. X is a polynomial vector field; gamma is the value at p.
 */
[[nodiscard]] std::vector<double> covariant_derivative_residual(const LowerTensor& gamma, const PolynomialMap& field,
                                                                std::span<const double> v, std::span<const double> p);

/// Connection symbols and deformation tensor on one chart, both with n variables.
struct DeformationChart {
    PolynomialTensorField theta;  ///< Gamma^i_{jk}; theta^i_j = Gamma^i_{jk} dx^k
    PolynomialTensorField mu;     ///< mu^i_{jk}; mu^i_j = mu^i_{jk} dx^k
};

/// A connection and an infinitesimal deformation given chart by chart.
class DeformationPair {
public:
    DeformationPair() = default;
    explicit DeformationPair(int n) : n_(n) {}

    [[nodiscard]] int dim() const { return n_; }
    void set_chart(const std::string& chart, DeformationChart data);
    [[nodiscard]] const DeformationChart& chart(const std::string& chart) const;
    [[nodiscard]] const std::map<std::string, DeformationChart>& charts() const { return charts_; }

private:
    int n_ = 0;
    std::map<std::string, DeformationChart> charts_;
};

/// A chart overlap: coordinates in `to` are phi of coordinates in `from`.
struct ChartTransition {
    std::string from;
    std::string to;
    SmoothMapSpec phi;
};

/**
 * @brief Residuals of the two equivalent forms of the transformation law at one point.
 *
 * Both are relative: the largest entrywise difference is divided by
 * max(1, s), where s is the largest magnitude among the compared entries and
 * the terms that are summed to form them.
 */
struct PairLawResidual {
    double componentwise = 0.0;  ///< symbols via the Christoffel law, mu tensorially
    double gauge = 0.0;          ///< block-matrix gauge law in the tangent group
};

/**
 * @brief Both transformation laws from values: source data at p, target data at phi(p), jet of phi at p.
 *
 * The componentwise route compares the target data with the transformed
 * source data. The gauge route checks W = G^{-1} dG + G^{-1} hatW G on each
 * coordinate direction, where W = [[theta, 0], [mu, theta]] and
 * G = [[Dphi, 0], [0, Dphi]].
 */
[[nodiscard]] PairLawResidual pair_law_residual_at(const LowerTensor& gamma, const LowerTensor& mu, const LowerTensor& gamma_hat,
                                                   const LowerTensor& mu_hat, const TransitionJet& t);

/**
 * @brief Checks one overlap at one point p of the source chart.
 */
[[nodiscard]] PairLawResidual pair_law_residual(const DeformationChart& source, const DeformationChart& target,
                                                const SmoothMapSpec& phi, std::span<const double> p);

/// Verdict of check_deformation_pair.
struct DeformationPairReport {
    bool valid = false;
    double max_componentwise = 0.0;
    double max_gauge = 0.0;
    std::size_t evaluations = 0;
};

/**
 * @brief Evaluates both transformation laws on every overlap at every sample point.
 * @throws ConsistencyError if the componentwise and gauge verdicts differ at tolerance tol.
 */
[[nodiscard]] DeformationPairReport check_deformation_pair(const DeformationPair& pair, const std::vector<ChartTransition>& transitions,
                                                           const std::vector<std::vector<double>>& points, double tol = 1e-8);

/// A point (x, (a, b), (a_2, b_2)) of the 1-jet bundle of sections of P^1 x gl_n.
struct GarciaPairCoords {
    std::vector<double> x;
    LowerTensor a;   ///< frame block, invertible
    LowerTensor b;   ///< gl_n block
    LowerTensor a2;  ///< a2^i_{jk} = derivative of a^i_j in direction k
    LowerTensor b2;  ///< b2^i_{jk} = derivative of b^i_j in direction k

    [[nodiscard]] int dim() const { return static_cast<int>(x.size()); }
    void validate() const;
};

/// Tangent components at a GarciaPairCoords point.
struct GarciaPairTangent {
    std::vector<double> dx;
    LowerTensor da;
    LowerTensor db;
    LowerTensor da2;
    LowerTensor db2;

    static GarciaPairTangent zero(int n);
};

/// An order-2 formal frame together with an element of the order-2 jet algebra.
struct FramePairCoords {
    FrameCoords u;
    JetAlgebraElement y;
};

/// Tangent components at a FramePairCoords point.
struct FramePairTangent {
    BundleTangent du;
    JetAlgebraElement dy;
};

/**
 * @brief The isomorphism of the 1-jet bundle with order-2 frames times the jet algebra.
 *
 * (x, (a, b), (a_2, b_2)) maps to the frame (x, a, a_2 . a) and the algebra
 * element (b, b_2 . a), where (t . a)^i_{jk} = t^i_{jl} a^l_k.
 */
[[nodiscard]] FramePairCoords deform_frame_iso(const GarciaPairCoords& s);

/// Differential of deform_frame_iso.
[[nodiscard]] FramePairTangent deform_frame_iso_pushforward(const GarciaPairCoords& s, const GarciaPairTangent& ds);

/// Right action of (g, X) on the jet of a section: the section s becomes (s_1 g, g^{-1} s_2 g + X).
[[nodiscard]] GarciaPairCoords garcia_pair_action(const GarciaPairCoords& s, const TangentGroupElement& gx);
/// Differential of garcia_pair_action in the point (the action is linear for fixed (g, X)).
[[nodiscard]] GarciaPairTangent garcia_pair_action_pushforward(const GarciaPairTangent& ds, const TangentGroupElement& gx);

/// Right action of (g, X): u -> u.(g, 0, ...), y -> Ad_{g^{-1}} y + (X, 0).
[[nodiscard]] FramePairCoords frame_pair_action(const FramePairCoords& f, const TangentGroupElement& gx);

/**
 * @brief Canonical form on the 1-jet bundle in closed form.
 *
 * With c = a^{-1}, delta a = da - a_2 dx and delta b = db - b_2 dx the value is
 * (c delta a, delta b - b c delta a + c delta a b).
 */
[[nodiscard]] TangentAlgebraElement deform_canonical_form(const GarciaPairCoords& s, const GarciaPairTangent& ds);

/**
 * @brief The same form computed from the order-2 canonical form at the image frame.
 *
 * Value (theta^1, dy_1 - y_2(theta^0) + [theta^1, y_1]) with theta taken on du.
 */
[[nodiscard]] TangentAlgebraElement frame_pair_canonical_form(const FramePairCoords& f, const FramePairTangent& df);

}  // namespace ff
