#pragma once

/**
 * @file foliation.hpp
 * @brief Foliated atlases, Bott connections, transverse frames and deformation equations.
 *
 * A foliation chart of R^m has leaf coordinates x (first m - q variables) and
 * transverse coordinates y (last q variables). Transitions have the form
 * (x, y) -> (psi(x, y), gamma(y)); gamma is the holonomy map. Forms are
 * matrices of 1-forms with polynomial coefficients in all m variables; the
 * transverse coframe is omega^i = dy^i.
 *
 * @code
 * auto theta = ff::bott_form(transverse_gamma);          // Gamma^i_{jk}(x, y) dy^k
 * auto r = ff::bott_residual(theta, p, leaf_vector);     // zero matrix
 * @endcode
 */

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "formalframes/bundle.hpp"
#include "formalframes/deform.hpp"
#include "formalframes/fields.hpp"

namespace ff {

/// A 1-form sum_k c_k dp^k on R^m with polynomial coefficients.
class PolyOneForm {
public:
    PolyOneForm() = default;
    /// Zero form on R^m.
    explicit PolyOneForm(int m);
    explicit PolyOneForm(std::vector<Polynomial> coefficients);
    /// c dp^k.
    static PolyOneForm basis(int m, int k, Polynomial c);

    [[nodiscard]] int vars() const { return m_; }
    [[nodiscard]] Polynomial& coefficient(int k) { return c_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] const Polynomial& coefficient(int k) const { return c_.at(static_cast<std::size_t>(k)); }

    /// Value at p on X.
    [[nodiscard]] double evaluate(std::span<const double> p, std::span<const double> x) const;
    /// d(form)(X, Y) at p, computed from exact partial derivatives of the coefficients.
    [[nodiscard]] double exterior_derivative(std::span<const double> p, std::span<const double> x, std::span<const double> y) const;

    PolyOneForm& operator+=(const PolyOneForm& o);

private:
    int m_ = 0;
    std::vector<Polynomial> c_;
};

/// A rows x cols matrix of 1-forms on R^m.
class FormMatrix {
public:
    FormMatrix() = default;
    FormMatrix(int rows, int cols, int m);

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }
    [[nodiscard]] int vars() const { return m_; }
    [[nodiscard]] PolyOneForm& operator()(int i, int j) { return entries_.at(index(i, j)); }
    [[nodiscard]] const PolyOneForm& operator()(int i, int j) const { return entries_.at(index(i, j)); }

    /// Matrix of values at p on X.
    [[nodiscard]] Eigen::MatrixXd evaluate(std::span<const double> p, std::span<const double> x) const;
    /// Matrix of exterior derivatives at p on (X, Y).
    [[nodiscard]] Eigen::MatrixXd exterior_derivative(std::span<const double> p, std::span<const double> x, std::span<const double> y) const;

private:
    [[nodiscard]] std::size_t index(int i, int j) const;

    int rows_ = 0;
    int cols_ = 0;
    int m_ = 0;
    std::vector<PolyOneForm> entries_;
};

/// (A ^ B)(X, Y) = A(X) B(Y) - A(Y) B(X) for matrices of 1-forms.
[[nodiscard]] Eigen::MatrixXd wedge(const FormMatrix& a, const FormMatrix& b, std::span<const double> p, std::span<const double> x,
                                    std::span<const double> y);

/// A transition (x, y) -> (psi(x, y), gamma(y)) between two foliation charts.
struct FoliationTransition {
    std::string from;
    std::string to;
    PolynomialMap map;  ///< m components in m variables, leaf components first
};

/// Charts of R^m foliated by codimension-q leaves, with their transitions.
class FoliationAtlas {
public:
    FoliationAtlas(int m, int q);

    [[nodiscard]] int dim() const { return m_; }
    [[nodiscard]] int codim() const { return q_; }
    void add_chart(const std::string& name);
    /// Adds a transition after checking its shape and that its transverse part ignores x.
    void add_transition(FoliationTransition t);
    [[nodiscard]] const std::vector<std::string>& charts() const { return charts_; }
    [[nodiscard]] const std::vector<FoliationTransition>& transitions() const { return transitions_; }
    [[nodiscard]] const FoliationTransition& transition(const std::string& from, const std::string& to) const;

private:
    int m_;
    int q_;
    std::vector<std::string> charts_;
    std::vector<FoliationTransition> transitions_;
};

/// True when the last q components of a transition do not involve the first m - q variables.
[[nodiscard]] bool is_foliated_map(const PolynomialMap& map, int q);

/// Holonomy gamma of a foliated transition as a polynomial map of the q transverse variables.
[[nodiscard]] SmoothMapSpec holonomy(const FoliationTransition& t, int q);

/**
 * @brief Connection form theta^i_j = Gamma^i_{jk} dy^k from transverse symbols.
 *
 * gamma has dimension q, order 2 and m variables (it may depend on x).
 */
[[nodiscard]] FormMatrix bott_form(const PolynomialTensorField& gamma);

/// Values of theta on the leafwise vector (w, 0); zero exactly for a Bott connection in a foliation chart.
[[nodiscard]] Eigen::MatrixXd bott_residual(const FormMatrix& theta, std::span<const double> p, std::span<const double> leaf_vector);

/**
 * @brief Leafwise values of the connection form after the frame change e -> e E.
 *
 * Returns E^{-1} dE(w) + E^{-1} theta(w) E on the leafwise vector (w, 0). E is
 * a q x q matrix of polynomials in m variables.
 */
[[nodiscard]] Eigen::MatrixXd gauge_bott_residual(const FormMatrix& theta, const std::vector<Polynomial>& frame, std::span<const double> p,
                                                  std::span<const double> leaf_vector);

/// Transverse frame pushed through the holonomy: change_chart with the jet of gamma at u.base.
[[nodiscard]] FrameCoords transverse_pushforward(const FrameCoords& u, const SmoothMapSpec& gamma, std::string target_chart = "");

/// Transverse coframe omega^i = dy^i on R^m.
[[nodiscard]] FormMatrix transverse_coframe(int m, int q);

/**
 * @brief d omegadot + theta ^ omegadot + thetadot ^ omega on (X, Y) at p.
 *
 * omega and omegadot are q x 1, theta and thetadot are q x q. The result has length q.
 */
[[nodiscard]] std::vector<double> deformation_equation_residual(const FormMatrix& omega, const FormMatrix& theta, const FormMatrix& omega_dot,
                                                                const FormMatrix& theta_dot, std::span<const double> p,
                                                                std::span<const double> x, std::span<const double> y);

/**
 * @brief Transformation laws of transverse deformation data across a foliated transition.
 *
 * gamma and mu are transverse symbols (q, order 2, m variables) on the source
 * chart, gamma_hat and mu_hat on the target chart. The laws are those of
 * pair_law_residual_at with the jet of the holonomy at y(p).
 */
[[nodiscard]] PairLawResidual transverse_pair_law_residual(const PolynomialTensorField& gamma, const PolynomialTensorField& mu,
                                                           const PolynomialTensorField& gamma_hat, const PolynomialTensorField& mu_hat,
                                                           const FoliationTransition& t, int q, std::span<const double> p);

}  // namespace ff
