#pragma once

/**
 * @file connection.hpp
 * @brief Linear connections as Christoffel fields and their sections of the order-2 bundle.
 *
 * The lower indices of Gamma^i_{jk} are in reversed order: the connection
 * form is theta^i_j = Gamma^i_{jk} dx^k, so nabla X = Gamma^i_{jk} X^j dx^k
 * (x) d/dx^i plus the derivative of X. The section attached to a connection
 * completes a first-order frame (h, h_j) to (h, h_j, -Gamma^i_{ab} h^a_j h^b_k).
 *
 * @code
 * auto gamma = ff::ChristoffelField::constant(g, "U");
 * auto s = ff::connection_section(gamma, u);          // u of order 1 in chart "U"
 * auto omega = ff::section_pullback_connection(gamma, u, x);
 * @endcode
 */

#include <map>
#include <span>
#include <string>

#include "formalframes/bundle.hpp"
#include "formalframes/fields.hpp"

namespace ff {

/// Christoffel symbols given chart by chart as polynomial fields.
class ChristoffelField {
public:
    ChristoffelField() = default;
    explicit ChristoffelField(int n) : n_(n) {}

    /// Field equal to gamma everywhere on one chart.
    static ChristoffelField constant(const LowerTensor& gamma, const std::string& chart = "");

    [[nodiscard]] int dim() const { return n_; }
    /// Registers the symbols of one chart; they must have dimension n, order 2 and n variables.
    void set_chart(const std::string& chart, PolynomialTensorField symbols);
    [[nodiscard]] bool has_chart(const std::string& chart) const { return charts_.contains(chart); }
    [[nodiscard]] const PolynomialTensorField& chart(const std::string& chart) const;
    [[nodiscard]] const std::map<std::string, PolynomialTensorField>& charts() const { return charts_; }

    /// Gamma at p in the given chart; throws DomainError for an unknown chart.
    [[nodiscard]] LowerTensor evaluate(const std::string& chart, std::span<const double> p) const;

private:
    int n_ = 0;
    std::map<std::string, PolynomialTensorField> charts_;
};

/**
 * @brief Symbols in the target chart at phi(p) from symbols at p and the transition jet.
 *
 * hatGamma^i_{jk} = -H phi^i_{ab} psi^a_j psi^b_k + D phi^i_a Gamma^a_{bc} psi^b_j psi^c_k, psi = (D phi)^{-1}.
 * Needs a jet of order at least 2; throws SingularError for singular D phi.
 */
[[nodiscard]] LowerTensor christoffel_transform(const LowerTensor& gamma, const TransitionJet& t);

/// Order-2 frame (h, h_j, -Gamma^i_{ab} h^a_j h^b_k) over the order-1 frame u.
[[nodiscard]] FrameCoords connection_section(const LowerTensor& gamma, const FrameCoords& u);

/// Same as above with Gamma evaluated at u.base in the chart u.chart.
[[nodiscard]] FrameCoords connection_section(const ChristoffelField& gamma, const FrameCoords& u);

/// Differential of the section at u applied to a tangent vector of the order-1 bundle (exact).
[[nodiscard]] BundleTangent connection_section_pushforward(const ChristoffelField& gamma, const FrameCoords& u, const BundleTangent& x);

/**
 * @brief Pullback of the order-1 component of the order-2 canonical form through the section.
 *
 * The result is the gl_n-valued connection form evaluated on X. At frames with
 * h_j = I it equals dh^i_j + Gamma^i_{jb} dh^b.
 */
[[nodiscard]] LowerTensor section_pullback_connection(const ChristoffelField& gamma, const FrameCoords& u, const BundleTangent& x);

/// Averages Gamma over its two lower indices.
[[nodiscard]] LowerTensor symmetrize_connection(const LowerTensor& gamma);

/// Averages every chart of the field over the two lower indices.
[[nodiscard]] ChristoffelField symmetrize_connection(const ChristoffelField& gamma);

}  // namespace ff
