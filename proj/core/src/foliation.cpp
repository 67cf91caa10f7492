#include "formalframes/foliation.hpp"

#include <algorithm>
#include <utility>

#include "formalframes/linalg.hpp"

namespace ff {

namespace {

void require_length(std::span<const double> v, int m, const char* what)
{
    if (static_cast<int>(v.size()) != m) throw ShapeError(std::string(what) + " has the wrong dimension");
}

/// Full tangent vector (w, 0) from a leafwise vector.
std::vector<double> leafwise(std::span<const double> w, int m, int q)
{
    require_length(w, m - q, "leafwise vector");
    std::vector<double> x(static_cast<std::size_t>(m), 0.0);
    std::copy(w.begin(), w.end(), x.begin());
    return x;
}

}  // namespace

PolyOneForm::PolyOneForm(int m) : m_(m), c_(static_cast<std::size_t>(m), Polynomial(m))
{
    if (m < 1) throw ShapeError("1-form needs at least one variable");
}

PolyOneForm::PolyOneForm(std::vector<Polynomial> coefficients) : m_(static_cast<int>(coefficients.size())), c_(std::move(coefficients))
{
    if (m_ < 1) throw ShapeError("1-form needs at least one variable");
    for (const auto& c : c_) {
        if (c.vars() != m_) throw ShapeError("1-form coefficient has the wrong number of variables");
    }
}

PolyOneForm PolyOneForm::basis(int m, int k, Polynomial c)
{
    PolyOneForm f(m);
    if (c.vars() != m) throw ShapeError("1-form coefficient has the wrong number of variables");
    f.coefficient(k) = std::move(c);
    return f;
}

double PolyOneForm::evaluate(std::span<const double> p, std::span<const double> x) const
{
    require_length(p, m_, "point");
    require_length(x, m_, "tangent vector");
    double acc = 0.0;
    for (int k = 0; k < m_; ++k) {
        if (x[static_cast<std::size_t>(k)] != 0.0) acc += c_[static_cast<std::size_t>(k)].evaluate(p) * x[static_cast<std::size_t>(k)];
    }
    return acc;
}

double PolyOneForm::exterior_derivative(std::span<const double> p, std::span<const double> x, std::span<const double> y) const
{
    require_length(p, m_, "point");
    require_length(x, m_, "tangent vector");
    require_length(y, m_, "tangent vector");
    // d(c_k dp^k)(X, Y) = sum_l dc_k/dp^l (X^l Y^k - Y^l X^k).
    double acc = 0.0;
    for (int k = 0; k < m_; ++k) {
        for (int l = 0; l < m_; ++l) {
            const double w = x[static_cast<std::size_t>(l)] * y[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(l)] * x[static_cast<std::size_t>(k)];
            if (w != 0.0) acc += c_[static_cast<std::size_t>(k)].derivative(l).evaluate(p) * w;
        }
    }
    return acc;
}

PolyOneForm& PolyOneForm::operator+=(const PolyOneForm& o)
{
    if (o.m_ != m_) throw ShapeError("1-forms live on different spaces");
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

FormMatrix::FormMatrix(int rows, int cols, int m) : rows_(rows), cols_(cols), m_(m)
{
    if (rows < 1 || cols < 1) throw ShapeError("form matrix needs positive size");
    entries_.assign(static_cast<std::size_t>(rows * cols), PolyOneForm(m));
}

std::size_t FormMatrix::index(int i, int j) const
{
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw ShapeError("form matrix index out of range");
    return static_cast<std::size_t>(i * cols_ + j);
}

Eigen::MatrixXd FormMatrix::evaluate(std::span<const double> p, std::span<const double> x) const
{
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).evaluate(p, x);
    }
    return out;
}

Eigen::MatrixXd FormMatrix::exterior_derivative(std::span<const double> p, std::span<const double> x, std::span<const double> y) const
{
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).exterior_derivative(p, x, y);
    }
    return out;
}

Eigen::MatrixXd wedge(const FormMatrix& a, const FormMatrix& b, std::span<const double> p, std::span<const double> x, std::span<const double> y)
{
    if (a.cols() != b.rows()) throw ShapeError("wedge of form matrices with incompatible sizes");
    return a.evaluate(p, x) * b.evaluate(p, y) - a.evaluate(p, y) * b.evaluate(p, x);
}

FoliationAtlas::FoliationAtlas(int m, int q) : m_(m), q_(q)
{
    if (q < 1 || q >= m) throw ShapeError("foliation needs 1 <= q < m");
}

void FoliationAtlas::add_chart(const std::string& name)
{
    if (std::find(charts_.begin(), charts_.end(), name) != charts_.end()) throw DomainError("duplicate foliation chart '" + name + "'");
    charts_.push_back(name);
}

void FoliationAtlas::add_transition(FoliationTransition t)
{
    if (std::find(charts_.begin(), charts_.end(), t.from) == charts_.end() || std::find(charts_.begin(), charts_.end(), t.to) == charts_.end()) {
        throw DomainError("transition refers to an unknown chart");
    }
    if (static_cast<int>(t.map.size()) != m_) throw ShapeError("foliated transition needs m components");
    for (const auto& c : t.map) {
        if (c.vars() != m_) throw ShapeError("foliated transition components must use m variables");
    }
    if (!is_foliated_map(t.map, q_)) throw DomainError("transverse part of the transition depends on leaf coordinates");
    transitions_.push_back(std::move(t));
}

const FoliationTransition& FoliationAtlas::transition(const std::string& from, const std::string& to) const
{
    for (const auto& t : transitions_) {
        if (t.from == from && t.to == to) return t;
    }
    throw DomainError("no transition from '" + from + "' to '" + to + "'");
}

bool is_foliated_map(const PolynomialMap& map, int q)
{
    const int m = static_cast<int>(map.size());
    for (int c = m - q; c < m; ++c) {
        for (const auto& [exps, coef] : map[static_cast<std::size_t>(c)].terms()) {
            if (coef == 0.0) continue;
            for (int v = 0; v < m - q; ++v) {
                if (exps[static_cast<std::size_t>(v)] != 0) return false;
            }
        }
    }
    return true;
}

SmoothMapSpec holonomy(const FoliationTransition& t, int q)
{
    const int m = static_cast<int>(t.map.size());
    if (!is_foliated_map(t.map, q)) throw DomainError("transverse part of the transition depends on leaf coordinates");
    PolynomialMap gamma;
    for (int c = m - q; c < m; ++c) {
        Polynomial g(q);
        for (const auto& [exps, coef] : t.map[static_cast<std::size_t>(c)].terms()) {
            g.add_term(Polynomial::Exponents(exps.end() - q, exps.end()), coef);
        }
        gamma.push_back(std::move(g));
    }
    return SmoothMapSpec::polynomial(std::move(gamma));
}

FormMatrix bott_form(const PolynomialTensorField& gamma)
{
    const int q = gamma.dim();
    const int m = gamma.vars();
    if (gamma.order() != 2 || q >= m) throw ShapeError("transverse symbols must be order 2 with q < m");
    FormMatrix theta(q, q, m);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            for (int k = 0; k < q; ++k) {
                const std::vector<int> jk{j, k};
                theta(i, j).coefficient(m - q + k) = gamma.entry(i, jk);
            }
        }
    }
    return theta;
}

Eigen::MatrixXd bott_residual(const FormMatrix& theta, std::span<const double> p, std::span<const double> leaf_vector)
{
    const int m = theta.vars();
    const int q = theta.rows();
    return theta.evaluate(p, leafwise(leaf_vector, m, q));
}

Eigen::MatrixXd gauge_bott_residual(const FormMatrix& theta, const std::vector<Polynomial>& frame, std::span<const double> p,
                                    std::span<const double> leaf_vector)
{
    const int m = theta.vars();
    const int q = theta.rows();
    if (static_cast<int>(frame.size()) != q * q) throw ShapeError("frame change must be a q x q matrix");
    const std::vector<double> w = leafwise(leaf_vector, m, q);
    Eigen::MatrixXd e(q, q);
    Eigen::MatrixXd de = Eigen::MatrixXd::Zero(q, q);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            const Polynomial& f = frame[static_cast<std::size_t>(i * q + j)];
            e(i, j) = f.evaluate(p);
            for (int v = 0; v < m; ++v) {
                if (w[static_cast<std::size_t>(v)] != 0.0) de(i, j) += f.derivative(v).evaluate(p) * w[static_cast<std::size_t>(v)];
            }
        }
    }
    require_invertible(e, "foliated frame change");
    const Eigen::MatrixXd einv = e.inverse();
    return einv * de + einv * theta.evaluate(p, w) * e;
}

FrameCoords transverse_pushforward(const FrameCoords& u, const SmoothMapSpec& gamma, std::string target_chart)
{
    u.validate();
    if (gamma.input_dim() != u.n || gamma.output_dim() != u.n) throw ShapeError("holonomy dimension differs from the frame dimension");
    return change_chart(u, transition_jet(gamma, u.base, u.r), std::move(target_chart));
}

FormMatrix transverse_coframe(int m, int q)
{
    FormMatrix omega(q, 1, m);
    for (int i = 0; i < q; ++i) omega(i, 0).coefficient(m - q + i) = Polynomial::constant(m, 1.0);
    return omega;
}

std::vector<double> deformation_equation_residual(const FormMatrix& omega, const FormMatrix& theta, const FormMatrix& omega_dot,
                                                  const FormMatrix& theta_dot, std::span<const double> p, std::span<const double> x,
                                                  std::span<const double> y)
{
    const int q = omega.rows();
    if (omega.cols() != 1 || omega_dot.cols() != 1 || omega_dot.rows() != q || theta.rows() != q || theta.cols() != q ||
        theta_dot.rows() != q || theta_dot.cols() != q) {
        throw ShapeError("deformation equation forms have inconsistent sizes");
    }
    const Eigen::MatrixXd r = omega_dot.exterior_derivative(p, x, y) + wedge(theta, omega_dot, p, x, y) + wedge(theta_dot, omega, p, x, y);
    return {r.data(), r.data() + r.size()};
}

PairLawResidual transverse_pair_law_residual(const PolynomialTensorField& gamma, const PolynomialTensorField& mu,
                                             const PolynomialTensorField& gamma_hat, const PolynomialTensorField& mu_hat,
                                             const FoliationTransition& t, int q, std::span<const double> p)
{
    const int m = static_cast<int>(t.map.size());
    require_length(p, m, "point");
    const std::vector<double> y(p.end() - q, p.end());
    const TransitionJet jet = transition_jet(holonomy(t, q), y, 2);
    const std::vector<double> image = evaluate(t.map, p);
    return pair_law_residual_at(gamma.evaluate(p), mu.evaluate(p), gamma_hat.evaluate(image), mu_hat.evaluate(image), jet);
}

}  // namespace ff
