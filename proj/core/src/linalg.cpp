#include "formalframes/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ff {

Eigen::MatrixXd to_matrix(const LowerTensor& t)
{
    if (t.order() != 1) throw ShapeError("matrix view needs an order-1 tensor");
    const int n = t.dim();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
    }
    return m;
}

LowerTensor from_matrix(const Eigen::MatrixXd& m)
{
    if (m.rows() != m.cols()) throw ShapeError("order-1 tensor needs a square matrix");
    const int n = static_cast<int>(m.rows());
    LowerTensor t(n, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t(i, j) = m(i, j);
    }
    return t;
}

double condition_number(const Eigen::MatrixXd& m)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return std::numeric_limits<double>::infinity();
    const double smin = s(s.size() - 1);
    if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

void require_invertible(const Eigen::MatrixXd& m, std::string_view what, double max_cond)
{
    if (m.rows() != m.cols()) throw ShapeError(std::string(what) + " is not square");
    if (!m.allFinite()) throw SingularError(std::string(what) + " has non-finite entries");
    const double c = condition_number(m);
    if (!(c <= max_cond)) {
        throw SingularError(std::string(what) + " is singular or ill-conditioned (condition number " + std::to_string(c) + ")");
    }
}

LowerTensor inverse_matrix_tensor(const LowerTensor& t, std::string_view what)
{
    const Eigen::MatrixXd m = to_matrix(t);
    require_invertible(m, what);
    return from_matrix(m.inverse());
}

}  // namespace ff
