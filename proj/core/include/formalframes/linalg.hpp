#pragma once

/**
 * @file linalg.hpp
 * @brief Conversions between order-1 tensors and Eigen matrices, and the singularity guard.
 */

#include <Eigen/Dense>
#include <string_view>

#include "formalframes/tensor.hpp"
#include "formalframes/tolerance.hpp"

namespace ff {

/// Order-1 tensor as an n x n matrix (row i, column j).
[[nodiscard]] Eigen::MatrixXd to_matrix(const LowerTensor& t);

/// n x n matrix as an order-1 tensor.
[[nodiscard]] LowerTensor from_matrix(const Eigen::MatrixXd& m);

/// 2-norm condition number (infinity for an exactly singular matrix).
[[nodiscard]] double condition_number(const Eigen::MatrixXd& m);

/**
 * @brief Throws SingularError when m is not square or its condition number exceeds the limit.
 * @param what names the matrix in the error message.
 */
void require_invertible(const Eigen::MatrixXd& m, std::string_view what, double max_cond = kMaxConditionNumber);

/// Inverse of an order-1 tensor after the singularity guard.
[[nodiscard]] LowerTensor inverse_matrix_tensor(const LowerTensor& t, std::string_view what);

}  // namespace ff
