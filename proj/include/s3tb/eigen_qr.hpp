#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace s3tb {

/// Diagonal similarity scaling by powers of two so that row and column norms are comparable.
void balance(Eigen::MatrixXd& a);

/// Householder reduction to upper Hessenberg form (similarity transform, in place).
void hessenberg_reduce(Eigen::MatrixXd& a);

/// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift QR iteration.
/// Throws std::runtime_error if an eigenvalue fails to converge in 60 iterations.
[[nodiscard]] std::vector<std::complex<double>> hessenberg_qr_eigenvalues(Eigen::MatrixXd h);

/// balance + hessenberg_reduce + hessenberg_qr_eigenvalues.
[[nodiscard]] std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& a);

}  // namespace s3tb
