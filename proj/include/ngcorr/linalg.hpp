#pragma once

#include <Eigen/Dense>

#include <complex>

namespace ngcorr::linalg {

using cplx = std::complex<double>;

/// Eigenvalues with magnitude below this floor are treated as exactly zero
/// whenever a fractional or negative matrix power is taken.
inline constexpr double kSupportFloor = 1e-12;

/// (M + M^dagger) / 2.
Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m);

/// True when every imaginary part is negligible against the largest entry.
bool is_effectively_real(const Eigen::MatrixXcd& m);

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors;  // columns
};

/// Hermitian eigendecomposition. The input is hermitized first; a real
/// symmetric solver is used when the matrix has no imaginary content.
/// Exact zeros that split the matrix into independent blocks (after
/// permutation) are exploited, each block being solved separately.
EigenSystem eigh(const Eigen::MatrixXcd& m);

/// Eigenvalues only (ascending).
Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& m);

/// tr(A B) in O(D^2) without forming the product.
cplx trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const Eigen::MatrixXcd& m);

/// Largest elementwise |M - M^dagger|.
double hermiticity_defect(const Eigen::MatrixXcd& m);

}  // namespace ngcorr::linalg
