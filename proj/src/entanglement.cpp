#include "ngcorr/entanglement.hpp"

#include "ngcorr/errors.hpp"
#include "ngcorr/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ngcorr {

double concurrence(const Eigen::Matrix4cd& rho) {
  if (linalg::hermiticity_defect(rho) > 1e-10) throw DomainError("two-qubit state must be Hermitian");
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  const Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;
  // sqrt of the eigenvalues of rho rho~ are the singular values of sqrt(rho) sqrt(rho~).
  auto root = [](const Eigen::Matrix4cd& m) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
    const Eigen::Vector4d v = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Eigen::Matrix4cd(es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint());
  };
  Eigen::Vector4d s = Eigen::JacobiSVD<Eigen::Matrix4cd>(root(rho) * root(tilde)).singularValues();
  std::sort(s.data(), s.data() + 4, std::greater<>());
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double eof_two_qubit(const Eigen::Matrix4cd& rho) {
  const double c = std::min(1.0, concurrence(rho));
  if (c <= 0.0) return 0.0;
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  double h = -x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
  return h;
}

double eof_two_qubit(const XStateParams& p) {
  p.validate();
  return eof_two_qubit(p.matrix());
}

double log_negativity_fock(const FockState& state, double tail_tol) {
  if (state.modes() != 2) throw DimMismatch("log negativity needs a two-mode state");
  state.require_converged(tail_tol);
  const OperatorMatrix pt = partial_transpose(state, 1);
  return std::max(0.0, std::log(linalg::trace_norm_hermitian(pt.mat())));
}

}  // namespace ngcorr
