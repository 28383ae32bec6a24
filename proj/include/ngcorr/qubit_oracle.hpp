#pragma once

// Closed-form mutual informations of pure Schmidt states and two-qubit X
// states, and the X-state form of the lossy entangled coherent state.

#include "ngcorr/measures.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ngcorr {

/// X state in the basis {|++>, |+->, |-+>, |-->}:
///   [[a, 0, 0, v], [0, b, u, 0], [0, u*, c, 0], [v*, 0, 0, d]].
struct XStateParams {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  std::complex<double> u{0.0, 0.0}, v{0.0, 0.0};

  Eigen::Matrix4cd matrix() const;
  /// lambda_{1,2} from the (a, d, v) block, lambda_{3,4} from (b, c, u).
  Eigen::Vector4d eigenvalues() const;
  /// Throws DomainError unless entries are nonnegative, sum to one and the
  /// coherences respect |u| <= sqrt(bc), |v| <= sqrt(ad).
  void validate(double tol = 1e-12) const;
};

/// renyi, sandwiched (alpha = 1 is the von Neumann limit), vn or hs.
/// Other kinds throw DomainError.
double xstate_mi(MiKind kind, const XStateParams& p, double alpha = 1.0);

/// Two-branch lossy ECS written in the cat basis at amplitude sqrt(eta) gamma.
XStateParams ecs_to_xstate(double gamma, double eta);

/// Mutual information of sum_k c_k |k>|k>; zero coefficients carry no weight.
double pure_schmidt_mi(MiKind kind, const std::vector<std::complex<double>>& coeffs, double alpha = 1.0);

}  // namespace ngcorr
