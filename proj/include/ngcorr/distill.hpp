#pragma once

// Gaussian distillation: each mode meets a vacuum ancilla on a beam splitter,
// the ancilla quadratures are measured and the outcomes x_c, x_d postselected.

#include "ngcorr/fock.hpp"

#include <Eigen/Dense>

namespace ngcorr {

struct DistillConfig {
  double eta_bs = 0.9;
  double x_c = 0.8;
  double x_d = 0.8;
  // Ancilla levels kept. 0 keeps as many as the input, which is exact since
  // the beam splitter conserves photon number.
  int cutoff = 0;

  void validate() const;
};

/// <n|x> = pi^(-1/4) (2^n n!)^(-1/2) H_n(x) exp(-x^2/2) for n < cutoff, the
/// eigenfunction of q = (a + a^dagger)/sqrt 2. Delta-normalized, so the
/// truncated vector is returned as is.
Eigen::VectorXd quadrature_eigenvector(double x, int cutoff);

/// Single-mode Kraus operator K = <x|_C B |0>_C acting on the signal mode.
Eigen::MatrixXcd homodyne_kraus(double eta_bs, double x, int cutoff, int ancilla_cutoff = 0);

struct DistillResult {
  FockState out;
  // Unnormalized trace, a probability density in (x_c, x_d).
  double weight = 0.0;
};

/// rho' = (K_c (x) K_d) rho (K_c (x) K_d)^dagger / weight. Throws ZeroWeight
/// when weight < 1e-14.
DistillResult distill(const FockState& state, const DistillConfig& config);

}  // namespace ngcorr
