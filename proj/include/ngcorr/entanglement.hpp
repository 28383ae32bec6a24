#pragma once

// Entanglement monotones, in nats.

#include "ngcorr/fock.hpp"
#include "ngcorr/qubit_oracle.hpp"

#include <Eigen/Dense>

namespace ngcorr {

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const Eigen::Matrix4cd& rho);

/// Entanglement of formation h((1 + sqrt(1 - C^2))/2) with natural logs, so
/// a Bell state gives ln 2.
double eof_two_qubit(const Eigen::Matrix4cd& rho);
double eof_two_qubit(const XStateParams& p);

/// ln ||rho^T_B||_1 of a two-mode Fock state.
double log_negativity_fock(const FockState& state, double tail_tol = kDefaultTailTol);

}  // namespace ngcorr
