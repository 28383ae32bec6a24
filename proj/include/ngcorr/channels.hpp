#pragma once

// Pure-loss channels and two-mode beam splitters.

#include "ngcorr/fock.hpp"

#include <memory>
#include <span>
#include <vector>

namespace ngcorr {

/// Single-mode loss channel. ops[k] removes k photons:
/// K_k |n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k>.
struct KrausSet {
  std::vector<Eigen::MatrixXcd> ops;
  double eta = 1.0;
  int cutoff = 0;

  /// max |sum K^dagger K - I| over levels 0..cutoff-1. Loss never leaves the
  /// truncated space, so the set is complete on every retained level.
  double completeness_defect() const;
};

/// Memoized per (eta, cutoff); the memo is safe for concurrent readers.
std::shared_ptr<const KrausSet> loss_kraus(double eta, int cutoff);

/// Applies the same loss to every listed mode.
FockState apply_loss(const FockState& state, double eta, std::span<const int> modes);
FockState apply_loss(const FockState& state, double eta, std::initializer_list<int> modes);

/// exp(theta (a b^dagger - a^dagger b)) with eta = cos^2 theta, so |g>|0> maps
/// to |sqrt(eta) g>|sqrt(1-eta) g>. Built blockwise in total photon number.
OperatorMatrix beam_splitter(double eta, int cutoff);

/// Mixture weights and branch amplitudes of the lossy ECS:
/// L(|Psi><Psi|) = p |Psi'><Psi'| + q |Xi'><Xi'|,
/// |Psi'> = (|+'-'> + |-'+'>)/sqrt 2, |Xi'> = x |+'+'> + y |-'-'>,
/// with |+/-'> the cat basis at amplitude sqrt(eta) gamma.
struct EcsLossBranches {
  double p = 1.0;
  double q = 0.0;
  double x = 0.0;
  double y = 0.0;
};
EcsLossBranches ecs_loss_branches(double gamma, double eta);

/// The lossy ECS assembled from its two branches in Fock space.
FockState ecs_loss_analytic(double gamma, double eta, int cutoff, double tail_tol = kDefaultTailTol);

}  // namespace ngcorr
