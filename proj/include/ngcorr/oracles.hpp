#pragma once

// Cross-checks of the library against closed forms and brute-force
// numerics. Shared by `ngcorr selftest` and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

namespace ngcorr::oracles {

struct Outcome {
  bool pass = true;
  int checked = 0;
  double worst = 0.0;  // largest error seen
  std::string detail;  // first failure

  /// Counts one comparison; err > tol (or NaN) marks a failure.
  void record(double err, double tol, const std::string& what);
  void fail(const std::string& why);
  std::string summary() const;
};

/// Renyi and sandwiched mutual information of ECS(0.5, 1, 1.5) at alpha
/// 0.5, 1, 2 against 2 ln 2 (tol 1e-6).
Outcome bell_anchor(int cutoff = 30);

/// Kraus loss on the ECS against the two-branch form, trace distance 1e-8,
/// on gamma {0.5, 1} x eta {0.3, 0.5, 0.8}.
Outcome loss_oracle(int cutoff = 25);

/// X-state closed forms against 4x4 brute force (tol 1e-10).
Outcome xstate_bruteforce(int samples = 500, std::uint64_t seed = 3);

/// ecs_to_xstate closed forms against Fock numerics on a grid x grid set of
/// (gamma, eta) (tol 1e-7).
Outcome xstate_fock(int grid = 5);

/// Gaussian closed-form mutual information against numerics on the
/// reference synthesized in standard form at the given cutoff, for ECS(1)
/// at eta 0.5 and 1 and TMSV(0.3). fock_coarse is the same at cutoff - 10.
struct GaussianCase {
  std::string label;
  std::string kind;
  double alpha = 1.0;
  double closed = 0.0;
  double fock = 0.0;
  double fock_coarse = 0.0;
};
std::vector<GaussianCase> gaussian_mi_cases(int cutoff = 30);

/// Closed form of the standard-form symplectic eigenvalues against the
/// spectrum of i Omega Gamma on random physical standard forms (tol 1e-10).
Outcome symplectic_oracle(int samples = 500, std::uint64_t seed = 5);

/// Analytic covariance matrices of the lossy ECS (gamma <= 1.2) and the
/// fig3 photon-number entangled state, with and without loss, against
/// moments_from_fock (1e-6).
Outcome cm_oracle();

/// Product and Gaussian inputs give J = 0 within 2e-5 for every kind.
Outcome property_p1();
/// Equal local displacements leave every measure unchanged within 1e-7.
Outcome property_p2(std::uint64_t seed = 9);
/// J >= -1e-9 on the families and on random mixtures of them.
Outcome property_p3(int mixtures = 100, std::uint64_t seed = 11);
/// J_tr nonincreasing under growing loss on ECS and PNES (violations 1e-8).
Outcome property_p4_tr();

/// F <= G <= 1 - D_HS^2 / 2 on random pairs, and J_fid >= J_lb1 >= J_lb2 on
/// random states, within 1e-9.
Outcome fidelity_chain(int pairs = 300, std::uint64_t seed = 13);

}  // namespace ngcorr::oracles
