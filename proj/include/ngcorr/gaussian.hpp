#pragma once

// Covariance-matrix calculus for Gaussian states.
//
// Quadratures are ordered Q = (q1, p1, q2, p2, ...) and
// Gamma_ij = <{Q_i, Q_j}>/2 - <Q_i><Q_j>, so the vacuum has Gamma = I/2.
// Omega is the direct sum of [[0, 1], [-1, 0]].

#include "ngcorr/fock.hpp"

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace ngcorr {

struct GaussianSpec {
  Eigen::VectorXd means;  // 2n
  Eigen::MatrixXd cm;     // 2n x 2n

  int modes() const { return static_cast<int>(means.size() / 2); }
  static GaussianSpec centered(Eigen::MatrixXd cm);
};

/// Two-mode standard form [[a,0,c,0],[0,a,0,d],[c,0,b,0],[0,d,0,b]] with c >= |d|.
struct StandardFormCM {
  double a = 0.5;
  double b = 0.5;
  double c = 0.0;
  double d = 0.0;

  Eigen::Matrix4d matrix() const;
};

/// local_a / local_b are 2x2 symplectic matrices with
/// (L_a (+) L_b) Gamma (L_a (+) L_b)^T = standard form.
struct StandardFormResult {
  StandardFormCM form;
  Eigen::Matrix2d local_a;
  Eigen::Matrix2d local_b;
};

struct SymplecticDecomp {
  Eigen::MatrixXd S;            // S Gamma S^T = diag(l1, l1, l2, l2, ...)
  std::vector<double> lambdas;  // descending
};

Eigen::MatrixXd omega(int modes);

/// Throws UnphysicalCM unless Gamma is symmetric (1e-10) and
/// Gamma + (i/2) Omega >= -tol.
void check_physical(const GaussianSpec& spec, double tol = 1e-9);

/// First and second moments of a truncated state, computed from ladder
/// matrix elements so the top level introduces no operator-truncation error.
GaussianSpec moments_from_fock(const FockState& state, double tail_tol = kDefaultTailTol);

StandardFormResult standard_form(const GaussianSpec& spec);

/// Symplectic eigenvalues (positive eigenvalues of i Omega Gamma), descending.
std::vector<double> symplectic_eigs(const GaussianSpec& spec);
std::vector<double> symplectic_eigs(const Eigen::MatrixXd& cm);

/// Closed form for a standard form: lambda^2 = l +/- sqrt(l^2 - m),
/// l = (a^2 + b^2 + 2cd)/2, m = (ab - c^2)(ab - d^2).
std::pair<double, double> standard_form_symplectic_eigs(const StandardFormCM& f);

SymplecticDecomp williamson(const GaussianSpec& spec);

enum class SynthesisMethod {
  hermite,  // exact Fock matrix elements by multivariate Hermite recursion
  gibbs,    // exp of the quadratic Hamiltonian in a padded space
};

/// The Gaussian state with the given moments on the truncated space.
FockState reference_gaussian_fock(const GaussianSpec& spec, const Dims& dims,
                                  SynthesisMethod method = SynthesisMethod::hermite,
                                  double tail_tol = kDefaultTailTol);

/// Exact matrix elements <m|sigma|n> of the Gaussian state for all levels
/// below dims, without renormalization. Traces against states supported
/// inside dims are therefore free of truncation error.
Eigen::MatrixXcd gaussian_fock_elements(const GaussianSpec& spec, const Dims& dims);

/// Smallest per-mode cutoff N such that every marginal population at level
/// N-1 and above stays below tail_tol. Throws TruncationError past max_cutoff.
Dims required_cutoff(const GaussianSpec& spec, double tail_tol = kDefaultTailTol, int max_cutoff = 400);

/// max |moments(state) - spec| over means and covariance entries.
double moment_mismatch(const GaussianSpec& spec, const FockState& state);

/// g(x, alpha) = 1 / ((x + 1/2)^alpha - (x - 1/2)^alpha). alpha may be
/// negative (the value is then negative).
double g_func(double x, double alpha);

enum class GaussianMiKind { renyi, sandwiched, hilbert_schmidt };

/// Closed-form mutual informations of a two-mode Gaussian state. alpha is
/// ignored for hilbert_schmidt; alpha = 1 gives the von Neumann value.
/// The sandwiched kind returns +infinity for alpha > 1 when the defining
/// trace diverges (the state is broader than its marginal product along
/// some direction).
double gaussian_mi(GaussianMiKind kind, const GaussianSpec& spec, double alpha = 1.0);
double gaussian_mi(GaussianMiKind kind, const StandardFormCM& form, double alpha = 1.0);

/// Product rule sigma1 sigma2 = prefactor * tau for equal means, where tau
/// has covariance h. h is complex in general since sigma1 sigma2 need not be
/// Hermitian.
struct Composition {
  std::complex<double> prefactor;
  Eigen::MatrixXcd h;
};
Composition compose_rule(const GaussianSpec& g1, const GaussianSpec& g2);
Composition compose_rule(const Eigen::MatrixXcd& cm1, const Eigen::MatrixXcd& cm2);

/// max(0, -ln 2 nu_min) of the partially transposed covariance matrix.
double gaussian_log_negativity(const GaussianSpec& spec);

/// Covariance of the ECS under symmetric loss: [[X + I/2, X], [X, X + I/2]],
/// X = eta gamma^2 / sinh(2 gamma^2) diag(e^{2 gamma^2}, e^{-2 gamma^2}).
GaussianSpec analytic_cm_ecs_loss(double gamma, double eta);

/// Covariance of sum_k c_k |n_k, n_k>. levels empty means n_k = k.
GaussianSpec analytic_cm_pnes(const std::vector<std::complex<double>>& coeffs, const std::vector<int>& levels = {});

namespace fault {
/// Mutation canary for the self-test: flips the sign under the inner square
/// root of the closed-form symplectic eigenvalues.
void set_symplectic_sign_flip(bool on);
bool symplectic_sign_flip();
}  // namespace fault

}  // namespace ngcorr
