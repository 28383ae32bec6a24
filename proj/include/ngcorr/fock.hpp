#pragma once

// Truncated Fock-space linear algebra.
//
// Conventions: hbar = 1, q = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(sqrt(2) i),
// so the vacuum quadrature variance is 1/2. Logarithms are natural. In a
// multi-mode state mode 0 ("A") is the slowest Kronecker factor.

#include "ngcorr/linalg.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace ngcorr {

using Dims = std::vector<int>;

inline constexpr double kDefaultTailTol = 1e-6;

std::size_t total_dim(const Dims& dims);

/// Row-major strides: the last mode varies fastest.
std::vector<std::size_t> strides(const Dims& dims);

/// A square operator on a truncated multi-mode space.
class OperatorMatrix {
 public:
  OperatorMatrix(Dims dims, Eigen::MatrixXcd mat);

  const Dims& dims() const { return dims_; }
  const Eigen::MatrixXcd& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;

 private:
  Dims dims_;
  Eigen::MatrixXcd mat_;
};

/// A density matrix on a truncated multi-mode Fock space.
///
/// Construction hermitizes the input after checking it is Hermitian to 1e-10
/// and normalized to 1e-10. The tail mass is the population of basis states in
/// which at least one mode occupies its highest retained level.
class FockState {
 public:
  FockState(Dims dims, Eigen::MatrixXcd rho);

  /// Divides by the trace before validating.
  static FockState normalized(Dims dims, Eigen::MatrixXcd rho);
  /// |psi><psi| / <psi|psi>.
  static FockState from_ket(Dims dims, const Eigen::VectorXcd& psi);

  const Dims& dims() const { return dims_; }
  const Eigen::MatrixXcd& rho() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  int modes() const { return static_cast<int>(dims_.size()); }
  int max_cutoff() const;
  double tail_mass() const { return tail_mass_; }

  double purity() const;
  double min_eigenvalue() const;

  /// Throws TruncationError when tail_mass >= tol.
  void require_converged(double tol = kDefaultTailTol) const;
  /// Throws InvalidState when an eigenvalue is below -tol.
  void check_positive(double tol = 1e-10) const;

 private:
  Dims dims_;
  Eigen::MatrixXcd rho_;
  double tail_mass_ = 0.0;
};

double tail_mass_of(const Dims& dims, const Eigen::MatrixXcd& rho);

struct LadderOps {
  OperatorMatrix annihilation;
  OperatorMatrix creation;
  OperatorMatrix number;
  OperatorMatrix q;
  OperatorMatrix p;
};

LadderOps ladder_ops(int cutoff);

FockState tensor(const FockState& a, const FockState& b);
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

FockState partial_trace(const FockState& state, std::span<const int> keep);
FockState partial_trace(const FockState& state, std::initializer_list<int> keep);

/// Transpose on one mode. The result is Hermitian with unit trace but may
/// have negative eigenvalues.
OperatorMatrix partial_transpose(const FockState& state, int mode);

/// M^s on the support of a Hermitian positive matrix. Eigenvalues below
/// kSupportFloor are treated as zero (excluded for s < 0, mapped to 0 for s > 0).
Eigen::MatrixXcd matrix_power_on_support(const Eigen::MatrixXcd& m, double s);
OperatorMatrix matrix_power_on_support(const FockState& state, double s);

enum class DistanceKind { trace, hilbert_schmidt };
double distance(DistanceKind kind, const FockState& a, const FockState& b);

enum class FidelityKind { uhlmann, super };
double fidelity(FidelityKind kind, const FockState& a, const FockState& b);

/// Zero-pads a state into a larger truncation.
FockState embed(const FockState& state, const Dims& new_dims);

/// op acting on a single mode: returns (op)_mode * rho * (op)_mode^dagger.
Eigen::MatrixXcd sandwich_local(const Eigen::MatrixXcd& rho, const Dims& dims, int mode,
                                const Eigen::MatrixXcd& op);

/// sum_k (K_k)_mode rho (K_k)_mode^dagger for a local channel.
Eigen::MatrixXcd apply_local_channel(const Eigen::MatrixXcd& rho, const Dims& dims, int mode,
                                     std::span<const Eigen::MatrixXcd> kraus);

/// exp(alpha a^dagger - alpha^* a) columns built exactly by
/// D|n> = (a^dagger - alpha^*)^n |alpha> / sqrt(n!), evaluated with headroom.
Eigen::MatrixXcd displacement(std::complex<double> alpha, int cutoff);

}  // namespace ngcorr
