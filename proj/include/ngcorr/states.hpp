#pragma once

// Named state families on truncated Fock space.

#include "ngcorr/fock.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace ngcorr {

enum class Family { coherent, cat, ecs, pnes, tmsv, cv_werner, thermal, photon_correlated, vacuum };

std::string to_string(Family f);
/// Throws BadSpec on an unknown name.
Family family_from_string(const std::string& name);

/// Parameters for make_state. Only the fields used by the family are read.
struct StateSpec {
  Family family = Family::vacuum;
  std::complex<double> gamma{0.0, 0.0};         // coherent, cat, ecs
  int parity = +1;                              // cat: +1 even, -1 odd
  std::vector<std::complex<double>> coeffs;     // pnes
  std::vector<int> levels;                      // pnes; empty means 0,1,2,...
  double r = 0.0;                               // tmsv, cv_werner
  double f = 0.0;                               // cv_werner
  double nbar = 0.0;                            // thermal, photon_correlated
  int modes = 2;                                // vacuum
  Dims cutoff;                                  // empty: default_cutoff
};

/// Number of modes the family produces.
int family_modes(const StateSpec& spec);

/// Per-mode cutoff used when spec.cutoff is empty.
/// Amplitude families use 20 / 30 / 40 for |gamma| up to 1.2 / 2.5 / above.
Dims default_cutoff(const StateSpec& spec);

/// Throws BadSpec for invalid parameters and TruncationError when the
/// result's tail mass reaches tail_tol.
FockState make_state(const StateSpec& spec, double tail_tol = kDefaultTailTol);

/// Coherent ket |gamma> truncated to cutoff levels (not renormalized).
Eigen::VectorXcd coherent_ket(std::complex<double> gamma, int cutoff);

/// N_{+/-}(t) = 2 +/- 2 exp(-2 t^2), the cat normalizations.
double cat_norm_plus(double t);
double cat_norm_minus(double t);

/// Even and odd cat kets (|g> +/- |-g>)/sqrt(N_{+/-}), normalized on the
/// truncated space. At gamma = 0 the odd ket is |1>, its limit.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> cat_basis_kets(std::complex<double> gamma, int cutoff);

/// Same, but requires gamma > 0 and a converged truncation.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> cat_basis(double gamma, int cutoff, double tail_tol = kDefaultTailTol);

}  // namespace ngcorr
