#pragma once

// Correlation measures of two-mode states, the Delta differences against
// the Gaussian reference, and the averaged-state non-Gaussian correlation
// measures J.

#include "ngcorr/fock.hpp"
#include "ngcorr/gaussian.hpp"

#include <optional>
#include <string>

namespace ngcorr {

enum class MiKind { vn, renyi, sandwiched, hs, tr, bures };
enum class NgKind { tr, fid, lb1, lb2 };
enum class FastCase { product_reference, local_gaussian };

std::string to_string(MiKind k);
std::string to_string(NgKind k);
MiKind mi_kind_from_string(const std::string& name);
NgKind ng_kind_from_string(const std::string& name);

struct MeasureResult {
  double value = 0.0;
  std::string kind;
  std::optional<double> alpha;
  int cutoff = 0;
  double tail_mass = 0.0;
  // Set on support mismatch; value is then +/-infinity (or NaN when both
  // terms of a difference diverge).
  bool infinite = false;
  // Bures only: I_B^2 = 2 (1 - sqrt F).
  std::optional<double> squared;
};

/// Renyi entropy of a spectrum, alpha = 1 meaning von Neumann. Eigenvalues
/// below the support floor count as zero.
double renyi_entropy(const Eigen::VectorXd& spectrum, double alpha);

/// D_alpha(rho || sigma) = ln tr[(sigma^s rho sigma^s)^alpha] / (alpha - 1),
/// s = (1 - alpha) / (2 alpha). Returns +infinity when alpha > 1 and rho has
/// weight outside supp sigma.
double sandwiched_relative_entropy(const FockState& rho, const FockState& sigma, double alpha);

/// Mutual informations of a two-mode state. alpha is used by renyi and
/// sandwiched; vn, sandwiched, hs, tr and bures are nonnegative.
MeasureResult mutual_information(MiKind kind, const FockState& state, double alpha = 1.0,
                                 double tail_tol = kDefaultTailTol);

/// Gaussian reference of a state: its moments, the synthesized state, and
/// the target embedded on the same space. The space is the state's own,
/// enlarged per mode when the reference needs more levels to converge.
struct Reference {
  GaussianSpec moments;
  FockState rho;
  FockState sigma;
};
Reference gaussian_reference(const FockState& state, double tail_tol = kDefaultTailTol);

enum class ReferencePath {
  closed_form,  // Gaussian formulas where they exist (vn, renyi, sandwiched, hs)
  fock,         // numerics on the synthesized reference for every kind
};

/// I[rho] - I[sigma]. tr and bures always use the Fock path.
MeasureResult delta_ng(MiKind kind, const FockState& state, double alpha = 1.0,
                       ReferencePath path = ReferencePath::closed_form, double tail_tol = kDefaultTailTol);

/// rho~ = (rho_AB + sigma_A sigma_B)/2, sigma~ = (sigma_AB + rho_A rho_B)/2.
struct AveragedStates {
  FockState rho_tilde;
  FockState sigma_tilde;
};
AveragedStates averaged_states(const FockState& state, double tail_tol = kDefaultTailTol);
AveragedStates averaged_states(const FockState& state, const FockState& sigma_ab);

/// J measures on the averaged states: tr = trace distance, fid = -ln F,
/// lb1 = -ln G (superfidelity), lb2 = -ln(1 - D_HS^2 / 2).
MeasureResult ng_correlation(NgKind kind, const FockState& state, double tail_tol = kDefaultTailTol);

struct NgValues {
  double tr = 0.0;
  double fid = 0.0;
  double lb1 = 0.0;
  double lb2 = 0.0;
  double tail_mass = 0.0;
};
/// All four J measures sharing one reference synthesis.
NgValues ng_correlations(const FockState& state, double tail_tol = kDefaultTailTol);

struct LowerBounds {
  double lb1 = 0.0;
  double lb2 = 0.0;
};
/// J_LB1 and J_LB2 from traces alone. Gaussian-Gaussian traces use the
/// closed forms, and mixed traces use exact reference matrix elements inside
/// the state's own truncation, so the reference needs no extra levels.
LowerBounds ng_lower_bounds(const FockState& state, double tail_tol = kDefaultTailTol);

/// J_LB2 in the two extremal cases: -ln(1 - D_HS^2(rho, rho_A rho_B)/8) when
/// the reference is a product, -ln(1 - D_HS^2(rho, sigma)/8) when both
/// marginals are Gaussian. Throws CaseNotApplicable when the case check fails.
MeasureResult ng_lb2_fast(FastCase which, const FockState& state, double tail_tol = kDefaultTailTol);

}  // namespace ngcorr
