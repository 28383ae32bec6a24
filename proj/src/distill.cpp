#include "ngcorr/distill.hpp"

#include "ngcorr/channels.hpp"
#include "ngcorr/errors.hpp"

#include <cmath>

namespace ngcorr {

namespace {
constexpr double kMinWeight = 1e-14;
}

void DistillConfig::validate() const {
  if (!(eta_bs > 0.0 && eta_bs <= 1.0)) throw BadEta("beam-splitter transmittance must lie in (0, 1]");
  if (!std::isfinite(x_c) || !std::isfinite(x_d)) throw DomainError("homodyne outcomes must be finite");
  if (cutoff < 0 || cutoff == 1) throw InvalidCutoff("ancilla cutoff must be 0 or at least 2");
}

Eigen::VectorXd quadrature_eigenvector(double x, int cutoff) {
  if (cutoff < 2) throw InvalidCutoff("quadrature eigenvector needs cutoff >= 2");
  Eigen::VectorXd v(cutoff);
  // Normalized Hermite-function recursion; H_n itself overflows quickly.
  v(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  v(1) = std::sqrt(2.0) * x * v(0);
  for (int n = 1; n + 1 < cutoff; ++n)
    v(n + 1) = std::sqrt(2.0 / (n + 1)) * x * v(n) - std::sqrt(static_cast<double>(n) / (n + 1)) * v(n - 1);
  return v;
}

Eigen::MatrixXcd homodyne_kraus(double eta_bs, double x, int cutoff, int ancilla_cutoff) {
  const int na = ancilla_cutoff > 0 ? ancilla_cutoff : cutoff;
  // One shared space for signal and ancilla; only |n>|0> with n < cutoff is used.
  const int n = std::max(cutoff, na);
  const Eigen::MatrixXcd b = beam_splitter(eta_bs, n).mat();
  const Eigen::VectorXd psi = quadrature_eigenvector(x, std::max(na, 2));
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int col = 0; col < cutoff; ++col)
    for (int m = 0; m < cutoff; ++m)
      for (int a = 0; a < na; ++a) k(m, col) += psi(a) * b(static_cast<Eigen::Index>(m) * n + a, static_cast<Eigen::Index>(col) * n);
  return k;
}

DistillResult distill(const FockState& state, const DistillConfig& config) {
  config.validate();
  if (state.modes() != 2) throw DimMismatch("distillation needs a two-mode state");
  const Dims& dims = state.dims();
  const Eigen::MatrixXcd kc = homodyne_kraus(config.eta_bs, config.x_c, dims[0], config.cutoff);
  const Eigen::MatrixXcd kd = homodyne_kraus(config.eta_bs, config.x_d, dims[1], config.cutoff);
  Eigen::MatrixXcd rho = sandwich_local(state.rho(), dims, 0, kc);
  rho = sandwich_local(rho, dims, 1, kd);
  const double w = rho.trace().real();
  if (!(w >= kMinWeight)) throw ZeroWeight("postselection weight " + std::to_string(w) + " is below 1e-14");
  return DistillResult{FockState::normalized(dims, std::move(rho)), w};
}

}  // namespace ngcorr
