#include "ngcorr/channels.hpp"

#include "ngcorr/errors.hpp"
#include "ngcorr/states.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

namespace ngcorr {

using linalg::cplx;

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw BadEta("transmittance must lie in [0,1], got " + std::to_string(eta));
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

std::shared_ptr<const KrausSet> build_loss_kraus(double eta, int cutoff) {
  auto set = std::make_shared<KrausSet>();
  set->eta = eta;
  set->cutoff = cutoff;
  for (int k = 0; k < cutoff; ++k) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    bool any = false;
    for (int n = k; n < cutoff; ++n) {
      const double w = binomial(n, k) * std::pow(eta, n - k) * std::pow(1.0 - eta, k);
      if (w > 0.0) {
        op(n - k, n) = std::sqrt(w);
        any = true;
      }
    }
    if (any) set->ops.push_back(std::move(op));
  }
  return set;
}

}  // namespace

double KrausSet::completeness_defect() const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (const auto& k : ops) acc += k.adjoint() * k;
  return (acc - Eigen::MatrixXcd::Identity(cutoff, cutoff)).cwiseAbs().maxCoeff();
}

std::shared_ptr<const KrausSet> loss_kraus(double eta, int cutoff) {
  check_eta(eta);
  if (cutoff < 1) throw InvalidCutoff("loss channel needs a positive cutoff");
  static std::shared_mutex mu;
  static std::map<std::pair<double, int>, std::shared_ptr<const KrausSet>> memo;
  const auto key = std::make_pair(eta, cutoff);
  {
    std::shared_lock lock(mu);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto set = build_loss_kraus(eta, cutoff);
  std::unique_lock lock(mu);
  // Random sweeps hit many distinct eta values; keep the memo bounded.
  if (memo.size() >= 256) memo.clear();
  return memo.emplace(key, std::move(set)).first->second;
}

FockState apply_loss(const FockState& state, double eta, std::span<const int> modes) {
  check_eta(eta);
  Eigen::MatrixXcd rho = state.rho();
  for (int m : modes) {
    if (m < 0 || m >= state.modes()) throw BadModeIndex("mode index " + std::to_string(m) + " out of range");
    if (eta == 1.0) continue;
    const auto set = loss_kraus(eta, state.dims()[m]);
    rho = apply_local_channel(rho, state.dims(), m, set->ops);
  }
  return FockState::normalized(state.dims(), std::move(rho));
}

FockState apply_loss(const FockState& state, double eta, std::initializer_list<int> modes) {
  const std::vector<int> m(modes);
  return apply_loss(state, eta, std::span<const int>(m));
}

OperatorMatrix beam_splitter(double eta, int cutoff) {
  check_eta(eta);
  if (cutoff < 1) throw InvalidCutoff("beam splitter needs a positive cutoff");
  const int n = cutoff;
  const auto dim = static_cast<Eigen::Index>(n) * n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  const double theta = std::acos(std::sqrt(eta));
  for (int total = 0; total <= 2 * (n - 1); ++total) {
    // Basis |i, total - i> with both levels retained.
    std::vector<int> as;
    for (int i = 0; i < n; ++i)
      if (total - i >= 0 && total - i < n) as.push_back(i);
    const auto m = static_cast<Eigen::Index>(as.size());
    // Generator a b^dagger - a^dagger b is real antisymmetric in this block.
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index s = 0; s + 1 < m; ++s) {
      const int i = as[s];
      const int j = total - i;
      // a^dagger b: |i, j> -> sqrt((i+1) j) |i+1, j-1>
      const double amp = std::sqrt(static_cast<double>(i + 1) * j);
      gen(s + 1, s) -= amp;
      gen(s, s + 1) += amp;
    }
    // exp(theta G) = exp(-i H) with Hermitian H = i theta G.
    const Eigen::MatrixXcd h = cplx(0.0, theta) * gen.cast<cplx>();
    const auto es = linalg::eigh(h);
    Eigen::VectorXcd ph(m);
    for (Eigen::Index k = 0; k < m; ++k) ph(k) = std::exp(cplx(0.0, -es.values(k)));
    const Eigen::MatrixXcd block = es.vectors * ph.asDiagonal() * es.vectors.adjoint();
    for (Eigen::Index s = 0; s < m; ++s)
      for (Eigen::Index t = 0; t < m; ++t) {
        const Eigen::Index row = static_cast<Eigen::Index>(as[s]) * n + (total - as[s]);
        const Eigen::Index col = static_cast<Eigen::Index>(as[t]) * n + (total - as[t]);
        u(row, col) = block(s, t);
      }
  }
  return OperatorMatrix({n, n}, std::move(u));
}

EcsLossBranches ecs_loss_branches(double gamma, double eta) {
  check_eta(eta);
  if (!(gamma > 0.0)) throw BadSpec("lossy ECS needs gamma > 0");
  const double den = 4.0 * cat_norm_minus(std::sqrt(2.0) * gamma);
  const double lo = std::sqrt(2.0 - 2.0 * eta) * gamma;
  const double hi = std::sqrt(2.0 * eta) * gamma;
  EcsLossBranches b;
  b.p = cat_norm_plus(lo) * cat_norm_minus(hi) / den;
  b.q = cat_norm_minus(lo) * cat_norm_plus(hi) / den;
  const double g = std::sqrt(eta) * gamma;
  const double s = 2.0 * std::sqrt(cat_norm_plus(hi));
  b.x = cat_norm_plus(g) / s;
  b.y = cat_norm_minus(g) / s;
  return b;
}

FockState ecs_loss_analytic(double gamma, double eta, int cutoff, double tail_tol) {
  const EcsLossBranches br = ecs_loss_branches(gamma, eta);
  const auto [plus, minus] = cat_basis_kets(std::sqrt(eta) * gamma, cutoff);
  auto kron = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
  };
  const Eigen::VectorXcd psi = (kron(plus, minus) + kron(minus, plus)) / std::sqrt(2.0);
  const Eigen::VectorXcd xi = br.x * kron(plus, plus) + br.y * kron(minus, minus);
  Eigen::MatrixXcd rho = br.p * (psi * psi.adjoint()) + br.q * (xi * xi.adjoint());
  FockState out = FockState::normalized({cutoff, cutoff}, std::move(rho));
  out.require_converged(tail_tol);
  return out;
}

}  // namespace ngcorr
