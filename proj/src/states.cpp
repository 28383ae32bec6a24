#include "ngcorr/states.hpp"

#include "ngcorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ngcorr {

using linalg::cplx;

namespace {

const std::map<std::string, Family>& family_names() {
  static const std::map<std::string, Family> names{
      {"coherent", Family::coherent},   {"cat", Family::cat},
      {"ecs", Family::ecs},             {"pnes", Family::pnes},
      {"tmsv", Family::tmsv},           {"cv_werner", Family::cv_werner},
      {"thermal", Family::thermal},     {"photon_correlated", Family::photon_correlated},
      {"vacuum", Family::vacuum},
  };
  return names;
}

// Smallest N whose top-level weight lead * ratio^(N-1) drops below 1e-10.
int geometric_cutoff(double lead, double ratio, int floor_n) {
  int n = floor_n;
  if (ratio <= 0.0) return n;
  while (n < 200 && lead * std::pow(ratio, n - 1) >= 1e-10) ++n;
  return n;
}

Eigen::VectorXcd two_mode_diagonal_ket(const std::vector<cplx>& amps, const std::vector<int>& levels, int na, int nb) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(na) * nb);
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const int l = levels[k];
    if (l >= na || l >= nb) {
      if (std::abs(amps[k]) > 0.0) throw TruncationError("level " + std::to_string(l) + " exceeds the cutoff");
      continue;
    }
    psi(static_cast<Eigen::Index>(l) * nb + l) += amps[k];
  }
  return psi;
}

Eigen::VectorXcd tmsv_ket(double r, int na, int nb) {
  const int n = std::min(na, nb);
  std::vector<cplx> amps(n);
  std::vector<int> levels(n);
  const double t = std::tanh(r);
  double w = 1.0 / std::cosh(r);
  for (int k = 0; k < n; ++k) {
    amps[k] = w;
    levels[k] = k;
    w *= t;
  }
  return two_mode_diagonal_ket(amps, levels, na, nb);
}

void require_dims(const Dims& dims, std::size_t modes) {
  if (dims.size() != modes) throw BadSpec("expected " + std::to_string(modes) + " cutoff values");
  for (int n : dims)
    if (n < 1) throw InvalidCutoff("cutoff must be positive");
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [name, fam] : family_names())
    if (fam == f) return name;
  return "unknown";
}

Family family_from_string(const std::string& name) {
  const auto it = family_names().find(name);
  if (it == family_names().end()) throw BadSpec("unknown state family '" + name + "'");
  return it->second;
}

int family_modes(const StateSpec& spec) {
  switch (spec.family) {
    case Family::coherent:
    case Family::cat:
    case Family::thermal:
      return 1;
    case Family::vacuum:
      return spec.modes;
    default:
      return 2;
  }
}

Dims default_cutoff(const StateSpec& spec) {
  const int m = family_modes(spec);
  int n = 6;
  switch (spec.family) {
    case Family::coherent:
    case Family::cat:
    case Family::ecs: {
      const double g = std::abs(spec.gamma);
      n = g <= 1.2 ? 20 : (g <= 2.5 ? 30 : 40);
      break;
    }
    case Family::pnes: {
      int top = static_cast<int>(spec.coeffs.size()) - 1;
      for (int l : spec.levels) top = std::max(top, l);
      n = top + 6;
      break;
    }
    case Family::tmsv:
    case Family::cv_werner: {
      const double t = std::tanh(std::abs(spec.r));
      n = geometric_cutoff(1.0 / std::pow(std::cosh(spec.r), 2), t * t, 6);
      break;
    }
    case Family::thermal:
    case Family::photon_correlated: {
      const double nb = std::max(spec.nbar, 0.0);
      n = geometric_cutoff(1.0 / (nb + 1.0), nb / (nb + 1.0), 6);
      break;
    }
    case Family::vacuum:
      n = 4;
      break;
  }
  return Dims(static_cast<std::size_t>(std::max(m, 1)), n);
}

Eigen::VectorXcd coherent_ket(cplx gamma, int cutoff) {
  if (cutoff < 1) throw InvalidCutoff("cutoff must be positive");
  Eigen::VectorXcd v(cutoff);
  v(0) = std::exp(-0.5 * std::norm(gamma));
  for (int k = 1; k < cutoff; ++k) v(k) = v(k - 1) * gamma / std::sqrt(static_cast<double>(k));
  return v;
}

double cat_norm_plus(double t) { return 2.0 + 2.0 * std::exp(-2.0 * t * t); }
double cat_norm_minus(double t) { return -2.0 * std::expm1(-2.0 * t * t); }

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> cat_basis_kets(cplx gamma, int cutoff) {
  if (cutoff < 2) throw InvalidCutoff("cat states need cutoff >= 2");
  Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(cutoff);
  Eigen::VectorXcd minus = Eigen::VectorXcd::Zero(cutoff);
  const double r = std::abs(gamma);
  const cplx phase = r > 0.0 ? gamma / r : cplx(1.0);
  // d_k = gamma^(k-1) / sqrt(k!), so the odd ket stays finite as gamma -> 0 and tends to |1>.
  plus(0) = 1.0;
  cplx d = 1.0;
  for (int k = 1; k < cutoff; ++k) {
    if (k > 1) d *= gamma;
    d /= std::sqrt(static_cast<double>(k));
    if (k % 2 == 0) {
      plus(k) = gamma * d;
    } else {
      minus(k) = phase * d;
    }
  }
  plus.normalize();
  minus.normalize();
  return {plus, minus};
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> cat_basis(double gamma, int cutoff, double tail_tol) {
  if (!(gamma > 0.0)) throw BadSpec("cat basis needs gamma > 0");
  auto kets = cat_basis_kets(gamma, cutoff);
  const double tail = std::max(std::norm(kets.first(cutoff - 1)), std::norm(kets.second(cutoff - 1)));
  if (tail >= tail_tol) throw TruncationError("cat basis tail " + std::to_string(tail) + " at cutoff " + std::to_string(cutoff));
  return kets;
}

FockState make_state(const StateSpec& spec, double tail_tol) {
  const int m = family_modes(spec);
  if (m < 1) throw BadSpec("state needs at least one mode");
  const Dims dims = spec.cutoff.empty() ? default_cutoff(spec) : spec.cutoff;
  require_dims(dims, static_cast<std::size_t>(m));

  auto finish = [&](FockState s) {
    s.require_converged(tail_tol);
    return s;
  };

  switch (spec.family) {
    case Family::vacuum: {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total_dim(dims)));
      psi(0) = 1.0;
      return finish(FockState::from_ket(dims, psi));
    }
    case Family::coherent:
      return finish(FockState::from_ket(dims, coherent_ket(spec.gamma, dims[0])));
    case Family::cat: {
      if (spec.parity != 1 && spec.parity != -1) throw BadSpec("cat parity must be +1 or -1");
      if (dims[0] < 2) throw InvalidCutoff("cat states need cutoff >= 2");
      const auto kets = cat_basis_kets(spec.gamma, dims[0]);
      return finish(FockState::from_ket(dims, spec.parity == 1 ? kets.first : kets.second));
    }
    case Family::ecs: {
      if (std::abs(spec.gamma) == 0.0) throw BadSpec("ecs needs gamma != 0");
      const Eigen::VectorXcd ca = coherent_ket(spec.gamma, dims[0]);
      const Eigen::VectorXcd cb = coherent_ket(spec.gamma, dims[1]);
      // |g,g> - |-g,-g>: entries with odd total photon number survive, doubled.
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dims[0]) * dims[1]);
      for (int k = 0; k < dims[0]; ++k)
        for (int l = 0; l < dims[1]; ++l)
          if ((k + l) % 2 == 1) psi(static_cast<Eigen::Index>(k) * dims[1] + l) = 2.0 * ca(k) * cb(l);
      return finish(FockState::from_ket(dims, psi));
    }
    case Family::pnes: {
      if (spec.coeffs.empty()) throw BadSpec("pnes needs at least one coefficient");
      std::vector<int> levels = spec.levels;
      if (levels.empty()) {
        levels.resize(spec.coeffs.size());
        for (std::size_t k = 0; k < levels.size(); ++k) levels[k] = static_cast<int>(k);
      }
      if (levels.size() != spec.coeffs.size()) throw BadSpec("pnes levels and coefficients differ in length");
      for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < 0) throw BadSpec("pnes levels must be nonnegative");
        for (std::size_t j = 0; j < k; ++j)
          if (levels[j] == levels[k]) throw BadSpec("pnes levels must be distinct");
      }
      double norm = 0.0;
      for (const cplx& c : spec.coeffs) norm += std::norm(c);
      if (std::abs(norm - 1.0) > 1e-12) throw BadSpec("pnes coefficients must satisfy sum |c_k|^2 = 1");
      const Eigen::VectorXcd psi = two_mode_diagonal_ket(spec.coeffs, levels, dims[0], dims[1]);
      return finish(FockState::from_ket(dims, psi));
    }
    case Family::tmsv: {
      if (!(spec.r >= 0.0) || !std::isfinite(spec.r)) throw BadSpec("tmsv needs r >= 0");
      return finish(FockState::from_ket(dims, tmsv_ket(spec.r, dims[0], dims[1])));
    }
    case Family::cv_werner: {
      if (!(spec.f >= 0.0 && spec.f <= 1.0)) throw BadSpec("cv_werner needs 0 <= f <= 1");
      if (!(spec.r >= 0.0) || !std::isfinite(spec.r)) throw BadSpec("cv_werner needs r >= 0");
      Eigen::VectorXcd phi = tmsv_ket(spec.r, dims[0], dims[1]);
      phi.normalize();
      Eigen::MatrixXcd rho = spec.f * (phi * phi.adjoint());
      rho(0, 0) += 1.0 - spec.f;
      return finish(FockState::normalized(dims, std::move(rho)));
    }
    case Family::thermal:
    case Family::photon_correlated: {
      if (!(spec.nbar >= 0.0) || !std::isfinite(spec.nbar)) throw BadSpec("mean photon number must be >= 0");
      const double nb = spec.nbar;
      const int n = spec.family == Family::thermal ? dims[0] : std::min(dims[0], dims[1]);
      Eigen::VectorXd p(n);
      for (int k = 0; k < n; ++k) p(k) = std::pow(nb, k) / std::pow(nb + 1.0, k + 1);
      const auto dim = static_cast<Eigen::Index>(total_dim(dims));
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
      for (int k = 0; k < n; ++k) {
        const Eigen::Index x = spec.family == Family::thermal ? k : static_cast<Eigen::Index>(k) * dims[1] + k;
        rho(x, x) = p(k);
      }
      return finish(FockState::normalized(dims, std::move(rho)));
    }
  }
  throw BadSpec("unhandled state family");
}

}  // namespace ngcorr
