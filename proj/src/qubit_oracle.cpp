#include "ngcorr/qubit_oracle.hpp"

#include "ngcorr/channels.hpp"
#include "ngcorr/errors.hpp"

#include <cmath>

namespace ngcorr {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive and finite");
}

// ln sum x^alpha / (1 - alpha), Shannon at alpha = 1. Zeros carry no weight.
double renyi(std::initializer_list<double> xs, double alpha) {
  double acc = 0.0;
  for (double x : xs) {
    if (x <= 0.0) continue;
    acc += alpha == 1.0 ? -x * std::log(x) : std::pow(x, alpha);
  }
  return alpha == 1.0 ? acc : std::log(acc) / (1.0 - alpha);
}

// 0^e * 0 = 0 for any exponent.
double scaled(double x, double base, double e) { return x == 0.0 ? 0.0 : x * std::pow(base, e); }

std::pair<double, double> block_eigs(double p, double q, double off) {
  const double r = std::sqrt((p - q) * (p - q) + 4.0 * off * off);
  return {0.5 * (p + q + r), 0.5 * (p + q - r)};
}

}  // namespace

Eigen::Matrix4cd XStateParams::matrix() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  m(1, 2) = u;
  m(2, 1) = std::conj(u);
  m(0, 3) = v;
  m(3, 0) = std::conj(v);
  return m;
}

Eigen::Vector4d XStateParams::eigenvalues() const {
  const auto [l1, l2] = block_eigs(a, d, std::abs(v));
  const auto [l3, l4] = block_eigs(b, c, std::abs(u));
  return {l1, l2, l3, l4};
}

void XStateParams::validate(double tol) const {
  for (double x : {a, b, c, d})
    if (!(x >= -tol) || !std::isfinite(x)) throw DomainError("X-state populations must be nonnegative");
  if (std::abs(a + b + c + d - 1.0) > tol) throw DomainError("X-state populations must sum to one");
  if (std::abs(u) > std::sqrt(std::max(0.0, b * c)) + tol || std::abs(v) > std::sqrt(std::max(0.0, a * d)) + tol)
    throw DomainError("X-state coherences violate positivity");
}

double xstate_mi(MiKind kind, const XStateParams& p, double alpha) {
  p.validate();
  const double ab = p.a + p.b, cd = p.c + p.d, ac = p.a + p.c, bd = p.b + p.d;
  switch (kind) {
    case MiKind::vn:
      alpha = 1.0;
      [[fallthrough]];
    case MiKind::renyi: {
      check_alpha(alpha);
      const Eigen::Vector4d l = p.eigenvalues();
      return renyi({ab, cd}, alpha) + renyi({ac, bd}, alpha) - renyi({l(0), l(1), l(2), l(3)}, alpha);
    }
    case MiKind::sandwiched: {
      check_alpha(alpha);
      if (alpha == 1.0) return xstate_mi(MiKind::vn, p);
      const double e = (1.0 - alpha) / alpha;
      XStateParams q;
      q.a = scaled(scaled(p.a, ab, e), ac, e);
      q.b = scaled(scaled(p.b, ab, e), bd, e);
      q.c = scaled(scaled(p.c, cd, e), ac, e);
      q.d = scaled(scaled(p.d, cd, e), bd, e);
      const double all = ab * cd * ac * bd;
      const double f = all > 0.0 ? std::pow(all, 0.5 * e) : 0.0;
      q.u = p.u == 0.0 ? 0.0 : p.u * f;
      q.v = p.v == 0.0 ? 0.0 : p.v * f;
      const Eigen::Vector4d l = q.eigenvalues();
      double acc = 0.0;
      for (int i = 0; i < 4; ++i)
        if (l(i) > 0.0) acc += std::pow(l(i), alpha);
      return std::log(acc) / (alpha - 1.0);
    }
    case MiKind::hs: {
      auto sq = [](double x) { return x * x; };
      const double s = sq(p.a - ab * ac) + sq(p.b - ab * bd) + sq(p.c - cd * ac) + sq(p.d - cd * bd) +
                       2.0 * (std::norm(p.u) + std::norm(p.v));
      return std::sqrt(s);
    }
    default:
      throw DomainError("no X-state closed form for kind " + to_string(kind));
  }
}

XStateParams ecs_to_xstate(double gamma, double eta) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  const EcsLossBranches br = ecs_loss_branches(gamma, eta);
  XStateParams x;
  x.b = x.c = 0.5 * br.p;
  x.u = 0.5 * br.p;
  x.a = br.q * br.x * br.x;
  x.d = br.q * br.y * br.y;
  x.v = br.q * br.x * br.y;
  return x;
}

double pure_schmidt_mi(MiKind kind, const std::vector<std::complex<double>>& coeffs, double alpha) {
  std::vector<double> w;
  double total = 0.0;
  for (const auto& c : coeffs) {
    total += std::norm(c);
    if (std::norm(c) > 0.0) w.push_back(std::norm(c));
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("Schmidt weights must sum to one");
  auto power_sum = [&](double e) {
    double acc = 0.0;
    for (double x : w) acc += std::pow(x, e);
    return acc;
  };
  switch (kind) {
    case MiKind::vn:
      alpha = 1.0;
      [[fallthrough]];
    case MiKind::renyi:
    case MiKind::sandwiched: {
      check_alpha(alpha);
      if (alpha == 1.0) {
        double h = 0.0;
        for (double x : w) h -= x * std::log(x);
        return 2.0 * h;
      }
      if (kind == MiKind::renyi) return 2.0 / (1.0 - alpha) * std::log(power_sum(alpha));
      // |c|^((4 - 2 alpha)/alpha) = w^((2 - alpha)/alpha)
      return alpha / (alpha - 1.0) * std::log(power_sum((2.0 - alpha) / alpha));
    }
    case MiKind::hs: {
      const double p2 = power_sum(2.0);
      return std::sqrt(std::max(0.0, 1.0 + p2 * p2 - 2.0 * power_sum(3.0)));
    }
    default:
      throw DomainError("no pure-state closed form for kind " + to_string(kind));
  }
}

}  // namespace ngcorr
