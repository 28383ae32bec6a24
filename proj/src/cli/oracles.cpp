#include "ngcorr/oracles.hpp"

#include "ngcorr/channels.hpp"
#include "ngcorr/cli.hpp"
#include "ngcorr/gaussian.hpp"
#include "ngcorr/measures.hpp"
#include "ngcorr/qubit_oracle.hpp"
#include "ngcorr/states.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

namespace ngcorr::oracles {

namespace {

using cplx = std::complex<double>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- 4x4 brute force -------------------------------------------------------

Eigen::Matrix2cd trace_b(const Eigen::Matrix4cd& r) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out(i, j) += r(2 * i + k, 2 * j + k);
  return out;
}

Eigen::Matrix2cd trace_a(const Eigen::Matrix4cd& r) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i) out(k, l) += r(2 * i + k, 2 * i + l);
  return out;
}

template <class M>
double entropy(const M& m, double alpha) {
  const Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Eigen::MatrixXcd(m)).eigenvalues();
  double s = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (w(k) <= 1e-300) continue;
    s += alpha == 1.0 ? -w(k) * std::log(w(k)) : std::pow(w(k), alpha);
  }
  return alpha == 1.0 ? s : std::log(s) / (1.0 - alpha);
}

Eigen::MatrixXcd hpow(const Eigen::MatrixXcd& m, double s) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXd w = es.eigenvalues().unaryExpr([s](double x) { return std::pow(x, s); });
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double brute_mi(MiKind kind, const Eigen::Matrix4cd& r, double alpha) {
  const Eigen::Matrix2cd a = trace_b(r), b = trace_a(r);
  Eigen::Matrix4cd prod;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  switch (kind) {
    case MiKind::vn: return entropy(a, 1.0) + entropy(b, 1.0) - entropy(r, 1.0);
    case MiKind::renyi: return entropy(a, alpha) + entropy(b, alpha) - entropy(r, alpha);
    case MiKind::sandwiched: {
      if (alpha == 1.0) return brute_mi(MiKind::vn, r, 1.0);
      const Eigen::MatrixXcd sp = hpow(prod, (1.0 - alpha) / (2.0 * alpha));
      const Eigen::MatrixXcd m = sp * r * sp;
      return std::log(hpow(m, alpha).trace().real()) / (alpha - 1.0);
    }
    case MiKind::hs: return (r - prod).norm();
    default: return std::nan("");
  }
}

// ---- random symplectics ----------------------------------------------------

Eigen::Matrix4d local(double t1, double r1, double t2, double r2) {
  auto one = [](double t, double r) {
    Eigen::Matrix2d rot, sq;
    rot << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    sq << std::exp(-r), 0.0, 0.0, std::exp(r);
    return Eigen::Matrix2d(sq * rot);
  };
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s.block<2, 2>(0, 0) = one(t1, r1);
  s.block<2, 2>(2, 2) = one(t2, r2);
  return s;
}

Eigen::Matrix4d beam(double t) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s.block<2, 2>(0, 0) = s.block<2, 2>(2, 2) = std::cos(t) * Eigen::Matrix2d::Identity();
  s.block<2, 2>(0, 2) = std::sin(t) * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2, 0) = -std::sin(t) * Eigen::Matrix2d::Identity();
  return s;
}

Eigen::Matrix4d two_mode_squeeze(double r) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  s.block<2, 2>(0, 0) = s.block<2, 2>(2, 2) = std::cosh(r) * Eigen::Matrix2d::Identity();
  s.block<2, 2>(0, 2) = s.block<2, 2>(2, 0) = std::sinh(r) * z;
  return s;
}

// ---- state samples ---------------------------------------------------------

StateSpec spec_of(Family f) {
  StateSpec s;
  s.family = f;
  return s;
}

FockState werner(double f, double r, int cutoff) {
  StateSpec s = spec_of(Family::cv_werner);
  s.f = f;
  s.r = r;
  s.cutoff = {cutoff, cutoff};
  return make_state(s);
}

FockState single(Family fam, cplx gamma, double nbar, int cutoff, int parity = 1) {
  StateSpec s = spec_of(fam);
  s.gamma = gamma;
  s.nbar = nbar;
  s.parity = parity;
  s.cutoff = {cutoff};
  return make_state(s);
}

FockState fig3(double eta) { return cli::build_state(cli::fig3_state(eta)); }

// A random convex mixture of two or three family states on a common cutoff.
FockState random_mixture(std::mt19937_64& rng, int cutoff) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> ex(1.0);
  const int parts = 2 + static_cast<int>(u(rng) * 2.0);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cutoff * cutoff, cutoff * cutoff);
  double total = 0.0;
  for (int k = 0; k < parts; ++k) {
    const double w = ex(rng);
    const int pick = static_cast<int>(u(rng) * 5.0);
    Eigen::MatrixXcd m;
    if (pick == 0) {
      m = ecs_loss_analytic(0.3 + 0.7 * u(rng), 0.2 + 0.8 * u(rng), cutoff).rho();
    } else if (pick == 1) {
      m = werner(u(rng), 0.2 * u(rng), cutoff).rho();
    } else if (pick == 2) {
      const cplx a = std::polar(0.8 * u(rng), 2.0 * M_PI * u(rng)), b = std::polar(0.8 * u(rng), 2.0 * M_PI * u(rng));
      m = tensor(single(Family::coherent, a, 0.0, cutoff), single(Family::coherent, b, 0.0, cutoff)).rho();
    } else if (pick == 3) {
      StateSpec s = spec_of(Family::pnes);
      double norm = 0.0;
      for (int j = 0; j < 3; ++j) {
        s.coeffs.push_back(std::polar(0.05 + u(rng), 2.0 * M_PI * u(rng)));
        norm += std::norm(s.coeffs.back());
      }
      for (auto& c : s.coeffs) c /= std::sqrt(norm);
      s.cutoff = {cutoff, cutoff};
      m = make_state(s).rho();
    } else {
      StateSpec s = spec_of(Family::photon_correlated);
      s.nbar = 0.1 + 0.3 * u(rng);
      s.cutoff = {cutoff, cutoff};
      m = make_state(s).rho();
    }
    rho += w * m;
    total += w;
  }
  return FockState::normalized({cutoff, cutoff}, rho / total);
}

FockState displace_both(const FockState& s, cplx a, cplx b, int cutoff) {
  const FockState big = embed(s, {cutoff, cutoff});
  const OperatorMatrix u = tensor(OperatorMatrix({cutoff}, displacement(a, cutoff)),
                                  OperatorMatrix({cutoff}, displacement(b, cutoff)));
  return FockState::normalized(big.dims(), u.mat() * big.rho() * u.mat().adjoint());
}

FockState random_state(const Dims& dims, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = cplx(nd(rng), nd(rng));
  return FockState::normalized(dims, g * g.adjoint());
}

void ng_all(const NgValues& v, const std::string& label, const std::function<void(double, const std::string&)>& check) {
  check(v.tr, label + " tr");
  check(v.fid, label + " fid");
  check(v.lb1, label + " lb1");
  check(v.lb2, label + " lb2");
}

}  // namespace

void Outcome::record(double err, double tol, const std::string& what) {
  ++checked;
  if (std::isnan(err) || err > worst) worst = std::isnan(err) ? INFINITY : err;
  if (!(err <= tol)) fail(what + ": error " + num(err) + " > " + num(tol));
}

void Outcome::fail(const std::string& why) {
  if (pass) detail = why;
  pass = false;
}

std::string Outcome::summary() const {
  std::string s = std::to_string(checked) + " checks, worst " + num(worst);
  if (!pass) s += "; " + detail;
  return s;
}

Outcome bell_anchor(int cutoff) {
  Outcome out;
  for (double g : {0.5, 1.0, 1.5}) {
    StateSpec s = spec_of(Family::ecs);
    s.gamma = g;
    s.cutoff = {cutoff, cutoff};
    const FockState st = make_state(s);
    for (MiKind k : {MiKind::renyi, MiKind::sandwiched})
      for (double a : {0.5, 1.0, 2.0})
        out.record(std::abs(mutual_information(k, st, a).value - 2.0 * std::log(2.0)), 1e-6,
                   "ecs " + num(g) + " " + to_string(k) + " alpha " + num(a));
  }
  return out;
}

Outcome loss_oracle(int cutoff) {
  Outcome out;
  for (double g : {0.5, 1.0}) {
    StateSpec s = spec_of(Family::ecs);
    s.gamma = g;
    s.cutoff = {cutoff, cutoff};
    const FockState st = make_state(s);
    for (double e : {0.3, 0.5, 0.8})
      out.record(distance(DistanceKind::trace, apply_loss(st, e, {0, 1}), ecs_loss_analytic(g, e, cutoff)), 1e-8,
                 "gamma " + num(g) + " eta " + num(e));
  }
  return out;
}

Outcome xstate_bruteforce(int samples, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < samples; ++n) {
    XStateParams p;
    double w[4], sum = 0.0;
    for (double& x : w) sum += (x = -std::log(1.0 - u(rng)));
    p.a = w[0] / sum;
    p.b = w[1] / sum;
    p.c = w[2] / sum;
    p.d = w[3] / sum;
    p.u = std::polar(std::sqrt(p.b * p.c) * u(rng), 2.0 * M_PI * u(rng));
    p.v = std::polar(std::sqrt(p.a * p.d) * u(rng), 2.0 * M_PI * u(rng));
    const Eigen::Matrix4cd m = p.matrix();
    out.record(std::abs(xstate_mi(MiKind::vn, p) - brute_mi(MiKind::vn, m, 1.0)), 1e-10, "vn sample " + std::to_string(n));
    out.record(std::abs(xstate_mi(MiKind::hs, p) - brute_mi(MiKind::hs, m, 1.0)), 1e-10, "hs sample " + std::to_string(n));
    for (double a : {0.5, 2.0})
      for (MiKind k : {MiKind::renyi, MiKind::sandwiched})
        out.record(std::abs(xstate_mi(k, p, a) - brute_mi(k, m, a)), 1e-10,
                   to_string(k) + " alpha " + num(a) + " sample " + std::to_string(n));
  }
  return out;
}

Outcome xstate_fock(int grid) {
  Outcome out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double g = 0.5 + (grid > 1 ? 1.0 * i / (grid - 1) : 0.0);
      const double e = 0.2 + (grid > 1 ? 0.8 * j / (grid - 1) : 0.8);
      const XStateParams p = ecs_to_xstate(g, e);
      const FockState s = ecs_loss_analytic(g, e, cli::ecs_cutoff(g, 1e-14));
      const std::string at = "gamma " + num(g) + " eta " + num(e);
      for (MiKind k : {MiKind::vn, MiKind::hs})
        out.record(std::abs(xstate_mi(k, p) - mutual_information(k, s).value), 1e-7, to_string(k) + " " + at);
      for (double a : {0.5, 2.0})
        for (MiKind k : {MiKind::renyi, MiKind::sandwiched})
          out.record(std::abs(xstate_mi(k, p, a) - mutual_information(k, s, a).value), 1e-7,
                     to_string(k) + " alpha " + num(a) + " " + at);
    }
  return out;
}

std::vector<GaussianCase> gaussian_mi_cases(int cutoff) {
  struct Target {
    std::string label;
    FockState state;
  };
  StateSpec t = spec_of(Family::tmsv);
  t.r = 0.3;
  t.cutoff = {cutoff, cutoff};
  const std::vector<Target> targets = {
      {"ecs(1) eta 0.5", ecs_loss_analytic(1.0, 0.5, cutoff)},
      {"ecs(1) eta 1", ecs_loss_analytic(1.0, 1.0, cutoff)},
      {"tmsv(0.3)", make_state(t)},
  };
  std::vector<GaussianCase> cases;
  for (const auto& tg : targets) {
    const GaussianSpec m = moments_from_fock(tg.state);
    // Mutual informations are local-unitary invariant, and the standard form
    // is the most compact reference in Fock space.
    const GaussianSpec g = GaussianSpec::centered(standard_form(m).form.matrix());
    const FockState fine = reference_gaussian_fock(g, {cutoff, cutoff}, SynthesisMethod::hermite, 1e-4);
    const FockState coarse = reference_gaussian_fock(g, {cutoff - 10, cutoff - 10}, SynthesisMethod::hermite, 1.0);
    auto add = [&](GaussianMiKind gk, MiKind k, double a, const std::string& name) {
      GaussianCase c;
      c.label = tg.label + " " + name;
      c.kind = to_string(k);
      c.alpha = a;
      c.closed = gaussian_mi(gk, m, a);
      c.fock = mutual_information(k, fine, a, 1e-4).value;
      c.fock_coarse = mutual_information(k, coarse, a, 1.0).value;
      cases.push_back(c);
    };
    for (double a : {0.5, 0.9, 1.1, 2.0}) {
      add(GaussianMiKind::renyi, MiKind::renyi, a, "renyi alpha " + num(a));
      add(GaussianMiKind::sandwiched, MiKind::sandwiched, a, "sandwiched alpha " + num(a));
    }
    add(GaussianMiKind::hilbert_schmidt, MiKind::hs, 1.0, "hs");
  }
  return cases;
}

Outcome symplectic_oracle(int samples, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < samples; ++n) {
    const double l1 = 0.5 + 2.0 * u(rng), l2 = 0.5 + 2.0 * u(rng);
    const Eigen::Matrix4d s = local(6.3 * u(rng), u(rng) - 0.5, 6.3 * u(rng), u(rng) - 0.5) * beam(3.2 * u(rng)) *
                              two_mode_squeeze(1.2 * u(rng)) * local(6.3 * u(rng), u(rng) - 0.5, 6.3 * u(rng), 0.0);
    const Eigen::Vector4d diag(l1, l1, l2, l2);
    const Eigen::Matrix4d cm = s * diag.asDiagonal() * s.transpose();
    const StandardFormCM f = standard_form(GaussianSpec::centered(cm)).form;
    const auto [c1, c2] = standard_form_symplectic_eigs(f);
    const std::vector<double> e = symplectic_eigs(f.matrix());
    out.record(std::max(std::abs(c1 - e[0]), std::abs(c2 - e[1])), 1e-10, "sample " + std::to_string(n));
  }
  return out;
}

Outcome cm_oracle() {
  Outcome out;
  auto compare = [&](const GaussianSpec& a, const GaussianSpec& b, const std::string& what) {
    out.record(std::max((a.cm - b.cm).cwiseAbs().maxCoeff(), (a.means - b.means).cwiseAbs().maxCoeff()), 1e-6, what);
  };
  for (double g : {0.3, 0.6, 0.9, 1.2})
    for (double e : {0.25, 0.5, 0.75, 1.0})
      compare(analytic_cm_ecs_loss(g, e), moments_from_fock(ecs_loss_analytic(g, e, cli::ecs_cutoff(g, 1e-14))),
              "ecs gamma " + num(g) + " eta " + num(e));
  const auto coeffs = cli::fig3_state(1.0).spec.coeffs;
  const GaussianSpec p = analytic_cm_pnes(coeffs);
  for (double e : {1.0, 0.7, 0.4}) {
    // Loss maps Gamma to eta Gamma + (1 - eta) I / 2.
    GaussianSpec q = p;
    q.cm = e * p.cm + 0.5 * (1.0 - e) * Eigen::Matrix4d::Identity();
    compare(q, moments_from_fock(fig3(e)), "pnes eta " + num(e));
  }
  return out;
}

Outcome property_p1() {
  Outcome out;
  const int n = 16;
  StateSpec t = spec_of(Family::tmsv);
  t.r = 0.3;
  const std::vector<std::pair<std::string, FockState>> states = {
      {"thermal x cat", tensor(single(Family::thermal, 0.0, 0.3, n), single(Family::cat, 0.8, 0.0, n))},
      {"coherent x coherent", tensor(single(Family::coherent, 0.5, 0.0, n), single(Family::coherent, cplx(-0.3, 0.2), 0.0, n))},
      {"odd cat x thermal", tensor(single(Family::cat, 0.6, 0.0, n, -1), single(Family::thermal, 0.0, 0.5, n))},
      {"tmsv(0.3)", make_state(t)},
      {"werner f=1", werner(1.0, 0.15, 12)},
      {"werner f=0", werner(0.0, 0.1, 12)},
  };
  for (const auto& [label, s] : states)
    ng_all(ng_correlations(s), label, [&](double v, const std::string& w) { out.record(std::abs(v), 2e-5, w); });
  return out;
}

Outcome property_p2(std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, FockState>> states = {
      {"lossy ecs", ecs_loss_analytic(0.8, 0.7, cli::ecs_cutoff(0.8))},
      {"pnes", fig3(0.5)},
      {"werner", werner(0.5, 0.1, 10)},
  };
  for (int k = 0; k < 2; ++k) states.emplace_back("mixture " + std::to_string(k), random_mixture(rng, 20));
  const int big = 30;
  const cplx da(0.3, 0.2), db(-0.25, 0.1);
  for (const auto& [label, s] : states) {
    const FockState se = embed(s, {big, big});
    const FockState d = displace_both(s, da, db, big);
    for (MiKind k : {MiKind::vn, MiKind::hs, MiKind::tr, MiKind::bures})
      out.record(std::abs(mutual_information(k, d).value - mutual_information(k, se).value), 1e-7,
                 label + " " + to_string(k));
    for (MiKind k : {MiKind::renyi, MiKind::sandwiched})
      for (double a : {0.5, 2.0})
        out.record(std::abs(mutual_information(k, d, a).value - mutual_information(k, se, a).value), 1e-7,
                   label + " " + to_string(k) + " alpha " + num(a));
    for (MiKind k : {MiKind::renyi, MiKind::hs, MiKind::tr})
      out.record(std::abs(delta_ng(k, d, 2.0).value - delta_ng(k, s, 2.0).value), 1e-7, label + " delta " + to_string(k));
    const NgValues a = ng_correlations(s, 1e-9), b = ng_correlations(d, 1e-9);
    out.record(std::abs(a.tr - b.tr), 1e-7, label + " ng tr");
    out.record(std::abs(a.fid - b.fid), 1e-7, label + " ng fid");
    out.record(std::abs(a.lb1 - b.lb1), 1e-7, label + " ng lb1");
    out.record(std::abs(a.lb2 - b.lb2), 1e-7, label + " ng lb2");
  }
  return out;
}

Outcome property_p3(int mixtures, std::uint64_t seed) {
  Outcome out;
  auto check = [&](const FockState& s, const std::string& label) {
    ng_all(ng_correlations(s), label, [&](double v, const std::string& w) { out.record(-v, 1e-9, w); });
  };
  for (double g : {0.5, 1.0})
    for (double e : {1.0, 0.6, 0.3}) check(ecs_loss_analytic(g, e, cli::ecs_cutoff(g)), "ecs " + num(g) + " eta " + num(e));
  for (double e : {1.0, 0.6, 0.3}) check(fig3(e), "pnes eta " + num(e));
  for (auto [f, r] : {std::pair{0.3, 0.1}, {0.7, 0.2}, {1.0, 0.15}}) check(werner(f, r, 12), "werner " + num(f) + "," + num(r));
  std::mt19937_64 rng(seed);
  for (int k = 0; k < mixtures; ++k) check(random_mixture(rng, 12), "mixture " + std::to_string(k));
  return out;
}

Outcome property_p4_tr() {
  Outcome out;
  std::vector<double> etas;
  for (int k = 10; k >= 0; --k) etas.push_back(0.1 * k);
  auto run = [&](const std::function<FockState(double)>& make, const std::string& label) {
    double prev = INFINITY;
    for (double e : etas) {
      const double v = ng_correlation(NgKind::tr, make(e), 1e-9).value;
      if (std::isfinite(prev)) out.record(v - prev, 1e-8, label + " eta " + num(e));
      prev = v;
    }
  };
  for (double g : {0.5, 1.0})
    run([g](double e) { return ecs_loss_analytic(g, e, cli::ecs_cutoff(g, 1e-12)); }, "ecs " + num(g));
  run([](double e) { return fig3(e); }, "pnes");
  return out;
}

Outcome fidelity_chain(int pairs, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  for (int n = 0; n < pairs; ++n) {
    const Dims dims = n % 2 ? Dims{2, 3} : Dims{3, 2};
    const FockState a = random_state(dims, rng), b = random_state(dims, rng);
    const double f = fidelity(FidelityKind::uhlmann, a, b), g = fidelity(FidelityKind::super, a, b);
    const double hs = distance(DistanceKind::hilbert_schmidt, a, b);
    out.record(f - g, 1e-9, "F <= G pair " + std::to_string(n));
    out.record(g - (1.0 - 0.5 * hs * hs), 1e-9, "G <= 1 - D^2/2 pair " + std::to_string(n));
    const NgValues j = ng_correlations(random_state({2, 2}, rng), 1.0);
    out.record(j.lb1 - j.fid, 1e-9, "fid >= lb1 state " + std::to_string(n));
    out.record(j.lb2 - j.lb1, 1e-9, "lb1 >= lb2 state " + std::to_string(n));
  }
  return out;
}

}  // namespace ngcorr::oracles
