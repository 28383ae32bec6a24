#include "ngcorr/cli.hpp"

#include "ngcorr/channels.hpp"
#include "ngcorr/distill.hpp"
#include "ngcorr/gaussian.hpp"
#include "ngcorr/measures.hpp"
#include "ngcorr/oracles.hpp"
#include "ngcorr/qubit_oracle.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>

namespace ngcorr::cli {

namespace {

using oracles::Outcome;

class Runner {
 public:
  Runner(std::ostream& out) : out_(out) {}

  void run(const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_ << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.summary() << ", " << static_cast<int>(secs * 10) / 10.0
         << " s)\n";
    out_.flush();
    (o.pass ? report_.passed : report_.failed)++;
  }

  SelftestReport report() const { return report_; }

 private:
  std::ostream& out_;
  SelftestReport report_;
};

StateSpec spec(Family f, double gamma = 0.0, int cutoff = 0) {
  StateSpec s;
  s.family = f;
  s.gamma = gamma;
  if (cutoff > 0) s.cutoff.assign(static_cast<std::size_t>(family_modes(s)), cutoff);
  return s;
}

void quick_checks(Runner& r) {
  r.run("vacuum symplectic eigenvalues are 1/2", [] {
    Outcome o;
    for (double l : symplectic_eigs(Eigen::MatrixXd(0.5 * Eigen::MatrixXd::Identity(4, 4)))) o.record(std::abs(l - 0.5), 1e-12, "numeric");
    const auto [a, b] = standard_form_symplectic_eigs(StandardFormCM{});
    o.record(std::max(std::abs(a - 0.5), std::abs(b - 0.5)), 1e-12, "closed form");
    return o;
  });
  r.run("pure TMSV standard form has symplectic eigenvalues 1/2", [] {
    Outcome o;
    for (double x : {0.2, 0.7, 1.1}) {
      StandardFormCM f;
      f.a = f.b = 0.5 * std::cosh(2.0 * x);
      f.c = 0.5 * std::sinh(2.0 * x);
      f.d = -f.c;
      const auto [a, b] = standard_form_symplectic_eigs(f);
      o.record(std::max(std::abs(a - 0.5), std::abs(b - 0.5)), 1e-10, "r " + std::to_string(x));
    }
    return o;
  });
  r.run("product states carry no correlation", [] {
    Outcome o;
    StateSpec th = spec(Family::thermal, 0.0, 16);
    th.nbar = 0.4;
    const FockState p = tensor(make_state(th), make_state(spec(Family::cat, 0.7, 14)));
    for (MiKind k : {MiKind::vn, MiKind::renyi, MiKind::sandwiched, MiKind::hs, MiKind::tr, MiKind::bures})
      o.record(std::abs(mutual_information(k, p, 2.0).value), 1e-9, to_string(k));
    return o;
  });
  r.run("ECS mutual information is 2 ln 2", [] {
    Outcome o;
    const FockState e = make_state(spec(Family::ecs, 1.0, 30));
    for (MiKind k : {MiKind::renyi, MiKind::sandwiched})
      o.record(std::abs(mutual_information(k, e, 2.0).value - 2.0 * std::log(2.0)), 1e-6, to_string(k));
    o.record(std::abs(xstate_mi(MiKind::vn, ecs_to_xstate(1.0, 1.0)) - 2.0 * std::log(2.0)), 1e-12, "x state");
    return o;
  });
  r.run("relative entropy of a state with itself is 0", [] {
    Outcome o;
    const FockState e = ecs_loss_analytic(0.8, 0.6, 14);
    for (double a : {0.5, 2.0}) o.record(std::abs(sandwiched_relative_entropy(e, e, a)), 1e-10, "alpha");
    return o;
  });
  r.run("Gaussian input has zero J", [] {
    Outcome o;
    StateSpec t = spec(Family::tmsv);
    t.r = 0.3;
    const NgValues v = ng_correlations(make_state(t));
    for (double x : {v.tr, v.fid, v.lb1, v.lb2}) o.record(std::abs(x), 2e-5, "tmsv");
    return o;
  });
  r.run("averaged states have unit trace", [] {
    Outcome o;
    const AveragedStates a = averaged_states(make_state(spec(Family::ecs, 1.0)));
    o.record(std::abs(a.rho_tilde.rho().trace().real() - 1.0), 1e-9, "rho~");
    o.record(std::abs(a.sigma_tilde.rho().trace().real() - 1.0), 1e-9, "sigma~");
    return o;
  });
  r.run("loss Kraus sets are complete", [] {
    Outcome o;
    for (double e : {0.0, 0.3, 1.0}) o.record(loss_kraus(e, 20)->completeness_defect(), 1e-12, "eta");
    return o;
  });
  r.run("quadrature eigenvector parity", [] {
    Outcome o;
    const Eigen::VectorXd z = quadrature_eigenvector(0.0, 30);
    for (int n = 1; n < 30; n += 2) o.record(std::abs(z(n)), 0.0, "odd component");
    return o;
  });
  r.run("vacuum survives distillation", [] {
    Outcome o;
    const DistillResult d = distill(make_state(spec(Family::vacuum, 0.0, 6)), DistillConfig{});
    o.record(std::abs(d.out.rho()(0, 0).real() - 1.0), 1e-12, "vacuum");
    return o;
  });
}

void full_checks(Runner& r) {
  r.run("Bell anchor (ECS, alpha 0.5 1 2)", [] { return oracles::bell_anchor(); });
  r.run("loss channel against two-branch form", [] { return oracles::loss_oracle(); });
  r.run("X-state closed forms against 4x4 brute force", [] { return oracles::xstate_bruteforce(); });
  r.run("X-state closed forms against Fock numerics", [] { return oracles::xstate_fock(); });
  r.run("Gaussian closed forms against synthesized references", [] {
    Outcome o;
    for (const auto& c : oracles::gaussian_mi_cases()) {
      if (c.kind == "sandwiched" && c.alpha >= 2.0) {
        // sigma^s with s < 0 weights the top levels, so the truncated value
        // approaches the closed form slowly from below (or diverges with it).
        o.record(c.fock - c.closed, 1e-6, c.label + " (one-sided)");
        o.record(c.fock_coarse - c.fock, 1e-9, c.label + " (cutoff growth)");
      } else {
        o.record(std::abs(c.closed - c.fock), 1e-5, c.label);
      }
    }
    return o;
  });
  r.run("symplectic closed form against i Omega Gamma", [] { return oracles::symplectic_oracle(); });
  r.run("analytic covariance matrices", [] { return oracles::cm_oracle(); });
  r.run("P1 product and Gaussian inputs", [] { return oracles::property_p1(); });
  r.run("P2 local displacements", [] { return oracles::property_p2(); });
  r.run("P3 nonnegativity", [] { return oracles::property_p3(); });
  r.run("P4 trace-distance J under loss", [] { return oracles::property_p4_tr(); });
  r.run("fidelity chain", [] { return oracles::fidelity_chain(); });
}

}  // namespace

SelftestReport selftest(SelftestLevel level, std::ostream& out) {
  Runner r(out);
  quick_checks(r);
  if (level == SelftestLevel::full) full_checks(r);
  return r.report();
}

}  // namespace ngcorr::cli
