#include "doctest.h"

#include "ngcorr/errors.hpp"
#include "ngcorr/states.hpp"
#include "support.hpp"

#include <cmath>

using namespace ngcorr;
using test::cplx;

namespace {

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

TEST_SUITE("state-factory") {

TEST_CASE("ecs normalizations and cat basis") {
  CHECK(std::abs(cat_norm_plus(1.0) - (2.0 + 2.0 * std::exp(-2.0))) < 1e-15);
  CHECK(std::abs(cat_norm_plus(1.0) - 2.27067) < 1e-5);
  CHECK(std::abs(cat_norm_minus(1.0) - 1.72933) < 1e-5);

  const auto [plus, minus] = cat_basis(1.0, 20);
  CHECK(std::abs(plus.dot(minus)) < 1e-12);
  CHECK(std::abs(plus.norm() - 1.0) < 1e-14);

  // Normalized directly from (|g> +/- |-g>)/sqrt(N) at a generous cutoff.
  const Eigen::VectorXcd cg = coherent_ket(1.0, 40), cm = coherent_ket(-1.0, 40);
  const Eigen::VectorXcd p_ref = (cg + cm) / std::sqrt(cat_norm_plus(1.0));
  const auto big = cat_basis(1.0, 40);
  CHECK((big.first - p_ref).cwiseAbs().maxCoeff() < 1e-12);

  // Photon subtraction maps the cats into each other.
  const auto ops = ladder_ops(40);
  const Eigen::VectorXcd ap = ops.annihilation.mat() * big.first;
  const double k = std::sqrt(cat_norm_minus(1.0) / cat_norm_plus(1.0)) * 1.0;
  CHECK((ap - k * big.second).norm() < 1e-10);

  // Small-amplitude odd cat approaches one photon.
  const auto small = cat_basis(0.01, 10);
  CHECK(std::norm(small.second(1)) > 1.0 - 1e-6);

  CHECK_THROWS_AS(cat_basis(0.0, 10), BadSpec);
  CHECK_THROWS_AS(cat_basis(2.5, 8), TruncationError);
}

TEST_CASE("ecs is a Bell state in the cat basis") {
  for (double g : {0.5, 1.0, 1.5}) {
    const int n = 30;
    const FockState s = make_state(test::ecs_spec(g, n));
    const auto [p, m] = cat_basis(g, n);
    const Eigen::VectorXcd bell = (kron(p, m) + kron(m, p)) / std::sqrt(2.0);
    const FockState ref = FockState::from_ket({n, n}, bell);
    CHECK(distance(DistanceKind::trace, s, ref) < 1e-10);
    CHECK(std::abs(s.purity() - 1.0) < 1e-10);

    const FockState marg = partial_trace(s, {0});
    const Eigen::MatrixXcd mixed = 0.5 * (p * p.adjoint() + m * m.adjoint());
    CHECK((marg.rho() - mixed).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("cv werner endpoints") {
  const FockState w1 = make_state(test::werner_spec(1.0, 0.1, 12));
  const FockState t = make_state(test::tmsv_spec(0.1, 12));
  CHECK(distance(DistanceKind::trace, w1, t) < 1e-14);
  const FockState w0 = make_state(test::werner_spec(0.0, 0.1, 12));
  CHECK(std::abs(w0.rho()(0, 0).real() - 1.0) < 1e-15);
  CHECK(std::abs(w0.purity() - 1.0) < 1e-14);
  CHECK_THROWS_AS(make_state(test::werner_spec(1.5, 0.1)), BadSpec);
  CHECK_THROWS_AS(make_state(test::werner_spec(0.5, -0.1)), BadSpec);
}

TEST_CASE("pnes") {
  const StateSpec spec = test::sweep_pnes_spec();
  CHECK(std::abs(spec.coeffs[2].real() - 0.039) < 1e-3);
  const FockState s = make_state(spec);
  CHECK(std::abs(s.purity() - 1.0) < 1e-12);
  CHECK(s.dims() == Dims{8, 8});
  CHECK(std::abs(s.rho()(2 * 8 + 2, 2 * 8 + 2).real() - std::norm(spec.coeffs[2])) < 1e-14);

  StateSpec gap;
  gap.family = Family::pnes;
  gap.coeffs = {std::sqrt(0.7), std::sqrt(0.3)};
  gap.levels = {0, 2};
  const FockState g = make_state(gap);
  CHECK(std::abs(g.rho()(2 * g.dims()[1] + 2, 0).real() - std::sqrt(0.21)) < 1e-14);

  StateSpec bad = gap;
  bad.coeffs = {0.5, 0.5};
  CHECK_THROWS_AS(make_state(bad), BadSpec);
  bad = gap;
  bad.levels = {0, 0};
  CHECK_THROWS_AS(make_state(bad), BadSpec);
}

TEST_CASE("photon correlated and thermal") {
  StateSpec s;
  s.family = Family::photon_correlated;
  s.nbar = 1.0;
  const FockState pc = make_state(s);
  const int n = pc.dims()[1];
  for (int k = 0; k < 10; ++k) CHECK(std::abs(pc.rho()(k * n + k, k * n + k).real() - test::thermal_p(1.0, k)) < 1e-10);
  CHECK(pc.tail_mass() < 1e-9);

  StateSpec t;
  t.family = Family::thermal;
  t.nbar = 0.5;
  const FockState th = make_state(t);
  CHECK(th.modes() == 1);
  CHECK(std::abs(th.rho()(1, 1).real() - test::thermal_p(0.5, 1)) < 1e-10);

  s.nbar = -1.0;
  CHECK_THROWS_AS(make_state(s), BadSpec);
}

TEST_CASE("pure families") {
  // TMSV Schmidt coefficients tanh^k r / cosh r.
  const double r = 0.4;
  const int n = 25;
  const FockState t = make_state(test::tmsv_spec(r, n));
  CHECK(std::abs(t.purity() - 1.0) < 1e-9);
  const Eigen::VectorXcd psi = linalg::eigh(t.rho()).vectors.col(n * n - 1);
  Eigen::MatrixXcd coeff(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) coeff(i, j) = psi(i * n + j);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(coeff).singularValues();
  for (int k = 0; k < 8; ++k) CHECK(std::abs(sv(k) - std::pow(std::tanh(r), k) / std::cosh(r)) < 1e-10);

  StateSpec c;
  c.family = Family::coherent;
  c.gamma = cplx(0.3, 0.8);
  CHECK(std::abs(make_state(c).purity() - 1.0) < 1e-10);
  c.family = Family::cat;
  c.parity = -1;
  CHECK(std::abs(make_state(c).purity() - 1.0) < 1e-10);
  c.parity = 0;
  CHECK_THROWS_AS(make_state(c), BadSpec);

  StateSpec v;
  v.family = Family::vacuum;
  v.modes = 3;
  CHECK(make_state(v).modes() == 3);
}

TEST_CASE("default cutoffs and truncation") {
  CHECK(default_cutoff(test::ecs_spec(1.0)) == Dims{20, 20});
  CHECK(default_cutoff(test::ecs_spec(2.0)) == Dims{30, 30});
  CHECK(default_cutoff(test::ecs_spec(3.0)) == Dims{40, 40});
  for (double g : {0.5, 1.2, 2.5}) {
    CHECK(make_state(test::ecs_spec(g)).tail_mass() < 1e-8);
  }
  CHECK_THROWS_AS(make_state(test::ecs_spec(2.0, 6)), TruncationError);
  CHECK(family_from_string("cv_werner") == Family::cv_werner);
  CHECK(to_string(Family::photon_correlated) == "photon_correlated");
  CHECK_THROWS_AS(family_from_string("squeezed"), BadSpec);
}

}  // TEST_SUITE
