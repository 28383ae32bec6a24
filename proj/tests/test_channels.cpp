#include "doctest.h"

#include "ngcorr/channels.hpp"
#include "ngcorr/errors.hpp"
#include "ngcorr/states.hpp"
#include "support.hpp"

#include <cmath>

using namespace ngcorr;
using test::cplx;

namespace {

// Loss as a beam splitter with a vacuum environment, traced out.
FockState loss_by_dilation(const FockState& s, double eta) {
  const int n = s.dims()[0];
  const Eigen::MatrixXcd u = beam_splitter(eta, n).mat();
  Eigen::MatrixXcd env = Eigen::MatrixXcd::Zero(n, n);
  env(0, 0) = 1.0;
  const FockState joint = tensor(s, FockState({n}, env));
  const FockState out(joint.dims(), u * joint.rho() * u.adjoint());
  return partial_trace(out, {0});
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("kraus completeness and memo") {
  for (double eta : {0.0, 0.3, 1.0}) {
    const auto k = loss_kraus(eta, 15);
    CHECK(k->completeness_defect() < 1e-12);
  }
  CHECK(loss_kraus(0.3, 15).get() == loss_kraus(0.3, 15).get());
  CHECK_THROWS_AS(loss_kraus(1.2, 5), BadEta);
  CHECK_THROWS_AS(loss_kraus(-0.1, 5), BadEta);
}

TEST_CASE("loss on simple inputs") {
  std::mt19937_64 rng(1);
  const FockState r = test::random_state({6, 6}, rng);
  CHECK(distance(DistanceKind::trace, apply_loss(r, 1.0, {0, 1}), r) < 1e-10);
  const FockState z = apply_loss(r, 0.0, {0, 1});
  CHECK(std::abs(z.rho()(0, 0).real() - 1.0) < 1e-12);
  CHECK(std::abs(apply_loss(r, 0.4, {1}).rho().trace().real() - 1.0) < 1e-12);

  // A coherent state stays coherent with amplitude sqrt(eta) gamma.
  const int n = 30;
  const cplx g(1.1, -0.4);
  const FockState c = FockState::from_ket({n}, coherent_ket(g, n));
  const FockState out = apply_loss(c, 0.6, {0});
  const FockState ref = FockState::from_ket({n}, coherent_ket(std::sqrt(0.6) * g, n));
  CHECK(std::abs(fidelity(FidelityKind::uhlmann, out, ref) - 1.0) < 1e-8);
  CHECK_THROWS_AS(apply_loss(c, 0.5, {1}), BadModeIndex);
  CHECK_THROWS_AS(apply_loss(c, 1.5, {0}), BadEta);
}

TEST_CASE("semigroup and dilation") {
  std::mt19937_64 rng(2);
  const FockState r = test::random_state({8, 8}, rng, 3);
  const FockState a = apply_loss(apply_loss(r, 0.7, {0, 1}), 0.5, {0, 1});
  const FockState b = apply_loss(r, 0.35, {0, 1});
  CHECK(distance(DistanceKind::trace, a, b) < 1e-8);

  const FockState single = test::random_state({12}, rng);
  for (double eta : {0.2, 0.65}) {
    const FockState k = apply_loss(single, eta, {0});
    const FockState d = loss_by_dilation(single, eta);
    CHECK(distance(DistanceKind::trace, k, d) < 1e-9);
  }
}

TEST_CASE("loss is contractive") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const FockState a = test::random_state({4, 4}, rng, 1 + trial % 5);
    const FockState b = test::random_state({4, 4}, rng, 1 + trial % 7);
    const double eta = 0.05 + 0.9 * (trial % 10) / 9.0;
    const double before = distance(DistanceKind::trace, a, b);
    const double after = distance(DistanceKind::trace, apply_loss(a, eta, {0, 1}), apply_loss(b, eta, {0, 1}));
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("beam splitter") {
  const int n = 12;
  CHECK(beam_splitter(0.37, n).is_unitary(1e-9));
  CHECK((beam_splitter(1.0, n).mat() - Eigen::MatrixXcd::Identity(n * n, n * n)).cwiseAbs().maxCoeff() < 1e-10);

  const int m = 25;
  const double g = 0.8, eta = 0.5;
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(m);
  vac(0) = 1.0;
  Eigen::VectorXcd in(m * m);
  const Eigen::VectorXcd c = coherent_ket(g, m);
  for (int i = 0; i < m; ++i) in.segment(i * m, m) = c(i) * vac;
  const Eigen::VectorXcd out = beam_splitter(eta, m).mat() * in;
  const Eigen::VectorXcd ca = coherent_ket(std::sqrt(eta) * g, m), cb = coherent_ket(std::sqrt(1 - eta) * g, m);
  Eigen::VectorXcd expect(m * m);
  for (int i = 0; i < m; ++i) expect.segment(i * m, m) = ca(i) * cb;
  CHECK(std::abs(std::norm(expect.dot(out)) - 1.0) < 1e-8);

  // Two-photon interference at a balanced splitter.
  Eigen::VectorXcd one_one = Eigen::VectorXcd::Zero(n * n);
  one_one(1 * n + 1) = 1.0;
  const Eigen::VectorXcd hom = beam_splitter(0.5, n).mat() * one_one;
  CHECK(std::abs(hom(1 * n + 1)) < 1e-10);
  CHECK(std::abs(std::norm(hom(2 * n)) - 0.5) < 1e-10);
}

TEST_CASE("analytic lossy ecs") {
  const EcsLossBranches one = ecs_loss_branches(1.0, 1.0);
  CHECK(std::abs(one.q) < 1e-15);
  CHECK(std::abs(one.p - 1.0) < 1e-15);
  const EcsLossBranches half = ecs_loss_branches(1.0, 0.5);
  CHECK(std::abs(half.p + half.q - 1.0) < 1e-10);
  CHECK(std::abs(half.x * half.x + half.y * half.y - 1.0) < 1e-12);

  const FockState pure = make_state(test::ecs_spec(1.0, 20));
  CHECK(distance(DistanceKind::trace, ecs_loss_analytic(1.0, 1.0, 20), pure) < 1e-10);
  const FockState vac = ecs_loss_analytic(1.0, 0.0, 20);
  CHECK(std::abs(vac.rho()(0, 0).real() - 1.0) < 1e-12);

  for (double g : {0.5, 1.0}) {
    const FockState s = make_state(test::ecs_spec(g, 20));
    for (double eta : {0.3, 0.8}) {
      const FockState k = apply_loss(s, eta, {0, 1});
      const FockState a = ecs_loss_analytic(g, eta, 20);
      CHECK(distance(DistanceKind::trace, k, a) < 1e-8);
      const Eigen::VectorXd w = linalg::eigvalsh(a.rho());
      CHECK(w(w.size() - 3) < 1e-10);  // rank <= 2
    }
  }
  CHECK_THROWS_AS(ecs_loss_branches(1.0, 1.5), BadEta);
}

}  // TEST_SUITE
