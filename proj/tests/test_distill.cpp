#include "doctest.h"

#include "ngcorr/distill.hpp"
#include "ngcorr/entanglement.hpp"
#include "ngcorr/errors.hpp"
#include "ngcorr/states.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>

using namespace ngcorr;
using test::cplx;

namespace {

// Gauss-Hermite nodes and weights for exp(-x^2) by Golub-Welsch.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Eigen::VectorXd w = std::sqrt(M_PI) * es.eigenvectors().row(0).transpose().array().square();
  return {es.eigenvalues(), w};
}

Eigen::MatrixXd q_matrix(int n) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) q(k, k - 1) = q(k - 1, k) = std::sqrt(k / 2.0);
  return q;
}

}  // namespace

TEST_SUITE("distill") {

TEST_CASE("quadrature eigenvectors") {
  const Eigen::VectorXd z = quadrature_eigenvector(0.0, 30);
  for (int n = 1; n < 30; n += 2) CHECK(z(n) == 0.0);

  // Raw Hermite polynomials at x = 0.8.
  const double x = 0.8;
  const double h[3] = {1.0, 2.0 * x, 2.0 * x * (2.0 * x) - 2.0};
  const Eigen::VectorXd v = quadrature_eigenvector(x, 5);
  double fact = 1.0;
  for (int n = 0; n < 3; ++n) {
    if (n > 0) fact *= n;
    const double expect = std::pow(M_PI, -0.25) / std::sqrt(std::pow(2.0, n) * fact) * h[n] * std::exp(-0.5 * x * x);
    CHECK(v(n) == doctest::Approx(expect).epsilon(1e-14));
  }

  // Orthonormality of the Hermite functions; GH with 24 nodes is exact here.
  const auto [nodes, weights] = gauss_hermite(24);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(12, 12);
  for (int i = 0; i < 24; ++i) {
    const Eigen::VectorXd p = quadrature_eigenvector(nodes(i), 12);
    gram += weights(i) * std::exp(nodes(i) * nodes(i)) * p * p.transpose();
  }
  CHECK(std::abs(gram(0, 0) - 1.0) < 1e-8);
  CHECK((gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-8);

  // q |x> = x |x> on every row the truncation leaves intact.
  const Eigen::MatrixXd q = q_matrix(40);
  for (double xx : {-2.0, -0.7, 0.0, 1.3, 2.0}) {
    const Eigen::VectorXd e = quadrature_eigenvector(xx, 40);
    const Eigen::VectorXd r = (q * e - xx * e).head(39);
    CHECK(r.norm() / e.norm() < 1e-3);
  }
  CHECK_THROWS_AS(quadrature_eigenvector(0.1, 1), InvalidCutoff);
}

TEST_CASE("homodyne kraus on coherent inputs") {
  // K |g> = <x|sqrt(1-eta) g> |sqrt(eta) g> for real g.
  const int n = 40;
  for (double eta : {0.3, 0.9})
    for (double g : {0.5, 1.2}) {
      const double x = 0.6;
      const Eigen::MatrixXcd k = homodyne_kraus(eta, x, n);
      const Eigen::VectorXcd in = coherent_ket(g, n);
      const double b = std::sqrt(1.0 - eta) * g;
      const double amp = std::pow(M_PI, -0.25) * std::exp(-0.5 * (x - std::sqrt(2.0) * b) * (x - std::sqrt(2.0) * b));
      const Eigen::VectorXcd expect = amp * coherent_ket(std::sqrt(eta) * g, n);
      CHECK((k * in - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("distillation limits") {
  std::mt19937_64 rng(12);
  const FockState s = test::random_state({5, 6}, rng);
  DistillConfig id;
  id.eta_bs = 1.0;
  id.x_c = 0.4;
  id.x_d = -1.1;
  const DistillResult r = distill(s, id);
  CHECK(fidelity(FidelityKind::uhlmann, r.out, s) == doctest::Approx(1.0).epsilon(1e-9));
  const double p0c = std::pow(M_PI, -0.5) * std::exp(-0.16), p0d = std::pow(M_PI, -0.5) * std::exp(-1.21);
  CHECK(r.weight == doctest::Approx(p0c * p0d).epsilon(1e-12));

  StateSpec vac;
  vac.family = Family::vacuum;
  vac.cutoff = {6, 6};
  const FockState v = make_state(vac);
  for (double x : {-1.0, 0.3, 2.0}) {
    DistillConfig c;
    c.eta_bs = 0.6;
    c.x_c = x;
    c.x_d = 0.5 * x;
    const DistillResult o = distill(v, c);
    CHECK(o.out.rho()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o.out.rho().trace().real() == doctest::Approx(1.0).epsilon(1e-9));
  }

  // |11> with a nearly reflective splitter and x = 0 keeps almost nothing.
  Eigen::VectorXcd one = Eigen::VectorXcd::Zero(9);
  one(4) = 1.0;
  DistillConfig dark;
  dark.eta_bs = 1e-8;
  dark.x_c = dark.x_d = 0.0;
  CHECK_THROWS_AS(distill(FockState::from_ket({3, 3}, one), dark), ZeroWeight);
  DistillConfig bad;
  bad.eta_bs = 0.0;
  CHECK_THROWS_AS(distill(v, bad), BadEta);
  bad.eta_bs = 0.5;
  bad.x_c = std::nan("");
  CHECK_THROWS_AS(distill(v, bad), DomainError);
}

TEST_CASE("werner distillation") {
  const FockState w = make_state(test::werner_spec(0.5, 0.05));
  DistillConfig c;
  c.eta_bs = 0.9;
  c.x_c = c.x_d = 0.8;
  const DistillResult r = distill(w, c);
  CHECK(r.out.rho().trace().real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(log_negativity_fock(r.out) > 0.0);

  // Postselecting far out in the ancilla quadratures raises the negativity.
  const FockState w2 = make_state(test::werner_spec(0.2, 0.05));
  DistillConfig far = c;
  far.x_c = far.x_d = 3.0;
  CHECK(log_negativity_fock(distill(w2, far).out) > log_negativity_fock(w2));

  // Ancilla truncated at 12 levels against the exact contraction.
  DistillConfig c12 = c;
  c12.cutoff = 12;
  CHECK(std::abs(log_negativity_fock(distill(w, c12).out) - log_negativity_fock(r.out)) < 1e-3);

  std::vector<double> wts;
  for (int i = 0; i <= 80; ++i) {
    DistillConfig g = c;
    g.x_c = -4.0 + 0.1 * i;
    wts.push_back(distill(w, g).weight);
  }
  const double top = *std::max_element(wts.begin(), wts.end());
  for (std::size_t i = 0; i < wts.size(); ++i) {
    CHECK(wts[i] > 0.0);
    if (i > 0) CHECK(std::abs(wts[i] - wts[i - 1]) < 0.1 * top);
  }
}

}  // TEST_SUITE
