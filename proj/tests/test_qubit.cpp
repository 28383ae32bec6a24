#include "doctest.h"

#include "ngcorr/channels.hpp"
#include "ngcorr/entanglement.hpp"
#include "ngcorr/errors.hpp"
#include "ngcorr/gaussian.hpp"
#include "ngcorr/qubit_oracle.hpp"
#include "ngcorr/states.hpp"
#include "support.hpp"

#include <cmath>

using namespace ngcorr;
using test::cplx;

namespace {

XStateParams bell() {
  XStateParams p;
  p.b = p.c = 0.5;
  p.u = 0.5;
  return p;
}

XStateParams random_x(std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double w[4], z = 0.0;
  for (double& x : w) z += (x = ex(rng));
  XStateParams p;
  p.a = w[0] / z;
  p.b = w[1] / z;
  p.c = w[2] / z;
  p.d = w[3] / z;
  p.u = std::polar(std::sqrt(p.b * p.c) * uni(rng), 2.0 * M_PI * uni(rng));
  p.v = std::polar(std::sqrt(p.a * p.d) * uni(rng), 2.0 * M_PI * uni(rng));
  return p;
}

// Brute-force two-qubit helpers on the dense 4x4 matrix.
Eigen::Matrix2cd trace_b(const Eigen::Matrix4cd& m) {
  Eigen::Matrix2cd r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return r;
}

Eigen::Matrix2cd trace_a(const Eigen::Matrix4cd& m) {
  Eigen::Matrix2cd r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = m(i, j) + m(i + 2, j + 2);
  return r;
}

template <class M>
M mpow(const M& m, double s) {
  Eigen::SelfAdjointEigenSolver<M> es(m);
  auto v = es.eigenvalues();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = v(i) > 1e-15 ? std::pow(v(i), s) : 0.0;
  return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

template <class M>
double entropy(const M& m, double alpha) {
  Eigen::SelfAdjointEigenSolver<M> es(m);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x <= 1e-15) continue;
    acc += alpha == 1.0 ? -x * std::log(x) : std::pow(x, alpha);
  }
  return alpha == 1.0 ? acc : std::log(acc) / (1.0 - alpha);
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double brute_mi(MiKind kind, const Eigen::Matrix4cd& m, double alpha) {
  const Eigen::Matrix2cd ra = trace_b(m), rb = trace_a(m);
  const Eigen::Matrix4cd prod = kron2(ra, rb);
  switch (kind) {
    case MiKind::renyi:
      return entropy(ra, alpha) + entropy(rb, alpha) - entropy(m, alpha);
    case MiKind::sandwiched: {
      const Eigen::Matrix4cd sp = mpow(prod, (1.0 - alpha) / (2.0 * alpha));
      const Eigen::Matrix4cd inner = sp * m * sp;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (inner + inner.adjoint()));
      double acc = 0.0;
      for (int i = 0; i < 4; ++i)
        if (es.eigenvalues()(i) > 0.0) acc += std::pow(es.eigenvalues()(i), alpha);
      return std::log(acc) / (alpha - 1.0);
    }
    default:
      return (m - prod).norm();
  }
}

// Product kets |s t> in the cat basis at amplitude g, as columns.
Eigen::MatrixXcd cat_frame(double g, int cutoff) {
  const auto [plus, minus] = cat_basis_kets(g, cutoff);
  const Eigen::VectorXcd k[2] = {plus, minus};
  Eigen::MatrixXcd f(cutoff * cutoff, 4);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int i = 0; i < cutoff; ++i) f.col(2 * s + t).segment(i * cutoff, cutoff) = k[s](i) * k[t];
  return f;
}

FockState lossy_ecs(double g, double eta) { return apply_loss(make_state(test::ecs_spec(g)), eta, {0, 1}); }

}  // namespace

TEST_SUITE("qubit-oracle") {

TEST_CASE("bell and product parameters") {
  const XStateParams b = bell();
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(xstate_mi(MiKind::renyi, b, a) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(xstate_mi(MiKind::sandwiched, b, a) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  }
  CHECK(xstate_mi(MiKind::hs, b) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
  XStateParams prod;
  const double pa = 0.3, pb = 0.6;
  prod.a = pa * pb;
  prod.b = pa * (1 - pb);
  prod.c = (1 - pa) * pb;
  prod.d = (1 - pa) * (1 - pb);
  for (MiKind k : {MiKind::vn, MiKind::renyi, MiKind::sandwiched, MiKind::hs})
    for (double a : {0.5, 2.0}) CHECK(std::abs(xstate_mi(k, prod, a)) < 1e-12);
  CHECK_THROWS_AS(xstate_mi(MiKind::tr, b), DomainError);
  XStateParams bad = b;
  bad.u = 0.6;
  CHECK_THROWS_AS(xstate_mi(MiKind::hs, bad), DomainError);
  bad = b;
  bad.a = 0.1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("closed forms match the dense matrix") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    const XStateParams p = random_x(rng);
    const Eigen::Matrix4cd m = p.matrix();
    const Eigen::Vector4d l = p.eigenvalues();
    CHECK(l.minCoeff() >= -1e-12);
    for (double a : {0.5, 1.7, 3.0}) {
      CHECK(xstate_mi(MiKind::renyi, p, a) == doctest::Approx(brute_mi(MiKind::renyi, m, a)).epsilon(1e-10));
      CHECK(xstate_mi(MiKind::sandwiched, p, a) == doctest::Approx(brute_mi(MiKind::sandwiched, m, a)).epsilon(1e-10));
    }
    CHECK(xstate_mi(MiKind::hs, p) == doctest::Approx(brute_mi(MiKind::hs, m, 1.0)).epsilon(1e-10));
    const double vn = xstate_mi(MiKind::vn, p);
    CHECK(std::abs(xstate_mi(MiKind::renyi, p, 1.0 + 1e-7) - vn) < 1e-6);
    CHECK(std::abs(xstate_mi(MiKind::sandwiched, p, 1.0 - 1e-7) - vn) < 1e-6);
  }
}

TEST_CASE("zero marginal guards") {
  // Support only on |++>: every primed entry but a' vanishes.
  XStateParams p;
  p.a = 1.0;
  for (double a : {0.5, 2.0}) CHECK(xstate_mi(MiKind::sandwiched, p, a) == doctest::Approx(0.0));
  XStateParams q;
  q.a = 0.5;
  q.d = 0.5;
  q.v = 0.5;
  for (double a : {0.5, 2.0, 3.0}) CHECK(xstate_mi(MiKind::sandwiched, q, a) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("lossy ecs in x form") {
  const XStateParams one = ecs_to_xstate(1.0, 1.0);
  CHECK(one.a == doctest::Approx(0.0));
  CHECK(one.d == doctest::Approx(0.0));
  CHECK(one.b == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(one.c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(one.u - cplx(0.5)) < 1e-15);

  // Branch weights at gamma = 1, eta = 0.5 from the cat normalizations.
  auto np = [](double t) { return 2.0 + 2.0 * std::exp(-2.0 * t * t); };
  auto nm = [](double t) { return 2.0 - 2.0 * std::exp(-2.0 * t * t); };
  const double p = np(1.0) * nm(1.0) / (4.0 * nm(std::sqrt(2.0)));
  const double q = nm(1.0) * np(1.0) / (4.0 * nm(std::sqrt(2.0)));
  const XStateParams h = ecs_to_xstate(1.0, 0.5);
  CHECK(h.b + h.c == doctest::Approx(p).epsilon(1e-14));
  CHECK(h.a + h.d == doctest::Approx(q).epsilon(1e-14));
  CHECK(h.a + h.b + h.c + h.d == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ecs_to_xstate(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(ecs_to_xstate(1.0, 1.2), DomainError);

  for (double g : {0.5, 1.0, 1.5})
    for (double eta : {0.3, 0.7, 1.0}) {
      CAPTURE(g);
      CAPTURE(eta);
      const FockState s = lossy_ecs(g, eta);
      const XStateParams x = ecs_to_xstate(g, eta);
      const Eigen::MatrixXcd f = cat_frame(std::sqrt(eta) * g, s.dims()[0]);
      const Eigen::MatrixXcd proj = f.adjoint() * s.rho() * f;
      CHECK((proj - Eigen::MatrixXcd(x.matrix())).cwiseAbs().maxCoeff() < 1e-9);
      for (double a : {0.5, 2.0}) {
        CHECK(xstate_mi(MiKind::renyi, x, a) == doctest::Approx(mutual_information(MiKind::renyi, s, a).value).epsilon(1e-7));
        CHECK(xstate_mi(MiKind::sandwiched, x, a) ==
              doctest::Approx(mutual_information(MiKind::sandwiched, s, a).value).epsilon(1e-7));
      }
      CHECK(xstate_mi(MiKind::vn, x) == doctest::Approx(mutual_information(MiKind::vn, s).value).epsilon(1e-7));
      CHECK(xstate_mi(MiKind::hs, x) == doctest::Approx(mutual_information(MiKind::hs, s).value).epsilon(1e-7));
    }
}

TEST_CASE("pure schmidt states") {
  const std::vector<cplx> bell_c = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    CHECK(pure_schmidt_mi(MiKind::renyi, bell_c, a) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(pure_schmidt_mi(MiKind::sandwiched, bell_c, a) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  }
  CHECK(pure_schmidt_mi(MiKind::hs, bell_c) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
  for (MiKind k : {MiKind::vn, MiKind::renyi, MiKind::sandwiched, MiKind::hs})
    CHECK(std::abs(pure_schmidt_mi(k, {0.0, 1.0, 0.0}, 2.0)) < 1e-14);
  CHECK_THROWS_AS(pure_schmidt_mi(MiKind::hs, {0.5, 0.5}), DomainError);

  const StateSpec spec = test::sweep_pnes_spec();
  const FockState s = make_state(spec);
  for (double a : {0.5, 1.0, 1.5, 2.0}) {
    CHECK(pure_schmidt_mi(MiKind::renyi, spec.coeffs, a) ==
          doctest::Approx(mutual_information(MiKind::renyi, s, a).value).epsilon(1e-8));
    CHECK(pure_schmidt_mi(MiKind::sandwiched, spec.coeffs, a) ==
          doctest::Approx(mutual_information(MiKind::sandwiched, s, a).value).epsilon(1e-8));
  }
  CHECK(pure_schmidt_mi(MiKind::hs, spec.coeffs) == doctest::Approx(mutual_information(MiKind::hs, s).value).epsilon(1e-8));
}

}  // TEST_SUITE

TEST_SUITE("entanglement") {

TEST_CASE("entanglement of formation") {
  CHECK(eof_two_qubit(bell()) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  XStateParams diag;
  diag.a = 0.1;
  diag.b = 0.2;
  diag.c = 0.3;
  diag.d = 0.4;
  CHECK(eof_two_qubit(diag) == 0.0);

  std::mt19937_64 rng(4);
  // Pure states: entropy of entanglement.
  for (int i = 0; i < 50; ++i) {
    Eigen::Vector4cd psi = test::ginibre(4, 1, rng).col(0);
    psi.normalize();
    const Eigen::Matrix4cd m = psi * psi.adjoint();
    CHECK(eof_two_qubit(m) == doctest::Approx(entropy(trace_b(m), 1.0)).epsilon(1e-9));
  }
  // X states: C = 2 max(0, |u| - sqrt(ad), |v| - sqrt(bc)).
  for (int i = 0; i < 200; ++i) {
    const XStateParams p = random_x(rng);
    const double c = 2.0 * std::max({0.0, std::abs(p.u) - std::sqrt(p.a * p.d), std::abs(p.v) - std::sqrt(p.b * p.c)});
    CHECK(concurrence(p.matrix()) == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("eof follows two-qubit ppt on the lossy ecs") {
  auto pt_negative = [](const Eigen::Matrix4cd& m) {
    Eigen::Matrix4cd t = m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t.block<2, 2>(2 * i, 2 * j) = m.block<2, 2>(2 * i, 2 * j).transpose();
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(t).eigenvalues().minCoeff() < -1e-14;
  };
  int entangled = 0;
  for (double g : {0.3, 0.7, 1.0, 1.5, 2.0})
    for (double eta : {0.0, 0.05, 0.2, 0.5, 0.8, 1.0}) {
      const XStateParams x = ecs_to_xstate(g, eta);
      const double e = eof_two_qubit(x);
      CHECK(e >= 0.0);
      CHECK((e > 0.0) == pt_negative(x.matrix()));
      entangled += e > 0.0;
    }
  CHECK(entangled > 0);
  const XStateParams x = ecs_to_xstate(1.0, 0.8);
  CHECK(eof_two_qubit(x) > 0.0);
  CHECK(log_negativity_fock(lossy_ecs(1.0, 0.8)) > 0.0);
}

TEST_CASE("log negativity") {
  std::mt19937_64 rng(9);
  const FockState prod = tensor(test::thermal(0.5, 30), test::thermal(0.2, 20));
  CHECK(std::abs(log_negativity_fock(prod)) < 1e-9);
  CHECK(log_negativity_fock(make_state(test::tmsv_spec(0.3, 20))) == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(log_negativity_fock(make_state(test::werner_spec(1.0, 0.1, 12))) == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(std::abs(log_negativity_fock(make_state(test::werner_spec(0.0, 0.1)))) < 1e-9);

  const FockState t = make_state(test::tmsv_spec(0.5, 30), 1e-5);
  CHECK(std::abs(log_negativity_fock(t, 1e-5) - gaussian_log_negativity(moments_from_fock(t, 1e-5))) < 2e-3);
  const FockState t35 = make_state(test::tmsv_spec(0.5, 35), 1e-5);
  CHECK(std::abs(log_negativity_fock(t, 1e-5) - log_negativity_fock(t35, 1e-5)) < 1e-4);

  const FockState e = make_state(test::sweep_pnes_spec(8));
  const FockState big = embed(e, {30, 30});
  const OperatorMatrix u = tensor(OperatorMatrix({30}, displacement(cplx(0.3, -0.2), 30)),
                                  OperatorMatrix({30}, displacement(cplx(0.1, 0.25), 30)));
  const FockState d = FockState::normalized(big.dims(), u.mat() * big.rho() * u.mat().adjoint());
  CHECK(log_negativity_fock(d) == doctest::Approx(log_negativity_fock(e)).epsilon(1e-7));
  CHECK_THROWS_AS(log_negativity_fock(test::thermal(0.5, 10)), DimMismatch);
}

}  // TEST_SUITE
