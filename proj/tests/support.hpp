#pragma once

// Helpers shared by the unit tests.

#include "ngcorr/fock.hpp"
#include "ngcorr/states.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

namespace test {

using cplx = std::complex<double>;

inline Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = cplx(nd(rng), nd(rng));
  return g;
}

/// Random mixed state of the given rank (rank <= 0 means full rank).
inline ngcorr::FockState random_state(const ngcorr::Dims& dims, std::mt19937_64& rng, int rank = 0) {
  const auto d = static_cast<Eigen::Index>(ngcorr::total_dim(dims));
  const Eigen::MatrixXcd g = ginibre(d, rank > 0 ? rank : d, rng);
  return ngcorr::FockState::normalized(dims, g * g.adjoint());
}

/// Haar-random unitary via QR with the phase correction of Mezzadri.
inline Eigen::MatrixXcd haar_unitary(Eigen::Index d, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline ngcorr::FockState rotate(const ngcorr::FockState& s, const Eigen::MatrixXcd& u) {
  return ngcorr::FockState::normalized(s.dims(), u * s.rho() * u.adjoint());
}

/// Thermal occupation n^k / (n+1)^(k+1), summed by the scalar series.
inline double thermal_p(double nbar, int k) { return std::pow(nbar, k) / std::pow(nbar + 1.0, k + 1); }

inline ngcorr::FockState thermal(double nbar, int cutoff) {
  ngcorr::StateSpec s;
  s.family = ngcorr::Family::thermal;
  s.nbar = nbar;
  s.cutoff = {cutoff};
  return ngcorr::make_state(s, 1.0);
}

inline ngcorr::FockState ket_state(const ngcorr::Dims& dims, const Eigen::VectorXcd& v) {
  return ngcorr::FockState::from_ket(dims, v);
}

inline ngcorr::StateSpec ecs_spec(double gamma, int cutoff = 0) {
  ngcorr::StateSpec s;
  s.family = ngcorr::Family::ecs;
  s.gamma = gamma;
  if (cutoff > 0) s.cutoff = {cutoff, cutoff};
  return s;
}

inline ngcorr::StateSpec tmsv_spec(double r, int cutoff = 0) {
  ngcorr::StateSpec s;
  s.family = ngcorr::Family::tmsv;
  s.r = r;
  if (cutoff > 0) s.cutoff = {cutoff, cutoff};
  return s;
}

inline ngcorr::StateSpec werner_spec(double f, double r, int cutoff = 0) {
  ngcorr::StateSpec s;
  s.family = ngcorr::Family::cv_werner;
  s.f = f;
  s.r = r;
  if (cutoff > 0) s.cutoff = {cutoff, cutoff};
  return s;
}

/// Photon-number entangled state with c0 = 0.986, c1 = 0.162 used by the fig3 sweep.
inline ngcorr::StateSpec sweep_pnes_spec(int cutoff = 0) {
  ngcorr::StateSpec s;
  s.family = ngcorr::Family::pnes;
  const double c0 = 0.986, c1 = 0.162;
  s.coeffs = {c0, c1, std::sqrt(1.0 - c0 * c0 - c1 * c1)};
  if (cutoff > 0) s.cutoff = {cutoff, cutoff};
  return s;
}

}  // namespace test
