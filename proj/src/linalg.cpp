#include "ngcorr/linalg.hpp"

#include "ngcorr/errors.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ngcorr::linalg {

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m) {
  return (m + m.adjoint()) * 0.5;
}

bool is_effectively_real(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return m.imag().cwiseAbs().maxCoeff() <= 1e-15 * scale;
}

namespace {

// Connected components of the nonzero pattern. States built from parity
// preserving operations have exact zeros between the even and odd total
// photon number sectors, so blocks halve the solver cost or better.
std::vector<std::vector<Eigen::Index>> components(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i)
      if (h(i, j) != 0.0) {
        const Eigen::Index a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

Eigen::MatrixXcd gather(const Eigen::MatrixXcd& h, const std::vector<Eigen::Index>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd b(k, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index r = 0; r < k; ++r) b(r, c) = h(idx[r], idx[c]);
  return b;
}

EigenSystem eigh_dense(const Eigen::MatrixXcd& h, bool vectors) {
  EigenSystem out;
  const int opts = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (is_effectively_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), opts);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("real symmetric eigensolver failed");
    out.values = solver.eigenvalues();
    if (vectors) out.vectors = solver.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, opts);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver failed");
    out.values = solver.eigenvalues();
    if (vectors) out.vectors = solver.eigenvectors();
  }
  return out;
}

EigenSystem eigh_blocked(const Eigen::MatrixXcd& m, bool vectors) {
  const Eigen::MatrixXcd h = hermitize(m);
  const auto comps = components(h);
  if (comps.size() <= 1) return eigh_dense(h, vectors);
  const Eigen::Index n = h.rows();
  Eigen::VectorXd vals(n);
  Eigen::MatrixXcd vecs;
  if (vectors) vecs = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index col = 0;
  for (const auto& idx : comps) {
    const EigenSystem b = eigh_dense(gather(h, idx), vectors);
    for (Eigen::Index k = 0; k < b.values.size(); ++k, ++col) {
      vals(col) = b.values(k);
      if (vectors)
        for (std::size_t r = 0; r < idx.size(); ++r) vecs(idx[r], col) = b.vectors(static_cast<Eigen::Index>(r), k);
    }
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&vals](Eigen::Index a, Eigen::Index b) { return vals(a) < vals(b); });
  EigenSystem out;
  out.values.resize(n);
  if (vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = vals(order[k]);
    if (vectors) out.vectors.col(k) = vecs.col(order[k]);
  }
  return out;
}

}  // namespace

EigenSystem eigh(const Eigen::MatrixXcd& m) { return eigh_blocked(m, true); }

Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& m) { return eigh_blocked(m, false).values; }

cplx trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

double trace_norm_hermitian(const Eigen::MatrixXcd& m) {
  return eigvalsh(m).cwiseAbs().sum();
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace ngcorr::linalg
