#include "ngcorr/gaussian.hpp"

#include "ngcorr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ngcorr {

using linalg::cplx;

namespace fault {
namespace {
std::atomic<bool> g_sign_flip{false};
}
void set_symplectic_sign_flip(bool on) { g_sign_flip.store(on); }
bool symplectic_sign_flip() { return g_sign_flip.load(); }
}  // namespace fault

GaussianSpec GaussianSpec::centered(Eigen::MatrixXd cm) {
  GaussianSpec g;
  g.means = Eigen::VectorXd::Zero(cm.rows());
  g.cm = std::move(cm);
  return g;
}

Eigen::Matrix4d StandardFormCM::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = c;
  m(1, 3) = m(3, 1) = d;
  return m;
}

Eigen::MatrixXd omega(int modes) {
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    o(2 * j, 2 * j + 1) = 1.0;
    o(2 * j + 1, 2 * j) = -1.0;
  }
  return o;
}

namespace {

void check_shape(const GaussianSpec& spec) {
  const auto n2 = spec.means.size();
  if (n2 == 0 || n2 % 2 != 0) throw UnphysicalCM("mean vector must have even, nonzero length");
  if (spec.cm.rows() != n2 || spec.cm.cols() != n2) throw UnphysicalCM("covariance shape does not match means");
  if (!spec.cm.allFinite() || !spec.means.allFinite()) throw UnphysicalCM("non-finite moments");
}

void require_two_mode(const GaussianSpec& spec) {
  check_shape(spec);
  if (spec.modes() != 2) throw UnphysicalCM("a two-mode covariance matrix is required");
}

// Symmetric square root and inverse square root of a positive definite matrix.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> sqrt_and_inv_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed on covariance matrix");
  const Eigen::VectorXd w = es.eigenvalues();
  if (w.minCoeff() <= 0.0) throw UnphysicalCM("covariance matrix is not positive definite");
  const Eigen::MatrixXd& v = es.eigenvectors();
  return {v * w.cwiseSqrt().asDiagonal() * v.transpose(), v * w.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

// (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), with 0 ln 0 = 0.
double entropy_term(double x) {
  const double up = x + 0.5;
  const double lo = x - 0.5;
  double v = up * std::log(up);
  if (lo > 0.0) v -= lo * std::log(lo);
  return v;
}

// ln |g(x, alpha)|, stable for x near 1/2 and for negative alpha.
double log_abs_g(double x, double alpha) {
  if (x < 0.5 - 1e-9) throw DomainError("symplectic eigenvalue below 1/2: " + std::to_string(x));
  x = std::max(x, 0.5);
  const double up = x + 0.5;
  const double r = (x - 0.5) / up;
  double tail;  // ln |1 - r^alpha|
  if (r == 0.0) {
    if (alpha <= 0.0) throw DomainError("g(1/2, alpha) diverges for alpha <= 0");
    tail = 0.0;
  } else {
    const double t = alpha * std::log(r);
    tail = alpha > 0.0 ? std::log(-std::expm1(t)) : std::log(std::expm1(t));
  }
  return -(alpha * std::log(up) + tail);
}

// zeta(x, s) = (1/2) ((x+1/2)^s + (x-1/2)^s) / ((x+1/2)^s - (x-1/2)^s).
double zeta(double x, double s) {
  const double r = (x - 0.5) / (x + 0.5);
  const double t = s * std::log(r);
  return 0.5 * (1.0 + std::exp(t)) / (-std::expm1(t));
}

Composition compose_impl(const Eigen::MatrixXcd& g1, const Eigen::MatrixXcd& g2) {
  const int n = static_cast<int>(g1.rows() / 2);
  const Eigen::MatrixXcd half_io = cplx(0.0, 0.5) * omega(n).cast<cplx>();
  const Eigen::MatrixXcd sum = g1 + g2;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sum);
  const cplx det = lu.determinant();
  if (std::abs(det) == 0.0) throw UnphysicalCM("singular covariance sum in composition");
  Composition out;
  out.prefactor = 1.0 / std::sqrt(det);
  out.h = -half_io + (g2 + half_io) * lu.solve(g1 + half_io);
  return out;
}

}  // namespace

void check_physical(const GaussianSpec& spec, double tol) {
  check_shape(spec);
  const Eigen::MatrixXd& g = spec.cm;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10) throw UnphysicalCM("covariance matrix is not symmetric");
  const Eigen::MatrixXcd m = g.cast<cplx>() + cplx(0.0, 0.5) * omega(spec.modes()).cast<cplx>();
  const double lo = linalg::eigvalsh(m).minCoeff();
  if (lo < -tol) throw UnphysicalCM("uncertainty relation violated (min eigenvalue " + std::to_string(lo) + ")");
}

GaussianSpec moments_from_fock(const FockState& state, double tail_tol) {
  state.require_converged(tail_tol);
  const Dims& dims = state.dims();
  const int n = state.modes();
  const auto st = strides(dims);
  const Eigen::MatrixXcd& rho = state.rho();
  const Eigen::Index dim = rho.rows();

  std::vector<std::vector<int>> digits(static_cast<std::size_t>(dim), std::vector<int>(n));
  for (Eigen::Index x = 0; x < dim; ++x)
    for (int m = 0; m < n; ++m) digits[x][m] = static_cast<int>((x / st[m]) % dims[m]);

  // <O> = sum_x rho(x, y) O(y, x) for O mapping |x> to coeff |y>.
  auto expect = [&](auto&& map) {
    cplx acc = 0.0;
    for (Eigen::Index x = 0; x < dim; ++x) {
      Eigen::Index y;
      double coeff;
      if (map(x, digits[x], y, coeff)) acc += rho(x, y) * coeff;
    }
    return acc;
  };

  std::vector<cplx> a1(n), a2(n);
  std::vector<double> num(n);
  for (int i = 0; i < n; ++i) {
    const auto si = static_cast<Eigen::Index>(st[i]);
    a1[i] = expect([&](Eigen::Index x, const std::vector<int>& k, Eigen::Index& y, double& c) {
      if (k[i] < 1) return false;
      y = x - si;
      c = std::sqrt(static_cast<double>(k[i]));
      return true;
    });
    a2[i] = expect([&](Eigen::Index x, const std::vector<int>& k, Eigen::Index& y, double& c) {
      if (k[i] < 2) return false;
      y = x - 2 * si;
      c = std::sqrt(static_cast<double>(k[i]) * (k[i] - 1));
      return true;
    });
    num[i] = expect([&](Eigen::Index x, const std::vector<int>& k, Eigen::Index& y, double& c) {
      y = x;
      c = k[i];
      return true;
    }).real();
  }

  GaussianSpec out;
  out.means = Eigen::VectorXd(2 * n);
  out.cm = Eigen::MatrixXd(2 * n, 2 * n);
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    out.means(2 * i) = r2 * a1[i].real();
    out.means(2 * i + 1) = r2 * a1[i].imag();
    out.cm(2 * i, 2 * i) = a2[i].real() + num[i] + 0.5;
    out.cm(2 * i + 1, 2 * i + 1) = -a2[i].real() + num[i] + 0.5;
    out.cm(2 * i, 2 * i + 1) = out.cm(2 * i + 1, 2 * i) = a2[i].imag();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto si = static_cast<Eigen::Index>(st[i]);
      const auto sj = static_cast<Eigen::Index>(st[j]);
      const int ni = dims[i];
      const cplx ab = expect([&](Eigen::Index x, const std::vector<int>& k, Eigen::Index& y, double& c) {
        if (k[i] < 1 || k[j] < 1) return false;
        y = x - si - sj;
        c = std::sqrt(static_cast<double>(k[i]) * k[j]);
        return true;
      });
      // a_i^dagger a_j
      const cplx adb = expect([&](Eigen::Index x, const std::vector<int>& k, Eigen::Index& y, double& c) {
        if (k[j] < 1 || k[i] + 1 >= ni) return false;
        y = x - sj + si;
        c = std::sqrt(static_cast<double>(k[j]) * (k[i] + 1));
        return true;
      });
      const double qq = ab.real() + adb.real();
      const double pp = -ab.real() + adb.real();
      const double qp = ab.imag() + adb.imag();
      const double pq = ab.imag() - adb.imag();
      out.cm(2 * i, 2 * j) = out.cm(2 * j, 2 * i) = qq;
      out.cm(2 * i + 1, 2 * j + 1) = out.cm(2 * j + 1, 2 * i + 1) = pp;
      out.cm(2 * i, 2 * j + 1) = out.cm(2 * j + 1, 2 * i) = qp;
      out.cm(2 * i + 1, 2 * j) = out.cm(2 * j, 2 * i + 1) = pq;
    }
  }
  out.cm -= out.means * out.means.transpose();
  out.cm = 0.5 * (out.cm + out.cm.transpose());
  check_physical(out);
  return out;
}

StandardFormResult standard_form(const GaussianSpec& spec) {
  require_two_mode(spec);
  check_physical(spec);
  const Eigen::Matrix2d A = spec.cm.block<2, 2>(0, 0);
  const Eigen::Matrix2d B = spec.cm.block<2, 2>(2, 2);
  const Eigen::Matrix2d C = spec.cm.block<2, 2>(0, 2);
  const double a = std::sqrt(A.determinant());
  const double b = std::sqrt(B.determinant());
  const Eigen::Matrix2d sa = std::sqrt(a) * sqrt_and_inv_sqrt(A).second;
  const Eigen::Matrix2d sb = std::sqrt(b) * sqrt_and_inv_sqrt(B).second;
  const Eigen::Matrix2d c1 = sa * C * sb.transpose();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(c1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2d u = svd.matrixU();
  Eigen::Matrix2d v = svd.matrixV();
  Eigen::Vector2d s = svd.singularValues();
  if (u.determinant() < 0.0) {
    u.col(1) *= -1.0;
    s(1) *= -1.0;
  }
  if (v.determinant() < 0.0) {
    v.col(1) *= -1.0;
    s(1) *= -1.0;
  }
  StandardFormResult out;
  out.form = StandardFormCM{a, b, s(0), s(1)};
  out.local_a = u.transpose() * sa;
  out.local_b = v.transpose() * sb;
  return out;
}

std::vector<double> symplectic_eigs(const Eigen::MatrixXd& cm) {
  const int n = static_cast<int>(cm.rows() / 2);
  const Eigen::MatrixXd root = sqrt_and_inv_sqrt(cm).first;
  const Eigen::MatrixXcd k = cplx(0.0, 1.0) * (root * omega(n) * root).cast<cplx>();
  const Eigen::VectorXd w = linalg::eigvalsh(k);  // ascending, +/- pairs
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = w(2 * n - 1 - j);
  return out;
}

std::vector<double> symplectic_eigs(const GaussianSpec& spec) {
  check_physical(spec);
  auto out = symplectic_eigs(spec.cm);
  for (double l : out)
    if (l < 0.5 - 1e-9) throw UnphysicalCM("symplectic eigenvalue below 1/2");
  return out;
}

std::pair<double, double> standard_form_symplectic_eigs(const StandardFormCM& f) {
  const double l = 0.5 * (f.a * f.a + f.b * f.b + 2.0 * f.c * f.d);
  const double m = (f.a * f.b - f.c * f.c) * (f.a * f.b - f.d * f.d);
  const double disc = fault::symplectic_sign_flip() ? l * l + m : l * l - m;
  const double root = std::sqrt(std::max(disc, 0.0));
  return {std::sqrt(std::max(l + root, 0.0)), std::sqrt(std::max(l - root, 0.0))};
}

SymplecticDecomp williamson(const GaussianSpec& spec) {
  check_shape(spec);
  check_physical(spec);
  const int n = spec.modes();
  const Eigen::MatrixXd& g = spec.cm;
  const Eigen::MatrixXd inv_root = sqrt_and_inv_sqrt(g).second;
  const Eigen::MatrixXd om = omega(n);
  Eigen::MatrixXd bmat = inv_root * om * inv_root;
  bmat = 0.5 * (bmat - bmat.transpose());
  Eigen::RealSchur<Eigen::MatrixXd> schur(bmat);
  if (schur.info() != Eigen::Success) throw ConvergenceFailure("real Schur decomposition failed");
  Eigen::MatrixXd r = schur.matrixU();
  const Eigen::MatrixXd t = r.transpose() * bmat * r;

  std::vector<double> bs(n);
  for (int j = 0; j < n; ++j) {
    double b = 0.5 * (t(2 * j, 2 * j + 1) - t(2 * j + 1, 2 * j));
    if (b < 0.0) {
      r.col(2 * j).swap(r.col(2 * j + 1));
      b = -b;
    }
    if (!(b > 0.0)) throw ConvergenceFailure("degenerate Schur block in Williamson decomposition");
    bs[j] = b;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending lambda = ascending b.
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return bs[x] < bs[y]; });

  Eigen::MatrixXd rs(2 * n, 2 * n);
  SymplecticDecomp out;
  Eigen::VectorXd delta_sqrt(2 * n);
  for (int j = 0; j < n; ++j) {
    rs.col(2 * j) = r.col(2 * order[j]);
    rs.col(2 * j + 1) = r.col(2 * order[j] + 1);
    const double lam = 1.0 / bs[order[j]];
    out.lambdas.push_back(lam);
    delta_sqrt(2 * j) = delta_sqrt(2 * j + 1) = std::sqrt(lam);
  }
  out.S = delta_sqrt.asDiagonal() * rs.transpose() * inv_root;

  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double e1 = (out.S * om * out.S.transpose() - om).cwiseAbs().maxCoeff();
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) target(2 * j, 2 * j) = target(2 * j + 1, 2 * j + 1) = out.lambdas[j];
  const double e2 = (out.S * g * out.S.transpose() - target).cwiseAbs().maxCoeff();
  if (e1 > 1e-9 * scale || e2 > 1e-8 * scale) {
    throw ConvergenceFailure("Williamson self-check failed (symplectic " + std::to_string(e1) + ", diagonal " +
                             std::to_string(e2) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthesis

Eigen::MatrixXcd gaussian_fock_elements(const GaussianSpec& spec, const Dims& dims) {
  check_shape(spec);
  if (static_cast<int>(dims.size()) != spec.modes()) throw DimMismatch("dims do not match the number of modes");
  for (int v : dims)
    if (v < 1) throw InvalidCutoff("cutoff must be positive");
  const int n = spec.modes();
  const int n2 = 2 * n;
  const double ir2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n2, n2);
  for (int j = 0; j < n; ++j) {
    w(j, 2 * j) = ir2;
    w(j, 2 * j + 1) = cplx(0.0, ir2);
    w(n + j, 2 * j) = ir2;
    w(n + j, 2 * j + 1) = cplx(0.0, -ir2);
  }
  const Eigen::MatrixXcd sigma_c = w * spec.cm.cast<cplx>() * w.adjoint();
  const Eigen::MatrixXcd qh = sigma_c + 0.5 * Eigen::MatrixXcd::Identity(n2, n2);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(qh);
  const Eigen::MatrixXcd qinv = lu.inverse();
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n2, n2);
  x.topRightCorner(n, n).setIdentity();
  x.bottomLeftCorner(n, n).setIdentity();
  const Eigen::MatrixXcd amat = (qinv - Eigen::MatrixXcd::Identity(n2, n2)) * x;
  const Eigen::VectorXcd xi0 = w * spec.means.cast<cplx>();
  const Eigen::RowVectorXcd gam = xi0.adjoint() * qinv * x;
  const cplx quad = (xi0.adjoint() * qinv * xi0)(0, 0);
  const cplx pref = std::exp(-0.5 * quad) / std::sqrt(lu.determinant());

  // Multi-index (row digits, column digits), last digit fastest.
  std::vector<int> radix(n2);
  for (int i = 0; i < n2; ++i) radix[i] = dims[i % n];
  std::vector<std::size_t> stride(n2, 1);
  for (int i = n2 - 2; i >= 0; --i) stride[i] = stride[i + 1] * radix[i + 1];
  const std::size_t d = total_dim(dims);
  const std::size_t total = d * d;

  std::vector<cplx> gvals(total);
  gvals[0] = 1.0;
  std::vector<int> k(n2, 0);
  std::vector<double> sq(*std::max_element(radix.begin(), radix.end()) + 1);
  for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = std::sqrt(static_cast<double>(j));

  for (std::size_t f = 1; f < total; ++f) {
    // odometer increment
    for (int i = n2 - 1; i >= 0; --i) {
      if (++k[i] < radix[i]) break;
      k[i] = 0;
    }
    int i = n2 - 1;
    while (k[i] == 0) --i;
    const std::size_t fp = f - stride[i];
    cplx val = gam(i) * gvals[fp];
    for (int j = 0; j < n2; ++j) {
      const int kj = k[j] - (j == i ? 1 : 0);
      if (kj > 0) val -= amat(i, j) * sq[kj] * gvals[fp - stride[j]];
    }
    gvals[f] = val / sq[k[i]];
  }

  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd rho(dd, dd);
  for (Eigen::Index r = 0; r < dd; ++r)
    for (Eigen::Index c = 0; c < dd; ++c) rho(r, c) = pref * gvals[static_cast<std::size_t>(r) * d + c];
  return linalg::hermitize(rho);
}

Dims required_cutoff(const GaussianSpec& spec, double tail_tol, int max_cutoff) {
  check_shape(spec);
  const int n = spec.modes();
  Dims out(n);
  for (int m = 0; m < n; ++m) {
    GaussianSpec marg;
    marg.means = spec.means.segment(2 * m, 2);
    marg.cm = spec.cm.block(2 * m, 2 * m, 2, 2);
    const Eigen::VectorXd p = gaussian_fock_elements(marg, {max_cutoff}).diagonal().real();
    // Populations of squeezed states oscillate, so use the running maximum from the top.
    int cut = max_cutoff;
    double worst = 0.0;
    for (int k = max_cutoff - 1; k >= 0; --k) {
      worst = std::max(worst, p(k));
      if (worst >= tail_tol) break;
      cut = k + 1;
    }
    if (cut >= max_cutoff) throw TruncationError("Gaussian tail does not converge below cutoff " + std::to_string(max_cutoff));
    out[m] = std::max(cut, 2);
  }
  return out;
}

namespace {

FockState synthesize_hermite(const GaussianSpec& spec, const Dims& dims) {
  return FockState::normalized(dims, gaussian_fock_elements(spec, dims));
}

FockState synthesize_gibbs(const GaussianSpec& spec, const Dims& dims) {
  const int n = spec.modes();
  constexpr int kPad = 12;
  Dims big = dims;
  for (int& v : big) v += kPad;
  const auto sd = williamson(spec);
  Eigen::VectorXd beta(2 * n);
  for (int j = 0; j < n; ++j) {
    const double lam = std::max(sd.lambdas[j], 0.5 + 1e-9);
    beta(2 * j) = beta(2 * j + 1) = std::log((lam + 0.5) / (lam - 0.5));
  }
  const Eigen::MatrixXd gmat = sd.S.transpose() * beta.asDiagonal() * sd.S;

  const auto dim = static_cast<Eigen::Index>(total_dim(big));
  std::vector<Eigen::MatrixXcd> quads;
  for (int m = 0; m < n; ++m) {
    const auto ops = ladder_ops(big[m]);
    for (const Eigen::MatrixXcd* local : {&ops.q.mat(), &ops.p.mat()}) {
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
      for (int k = 0; k < n; ++k) {
        const Eigen::MatrixXcd f = k == m ? *local : Eigen::MatrixXcd::Identity(big[k], big[k]);
        Eigen::MatrixXcd next(full.rows() * f.rows(), full.cols() * f.cols());
        for (Eigen::Index r = 0; r < full.rows(); ++r)
          for (Eigen::Index c = 0; c < full.cols(); ++c)
            next.block(r * f.rows(), c * f.cols(), f.rows(), f.cols()) = full(r, c) * f;
        full = std::move(next);
      }
      quads.push_back(std::move(full));
    }
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j)
      if (gmat(i, j) != 0.0) h += 0.5 * gmat(i, j) * (quads[i] * quads[j]);
  const auto es = linalg::eigh(h);
  const double e0 = es.values.minCoeff();
  Eigen::VectorXd wts = (-(es.values.array() - e0)).exp();
  Eigen::MatrixXcd rho = es.vectors * wts.asDiagonal() * es.vectors.adjoint();
  for (int m = 0; m < n; ++m) {
    const cplx alpha(spec.means(2 * m) / std::sqrt(2.0), spec.means(2 * m + 1) / std::sqrt(2.0));
    if (std::abs(alpha) == 0.0) continue;
    rho = sandwich_local(rho, big, m, displacement(alpha, big[m]));
  }
  // Restrict to the requested truncation.
  const auto sb = strides(big);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index x = 0; x < dim; ++x) {
    bool ok = true;
    for (int m = 0; m < n && ok; ++m) ok = static_cast<int>((x / sb[m]) % big[m]) < dims[m];
    if (ok) keep.push_back(x);
  }
  const auto kd = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd out(kd, kd);
  for (Eigen::Index c = 0; c < kd; ++c)
    for (Eigen::Index r = 0; r < kd; ++r) out(r, c) = rho(keep[r], keep[c]);
  return FockState::normalized(dims, linalg::hermitize(out));
}

}  // namespace

FockState reference_gaussian_fock(const GaussianSpec& spec, const Dims& dims, SynthesisMethod method,
                                  double tail_tol) {
  check_shape(spec);
  check_physical(spec);
  if (static_cast<int>(dims.size()) != spec.modes()) throw DimMismatch("dims do not match the number of modes");
  for (int v : dims)
    if (v < 1) throw InvalidCutoff("cutoff must be positive");
  FockState out = method == SynthesisMethod::hermite ? synthesize_hermite(spec, dims) : synthesize_gibbs(spec, dims);
  out.require_converged(tail_tol);
  return out;
}

double moment_mismatch(const GaussianSpec& spec, const FockState& state) {
  const GaussianSpec got = moments_from_fock(state, 1.0);
  return std::max((got.means - spec.means).cwiseAbs().maxCoeff(), (got.cm - spec.cm).cwiseAbs().maxCoeff());
}

// ---------------------------------------------------------------------------
// Closed forms

double g_func(double x, double alpha) {
  if (x < 0.5 - 1e-9) throw DomainError("g(x, alpha) needs x >= 1/2");
  if (alpha == 1.0) return 1.0;
  x = std::max(x, 0.5);
  return 1.0 / (std::pow(x + 0.5, alpha) - std::pow(x - 0.5, alpha));
}

double gaussian_mi(GaussianMiKind kind, const GaussianSpec& spec, double alpha) {
  return gaussian_mi(kind, standard_form(spec).form, alpha);
}

double gaussian_mi(GaussianMiKind kind, const StandardFormCM& f, double alpha) {
  if (kind != GaussianMiKind::hilbert_schmidt && !(alpha > 0.0 && std::isfinite(alpha)))
    throw DomainError("alpha must be positive and finite");
  const double a = f.a;
  const double b = f.b;
  const double c = f.c;
  const double d = f.d;
  if (a < 0.5 - 1e-9 || b < 0.5 - 1e-9) throw UnphysicalCM("marginal below vacuum level");

  if (kind == GaussianMiKind::hilbert_schmidt) {
    const double v = 1.0 / (4.0 * std::sqrt((a * b - c * c) * (a * b - d * d))) + 1.0 / (4.0 * a * b) -
                     2.0 / std::sqrt((4.0 * a * b - c * c) * (4.0 * a * b - d * d));
    return std::sqrt(std::max(v, 0.0));
  }

  if (c == 0.0 && d == 0.0) return 0.0;
  const auto [l1, l2] = standard_form_symplectic_eigs(f);
  if (l2 < 0.5 - 1e-9) throw UnphysicalCM("symplectic eigenvalue below 1/2");

  if (alpha == 1.0) return entropy_term(a) + entropy_term(b) - entropy_term(l1) - entropy_term(l2);

  if (kind == GaussianMiKind::renyi) {
    return (log_abs_g(a, alpha) + log_abs_g(b, alpha) - log_abs_g(l1, alpha) - log_abs_g(l2, alpha)) / (1.0 - alpha);
  }

  // Sandwiched: a pure marginal forces a product state.
  if (a <= 0.5 + 1e-12 || b <= 0.5 + 1e-12) return 0.0;
  const double s = (1.0 - alpha) / (2.0 * alpha);
  const double term1 = 2.0 * alpha / (alpha - 1.0) * (log_abs_g(a, s) + log_abs_g(b, s));
  const double za = zeta(a, s);
  const double zb = zeta(b, s);
  Eigen::Matrix4cd gp = Eigen::Matrix4cd::Zero();
  gp(0, 0) = gp(1, 1) = za;
  gp(2, 2) = gp(3, 3) = zb;
  const Eigen::MatrixXcd gam = f.matrix().cast<cplx>();
  const Composition first = compose_impl(gp, gam);
  const cplx det1 = (gp + gam).determinant();
  const cplx det2 = (first.h + gp).determinant();
  const double term2 = -alpha / (2.0 * (alpha - 1.0)) * (std::log(std::abs(det1)) + std::log(std::abs(det2)));
  const Composition second = compose_impl(first.h, gp);
  Eigen::MatrixXd ht = second.h.real();
  ht = 0.5 * (ht + ht.transpose());
  // For alpha > 1 the factor sigma^s is unbounded, and when rho has a
  // broader direction than the marginal product the trace diverges. The
  // composed matrix then stops being a covariance matrix.
  if (alpha > 1.0 && Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ht, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() <= 0.0)
    return std::numeric_limits<double>::infinity();
  const auto lt = symplectic_eigs(ht);
  if (alpha > 1.0 && lt[1] < 0.5 - 1e-9) return std::numeric_limits<double>::infinity();
  const double term3 = (log_abs_g(lt[0], alpha) + log_abs_g(lt[1], alpha)) / (alpha - 1.0);
  return term1 + term2 + term3;
}

Composition compose_rule(const GaussianSpec& g1, const GaussianSpec& g2) {
  check_physical(g1);
  check_physical(g2);
  if (g1.means.size() != g2.means.size()) throw DimMismatch("mode counts differ");
  if ((g1.means - g2.means).cwiseAbs().maxCoeff() > 1e-9) throw MeanMismatch("composition needs equal means");
  return compose_impl(g1.cm.cast<cplx>(), g2.cm.cast<cplx>());
}

Composition compose_rule(const Eigen::MatrixXcd& cm1, const Eigen::MatrixXcd& cm2) {
  if (cm1.rows() != cm2.rows() || cm1.rows() % 2 != 0 || cm1.rows() != cm1.cols() || cm2.rows() != cm2.cols())
    throw DimMismatch("composition needs equal even-sized square matrices");
  return compose_impl(cm1, cm2);
}

double gaussian_log_negativity(const GaussianSpec& spec) {
  require_two_mode(spec);
  check_physical(spec);
  Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Eigen::MatrixXd pt = flip.asDiagonal() * spec.cm * flip.asDiagonal();
  const auto nu = symplectic_eigs(pt);
  const double nu_min = *std::min_element(nu.begin(), nu.end());
  return std::max(0.0, -std::log(2.0 * nu_min));
}

GaussianSpec analytic_cm_ecs_loss(double gamma, double eta) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw BadSpec("ecs_loss needs gamma > 0");
  if (!(eta >= 0.0 && eta <= 1.0)) throw BadSpec("ecs_loss needs 0 <= eta <= 1");
  const double g2 = gamma * gamma;
  const double den = -std::expm1(-4.0 * g2);
  const double x11 = eta * g2 * 2.0 / den;
  const double x22 = eta * g2 * 2.0 * std::exp(-4.0 * g2) / den;
  Eigen::MatrixXd cm = Eigen::MatrixXd::Zero(4, 4);
  cm(0, 0) = cm(2, 2) = x11 + 0.5;
  cm(1, 1) = cm(3, 3) = x22 + 0.5;
  cm(0, 2) = cm(2, 0) = x11;
  cm(1, 3) = cm(3, 1) = x22;
  return GaussianSpec::centered(std::move(cm));
}

GaussianSpec analytic_cm_pnes(const std::vector<cplx>& coeffs, const std::vector<int>& levels_in) {
  if (coeffs.empty()) throw BadSpec("pnes needs coefficients");
  std::vector<int> levels = levels_in;
  if (levels.empty()) {
    levels.resize(coeffs.size());
    std::iota(levels.begin(), levels.end(), 0);
  }
  if (levels.size() != coeffs.size()) throw BadSpec("pnes levels and coefficients differ in length");
  double norm = 0.0;
  for (const cplx& c : coeffs) norm += std::norm(c);
  if (std::abs(norm - 1.0) > 1e-12) throw BadSpec("pnes coefficients must be normalized");
  double a = 0.0;
  cplx b = 0.0;  // <a b>
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (levels[k] < 0) throw BadSpec("pnes levels must be nonnegative");
    a += levels[k] * std::norm(coeffs[k]);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (levels[k] == levels[j] + 1) b += static_cast<double>(levels[k]) * std::conj(coeffs[j]) * coeffs[k];
  }
  Eigen::MatrixXd cm = Eigen::MatrixXd::Zero(4, 4);
  cm(0, 0) = cm(1, 1) = cm(2, 2) = cm(3, 3) = a + 0.5;
  cm(0, 2) = cm(2, 0) = b.real();
  cm(1, 3) = cm(3, 1) = -b.real();
  cm(0, 3) = cm(3, 0) = b.imag();
  cm(1, 2) = cm(2, 1) = b.imag();
  return GaussianSpec::centered(std::move(cm));
}

}  // namespace ngcorr
