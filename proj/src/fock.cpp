#include "ngcorr/fock.hpp"

#include "ngcorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ngcorr {

using linalg::cplx;

std::size_t total_dim(const Dims& dims) {
  std::size_t d = 1;
  for (int n : dims) d *= static_cast<std::size_t>(n);
  return d;
}

std::vector<std::size_t> strides(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (int m = static_cast<int>(dims.size()) - 2; m >= 0; --m) s[m] = s[m + 1] * dims[m + 1];
  return s;
}

namespace {

void check_dims(const Dims& dims, Eigen::Index rows, Eigen::Index cols) {
  if (dims.empty()) throw InvalidCutoff("at least one mode is required");
  for (int n : dims) {
    if (n < 1) throw InvalidCutoff("mode cutoff must be positive, got " + std::to_string(n));
  }
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  if (rows != d || cols != d) {
    throw DimMismatch("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " but dims imply " + std::to_string(d));
  }
}

// Digit of a flat index for one mode.
inline int digit(std::size_t index, std::size_t stride, int n) {
  return static_cast<int>((index / stride) % static_cast<std::size_t>(n));
}

}  // namespace

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(Dims dims, Eigen::MatrixXcd mat) : dims_(std::move(dims)), mat_(std::move(mat)) {
  check_dims(dims_, mat_.rows(), mat_.cols());
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return linalg::hermiticity_defect(mat_) < tol;
}

bool OperatorMatrix::is_unitary(double tol) const {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(mat_.rows(), mat_.cols());
  return (mat_.adjoint() * mat_ - id).cwiseAbs().maxCoeff() < tol;
}

// ---------------------------------------------------------------------------
// FockState

double tail_mass_of(const Dims& dims, const Eigen::MatrixXcd& rho) {
  const auto st = strides(dims);
  double tail = 0.0;
  for (Eigen::Index x = 0; x < rho.rows(); ++x) {
    bool top = false;
    for (std::size_t m = 0; m < dims.size() && !top; ++m) {
      top = digit(static_cast<std::size_t>(x), st[m], dims[m]) == dims[m] - 1;
    }
    if (top) tail += rho(x, x).real();
  }
  return std::max(tail, 0.0);
}

FockState::FockState(Dims dims, Eigen::MatrixXcd rho) : dims_(std::move(dims)) {
  check_dims(dims_, rho.rows(), rho.cols());
  const double defect = linalg::hermiticity_defect(rho);
  if (defect > 1e-10) throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) throw InvalidState("density matrix trace is " + std::to_string(tr));
  rho_ = linalg::hermitize(rho);
  tail_mass_ = tail_mass_of(dims_, rho_);
}

FockState FockState::normalized(Dims dims, Eigen::MatrixXcd rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0) || !std::isfinite(tr)) throw InvalidState("cannot normalize a matrix with trace " + std::to_string(tr));
  rho /= tr;
  return FockState(std::move(dims), std::move(rho));
}

FockState FockState::from_ket(Dims dims, const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw InvalidState("zero ket");
  const Eigen::VectorXcd v = psi / n;
  return FockState(std::move(dims), v * v.adjoint());
}

int FockState::max_cutoff() const {
  return *std::max_element(dims_.begin(), dims_.end());
}

double FockState::purity() const {
  return linalg::trace_product(rho_, rho_).real();
}

double FockState::min_eigenvalue() const {
  return linalg::eigvalsh(rho_).minCoeff();
}

void FockState::require_converged(double tol) const {
  if (tail_mass_ >= tol) {
    throw TruncationError("tail mass " + std::to_string(tail_mass_) + " exceeds tolerance " + std::to_string(tol));
  }
}

void FockState::check_positive(double tol) const {
  const double m = min_eigenvalue();
  if (m < -tol) throw InvalidState("density matrix has eigenvalue " + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Operators

LadderOps ladder_ops(int cutoff) {
  if (cutoff < 2) throw InvalidCutoff("ladder operators need cutoff >= 2, got " + std::to_string(cutoff));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Eigen::MatrixXcd ad = a.adjoint();
  const Eigen::MatrixXcd n = ad * a;
  const double r2 = std::sqrt(2.0);
  const Eigen::MatrixXcd q = (a + ad) / r2;
  const Eigen::MatrixXcd p = (a - ad) / (r2 * cplx(0.0, 1.0));
  const Dims d{cutoff};
  return LadderOps{OperatorMatrix(d, a), OperatorMatrix(d, ad), OperatorMatrix(d, n), OperatorMatrix(d, q),
                   OperatorMatrix(d, p)};
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Dims concat(const Dims& a, const Dims& b) {
  Dims d = a;
  d.insert(d.end(), b.begin(), b.end());
  return d;
}

}  // namespace

FockState tensor(const FockState& a, const FockState& b) {
  return FockState(concat(a.dims(), b.dims()), kron(a.rho(), b.rho()));
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  return OperatorMatrix(concat(a.dims(), b.dims()), kron(a.mat(), b.mat()));
}

FockState partial_trace(const FockState& state, std::span<const int> keep) {
  const Dims& dims = state.dims();
  const int n = state.modes();
  if (keep.empty()) throw BadModeIndex("partial trace must keep at least one mode");
  std::vector<bool> kept(n, false);
  for (int m : keep) {
    if (m < 0 || m >= n) throw BadModeIndex("mode index " + std::to_string(m) + " out of range");
    if (kept[m]) throw BadModeIndex("mode index " + std::to_string(m) + " repeated");
    kept[m] = true;
  }
  const auto st = strides(dims);

  // Offsets of every kept / traced multi-index in the full flat index.
  auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> offs{0};
    for (int m = 0; m < n; ++m) {
      if (kept[m] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(offs.size() * dims[m]);
      for (std::size_t o : offs)
        for (int i = 0; i < dims[m]; ++i) next.push_back(o + i * st[m]);
      offs = std::move(next);
    }
    return offs;
  };
  const auto keep_off = offsets(true);
  const auto trace_off = offsets(false);

  Dims out_dims;
  for (int m = 0; m < n; ++m)
    if (kept[m]) out_dims.push_back(dims[m]);

  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  const Eigen::MatrixXcd& rho = state.rho();
  for (Eigen::Index j = 0; j < dk; ++j) {
    for (Eigen::Index i = 0; i < dk; ++i) {
      cplx acc = 0.0;
      for (std::size_t t : trace_off) acc += rho(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  }
  return FockState(std::move(out_dims), std::move(out));
}

FockState partial_trace(const FockState& state, std::initializer_list<int> keep) {
  const std::vector<int> k(keep);
  return partial_trace(state, std::span<const int>(k));
}

OperatorMatrix partial_transpose(const FockState& state, int mode) {
  const Dims& dims = state.dims();
  if (mode < 0 || mode >= state.modes()) throw BadModeIndex("mode index " + std::to_string(mode) + " out of range");
  const auto st = strides(dims)[mode];
  const int nm = dims[mode];
  const Eigen::MatrixXcd& rho = state.rho();
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  for (Eigen::Index y = 0; y < rho.cols(); ++y) {
    const int dy = digit(static_cast<std::size_t>(y), st, nm);
    for (Eigen::Index x = 0; x < rho.rows(); ++x) {
      const int dx = digit(static_cast<std::size_t>(x), st, nm);
      const Eigen::Index xs = x + (static_cast<Eigen::Index>(dy) - dx) * static_cast<Eigen::Index>(st);
      const Eigen::Index ys = y + (static_cast<Eigen::Index>(dx) - dy) * static_cast<Eigen::Index>(st);
      out(x, y) = rho(xs, ys);
    }
  }
  return OperatorMatrix(dims, std::move(out));
}

Eigen::MatrixXcd matrix_power_on_support(const Eigen::MatrixXcd& m, double s) {
  if (!std::isfinite(s)) throw DomainError("matrix power exponent must be finite");
  const auto es = linalg::eigh(m);
  Eigen::VectorXd w(es.values.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double l = es.values(i);
    w(i) = l > linalg::kSupportFloor ? std::pow(l, s) : 0.0;
  }
  return es.vectors * w.asDiagonal() * es.vectors.adjoint();
}

OperatorMatrix matrix_power_on_support(const FockState& state, double s) {
  return OperatorMatrix(state.dims(), matrix_power_on_support(state.rho(), s));
}

namespace {

void require_same_dims(const FockState& a, const FockState& b) {
  if (a.dims() != b.dims()) throw DimMismatch("states have different mode dimensions");
}

// sqrt(F) via the nonzero spectrum of sqrt(A) B sqrt(A) restricted to supp A.
// Low-rank factor V sqrt(D) of a positive matrix, restricted to its support.
Eigen::MatrixXcd sqrt_factor(const Eigen::MatrixXcd& m) {
  const auto es = linalg::eigh(m);
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > linalg::kSupportFloor) support.push_back(i);
  Eigen::MatrixXcd f(m.rows(), static_cast<Eigen::Index>(support.size()));
  for (Eigen::Index k = 0; k < f.cols(); ++k) f.col(k) = std::sqrt(es.values(support[k])) * es.vectors.col(support[k]);
  return f;
}

// tr |sqrt(a) sqrt(b)| as the nuclear norm of the factor product. Singular
// values avoid taking square roots of round-off eigenvalues.
double root_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd fa = sqrt_factor(a);
  const Eigen::MatrixXcd fb = sqrt_factor(b);
  if (fa.cols() == 0 || fb.cols() == 0) return 0.0;
  const Eigen::MatrixXcd m = fa.adjoint() * fb;
  return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues().sum();
}

}  // namespace

double distance(DistanceKind kind, const FockState& a, const FockState& b) {
  require_same_dims(a, b);
  const Eigen::MatrixXcd diff = a.rho() - b.rho();
  switch (kind) {
    case DistanceKind::trace:
      return 0.5 * linalg::trace_norm_hermitian(diff);
    case DistanceKind::hilbert_schmidt:
      return diff.norm();
  }
  return 0.0;
}

double fidelity(FidelityKind kind, const FockState& a, const FockState& b) {
  require_same_dims(a, b);
  switch (kind) {
    case FidelityKind::uhlmann: {
      const double rf = root_fidelity(a.rho(), b.rho());
      return rf * rf;
    }
    case FidelityKind::super: {
      const double overlap = linalg::trace_product(a.rho(), b.rho()).real();
      const double ma = std::max(0.0, 1.0 - a.purity());
      const double mb = std::max(0.0, 1.0 - b.purity());
      return overlap + std::sqrt(ma) * std::sqrt(mb);
    }
  }
  return 0.0;
}

FockState embed(const FockState& state, const Dims& new_dims) {
  const Dims& dims = state.dims();
  if (new_dims.size() != dims.size()) throw DimMismatch("embedding must keep the number of modes");
  for (std::size_t m = 0; m < dims.size(); ++m)
    if (new_dims[m] < dims[m]) throw InvalidCutoff("embedding cannot shrink a mode");
  if (new_dims == dims) return state;
  const auto so = strides(dims);
  const auto sn = strides(new_dims);
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  std::vector<Eigen::Index> map(d);
  for (Eigen::Index x = 0; x < d; ++x) {
    std::size_t idx = 0;
    for (std::size_t m = 0; m < dims.size(); ++m) idx += digit(static_cast<std::size_t>(x), so[m], dims[m]) * sn[m];
    map[x] = static_cast<Eigen::Index>(idx);
  }
  const auto dn = static_cast<Eigen::Index>(total_dim(new_dims));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dn, dn);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) out(map[i], map[j]) = state.rho()(i, j);
  return FockState(new_dims, std::move(out));
}

namespace {

struct Entry {
  int row;
  int col;
  cplx value;
};

std::vector<Entry> nonzeros(const Eigen::MatrixXcd& op) {
  std::vector<Entry> out;
  for (int j = 0; j < op.cols(); ++j)
    for (int i = 0; i < op.rows(); ++i)
      if (op(i, j) != cplx(0.0)) out.push_back({i, j, op(i, j)});
  return out;
}

// Adds (K)_mode rho (K)_mode^dagger into out.
void accumulate_local(const Eigen::MatrixXcd& rho, const Dims& dims, int mode, const Eigen::MatrixXcd& op,
                      Eigen::MatrixXcd& out) {
  const auto st = strides(dims)[mode];
  const int nm = dims[mode];
  if (op.rows() != nm || op.cols() != nm) throw DimMismatch("local operator does not match mode dimension");
  const auto nz = nonzeros(op);
  // Flat indices with the selected mode at level 0.
  std::vector<Eigen::Index> base;
  for (Eigen::Index x = 0; x < rho.rows(); ++x)
    if (digit(static_cast<std::size_t>(x), st, nm) == 0) base.push_back(x);
  const auto s = static_cast<Eigen::Index>(st);
  for (const Entry& r : nz) {
    for (const Entry& c : nz) {
      const cplx w = r.value * std::conj(c.value);
      for (Eigen::Index yb : base) {
        const Eigen::Index ysrc = yb + c.col * s;
        const Eigen::Index ydst = yb + c.row * s;
        for (Eigen::Index xb : base) {
          out(xb + r.row * s, ydst) += w * rho(xb + r.col * s, ysrc);
        }
      }
    }
  }
}

}  // namespace

Eigen::MatrixXcd sandwich_local(const Eigen::MatrixXcd& rho, const Dims& dims, int mode,
                                const Eigen::MatrixXcd& op) {
  if (mode < 0 || mode >= static_cast<int>(dims.size())) throw BadModeIndex("mode index out of range");
  // Dense route: two Kronecker-structured products.
  const auto st = static_cast<Eigen::Index>(strides(dims)[mode]);
  const int nm = dims[mode];
  if (op.rows() != nm || op.cols() != nm) throw DimMismatch("local operator does not match mode dimension");
  const Eigen::Index d = rho.rows();
  auto left = [&](const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index x = 0; x < d; ++x) {
      const int dx = digit(static_cast<std::size_t>(x), static_cast<std::size_t>(st), nm);
      const Eigen::Index base = x - dx * st;
      for (int j = 0; j < nm; ++j) {
        const cplx o = op(dx, j);
        if (o == cplx(0.0)) continue;
        out.row(x) += o * m.row(base + j * st);
      }
    }
    return out;
  };
  const Eigen::MatrixXcd t = left(rho);
  const Eigen::MatrixXcd t2 = left(t.adjoint());
  return t2.adjoint();
}

Eigen::MatrixXcd apply_local_channel(const Eigen::MatrixXcd& rho, const Dims& dims, int mode,
                                     std::span<const Eigen::MatrixXcd> kraus) {
  if (mode < 0 || mode >= static_cast<int>(dims.size())) throw BadModeIndex("mode index out of range");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) accumulate_local(rho, dims, mode, k, out);
  return out;
}

Eigen::MatrixXcd displacement(std::complex<double> alpha, int cutoff) {
  if (cutoff < 1) throw InvalidCutoff("displacement needs a positive cutoff");
  const double r = std::abs(alpha);
  const int pad = 20 + static_cast<int>(std::ceil(2.0 * r * r + 10.0 * r));
  const int big = cutoff + pad;
  Eigen::MatrixXcd cols(big, cutoff);
  // |alpha> in the padded space.
  Eigen::VectorXcd v(big);
  v(0) = std::exp(-0.5 * r * r);
  for (int k = 1; k < big; ++k) v(k) = v(k - 1) * alpha / std::sqrt(static_cast<double>(k));
  cols.col(0) = v;
  for (int n = 1; n < cutoff; ++n) {
    Eigen::VectorXcd next = -std::conj(alpha) * cols.col(n - 1);
    for (int k = 1; k < big; ++k) next(k) += std::sqrt(static_cast<double>(k)) * cols(k - 1, n - 1);
    cols.col(n) = next / std::sqrt(static_cast<double>(n));
  }
  return cols.topRows(cutoff);
}

}  // namespace ngcorr
