#include "ngcorr/measures.hpp"

#include "ngcorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ngcorr {

namespace {

using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Weight of rho allowed outside supp sigma before alpha > 1 diverges.
constexpr double kSupportLeak = 1e-9;

void require_two_mode(const FockState& s) {
  if (s.modes() != 2) throw DimMismatch("a two-mode state is required");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive and finite");
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// ln tr[(D rho' D)^alpha] / (alpha - 1) where D = diag(d) holds sigma^s in
// the eigenbasis of sigma and rho' is rho in that basis. d = 0 marks the
// complement of the support; leak is the weight of rho found there.
double sandwiched_in_basis(const Eigen::MatrixXcd& rho_rot, const Eigen::VectorXd& d, double leak, double alpha) {
  if (alpha > 1.0 && leak > kSupportLeak) return kInf;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < d.size(); ++k)
    if (d(k) != 0.0) keep.push_back(k);
  const auto n = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = d(keep[i]) * rho_rot(keep[i], keep[j]) * d(keep[j]);
  const Eigen::VectorXd w = linalg::eigvalsh(m);
  const double floor = linalg::kSupportFloor * std::max(1.0, w.size() > 0 ? w.maxCoeff() : 0.0);
  double q = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    if (w(k) > floor) q += std::pow(w(k), alpha);
  if (!(q > 0.0)) return kInf;
  return std::log(q) / (alpha - 1.0);
}

double outside_support(const Eigen::MatrixXcd& rho_rot, const Eigen::VectorXd& d) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < d.size(); ++k)
    if (d(k) == 0.0) out += rho_rot(k, k).real();
  return out;
}

Eigen::VectorXd support_power(const Eigen::VectorXd& values, double s) {
  Eigen::VectorXd d(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) d(k) = values(k) > linalg::kSupportFloor ? std::pow(values(k), s) : 0.0;
  return d;
}

// tr rho (ln rho - ln sigma); infinite when rho leaves supp sigma.
double umegaki(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  const auto er = linalg::eigh(rho);
  const auto es = linalg::eigh(sigma);
  double out = 0.0;
  for (Eigen::Index k = 0; k < er.values.size(); ++k)
    if (er.values(k) > linalg::kSupportFloor) out += er.values(k) * std::log(er.values(k));
  const Eigen::MatrixXcd rot = es.vectors.adjoint() * rho * es.vectors;
  double leak = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > linalg::kSupportFloor)
      out -= rot(k, k).real() * std::log(es.values(k));
    else
      leak += rot(k, k).real();
  }
  return leak > kSupportLeak ? kInf : out;
}

// Sandwiched mutual information against rho_A (x) rho_B, using the marginal
// eigenbases so the product's spectrum keeps every product of eigenvalues.
double sandwiched_mi(const FockState& s, const FockState& ra, const FockState& rb, double alpha) {
  if (alpha == 1.0) {
    return renyi_entropy(linalg::eigvalsh(ra.rho()), 1.0) + renyi_entropy(linalg::eigvalsh(rb.rho()), 1.0) -
           renyi_entropy(linalg::eigvalsh(s.rho()), 1.0);
  }
  const double sp = (1.0 - alpha) / (2.0 * alpha);
  const auto ea = linalg::eigh(ra.rho());
  const auto eb = linalg::eigh(rb.rho());
  std::vector<Eigen::Index> ka, kb;
  for (Eigen::Index i = 0; i < ea.values.size(); ++i)
    if (ea.values(i) > linalg::kSupportFloor) ka.push_back(i);
  for (Eigen::Index j = 0; j < eb.values.size(); ++j)
    if (eb.values(j) > linalg::kSupportFloor) kb.push_back(j);
  const auto na = static_cast<Eigen::Index>(ka.size()), nb = static_cast<Eigen::Index>(kb.size());
  Eigen::MatrixXcd ua(ea.vectors.rows(), na), ub(eb.vectors.rows(), nb);
  Eigen::VectorXd d(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) ua.col(i) = ea.vectors.col(ka[i]);
  for (Eigen::Index j = 0; j < nb; ++j) ub.col(j) = eb.vectors.col(kb[j]);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) d(i * nb + j) = std::pow(ea.values(ka[i]), sp) * std::pow(eb.values(kb[j]), sp);

  // rho in the product of the marginal supports.
  Eigen::MatrixXcd rot;
  if (4 * na * nb < s.dim()) {
    const Eigen::MatrixXcd w = kron(ua, ub);
    rot = w.adjoint() * s.rho() * w;
  } else {
    Eigen::MatrixXcd full = sandwich_local(s.rho(), s.dims(), 0, ea.vectors.adjoint());
    full = sandwich_local(full, s.dims(), 1, eb.vectors.adjoint());
    const Eigen::Index n = eb.values.size();
    rot.resize(na * nb, na * nb);
    for (Eigen::Index c = 0; c < na * nb; ++c)
      for (Eigen::Index r = 0; r < na * nb; ++r)
        rot(r, c) = full(ka[r / nb] * n + kb[r % nb], ka[c / nb] * n + kb[c % nb]);
  }
  const double leak = std::max(0.0, 1.0 - rot.trace().real());
  return sandwiched_in_basis(rot, d, leak, alpha);
}

MeasureResult make_result(const std::string& kind, std::optional<double> alpha, const FockState& s) {
  MeasureResult r;
  r.kind = kind;
  r.alpha = alpha;
  r.cutoff = s.max_cutoff();
  r.tail_mass = s.tail_mass();
  return r;
}

bool uses_alpha(MiKind k) { return k == MiKind::renyi || k == MiKind::sandwiched; }

GaussianSpec marginal(const GaussianSpec& g, int mode) {
  GaussianSpec m;
  m.means = g.means.segment(2 * mode, 2);
  m.cm = g.cm.block(2 * mode, 2 * mode, 2, 2);
  return m;
}

double minus_log(double x) { return -std::log(x); }

}  // namespace

std::string to_string(MiKind k) {
  switch (k) {
    case MiKind::vn: return "vn";
    case MiKind::renyi: return "renyi";
    case MiKind::sandwiched: return "sandwiched";
    case MiKind::hs: return "hs";
    case MiKind::tr: return "tr";
    case MiKind::bures: return "bures";
  }
  return "?";
}

std::string to_string(NgKind k) {
  switch (k) {
    case NgKind::tr: return "tr";
    case NgKind::fid: return "fid";
    case NgKind::lb1: return "lb1";
    case NgKind::lb2: return "lb2";
  }
  return "?";
}

MiKind mi_kind_from_string(const std::string& name) {
  for (MiKind k : {MiKind::vn, MiKind::renyi, MiKind::sandwiched, MiKind::hs, MiKind::tr, MiKind::bures})
    if (to_string(k) == name) return k;
  throw BadSpec("unknown mutual information kind '" + name + "'");
}

NgKind ng_kind_from_string(const std::string& name) {
  for (NgKind k : {NgKind::tr, NgKind::fid, NgKind::lb1, NgKind::lb2})
    if (to_string(k) == name) return k;
  throw BadSpec("unknown non-Gaussian correlation kind '" + name + "'");
}

double renyi_entropy(const Eigen::VectorXd& spectrum, double alpha) {
  check_alpha(alpha);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const double x = spectrum(k);
    if (x <= linalg::kSupportFloor) continue;
    acc += alpha == 1.0 ? -x * std::log(x) : std::pow(x, alpha);
  }
  return alpha == 1.0 ? acc : std::log(acc) / (1.0 - alpha);
}

double sandwiched_relative_entropy(const FockState& rho, const FockState& sigma, double alpha) {
  if (rho.dims() != sigma.dims()) throw DimMismatch("states live on different spaces");
  check_alpha(alpha);
  if (alpha == 1.0) return umegaki(rho.rho(), sigma.rho());
  const auto es = linalg::eigh(sigma.rho());
  const Eigen::MatrixXcd rot = es.vectors.adjoint() * rho.rho() * es.vectors;
  const Eigen::VectorXd d = support_power(es.values, (1.0 - alpha) / (2.0 * alpha));
  return sandwiched_in_basis(rot, d, outside_support(rot, d), alpha);
}

MeasureResult mutual_information(MiKind kind, const FockState& state, double alpha, double tail_tol) {
  require_two_mode(state);
  state.require_converged(tail_tol);
  if (uses_alpha(kind)) check_alpha(alpha);
  MeasureResult r = make_result(to_string(kind), uses_alpha(kind) ? std::optional<double>(alpha) : std::nullopt, state);
  const FockState ra = partial_trace(state, {0});
  const FockState rb = partial_trace(state, {1});
  auto entropy = [](const FockState& s, double a) { return renyi_entropy(linalg::eigvalsh(s.rho()), a); };

  switch (kind) {
    case MiKind::vn:
      alpha = 1.0;
      [[fallthrough]];
    case MiKind::renyi:
      r.value = entropy(ra, alpha) + entropy(rb, alpha) - entropy(state, alpha);
      break;
    case MiKind::sandwiched:
      r.value = sandwiched_mi(state, ra, rb, alpha);
      r.infinite = std::isinf(r.value);
      break;
    case MiKind::hs:
      r.value = distance(DistanceKind::hilbert_schmidt, state, tensor(ra, rb));
      break;
    case MiKind::tr:
      r.value = distance(DistanceKind::trace, state, tensor(ra, rb));
      break;
    case MiKind::bures: {
      const double f = fidelity(FidelityKind::uhlmann, state, tensor(ra, rb));
      const double sq = std::max(0.0, 2.0 * (1.0 - std::sqrt(std::min(f, 1.0))));
      r.squared = sq;
      r.value = std::sqrt(sq);
      break;
    }
  }
  return r;
}

Reference gaussian_reference(const FockState& state, double tail_tol) {
  const GaussianSpec m = moments_from_fock(state, tail_tol);
  Dims dims = state.dims();
  // The reference is held to the default tolerance even when the caller
  // accepts a truncated target. A quarter leaves room for renormalization.
  const double ref_tol = std::min(tail_tol, kDefaultTailTol);
  const Dims need = required_cutoff(m, ref_tol / 4.0);
  for (std::size_t k = 0; k < dims.size(); ++k) dims[k] = std::max(dims[k], need[k]);
  FockState sigma = reference_gaussian_fock(m, dims, SynthesisMethod::hermite, ref_tol);
  return Reference{m, embed(state, dims), std::move(sigma)};
}

MeasureResult delta_ng(MiKind kind, const FockState& state, double alpha, ReferencePath path, double tail_tol) {
  require_two_mode(state);
  const MeasureResult target = mutual_information(kind, state, alpha, tail_tol);
  MeasureResult r = target;
  r.kind = "delta:" + target.kind;
  double ref = 0.0;
  const bool closed = path == ReferencePath::closed_form && kind != MiKind::tr && kind != MiKind::bures;
  if (closed) {
    const GaussianSpec m = moments_from_fock(state, tail_tol);
    switch (kind) {
      case MiKind::vn: ref = gaussian_mi(GaussianMiKind::renyi, m, 1.0); break;
      case MiKind::renyi: ref = gaussian_mi(GaussianMiKind::renyi, m, alpha); break;
      case MiKind::sandwiched: ref = gaussian_mi(GaussianMiKind::sandwiched, m, alpha); break;
      default: ref = gaussian_mi(GaussianMiKind::hilbert_schmidt, m); break;
    }
  } else {
    // Mutual informations are local-unitary invariant, so the reference is
    // synthesized in standard form where it needs the fewest levels.
    const GaussianSpec m = moments_from_fock(state, tail_tol);
    const GaussianSpec g = GaussianSpec::centered(standard_form(m).form.matrix());
    const double ref_tol = std::min(tail_tol, kDefaultTailTol);
    const FockState sigma = reference_gaussian_fock(g, required_cutoff(g, ref_tol / 4.0), SynthesisMethod::hermite, ref_tol);
    const MeasureResult rr = mutual_information(kind, sigma, alpha, ref_tol);
    ref = rr.value;
    r.cutoff = std::max(r.cutoff, rr.cutoff);
    r.tail_mass = std::max(r.tail_mass, rr.tail_mass);
  }
  const bool ti = std::isinf(target.value), ri = std::isinf(ref);
  r.infinite = ti || ri;
  if (ti && ri)
    r.value = std::numeric_limits<double>::quiet_NaN();
  else
    r.value = target.value - ref;
  r.squared.reset();
  return r;
}

AveragedStates averaged_states(const FockState& state, const FockState& sigma_ab) {
  require_two_mode(state);
  if (state.dims() != sigma_ab.dims()) throw DimMismatch("reference lives on a different space");
  const FockState ra = partial_trace(state, {0});
  const FockState rb = partial_trace(state, {1});
  const FockState sa = partial_trace(sigma_ab, {0});
  const FockState sb = partial_trace(sigma_ab, {1});
  const Eigen::MatrixXcd rt = 0.5 * (state.rho() + kron(sa.rho(), sb.rho()));
  const Eigen::MatrixXcd st = 0.5 * (sigma_ab.rho() + kron(ra.rho(), rb.rho()));
  return AveragedStates{FockState(state.dims(), rt), FockState(state.dims(), st)};
}

AveragedStates averaged_states(const FockState& state, double tail_tol) {
  const Reference g = gaussian_reference(state, tail_tol);
  return averaged_states(g.rho, g.sigma);
}

NgValues ng_correlations(const FockState& state, double tail_tol) {
  require_two_mode(state);
  const Reference g = gaussian_reference(state, tail_tol);
  const AveragedStates av = averaged_states(g.rho, g.sigma);
  NgValues out;
  out.tr = distance(DistanceKind::trace, av.rho_tilde, av.sigma_tilde);
  out.fid = minus_log(fidelity(FidelityKind::uhlmann, av.rho_tilde, av.sigma_tilde));
  out.lb1 = minus_log(fidelity(FidelityKind::super, av.rho_tilde, av.sigma_tilde));
  const double hs = distance(DistanceKind::hilbert_schmidt, av.rho_tilde, av.sigma_tilde);
  out.lb2 = minus_log(1.0 - 0.5 * hs * hs);
  out.tail_mass = std::max(g.rho.tail_mass(), g.sigma.tail_mass());
  return out;
}

MeasureResult ng_correlation(NgKind kind, const FockState& state, double tail_tol) {
  require_two_mode(state);
  const Reference g = gaussian_reference(state, tail_tol);
  const AveragedStates av = averaged_states(g.rho, g.sigma);
  MeasureResult r = make_result("ng:" + to_string(kind), std::nullopt, g.sigma);
  r.tail_mass = std::max(g.rho.tail_mass(), g.sigma.tail_mass());
  switch (kind) {
    case NgKind::tr:
      r.value = distance(DistanceKind::trace, av.rho_tilde, av.sigma_tilde);
      break;
    case NgKind::fid:
      r.value = minus_log(fidelity(FidelityKind::uhlmann, av.rho_tilde, av.sigma_tilde));
      break;
    case NgKind::lb1:
      r.value = minus_log(fidelity(FidelityKind::super, av.rho_tilde, av.sigma_tilde));
      break;
    case NgKind::lb2: {
      const double hs = distance(DistanceKind::hilbert_schmidt, av.rho_tilde, av.sigma_tilde);
      r.value = minus_log(1.0 - 0.5 * hs * hs);
      break;
    }
  }
  return r;
}

LowerBounds ng_lower_bounds(const FockState& state, double tail_tol) {
  require_two_mode(state);
  const GaussianSpec m = moments_from_fock(state, tail_tol);
  const GaussianSpec ma = marginal(m, 0), mb = marginal(m, 1);
  GaussianSpec tau;
  tau.means = m.means;
  tau.cm = Eigen::MatrixXd::Zero(4, 4);
  tau.cm.topLeftCorner<2, 2>() = ma.cm;
  tau.cm.bottomRightCorner<2, 2>() = mb.cm;

  // Gaussian-Gaussian traces.
  const auto lam = symplectic_eigs(m);
  const double t_ss = g_func(lam[0], 2.0) * g_func(lam[1], 2.0);
  const double t_tt = g_func(std::sqrt(ma.cm.determinant()), 2.0) * g_func(std::sqrt(mb.cm.determinant()), 2.0);
  const double t_st = compose_rule(m, tau).prefactor.real();

  // Mixed traces with exact reference elements inside the state's space.
  const Dims& dims = state.dims();
  const Eigen::MatrixXcd sig = gaussian_fock_elements(m, dims);
  const Eigen::MatrixXcd sa = gaussian_fock_elements(ma, {dims[0]});
  const Eigen::MatrixXcd sb = gaussian_fock_elements(mb, {dims[1]});
  const Eigen::MatrixXcd ra = partial_trace(state, {0}).rho();
  const Eigen::MatrixXcd rb = partial_trace(state, {1}).rho();
  const Eigen::MatrixXcd pi = kron(ra, rb);
  const Eigen::MatrixXcd& rho = state.rho();
  auto tp = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return linalg::trace_product(a, b).real(); };
  const double t_rs = tp(rho, sig);
  const double t_rt = tp(rho, kron(sa, sb));
  const double t_sp = tp(sig, pi);
  const double t_tp = tp(sa, ra) * tp(sb, rb);
  const double t_rp = tp(rho, pi);
  const double t_pp = tp(ra, ra) * tp(rb, rb);
  const double t_rr = tp(rho, rho);

  const double overlap = 0.25 * (t_rs + t_rp + t_st + t_tp);
  const double pr = 0.25 * (t_rr + 2.0 * t_rt + t_tt);
  const double ps = 0.25 * (t_ss + 2.0 * t_sp + t_pp);
  LowerBounds out;
  out.lb1 = minus_log(overlap + std::sqrt(std::max(0.0, 1.0 - pr)) * std::sqrt(std::max(0.0, 1.0 - ps)));
  const double hs2 = std::max(0.0, pr + ps - 2.0 * overlap);
  out.lb2 = minus_log(1.0 - 0.5 * hs2);
  return out;
}

MeasureResult ng_lb2_fast(FastCase which, const FockState& state, double tail_tol) {
  require_two_mode(state);
  const GaussianSpec m = moments_from_fock(state, tail_tol);
  MeasureResult r = make_result(which == FastCase::product_reference ? "ng:lb2_fast_product" : "ng:lb2_fast_local",
                                std::nullopt, state);
  if (which == FastCase::product_reference) {
    if (m.cm.topRightCorner<2, 2>().cwiseAbs().maxCoeff() >= 1e-7)
      throw CaseNotApplicable("reference covariance has correlations between the modes");
    const FockState prod = tensor(partial_trace(state, {0}), partial_trace(state, {1}));
    const double d = distance(DistanceKind::hilbert_schmidt, state, prod);
    r.value = minus_log(1.0 - d * d / 8.0);
    return r;
  }
  for (int mode = 0; mode < 2; ++mode) {
    const FockState rm = partial_trace(state, {mode});
    const GaussianSpec gm = marginal(m, mode);
    const double ref_tol = std::min(tail_tol, kDefaultTailTol);
    const Dims need = required_cutoff(gm, ref_tol / 4.0);
    const Dims dims{std::max(rm.dims()[0], need[0])};
    const FockState sm = reference_gaussian_fock(gm, dims, SynthesisMethod::hermite, ref_tol);
    if (fidelity(FidelityKind::uhlmann, embed(rm, dims), sm) <= 1.0 - 1e-7)
      throw CaseNotApplicable("marginal of mode " + std::to_string(mode) + " is not Gaussian");
  }
  const Reference g = gaussian_reference(state, tail_tol);
  const double d = distance(DistanceKind::hilbert_schmidt, g.rho, g.sigma);
  r.value = minus_log(1.0 - d * d / 8.0);
  r.cutoff = g.sigma.max_cutoff();
  r.tail_mass = std::max(g.rho.tail_mass(), g.sigma.tail_mass());
  return r;
}

}  // namespace ngcorr
