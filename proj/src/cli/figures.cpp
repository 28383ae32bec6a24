#include "ngcorr/cli.hpp"

#include "ngcorr/channels.hpp"
#include "ngcorr/distill.hpp"
#include "ngcorr/entanglement.hpp"
#include "ngcorr/errors.hpp"
#include "ngcorr/gaussian.hpp"
#include "ngcorr/measures.hpp"
#include "ngcorr/qubit_oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace ngcorr::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Value {
  double value = 0.0;
  int cutoff = 0;
  double tail_mass = 0.0;
  bool infinite = false;
};

Value from(const MeasureResult& m) { return {m.value, m.cutoff, m.tail_mass, m.infinite}; }
Value from(double v, const FockState& s) { return {v, s.max_cutoff(), s.tail_mass(), false}; }

// Fills value and status; any exception turns the row into a flagged one.
SweepRecord eval_row(SweepRecord row, std::string measure, const std::function<Value()>& fn) {
  row.measure = std::move(measure);
  try {
    const Value v = fn();
    row.value = v.value;
    row.cutoff = v.cutoff;
    row.tail_mass = v.tail_mass;
    if (std::isnan(v.value))
      row.status = Status::flagged;
    else if (v.infinite || std::isinf(v.value))
      row.status = Status::infinity;
  } catch (const std::exception& e) {
    row.value = kNaN;
    row.status = Status::flagged;
    row.note = e.what();
  }
  return row;
}

// Builds a state once per grid point; a failure is rethrown to every row.
class Lazy {
 public:
  explicit Lazy(std::function<FockState()> make) : make_(std::move(make)) {}
  const FockState& operator()() {
    if (!state_) state_.emplace(make_());
    return *state_;
  }

 private:
  std::function<FockState()> make_;
  std::optional<FockState> state_;
};

using Job = std::function<std::vector<SweepRecord>()>;

std::vector<SweepRecord> run_jobs(const std::vector<Job>& jobs, int threads) {
  std::vector<std::vector<SweepRecord>> slots(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) { slots[i] = jobs[i](); });
  std::vector<SweepRecord> rows;
  for (auto& s : slots)
    for (auto& r : s) rows.push_back(std::move(r));
  return rows;
}

Range axis(const std::optional<Range>& flag, double start, double stop, int count) {
  return flag ? *flag : Range{start, stop, count};
}

int contour_count(const Options& o) { return o.grid.value_or(41); }
int line_count(const Options& o) { return o.grid.value_or(51); }

FockState lossy_ecs(double gamma, double eta, const Options& o) {
  const int n = o.cutoff.value_or(ecs_cutoff(gamma));
  return ecs_loss_analytic(gamma, eta, n);
}

StateSpec werner(double f, double r, const Options& o) {
  StateSpec s;
  s.family = Family::cv_werner;
  s.f = f;
  s.r = r;
  const int n = o.cutoff.value_or(werner_cutoff(r));
  s.cutoff = {n, n};
  return s;
}


// Delta E_F for the lossy ECS: the target through its two-qubit form, the
// reference taken as zero once its PPT test shows separability.
Value delta_ef(double gamma, double eta, const FockState& s) {
  const GaussianSpec m = moments_from_fock(s);
  if (gaussian_log_negativity(m) > 0.0) throw DomainError("reference Gaussian state is entangled; E_F unknown");
  return from(eof_two_qubit(ecs_to_xstate(gamma, eta)), s);
}

Value delta_en(const FockState& s) {
  return from(log_negativity_fock(s) - gaussian_log_negativity(moments_from_fock(s)), s);
}

std::vector<SweepRecord> fig2_contour(const std::string& id, MiKind kind, const Options& o) {
  const auto gammas = axis(o.gamma, 0.5, 2.5, contour_count(o)).values();
  const auto alphas = axis(o.alpha, 0.5, 3.0, contour_count(o)).values();
  const std::string name = "delta:" + to_string(kind);
  std::vector<Job> jobs;
  for (double g : gammas)
    jobs.push_back([=, &o] {
      Lazy state([&] {
        StateSpec s;
        s.family = Family::ecs;
        s.gamma = g;
        const int n = o.cutoff.value_or(ecs_cutoff(g));
        s.cutoff = {n, n};
        return make_state(s);
      });
      std::vector<SweepRecord> rows;
      for (double a : alphas) {
        SweepRecord p;
        p.command = id;
        p.gamma = g;
        p.alpha = a;
        rows.push_back(eval_row(p, name, [&] { return from(delta_ng(kind, state(), a)); }));
      }
      return rows;
    });
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig2cd(const Options& o) {
  const auto gammas = axis(o.gamma, 1.0, 1.0, 1).values();
  const auto etas = axis(o.eta, 0.0, 1.0, contour_count(o)).values();
  const auto alphas = axis(o.alpha, 0.5, 3.0, contour_count(o)).values();
  std::vector<Job> jobs;
  for (double g : gammas)
    for (double e : etas)
      jobs.push_back([=, &o] {
        Lazy state([&] { return lossy_ecs(g, e, o); });
        std::vector<SweepRecord> rows;
        for (double a : alphas)
          for (MiKind k : {MiKind::renyi, MiKind::sandwiched}) {
            SweepRecord p;
            p.command = "fig2cd";
            p.gamma = g;
            p.eta = e;
            p.alpha = a;
            rows.push_back(eval_row(p, "delta:" + to_string(k), [&] { return from(delta_ng(k, state(), a)); }));
          }
        return rows;
      });
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig2ef(const Options& o) {
  const auto gammas = axis(o.gamma, 0.5, 1.5, contour_count(o)).values();
  const auto etas = axis(o.eta, 0.0, 1.0, contour_count(o)).values();
  std::vector<Job> jobs;
  for (double g : gammas)
    for (double e : etas)
      jobs.push_back([=, &o] {
        Lazy state([&] { return lossy_ecs(g, e, o); });
        std::vector<SweepRecord> rows;
        for (MiKind k : {MiKind::hs, MiKind::tr}) {
          SweepRecord p;
          p.command = "fig2ef";
          p.gamma = g;
          p.eta = e;
          rows.push_back(eval_row(p, "delta:" + to_string(k), [&] { return from(delta_ng(k, state())); }));
        }
        return rows;
      });
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig3(const Options& o) {
  std::vector<Job> jobs;
  for (double e : axis(o.eta, 0.0, 1.0, line_count(o)).values())
    jobs.push_back([=, &o] {
      StateFile file = fig3_state(e);
      if (o.cutoff) file.spec.cutoff = {*o.cutoff, *o.cutoff};
      SweepRecord p;
      p.command = "fig3";
      p.eta = e;
      return std::vector<SweepRecord>{
          eval_row(p, "delta:hs", [&] { return from(delta_ng(MiKind::hs, build_state(file))); })};
    });
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig4(const Options& o) {
  const auto gammas = axis(o.gamma, 1.0, 1.0, 1).values();
  std::vector<Job> jobs;
  for (double g : gammas)
    for (double e : axis(o.eta, 0.0, 1.0, line_count(o)).values())
      jobs.push_back([=, &o] {
        Lazy state([&] { return lossy_ecs(g, e, o); });
        SweepRecord p;
        p.command = "fig4";
        p.gamma = g;
        p.eta = e;
        std::optional<LowerBounds> lb;
        auto bounds = [&] {
          if (!lb) lb = ng_lower_bounds(state());
          return *lb;
        };
        return std::vector<SweepRecord>{
            eval_row(p, "ng:tr", [&] { return from(ng_correlation(NgKind::tr, state())); }),
            eval_row(p, "ng:lb1", [&] { return from(bounds().lb1, state()); }),
            eval_row(p, "ng:lb2", [&] { return from(bounds().lb2, state()); }),
            eval_row(p, "delta:vn", [&] { return from(delta_ng(MiKind::vn, state())); }),
        };
      });
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig5(const Options& o) {
  const Range gr = axis(o.gamma, 0.2, 1.5, 1), er = axis(o.eta, 0.0, 1.0, 1);
  const int n = o.samples.value_or(10000);
  if (n < 1) throw BadSpec("--samples must be at least 1");
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> ug(gr.start, gr.stop), ue(er.start, er.stop);
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    const double g = ug(rng), e = ue(rng);
    jobs.push_back([=, &o] {
      Lazy state([&] { return lossy_ecs(g, e, o); });
      SweepRecord p;
      p.command = "fig5";
      p.gamma = g;
      p.eta = e;
      p.seed = o.seed;
      return std::vector<SweepRecord>{
          eval_row(p, "delta_ef", [&] { return delta_ef(g, e, state()); }),
          eval_row(p, "ng:lb1", [&] { return from(ng_lower_bounds(state()).lb1, state()); }),
      };
    });
  }
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig6a(const Options& o) {
  std::vector<Job> jobs;
  for (double r : axis(o.r, 0.05, 0.1, 2).values())
    for (double f : axis(o.f, 0.0, 1.0, line_count(o)).values())
      jobs.push_back([=, &o] {
        SweepRecord p;
        p.command = "fig6a";
        p.r = r;
        p.f = f;
        return std::vector<SweepRecord>{eval_row(
            p, "ng:tr", [&] { return from(ng_correlation(NgKind::tr, make_state(werner(f, r, o)))); })};
      });
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig6b(const Options& o) {
  const Range fr = axis(o.f, 0.0, 1.0, 1), rr = axis(o.r, 0.0, 0.2, 1);
  const int n = o.samples.value_or(10000);
  if (n < 1) throw BadSpec("--samples must be at least 1");
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> uf(fr.start, fr.stop), ur(rr.start, rr.stop);
  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    const double f = uf(rng), r = ur(rng);
    jobs.push_back([=, &o] {
      Lazy state([&] { return make_state(werner(f, r, o)); });
      SweepRecord p;
      p.command = "fig6b";
      p.f = f;
      p.r = r;
      p.seed = o.seed;
      return std::vector<SweepRecord>{
          eval_row(p, "delta_en", [&] { return delta_en(state()); }),
          eval_row(p, "ng:tr", [&] { return from(ng_correlation(NgKind::tr, state())); }),
      };
    });
  }
  return run_jobs(jobs, o.threads);
}

std::vector<SweepRecord> fig6cd(const Options& o) {
  const auto etas = axis(o.eta, 0.9, 0.9, 1).values();
  const auto xs = axis(o.x, 0.8, 0.8, 1).values();
  std::vector<Job> jobs;
  for (double r : axis(o.r, 0.05, 0.1, 2).values())
    for (double e : etas)
      for (double x : xs)
        for (double f : axis(o.f, 0.0, 1.0, line_count(o)).values())
          jobs.push_back([=, &o] {
            Lazy state([&] { return make_state(werner(f, r, o)); });
            SweepRecord p;
            p.command = "fig6cd";
            p.r = r;
            p.eta = e;
            p.x = x;
            p.f = f;
            return std::vector<SweepRecord>{
                eval_row(p, "en", [&] { return from(log_negativity_fock(state()), state()); }),
                eval_row(p, "en_distilled",
                         [&] {
                           DistillConfig c;
                           c.eta_bs = e;
                           c.x_c = c.x_d = x;
                           const FockState out = distill(state(), c).out;
                           return from(log_negativity_fock(out), out);
                         }),
            };
          });
  return run_jobs(jobs, o.threads);
}

// Parsed measure id for measure_state.
struct MeasureId {
  enum class Type { mi, delta, ng, fast, en, delta_en, ef, delta_ef } type = Type::mi;
  MiKind mi = MiKind::vn;
  NgKind ng = NgKind::tr;
  FastCase fast = FastCase::product_reference;
  std::optional<double> alpha;
};

MeasureId parse_measure(const std::string& id) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto c = id.find(':', start);
    parts.push_back(id.substr(start, c == std::string::npos ? std::string::npos : c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  auto bad = [&](const std::string& why) -> BadSpec { return BadSpec("measure '" + id + "': " + why); };
  auto mi_tail = [&](MeasureId& m, std::size_t at) {
    try {
      m.mi = mi_kind_from_string(parts[at]);
    } catch (const BadSpec&) {
      throw bad("unknown mutual information kind '" + parts[at] + "'");
    }
    const bool needs = m.mi == MiKind::renyi || m.mi == MiKind::sandwiched;
    if (parts.size() == at + 2) {
      if (!needs) throw bad("kind takes no alpha");
      try {
        std::size_t used = 0;
        m.alpha = std::stod(parts[at + 1], &used);
        if (used != parts[at + 1].size() || !(*m.alpha > 0.0)) throw BadSpec("");
      } catch (const std::exception&) {
        throw bad("alpha must be a positive number");
      }
    } else if (parts.size() == at + 1) {
      if (needs) throw bad("kind needs an alpha, e.g. " + parts[at] + ":2");
    } else {
      throw bad("too many fields");
    }
  };
  MeasureId m;
  const std::string& head = parts[0];
  if (head == "en" || head == "delta_en" || head == "ef" || head == "delta_ef") {
    if (parts.size() != 1) throw bad("takes no arguments");
    m.type = head == "en" ? MeasureId::Type::en
             : head == "delta_en" ? MeasureId::Type::delta_en
             : head == "ef" ? MeasureId::Type::ef
                            : MeasureId::Type::delta_ef;
  } else if (head == "delta") {
    if (parts.size() < 2) throw bad("missing kind");
    m.type = MeasureId::Type::delta;
    mi_tail(m, 1);
  } else if (head == "ng") {
    if (parts.size() != 2) throw bad("expected ng:<tr|fid|lb1|lb2>");
    m.type = MeasureId::Type::ng;
    try {
      m.ng = ng_kind_from_string(parts[1]);
    } catch (const BadSpec&) {
      throw bad("unknown kind '" + parts[1] + "'");
    }
  } else if (head == "lb2fast") {
    if (parts.size() != 2 || (parts[1] != "product" && parts[1] != "local"))
      throw bad("expected lb2fast:<product|local>");
    m.type = MeasureId::Type::fast;
    m.fast = parts[1] == "product" ? FastCase::product_reference : FastCase::local_gaussian;
  } else {
    mi_tail(m, 0);
  }
  return m;
}

Value evaluate(const MeasureId& m, const StateFile& file, const FockState& s) {
  const double a = m.alpha.value_or(1.0);
  auto ecs_only = [&] {
    if (file.spec.family != Family::ecs || file.spec.gamma.imag() != 0.0 || !file.spec.levels.empty())
      throw DomainError("E_F is available for the (lossy) ecs family with real gamma only");
  };
  switch (m.type) {
    case MeasureId::Type::mi: return from(mutual_information(m.mi, s, a));
    case MeasureId::Type::delta: return from(delta_ng(m.mi, s, a));
    case MeasureId::Type::ng: return from(ng_correlation(m.ng, s));
    case MeasureId::Type::fast: return from(ng_lb2_fast(m.fast, s));
    case MeasureId::Type::en: return from(log_negativity_fock(s), s);
    case MeasureId::Type::delta_en: return delta_en(s);
    case MeasureId::Type::ef:
      ecs_only();
      return from(eof_two_qubit(ecs_to_xstate(file.spec.gamma.real(), file.eta)), s);
    case MeasureId::Type::delta_ef:
      ecs_only();
      return delta_ef(file.spec.gamma.real(), file.eta, s);
  }
  throw BadSpec("unhandled measure");
}

}  // namespace

StateFile fig3_state(double eta) {
  StateFile file;
  file.spec.family = Family::pnes;
  const double c0 = 0.986, c1 = 0.162;
  // Same arithmetic as the 'rest' entry of a state file.
  file.spec.coeffs = {c0, c1, std::sqrt(1.0 - (c0 * c0 + c1 * c1))};
  file.eta = eta;
  return file;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2a", "fig2b", "fig2cd", "fig2ef", "fig3",
                                               "fig4",  "fig5",  "fig6a",  "fig6b",  "fig6cd"};
  return ids;
}

std::vector<SweepRecord> run_figure(const std::string& id, const Options& opts) {
  if (opts.grid && *opts.grid < 1) throw BadSpec("--grid must be at least 1");
  if (opts.cutoff && *opts.cutoff < 2) throw BadSpec("--cutoff must be at least 2");
  if (id == "fig2a") return fig2_contour(id, MiKind::renyi, opts);
  if (id == "fig2b") return fig2_contour(id, MiKind::sandwiched, opts);
  if (id == "fig2cd") return fig2cd(opts);
  if (id == "fig2ef") return fig2ef(opts);
  if (id == "fig3") return fig3(opts);
  if (id == "fig4") return fig4(opts);
  if (id == "fig5") return fig5(opts);
  if (id == "fig6a") return fig6a(opts);
  if (id == "fig6b") return fig6b(opts);
  if (id == "fig6cd") return fig6cd(opts);
  throw BadSpec("unknown figure '" + id + "'");
}

std::vector<SweepRecord> measure_state(const StateFile& file, const std::vector<std::string>& measures,
                                       const Options& opts) {
  if (measures.empty()) throw BadSpec("no measures requested");
  std::vector<MeasureId> ids;
  for (const auto& m : measures) ids.push_back(parse_measure(m));
  std::vector<double> etas = opts.eta ? opts.eta->values() : std::vector<double>{file.eta};
  for (double e : etas)
    if (!(e >= 0.0 && e <= 1.0)) throw BadEta("loss transmittance must lie in [0, 1]");

  std::vector<Job> jobs;
  for (double e : etas)
    jobs.push_back([=, &file, &ids, &measures] {
      StateFile f = file;
      f.eta = e;
      if (opts.cutoff) f.spec.cutoff.assign(static_cast<std::size_t>(family_modes(f.spec)), *opts.cutoff);
      Lazy state([&] { return build_state(f); });
      SweepRecord p;
      p.command = "measure_state";
      p.eta = e;
      const Family fam = f.spec.family;
      if ((fam == Family::coherent || fam == Family::cat || fam == Family::ecs) && f.spec.gamma.imag() == 0.0)
        p.gamma = f.spec.gamma.real();
      if (fam == Family::tmsv || fam == Family::cv_werner) p.r = f.spec.r;
      if (fam == Family::cv_werner) p.f = f.spec.f;
      std::vector<SweepRecord> rows;
      for (std::size_t k = 0; k < ids.size(); ++k) {
        SweepRecord q = p;
        q.alpha = ids[k].alpha;
        rows.push_back(eval_row(q, measures[k], [&] { return evaluate(ids[k], f, state()); }));
      }
      return rows;
    });
  return run_jobs(jobs, opts.threads);
}

}  // namespace ngcorr::cli
