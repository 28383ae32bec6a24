#include "ngcorr/cli.hpp"
#include "ngcorr/errors.hpp"
#include "ngcorr/gaussian.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace ngcorr;

namespace {

struct RawOptions {
  std::string out;
  std::optional<int> cutoff, grid, samples, threads;
  std::uint64_t seed = 7;
  std::string eta, gamma, alpha, f, r, x;
};

void add_sweep_flags(CLI::App* app, RawOptions& raw) {
  app->add_option("--out", raw.out, "CSV output path (default stdout)");
  app->add_option("--cutoff", raw.cutoff, "per-mode Fock cutoff, overriding the tail-mass rule");
  app->add_option("--grid", raw.grid, "points per axis (41 for contours, 51 for lines)");
  app->add_option("--samples", raw.samples, "sample count for fig5 and fig6b (default 10000)");
  app->add_option("--seed", raw.seed, "RNG seed for sampled figures (default 7)");
  app->add_option("--threads", raw.threads, "worker threads (default NGCORR_THREADS, else all cores)");
  for (auto [name, dest] : {std::pair{"--eta", &raw.eta}, {"--gamma", &raw.gamma}, {"--alpha", &raw.alpha},
                            {"--f", &raw.f}, {"--r", &raw.r}, {"--x", &raw.x}})
    app->add_option(name, *dest, "range start:stop:count");
}

cli::Options resolve(const RawOptions& raw) {
  cli::Options o;
  o.cutoff = raw.cutoff;
  o.grid = raw.grid;
  o.samples = raw.samples;
  o.seed = raw.seed;
  o.threads = cli::resolve_threads(raw.threads);
  auto range = [](const std::string& s) -> std::optional<cli::Range> {
    if (s.empty()) return std::nullopt;
    return cli::Range::parse(s);
  };
  o.eta = range(raw.eta);
  o.gamma = range(raw.gamma);
  o.alpha = range(raw.alpha);
  o.f = range(raw.f);
  o.r = range(raw.r);
  o.x = range(raw.x);
  return o;
}

int emit(const std::vector<cli::SweepRecord>& rows, const std::string& path) {
  for (const auto& row : rows)
    if (!row.note.empty()) std::cerr << "flagged " << row.command << " " << row.measure << ": " << row.note << "\n";
  if (path.empty()) {
    cli::write_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  cli::write_csv(out, rows);
  return out ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Gaussian correlation measures of two-mode bosonic states"};
  app.require_subcommand(1);

  RawOptions fig_raw;
  std::string fig_id;
  auto* fig = app.add_subcommand("figure", "reproduce the data behind a figure as CSV");
  fig->add_option("id", fig_id, "fig2a fig2b fig2cd fig2ef fig3 fig4 fig5 fig6a fig6b fig6cd")
      ->required()
      ->check(CLI::IsMember(cli::figure_ids()));
  add_sweep_flags(fig, fig_raw);

  RawOptions ms_raw;
  std::string spec_path;
  std::vector<std::string> measures;
  auto* ms = app.add_subcommand("measure", "evaluate measures on a state described by a spec file");
  ms->add_option("spec", spec_path, "state spec file")->required();
  ms->add_option("measures", measures, "measure ids, e.g. renyi:2 delta:hs ng:tr")->required();
  add_sweep_flags(ms, ms_raw);

  std::string level = "quick";
  bool flip = false;
  auto* st = app.add_subcommand("selftest", "run the oracle suites");
  st->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  st->add_flag("--inject-sign-flip", flip, "corrupt the symplectic closed form (mutation canary)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fig) return emit(cli::run_figure(fig_id, resolve(fig_raw)), fig_raw.out);
    if (*ms) return emit(cli::measure_state(cli::load_state_file(spec_path), measures, resolve(ms_raw)), ms_raw.out);
    fault::set_symplectic_sign_flip(flip);
    const auto report = cli::selftest(level == "full" ? cli::SelftestLevel::full : cli::SelftestLevel::quick, std::cout);
    std::cout << report.passed << " passed, " << report.failed << " failed\n";
    return report.failed == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
