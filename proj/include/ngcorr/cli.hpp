#pragma once

// Figure sweeps, state-file evaluation and the self-test behind the ngcorr
// command-line tool.

#include "ngcorr/fock.hpp"
#include "ngcorr/states.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ngcorr::cli {

/// "start:stop:count", endpoints included. count = 1 gives start alone.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
  static Range parse(const std::string& text);
};

enum class Status { ok, infinity, flagged };
std::string to_string(Status s);

struct SweepRecord {
  std::string command;
  std::optional<double> gamma, alpha, eta, f, r, x;
  std::optional<std::uint64_t> seed;
  std::string measure;
  double value = 0.0;
  int cutoff = 0;
  double tail_mass = 0.0;
  Status status = Status::ok;
  // Error text for flagged rows; not part of the CSV.
  std::string note;
};

struct Options {
  std::optional<int> cutoff;
  std::optional<int> grid;
  std::optional<int> samples;
  std::uint64_t seed = 7;
  int threads = 1;
  std::optional<Range> eta, gamma, alpha, f, r, x;
};

/// --threads, else NGCORR_THREADS, else hardware concurrency.
int resolve_threads(std::optional<int> flag);

/// Runs job(i) for i in [0, n) on a pool of the given size. Exceptions
/// escaping a job are rethrown after the pool drains.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& job);

/// Header plus one line per record; values use 17 significant digits.
void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows);

const std::vector<std::string>& figure_ids();

/// Rows in grid order. Errors at a grid point become status=flagged rows.
/// Throws BadSpec for an unknown id.
std::vector<SweepRecord> run_figure(const std::string& id, const Options& opts);

/// Smallest per-mode cutoff N for the ECS at amplitude gamma whose marginal
/// population from level N-1 upward stays below tol. Loss only lowers
/// photon numbers, so it also covers every lossy ECS at that gamma.
int ecs_cutoff(double gamma, double tol = 1e-10);

/// Per-mode cutoff for the CV Werner state whose squeezed branch keeps
/// population below tol at the top level.
int werner_cutoff(double r, double tol = 1e-12);

/// One state per file; see the README for the grammar.
struct StateFile {
  StateSpec spec;
  double eta = 1.0;  // symmetric loss applied after preparation
};
StateFile parse_state_file(std::istream& in, const std::string& name = "<input>");
StateFile load_state_file(const std::string& path);
FockState build_state(const StateFile& file);

/// The photon-number entangled state of fig3 (c0 = 0.986, c1 = 0.162, c2 the
/// remainder) under symmetric loss eta.
StateFile fig3_state(double eta);

/// Measure ids: "<mi>[:alpha]", "delta:<mi>[:alpha]", "ng:<tr|fid|lb1|lb2>",
/// "lb2fast:<product|local>", "en" and "ef". When opts.eta is set the state
/// is re-prepared at each loss value in turn.
std::vector<SweepRecord> measure_state(const StateFile& file, const std::vector<std::string>& measures,
                                       const Options& opts);

enum class SelftestLevel { quick, full };

struct SelftestReport {
  int passed = 0;
  int failed = 0;
};
/// Prints one line per check to out. Nonzero failed means the build is broken.
SelftestReport selftest(SelftestLevel level, std::ostream& out);

}  // namespace ngcorr::cli
