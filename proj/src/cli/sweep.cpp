#include "ngcorr/cli.hpp"

#include "ngcorr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace ngcorr::cli {

std::vector<double> Range::values() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  if (count > 1) v.back() = stop;
  return v;
}

Range Range::parse(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos)
    throw BadSpec("range '" + text + "' is not start:stop:count");
  Range r;
  try {
    std::size_t used = 0;
    const std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1), s2 = text.substr(b + 1);
    r.start = std::stod(s0, &used);
    if (used != s0.size()) throw BadSpec("");
    r.stop = std::stod(s1, &used);
    if (used != s1.size()) throw BadSpec("");
    r.count = std::stoi(s2, &used);
    if (used != s2.size()) throw BadSpec("");
  } catch (const std::exception&) {
    throw BadSpec("range '" + text + "' is not start:stop:count");
  }
  if (r.count < 1) throw BadSpec("range '" + text + "' needs count >= 1");
  if (!std::isfinite(r.start) || !std::isfinite(r.stop)) throw BadSpec("range '" + text + "' has a non-finite end");
  return r;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::infinity: return "infinity";
    case Status::flagged: return "flagged";
  }
  return "flagged";
}

int resolve_threads(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw BadSpec("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("NGCORR_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
    throw BadSpec(std::string("NGCORR_THREADS='") + env + "' is not a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << "command,gamma,alpha,eta,f,r,x,seed,measure,value,cutoff,tail_mass,status\n";
  for (const auto& row : rows) {
    out << row.command << ',' << opt(row.gamma) << ',' << opt(row.alpha) << ',' << opt(row.eta) << ',' << opt(row.f)
        << ',' << opt(row.r) << ',' << opt(row.x) << ',' << (row.seed ? std::to_string(*row.seed) : std::string())
        << ',' << row.measure << ',' << num(row.value) << ',' << row.cutoff << ',' << num(row.tail_mass) << ','
        << to_string(row.status) << '\n';
  }
}

int ecs_cutoff(double gamma, double tol) {
  if (!(gamma > 0.0)) throw DomainError("ecs_cutoff needs gamma > 0");
  const double g2 = gamma * gamma;
  const double e = std::exp(-2.0 * g2);
  const double norm[2] = {2.0 + 2.0 * e, 2.0 - 2.0 * e};
  // p_n = 2 e^{-g^2} g^{2n} / (n! N_parity(n)) is the marginal population.
  double tail = 1.0, logp = -g2;
  for (int n = 0; n < 400; ++n) {
    tail -= 2.0 * std::exp(logp) / norm[n % 2];
    if (n >= 1 && tail < tol) return n + 2;
    logp += std::log(g2) - std::log(n + 1.0);
  }
  throw TruncationError("ecs_cutoff: amplitude too large");
}

int werner_cutoff(double r, double tol) {
  const double t2 = std::pow(std::tanh(std::abs(r)), 2);
  if (t2 == 0.0) return 4;
  // Populations (1 - t^2) t^(2n) on the squeezed branch.
  const int n = static_cast<int>(std::ceil(std::log(tol) / std::log(t2))) + 1;
  return std::clamp(n, 4, 400);
}

}  // namespace ngcorr::cli
