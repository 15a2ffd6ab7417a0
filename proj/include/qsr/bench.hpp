#pragma once

// Benchmark harness: regions, scenarios, weakened networks, then the three
// simplifications per instance; plus the small fits used to read the results.

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "qsr/baselines.hpp"
#include "qsr/generate.hpp"

namespace qsr {

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds{1};
  std::vector<RegionProfile> profiles{RegionProfile::Nested};
  Calculus calculus = Calculus::RCC8;
  const Subalgebra* subalgebra = nullptr;  // weakening target; nullptr keeps the scenarios
  WeakenOptions weaken{0.0, 0.0};
  std::size_t workers = 1;
  bool timings = false;
};

struct BenchRow {
  RegionProfile profile = RegionProfile::Nested;
  std::uint64_t seed = 0;
  ComparisonRow row;
};

/// Instance k of the run, reproducible on its own.
inline Network bench_instance(const BenchConfig& cfg, std::size_t n, std::uint64_t seed,
                              RegionProfile profile) {
  Network net = geometric_scenario(cfg.calculus, n, seed, profile);
  if (cfg.subalgebra) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    net = weaken(net, *cfg.subalgebra, rng, cfg.weaken);
  }
  return net;
}

/// Calls f(k) for k in [0, count) on up to `workers` threads; f must only
/// touch state owned by slot k. The first exception is rethrown after the join.
template <class F>
void parallel_for(std::size_t count, std::size_t workers, F f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < count;) {
      try {
        f(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t w = std::max<std::size_t>(1, std::min(workers, count));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < w; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Rows in the order profile, size, seed, whatever the worker count.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  struct Job {
    RegionProfile profile;
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (RegionProfile p : cfg.profiles)
    for (std::size_t n : cfg.sizes)
      for (std::uint64_t s : cfg.seeds) jobs.push_back({p, n, s});
  std::vector<BenchRow> rows(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t k) {
    const Job& j = jobs[k];
    const Network net = bench_instance(cfg, j.n, j.seed, j.profile);
    rows[k] = {j.profile, j.seed, compare_one(net, {kDefaultGuard, cfg.timings}).row};
  });
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "profile,seed," << kComparisonCsvHeader << '\n';
  for (const auto& r : rows) {
    os << profile_name(r.profile) << ',' << r.seed << ',';
    write_csv_row(os, r.row);
  }
  return os.str();
}

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
};

/// Least squares y = slope * x + intercept.
inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  LinearFit f;
  if (m < 2 || y.size() != m) return f;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) sx += x[i], sy += y[i];
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

/// Slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::max(y[i], 1e-9)));
  }
  return fit_line(lx, ly).slope;
}

}  // namespace qsr
