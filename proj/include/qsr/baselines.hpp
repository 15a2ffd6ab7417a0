#pragma once

// Simple and SimpleExt network simplification and the three-way
// comparison with the prime subnetwork.

#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qsr/redundancy.hpp"

namespace qsr {

struct SimplifyResult {
  Network network;
  std::uint64_t checks = 0;  // containment tests performed
};

/// One pass over ordered triples (i,j,k) of distinct variables in ascending
/// order; (i,k) is dropped as soon as R_ij ; R_jk ⊆ R_ik. Dropped entries are
/// universal from then on.
inline SimplifyResult simple(const Network& net) {
  SimplifyResult res{net, 0};
  Network& cur = res.network;
  const std::size_t n = cur.size();
  const auto& t = CompositionTable::get(cur.calculus());
  const std::uint8_t all = universal_bits(cur.calculus());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || cur.bits(i, k) == all) continue;
        ++res.checks;
        if ((t.compose(cur.bits(i, j), cur.bits(j, k)) & ~cur.bits(i, k)) == 0)
          cur.set_bits(i, k, all);
      }
    }
  return res;
}

/// Marks first, removes afterwards. A mark on (i,k) needs justification by
/// unmarked entries only: first by single triples exactly as in simple(),
/// then, until nothing changes, by the intersection of R_ij ; R_jk over every
/// j whose two entries are unmarked. All marked entries are then removed at once.
inline SimplifyResult simple_ext(const Network& net) {
  SimplifyResult res{net, 0};
  const std::size_t n = net.size();
  const auto& t = CompositionTable::get(net.calculus());
  const std::uint8_t all = universal_bits(net.calculus());
  std::vector<std::uint8_t> marked(n * n, 0);
  auto is_marked = [&](std::size_t a, std::size_t b) { return marked[a * n + b] != 0; };
  auto mark = [&](std::size_t a, std::size_t b) { marked[a * n + b] = marked[b * n + a] = 1; };
  // Current value of an entry: marked entries no longer constrain.
  auto val = [&](std::size_t a, std::size_t b) {
    return is_marked(a, b) ? all : net.bits(a, b);
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || val(i, k) == all) continue;
        ++res.checks;
        if ((t.compose(val(i, j), val(j, k)) & ~net.bits(i, k)) == 0) mark(i, k);
      }
    }

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        if (val(i, k) == all) continue;
        std::uint8_t q = all;
        for (std::size_t j = 0; j < n && (q & ~net.bits(i, k)) != 0; ++j) {
          if (j == i || j == k) continue;
          ++res.checks;
          q &= t.compose(val(i, j), val(j, k));
        }
        if ((q & ~net.bits(i, k)) == 0) {
          mark(i, k);
          changed = true;
        }
      }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (is_marked(i, k)) res.network.set_bits(i, k, all);
  return res;
}

struct ComparisonRow {
  std::size_t n = 0;
  std::size_t constraint_total = 0;
  std::size_t prime_kept = 0;
  std::size_t simpleext_kept = 0;
  std::size_t simple_kept = 0;
  std::uint64_t prime_checks = 0;
  std::uint64_t simpleext_checks = 0;
  std::uint64_t simple_checks = 0;
  double prime_ms = 0;
  double simpleext_ms = 0;
  double simple_ms = 0;
  RedundancyMethod prime_method = RedundancyMethod::Algorithm1;
  bool nested = true;  // prime ⊆ simple_ext ⊆ simple as edge sets
};

struct CompareOptions {
  std::size_t guard = kDefaultGuard;
  bool timings = false;  // wall times are left at 0 unless requested, keeping output reproducible
};

struct CompareOutcome {
  ComparisonRow row;
  Network prime, simpleext, simple;
};

namespace detail {

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline bool edges_subset(const Network& a, const Network& b) {
  for (const auto& [i, j] : a.constraints())
    if (b.at(i, j).is_universal()) return false;
  return true;
}

}  // namespace detail

/// Runs the three simplifications on one consistent network. The prime
/// subnetwork comes from Algorithm 1 when the network qualifies, from the
/// iterative procedure otherwise. Nesting must hold whenever Algorithm 1 applies.
inline CompareOutcome compare_one(const Network& net, const CompareOptions& opt = {}) {
  CompareOutcome out;
  ComparisonRow& row = out.row;
  row.n = net.size();
  row.constraint_total = net.constraint_count();
  double ms = detail::time_ms([&] {
    try {
      auto a1 = core_algorithm1(net);
      out.prime = std::move(a1.core);
      row.prime_checks = a1.report.checks;
      row.prime_method = RedundancyMethod::Algorithm1;
    } catch (const PreconditionError&) {
      out.prime = prime_iterative(net, {}, opt.guard, &row.prime_checks);
      row.prime_method = over_tractable_class(net) ? RedundancyMethod::TractableSubclass
                                                   : RedundancyMethod::General;
    }
  });
  if (opt.timings) row.prime_ms = ms;
  SimplifyResult se, si;
  ms = detail::time_ms([&] { se = simple_ext(net); });
  if (opt.timings) row.simpleext_ms = ms;
  ms = detail::time_ms([&] { si = simple(net); });
  if (opt.timings) row.simple_ms = ms;
  row.simpleext_checks = se.checks;
  row.simple_checks = si.checks;
  out.simpleext = std::move(se.network);
  out.simple = std::move(si.network);
  row.prime_kept = out.prime.constraint_count();
  row.simpleext_kept = out.simpleext.constraint_count();
  row.simple_kept = out.simple.constraint_count();
  row.nested = detail::edges_subset(out.prime, out.simpleext) &&
               detail::edges_subset(out.simpleext, out.simple);
  if (!row.nested && row.prime_method == RedundancyMethod::Algorithm1)
    throw Error("compare: nesting prime ⊆ SimpleExt ⊆ Simple violated");
  return out;
}

inline std::vector<ComparisonRow> compare(const std::vector<Network>& nets,
                                          const CompareOptions& opt = {}) {
  std::vector<ComparisonRow> rows;
  rows.reserve(nets.size());
  for (const Network& net : nets) rows.push_back(compare_one(net, opt).row);
  return rows;
}

inline constexpr const char* kComparisonCsvHeader =
    "n,constraint_total,prime_kept,simpleext_kept,simple_kept,prime_checks,simpleext_checks,"
    "simple_checks,prime_ms,simpleext_ms,simple_ms";

inline void write_csv_row(std::ostream& os, const ComparisonRow& r) {
  os << r.n << ',' << r.constraint_total << ',' << r.prime_kept << ',' << r.simpleext_kept << ','
     << r.simple_kept << ',' << r.prime_checks << ',' << r.simpleext_checks << ','
     << r.simple_checks << ',' << r.prime_ms << ',' << r.simpleext_ms << ',' << r.simple_ms
     << '\n';
}

inline std::string to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << kComparisonCsvHeader << '\n';
  for (const auto& r : rows) write_csv_row(os, r);
  return os.str();
}

}  // namespace qsr
