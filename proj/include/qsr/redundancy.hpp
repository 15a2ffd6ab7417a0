#pragma once

// Redundant constraints, the core, iterative prime subnetworks and the cubic
// algorithm for networks over a distributive subalgebra.

#include <set>
#include <string>
#include <vector>

#include "qsr/reasoning.hpp"

namespace qsr {

enum class RedundancyMethod { General, TractableSubclass, Algorithm1 };

inline const char* method_name(RedundancyMethod m) {
  switch (m) {
    case RedundancyMethod::General: return "general";
    case RedundancyMethod::TractableSubclass: return "tractable";
    case RedundancyMethod::Algorithm1: return "algorithm1";
  }
  return "?";
}

struct RedundancyReport {
  std::vector<Edge> redundant;            // includes the trivial ones
  std::vector<Edge> trivially_redundant;  // universal entries
  RedundancyMethod method = RedundancyMethod::General;
  std::uint64_t checks = 0;               // consistency checks or compositions
  std::string subalgebra;                 // governing class for Algorithm1
};

/// Whether (i,j) is entailed by the rest of the network. Over a tractable
/// class this tries each basic outside R_ij with one a-closure; otherwise the
/// complement is tested with the search oracle.
inline bool is_redundant(const Network& net, std::size_t i, std::size_t j,
                         std::size_t guard = kDefaultGuard, std::uint64_t* checks = nullptr) {
  if (i == j) throw InvalidArgument("is_redundant: i == j");
  const Relation r = net.at(i, j);
  if (r.is_universal()) return true;
  const Network rest = remove_constraint(net, i, j);
  if (over_tractable_class(net)) {
    const std::uint8_t outside = complement(r).bits();
    for (int b = 0; b < basic_count(net.calculus()); ++b) {
      if (!(outside & (1u << b))) continue;
      Network probe = rest;
      probe.set(i, j, Relation::basic(net.calculus(), b));
      if (checks) ++*checks;
      if (a_closure(probe).consistent) return false;
    }
    return true;
  }
  if (checks) ++*checks;
  return entails(rest, i, j, r, guard);
}

/// Folds over `order`, dropping each constraint that is redundant in the
/// current network. `order` must list every non-universal pair exactly once
/// (either orientation); empty means ascending (i,j).
inline Network prime_iterative(const Network& net, std::vector<Edge> order = {},
                               std::size_t guard = kDefaultGuard, std::uint64_t* checks = nullptr) {
  const std::vector<Edge> cons = net.constraints();
  if (order.empty()) {
    order = cons;
  } else {
    for (auto& e : order)
      if (e.first > e.second) std::swap(e.first, e.second);
    std::vector<Edge> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != cons)
      throw InvalidArgument("prime_iterative: order must list every constraint exactly once");
  }
  Network cur = net;
  for (const auto& [i, j] : order)
    if (is_redundant(cur, i, j, guard, checks)) cur = remove_constraint(std::move(cur), i, j);
  return cur;
}

/// All redundant constraints of net, each tested independently.
inline RedundancyReport redundant_constraints(const Network& net, std::size_t guard = kDefaultGuard) {
  RedundancyReport rep;
  rep.method = over_tractable_class(net) ? RedundancyMethod::TractableSubclass
                                         : RedundancyMethod::General;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      if (net.at(i, j).is_universal()) {
        rep.trivially_redundant.emplace_back(i, j);
        rep.redundant.emplace_back(i, j);
      } else if (is_redundant(net, i, j, guard, &rep.checks)) {
        rep.redundant.emplace_back(i, j);
      }
    }
  return rep;
}

/// Γ_c: the network keeping only the non-redundant constraints.
inline Network core(const Network& net, std::size_t guard = kDefaultGuard) {
  Network out = net;
  for (const auto& [i, j] : redundant_constraints(net, guard).redundant)
    out.set_bits(i, j, universal_bits(net.calculus()));
  return out;
}

struct Algorithm1Options {
  const Subalgebra* subalgebra = nullptr;  // nullptr: first built-in containing every entry
  // Test subalgebra membership on the a-closure instead of the input. Off by
  // default; the correctness guarantee is stated for inputs over the subalgebra.
  bool membership_on_closure = false;
};

struct Algorithm1Result {
  RedundancyReport report;
  Network core;      // Γ_c, the unique prime subnetwork
  Network closure;   // Γ_p
};

namespace detail {

inline const Subalgebra* governing_subalgebra(const Network& net, const Algorithm1Options& opt) {
  if (opt.subalgebra) {
    if (opt.subalgebra->calculus() != net.calculus()) throw CalculusMismatch();
    if (!opt.subalgebra->flags().distributive)
      throw NotDistributive(opt.subalgebra->name() + " is not a distributive subalgebra");
    return over_subalgebra(net, *opt.subalgebra) ? opt.subalgebra : nullptr;
  }
  for (const Subalgebra* s : distributive_builtins(net.calculus()))
    if (over_subalgebra(net, *s)) return s;
  return nullptr;
}

}  // namespace detail

/// All redundant constraints of a consistent all-different network over a
/// distributive subalgebra, from a single a-closure: (i,j) is redundant iff
/// S_ij equals the intersection of S_ik ; S_kj over all other k.
inline Algorithm1Result core_algorithm1(const Network& net, const Algorithm1Options& opt = {}) {
  const std::size_t n = net.size();
  AClosureResult pc = a_closure(net);
  if (!pc.consistent) throw InconsistentNetwork("core_algorithm1: network is inconsistent");
  const Network& closed = pc.network;
  const Subalgebra* sub = detail::governing_subalgebra(opt.membership_on_closure ? closed : net, opt);
  if (!sub)
    throw NotDistributive(opt.subalgebra
                              ? "network has an entry outside " + opt.subalgebra->name()
                              : "network is not over any built-in distributive subalgebra");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (closed.at(i, j).is_eq())
        throw NotAllDifferent("network entails EQ between " + net.label(i) + " and " +
                              net.label(j));

  Algorithm1Result res;
  res.report.method = RedundancyMethod::Algorithm1;
  res.report.subalgebra = sub->name();
  res.core = net;
  const auto& t = CompositionTable::get(net.calculus());
  const std::uint8_t all = universal_bits(net.calculus());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (net.bits(i, j) == all) {
        res.report.trivially_redundant.emplace_back(i, j);
        res.report.redundant.emplace_back(i, j);
        continue;
      }
      std::uint8_t q = all;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        q &= t.compose(closed.bits(i, k), closed.bits(k, j));
        ++res.report.checks;
        if (q == closed.bits(i, j)) {
          res.report.redundant.emplace_back(i, j);
          res.core.set_bits(i, j, all);
          break;
        }
      }
    }
  res.closure = std::move(pc.network);
  return res;
}

/// Same solution sets. Networks over distributive subalgebras compare their
/// a-closures (minimal networks there); otherwise each network must entail
/// every constraint of the other.
inline bool equivalent(const Network& a, const Network& b, std::size_t guard = kDefaultGuard) {
  if (a.calculus() != b.calculus()) throw CalculusMismatch();
  if (a.size() != b.size()) throw InvalidArgument("equivalent: networks differ in size");
  auto distributive = [](const Network& x) {
    for (const Subalgebra* s : distributive_builtins(x.calculus()))
      if (over_subalgebra(x, *s)) return true;
    return false;
  };
  if (distributive(a) && distributive(b)) {
    const AClosureResult pa = a_closure(a), pb = a_closure(b);
    if (!pa.consistent || !pb.consistent) return pa.consistent == pb.consistent;
    return pa.network == pb.network;
  }
  const bool ca = is_consistent(a, nullptr, guard), cb = is_consistent(b, nullptr, guard);
  if (!ca || !cb) return ca == cb;
  auto entails_all = [&](const Network& x, const Network& y) {
    for (const auto& [i, j] : y.constraints())
      if (!entails(x, i, j, y.at(i, j), guard)) return false;
    return true;
  };
  return entails_all(a, b) && entails_all(b, a);
}

/// Constraint pairs (i<j, non-universal) as a set, for subnetwork comparisons.
inline std::set<Edge> edge_set(const Network& net) {
  const auto c = net.constraints();
  return {c.begin(), c.end()};
}

}  // namespace qsr
