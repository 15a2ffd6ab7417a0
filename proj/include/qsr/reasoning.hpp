#pragma once

// Path consistency (a-closure), consistency decisions, the backtracking
// scenario search used as the exact oracle, entailment, all-different
// detection, and minimality / weak global consistency verification.

#include <array>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "qsr/algebra.hpp"
#include "qsr/network.hpp"

namespace qsr {

inline constexpr std::size_t kDefaultGuard = 12;

struct AClosureResult {
  bool consistent = true;
  Network network;                        // the fixed point (partial when inconsistent)
  std::array<std::size_t, 3> witness{};   // (i, k, j): R_ij emptied through k
  std::uint64_t revisions = 0;            // compositions performed
  std::uint64_t updates = 0;              // entries that shrank
};

/// Enforces R_ij <- R_ij & (R_ik ; R_kj) to a fixed point with a FIFO queue
/// of variable pairs. Popping (i,j) revises (i,k) through j and (k,j) through i
/// for every other k; converse entries follow automatically.
inline AClosureResult a_closure(Network net) {
  AClosureResult res;
  const std::size_t n = net.size();
  const auto& t = CompositionTable::get(net.calculus());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (net.bits(i, j) == 0) {
        res.consistent = false;
        res.witness = {i, i, j};
        res.network = std::move(net);
        return res;
      }
  std::vector<std::uint8_t> queued(n * n, 0);
  std::deque<Edge> queue;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      queue.emplace_back(i, j);
      queued[i * n + j] = 1;
    }
  // Returns false when the entry became empty.
  auto revise = [&](std::size_t a, std::size_t via, std::size_t b, std::uint8_t with) {
    ++res.revisions;
    const std::uint8_t old = net.bits(a, b);
    const std::uint8_t nb = old & with;
    if (nb == old) return true;
    ++res.updates;
    net.set_bits(a, b, nb);
    if (nb == 0) {
      res.consistent = false;
      res.witness = {a, via, b};
      return false;
    }
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    if (!queued[lo * n + hi]) {
      queued[lo * n + hi] = 1;
      queue.emplace_back(lo, hi);
    }
    return true;
  };
  while (!queue.empty()) {
    const auto [i, j] = queue.front();
    queue.pop_front();
    queued[i * n + j] = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      if (!revise(i, j, k, t.compose(net.bits(i, j), net.bits(j, k)))) goto done;
      if (!revise(k, i, j, t.compose(net.bits(k, i), net.bits(i, j)))) goto done;
    }
  }
done:
  res.network = std::move(net);
  return res;
}

/// Path-consistency test without modification: nonempty entries and
/// R_ij ⊆ R_ik ; R_kj for all i, j, k.
inline bool is_path_consistent(const Network& net) {
  const auto& t = CompositionTable::get(net.calculus());
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (net.bits(i, j) == 0) return false;
      for (std::size_t k = 0; k < n; ++k)
        if ((net.bits(i, j) & ~t.compose(net.bits(i, k), net.bits(k, j))) != 0) return false;
    }
  return true;
}

/// Relations over which path consistency decides consistency: H5 for RCC5,
/// and for RCC8 the union of the two maximal distributive subalgebras (both
/// lie inside one maximal tractable subclass).
inline bool in_tractable_class(Calculus c, Relation r) {
  if (c == Calculus::RCC5) return h5().contains(r);
  return d8_41().contains(r) || d8_64().contains(r);
}

inline bool over_tractable_class(const Network& net) {
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (!in_tractable_class(net.calculus(), net.at(i, j))) return false;
  return true;
}

inline bool over_subalgebra(const Network& net, const Subalgebra& s) {
  if (s.calculus() != net.calculus()) throw CalculusMismatch();
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (!s.contains(net.at(i, j))) return false;
  return true;
}

struct SearchStats {
  std::uint64_t nodes = 0;
};

namespace detail {

// Entry with the fewest members above one, lowest pair first; nullopt when
// every entry is basic.
inline std::optional<Edge> branch_entry(const Network& net) {
  std::optional<Edge> best;
  int best_size = 100;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      const int s = std::popcount(net.bits(i, j));
      if (s > 1 && s < best_size) {
        best = Edge{i, j};
        best_size = s;
      }
    }
  return best;
}

// Depth-first search over basic refinements with a-closure as propagation.
// visit() returns false to stop the search.
inline bool search_scenarios(const Network& net, const std::function<bool(const Network&)>& visit,
                             SearchStats& stats) {
  ++stats.nodes;
  AClosureResult pc = a_closure(net);
  if (!pc.consistent) return true;
  const auto pick = branch_entry(pc.network);
  // A complete basic path-consistent network is consistent.
  if (!pick) return visit(pc.network);
  const auto [i, j] = *pick;
  const Relation r = pc.network.at(i, j);
  for (int b : r.members()) {
    Network next = pc.network;
    next.set(i, j, Relation::basic(net.calculus(), b));
    if (!search_scenarios(next, visit, stats)) return false;
  }
  return true;
}

inline void check_guard(const Network& net, std::size_t guard) {
  if (net.size() > guard) throw GuardExceeded(net.size(), guard);
}

}  // namespace detail

/// Returns a consistent scenario refining net, or nullopt if none exists.
/// Branches on the smallest non-basic entry, basics in serialization order.
inline std::optional<Network> solve(const Network& net, std::size_t guard = kDefaultGuard,
                                    SearchStats* stats = nullptr) {
  detail::check_guard(net, guard);
  SearchStats local;
  std::optional<Network> found;
  detail::search_scenarios(
      net,
      [&](const Network& s) {
        found = s;
        return false;
      },
      stats ? *stats : local);
  return found;
}

/// Calls visit for every consistent scenario of net (each exactly once) until
/// it returns false. Returns the number of scenarios visited.
inline std::size_t enumerate_scenarios(const Network& net,
                                       const std::function<bool(const Network&)>& visit,
                                       std::size_t guard = kDefaultGuard) {
  detail::check_guard(net, guard);
  SearchStats stats;
  std::size_t count = 0;
  detail::search_scenarios(
      net,
      [&](const Network& s) {
        ++count;
        return visit(s);
      },
      stats);
  return count;
}

/// Consistency decision. Over a tractable class (or for basic networks) the
/// a-closure decides; otherwise the backtracking search is used. When a
/// subclass is supplied every entry must be a member of it.
inline bool is_consistent(const Network& net, const Subalgebra* subclass = nullptr,
                          std::size_t guard = kDefaultGuard) {
  if (subclass) {
    if (!over_subalgebra(net, *subclass))
      throw PreconditionError("network has an entry outside " +
                              (subclass->name().empty() ? std::string("the subclass")
                                                        : subclass->name()));
    if (subclass->flags().tractable) return a_closure(net).consistent;
    return solve(net, guard).has_value();
  }
  if (net.is_basic() || over_tractable_class(net)) return a_closure(net).consistent;
  return solve(net, guard).has_value();
}

/// net |= (i r j): adding the complement of r makes net inconsistent.
inline bool entails(const Network& net, std::size_t i, std::size_t j, Relation r,
                    std::size_t guard = kDefaultGuard) {
  if (i == j) throw InvalidArgument("entails: i == j");
  if (r.calculus() != net.calculus()) throw CalculusMismatch();
  if (r.is_universal()) return true;
  Network probe = net;
  probe.refine(i, j, complement(r));
  return !is_consistent(probe, nullptr, guard);
}

struct AllDifferentResult {
  bool all_different = true;
  std::vector<Edge> eq_pairs;  // pairs forced to be equal (i<j)
};

/// Whether no two distinct variables are forced equal. For networks over a
/// tractable class this is read off the a-closure: EQ is entailed exactly when
/// the closed entry is {EQ}.
inline AllDifferentResult all_different(const Network& net) {
  if (!over_tractable_class(net))
    throw PreconditionError("all_different: network is not over a tractable subclass");
  AClosureResult pc = a_closure(net);
  if (!pc.consistent)
    throw InconsistentNetwork("all_different: network is inconsistent (it entails everything)");
  AllDifferentResult res;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (pc.network.at(i, j).is_eq()) res.eq_pairs.emplace_back(i, j);
  res.all_different = res.eq_pairs.empty();
  return res;
}

/// Classes of variables forced equal in the a-closure (union-find over {EQ}
/// entries), each sorted, ordered by smallest member.
inline std::vector<std::vector<std::size_t>> equality_classes(const Network& closed) {
  const std::size_t n = closed.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (closed.at(i, j).is_eq()) parent[find(j)] = find(i);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<int> slot(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[slot[r]].push_back(v);
  }
  return classes;
}

/// Merges each class of EQ-entailed variables into one representative.
inline Network amalgamate(const Network& net, const std::vector<std::vector<std::size_t>>& classes) {
  AClosureResult pc = a_closure(net);
  if (!pc.consistent) throw InconsistentNetwork("amalgamate: network is inconsistent");
  return amalgamate_with(net, pc.network, classes);
}

struct MinimalityResult {
  bool minimal = true;
  std::optional<std::pair<Edge, int>> infeasible;  // entry and the basic that has no solution
};

/// Every basic of every entry is realized by some solution (search oracle).
inline MinimalityResult check_minimal(const Network& net, std::size_t guard = kDefaultGuard) {
  detail::check_guard(net, guard);
  if (!solve(net, guard)) throw InconsistentNetwork("check_minimal: network is inconsistent");
  MinimalityResult res;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      for (int b : net.at(i, j).members()) {
        Network probe = net;
        probe.set(i, j, Relation::basic(net.calculus(), b));
        if (!solve(probe, guard)) {
          res.minimal = false;
          res.infeasible = {{Edge{i, j}, b}};
          return res;
        }
      }
  return res;
}

struct WeakGlobalResult {
  bool weakly_global = true;
  std::vector<std::size_t> subset;         // failing variable subset
  std::optional<Network> partial_scenario; // scenario of the restriction that does not extend
  std::size_t scenarios_checked = 0;
};

/// Every consistent scenario of every restriction (subsets of size 2..n-1, in
/// increasing size) extends to a consistent scenario of net.
inline WeakGlobalResult check_weak_global(const Network& net, std::size_t guard = kDefaultGuard) {
  detail::check_guard(net, guard);
  const std::size_t n = net.size();
  WeakGlobalResult res;
  for (std::size_t k = 2; k < n; ++k) {
    // Lexicographic k-subsets.
    std::vector<std::size_t> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      const Network part = restrict(net, subset);
      bool ok = true;
      enumerate_scenarios(
          part,
          [&](const Network& scen) {
            ++res.scenarios_checked;
            Network fixed = net;
            for (std::size_t a = 0; a < k; ++a)
              for (std::size_t b = a + 1; b < k; ++b) fixed.set(subset[a], subset[b], scen.at(a, b));
            if (!solve(fixed, guard)) {
              ok = false;
              res.partial_scenario = scen;
              return false;
            }
            return true;
          },
          guard);
      if (!ok) {
        res.weakly_global = false;
        res.subset = subset;
        return res;
      }
      // Next combination.
      std::size_t pos = k;
      while (pos > 0 && subset[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t q = pos; q < k; ++q) subset[q] = subset[q - 1] + 1;
    }
  }
  return res;
}

}  // namespace qsr
