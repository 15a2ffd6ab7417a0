#pragma once

// Fixtures and independent oracles shared by the tests.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qsr/generate.hpp"
#include "qsr/redundancy.hpp"

namespace qsr::test {

inline Network example1() {
  return parse_network(R"(calculus RCC5
vars 5
1 2 PP
1 5 PP
3 1 PP
4 2 PP
5 2 DR|PP
3 4 PO
)");
}

inline Network example2() {
  return parse_network(R"(calculus RCC5
vars 4
1 2 PP|EQ
2 3 PP|EQ
3 1 PP|EQ
1 4 PO
2 4 PO
)");
}

inline Network pp_triangle() {
  return parse_network("calculus RCC5\nvars 3\n1 2 PP\n2 3 PP\n1 3 DR\n");
}

inline Network nested_chain() {
  return parse_network("calculus RCC8\nvars 3\n1 2 NTPP\n2 3 NTPP\n1 3 NTPP\n");
}

// Plain backtracking over the edges, column by column so that triangles close
// early. Each triangle is checked against the composition table once its three
// edges are assigned, with forward checking inside the current column. visit
// gets the labels of a complete scenario in row order and returns false to stop.
// Shares no code with solve() or a_closure().
using ScenarioKey = std::vector<std::uint8_t>;

inline void brute_search(const Network& net, const std::function<bool(const ScenarioKey&)>& visit) {
  const std::size_t n = net.size();
  const auto& t = CompositionTable::get(net.calculus());
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) edges.emplace_back(i, j);
  std::vector<int> m(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = eq_index(net.calculus());
  auto get = [&](std::size_t i, std::size_t j) { return m[i * n + j]; };
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t e) {
    if (e == edges.size()) {
      ScenarioKey key;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) key.push_back(static_cast<std::uint8_t>(get(i, j)));
      stop = !visit(key);
      return;
    }
    const auto [i, j] = edges[e];
    for (int b = 0; b < basic_count(net.calculus()) && !stop; ++b) {
      if (!net.at(i, j).contains(b)) continue;
      m[i * n + j] = b;
      m[j * n + i] = t.converse_basic(b);
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        if (k == i || k == j || get(i, k) < 0 || get(k, j) < 0) continue;
        ok = (t.cell(get(i, k), get(k, j)) >> b) & 1u;
        ok = ok && ((t.cell(get(j, i), get(i, k)) >> get(j, k)) & 1u);
        ok = ok && ((t.cell(get(i, j), get(j, k)) >> get(i, k)) & 1u);
      }
      // Forward check: every later edge (k,j) of this column keeps a label
      // compatible with the triangles through already assigned a.
      for (std::size_t k = i + 1; k < j && ok; ++k) {
        unsigned allowed = net.at(k, j).bits();
        for (std::size_t a = 0; a <= i && allowed; ++a) allowed &= t.cell(get(k, a), get(a, j));
        ok = allowed != 0;
      }
      if (ok) rec(e + 1);
      m[i * n + j] = m[j * n + i] = -1;
    }
  };
  rec(0);
}

inline std::set<ScenarioKey> brute_scenarios(const Network& net) {
  std::set<ScenarioKey> out;
  brute_search(net, [&](const ScenarioKey& k) {
    out.insert(k);
    return true;
  });
  return out;
}

inline bool brute_consistent(const Network& net) {
  bool found = false;
  brute_search(net, [&](const ScenarioKey&) {
    found = true;
    return false;
  });
  return found;
}

inline ScenarioKey scenario_key(const Network& s) {
  ScenarioKey key;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      key.push_back(static_cast<std::uint8_t>(s.at(i, j).members().front()));
  return key;
}

// Every scenario of a satisfies R_ij of b.
inline bool brute_entails_all(const Network& a, const Network& b) {
  for (const auto& [i, j] : b.constraints()) {
    Network probe = a;
    probe.set(i, j, intersect(a.at(i, j), complement(b.at(i, j))));
    if (brute_consistent(probe)) return false;
  }
  return true;
}

// Same scenario set, decided edge by edge so that nothing is stored.
inline bool brute_equivalent(const Network& a, const Network& b) {
  return brute_entails_all(a, b) && brute_entails_all(b, a);
}

// Redundant pairs (i<j, non-universal) by the scenario oracle: dropping the
// constraint leaves the scenario set unchanged.
inline std::set<Edge> brute_redundant(const Network& net) {
  std::set<Edge> out;
  for (const auto& [i, j] : net.constraints()) {
    Network probe = remove_constraint(net, i, j);
    probe.set(i, j, complement(net.at(i, j)));
    if (!brute_consistent(probe)) out.insert({i, j});
  }
  return out;
}

inline std::set<Edge> nontrivial(const std::vector<Edge>& edges, const Network& net) {
  std::set<Edge> out;
  for (const auto& e : edges)
    if (!net.at(e.first, e.second).is_universal()) out.insert(e);
  return out;
}

// Any relation on every edge, so that consistency is not decided by path
// consistency alone.
inline Network arbitrary_network(Calculus c, std::size_t n, Rng& rng, double universal = 0.3) {
  Network net(c, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.chance(universal)) continue;
      std::uint8_t b = 0;
      while (b == 0) b = static_cast<std::uint8_t>(rng.below(universal_bits(c) + 1));
      net.set_bits(i, j, b);
    }
  return net;
}

// Walks x = w0, w1, ..., wL = y with consecutive vertices distinct.
inline void for_each_walk(std::size_t n, std::size_t x, std::size_t y, std::size_t max_len,
                          const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> w{x};
  std::function<void()> rec = [&] {
    if (w.size() > 1 && w.back() == y) f(w);
    if (w.size() - 1 == max_len) return;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == w.back()) continue;
      w.push_back(v);
      rec();
      w.pop_back();
    }
  };
  rec();
}

inline Relation walk_ct(const Network& net, const std::vector<std::size_t>& w) {
  std::vector<Relation> rels;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) rels.push_back(net.at(w[k], w[k + 1]));
  return ct_path(rels);
}

}  // namespace qsr::test
