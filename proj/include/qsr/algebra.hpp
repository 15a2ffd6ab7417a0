#pragma once

// Subalgebras of RCC5/RCC8: closure under converse / intersection / weak
// composition, distributivity and Helly checks, the built-in classes, and the
// search for maximal distributive subalgebras.

#include <algorithm>
#include <bitset>
#include <optional>
#include <string>
#include <vector>

#include "qsr/calculus.hpp"

namespace qsr {

/// A set of nonempty relations of one calculus, kept sorted by mask value.
class Subalgebra {
 public:
  struct Flags {
    bool contains_all_basic = false;
    bool closed = false;
    bool distributive = false;
    bool tractable = false;
  };

  Subalgebra() = default;
  Subalgebra(Calculus c, const std::vector<Relation>& members, std::string name = {})
      : calc_(c), name_(std::move(name)) {
    for (Relation r : members) {
      if (r.calculus() != c) throw CalculusMismatch();
      if (!r.is_empty()) mask_.set(r.bits());
    }
  }

  Calculus calculus() const noexcept { return calc_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Flags& flags() const noexcept { return flags_; }
  Flags& flags() noexcept { return flags_; }

  bool contains(Relation r) const {
    if (r.calculus() != calc_) throw CalculusMismatch();
    return !r.is_empty() && mask_.test(r.bits());
  }
  std::size_t size() const noexcept { return mask_.count(); }

  std::vector<Relation> members() const {
    std::vector<Relation> out;
    for (int b = 1; b < 256; ++b)
      if (mask_.test(b)) out.emplace_back(calc_, static_cast<std::uint8_t>(b));
    return out;
  }

  void insert(Relation r) {
    if (r.calculus() != calc_) throw CalculusMismatch();
    if (!r.is_empty()) mask_.set(r.bits());
  }

  const std::bitset<256>& mask() const noexcept { return mask_; }

  bool is_subset_of(const Subalgebra& o) const {
    return calc_ == o.calc_ && (mask_ & ~o.mask_).none();
  }

  // Smallest member containing r, if any.
  std::optional<Relation> smallest_superset(Relation r) const {
    std::optional<Relation> best;
    for (int b = 1; b < 256; ++b) {
      if (!mask_.test(b) || (r.bits() & ~b) != 0) continue;
      if (!best || std::popcount(static_cast<unsigned>(b)) < best->size())
        best = Relation(calc_, static_cast<std::uint8_t>(b));
    }
    return best;
  }

  friend bool operator==(const Subalgebra& a, const Subalgebra& b) {
    return a.calc_ == b.calc_ && a.mask_ == b.mask_;
  }

 private:
  Calculus calc_ = Calculus::RCC8;
  std::string name_;
  std::bitset<256> mask_;
  Flags flags_;
};

inline bool membership(const Subalgebra& s, Relation r) { return s.contains(r); }

/// Least superset of `seed` closed under converse, nonempty intersection and
/// weak composition. The empty relation is never a member.
inline Subalgebra closure(Calculus c, const std::vector<Relation>& seed) {
  const auto& t = CompositionTable::get(c);
  std::bitset<256> in;
  std::vector<std::uint8_t> list;
  auto add = [&](std::uint8_t b) {
    if (b != 0 && !in.test(b)) {
      in.set(b);
      list.push_back(b);
    }
  };
  for (Relation r : seed) {
    if (r.calculus() != c) throw CalculusMismatch();
    add(r.bits());
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    add(t.converse(list[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      const std::uint8_t a = list[i], b = list[j];
      add(a & b);
      add(t.compose(a, b));
      add(t.compose(b, a));
    }
  }
  std::vector<Relation> members;
  for (std::uint8_t b : list) members.emplace_back(c, b);
  Subalgebra s(c, members);
  s.flags().closed = true;
  return s;
}

inline std::vector<Relation> all_basics(Calculus c) {
  std::vector<Relation> out;
  for (int i = 0; i < basic_count(c); ++i) out.push_back(Relation::basic(c, i));
  return out;
}

struct DistributivityWitness {
  Relation r, s, t;
  bool left_law = true;  // false: the (S&T);R identity failed
};

/// Checks R;(S&T) = R;S & R;T and (S&T);R = S;R & T;R for all members with
/// S&T nonempty. Returns the first failing triple, or nullopt.
inline std::optional<DistributivityWitness> distributivity_violation(
    Calculus c, const std::vector<Relation>& set) {
  const auto& t = CompositionTable::get(c);
  for (Relation s : set)
    for (Relation u : set) {
      const std::uint8_t su = s.bits() & u.bits();
      if (su == 0) continue;
      for (Relation r : set) {
        const std::uint8_t R = r.bits();
        if (t.compose(R, su) != (t.compose(R, s.bits()) & t.compose(R, u.bits())))
          return DistributivityWitness{r, s, u, true};
        if (t.compose(su, R) != (t.compose(s.bits(), R) & t.compose(u.bits(), R)))
          return DistributivityWitness{r, s, u, false};
      }
    }
  return std::nullopt;
}

inline bool is_distributive(const Subalgebra& s) {
  return !distributivity_violation(s.calculus(), s.members());
}

/// Helly-type property: pairwise nonempty intersections imply a nonempty
/// triple intersection. Returns a violating triple, or nullopt.
inline std::optional<std::array<Relation, 3>> helly_violation(Calculus c,
                                                              const std::vector<Relation>& set) {
  for (Relation r : set)
    for (Relation s : set) {
      if ((r.bits() & s.bits()) == 0) continue;
      for (Relation t : set) {
        if ((r.bits() & t.bits()) == 0 || (s.bits() & t.bits()) == 0) continue;
        if ((r.bits() & s.bits() & t.bits()) == 0) return std::array<Relation, 3>{r, s, t};
      }
    }
  (void)c;
  return std::nullopt;
}

inline bool helly_check(const Subalgebra& s) {
  return !helly_violation(s.calculus(), s.members());
}

namespace detail {

inline Subalgebra from_names(Calculus c, std::initializer_list<const char*> rels) {
  std::vector<Relation> v;
  for (const char* r : rels) v.push_back(parse_relation(c, r));
  return Subalgebra(c, v);
}

}  // namespace detail

/// Closure of the basic relations: 12 relations in RCC5, 37 in RCC8.
inline const Subalgebra& basic_closure(Calculus c) {
  static const Subalgebra b5 = [] {
    Subalgebra s = closure(Calculus::RCC5, all_basics(Calculus::RCC5));
    s.set_name("B5");
    s.flags() = {true, true, true, true};
    return s;
  }();
  static const Subalgebra b8 = [] {
    Subalgebra s = closure(Calculus::RCC8, all_basics(Calculus::RCC8));
    s.set_name("B8");
    s.flags() = {true, true, true, true};
    return s;
  }();
  return c == Calculus::RCC5 ? b5 : b8;
}

// Members beyond the basic closure, as listed for the four maximal
// distributive subalgebras.
namespace detail {

inline Subalgebra extend_basic_closure(Calculus c, std::string name,
                                       std::initializer_list<const char*> extra) {
  Subalgebra s = basic_closure(c);
  for (Relation r : from_names(c, extra).members()) s.insert(r);
  s.set_name(std::move(name));
  s.flags() = {true, true, true, true};
  return s;
}

}  // namespace detail

inline const Subalgebra& d5_14() {
  static const Subalgebra s =
      detail::extend_basic_closure(Calculus::RCC5, "D5_14", {"PP|EQ", "PPi|EQ"});
  return s;
}

inline const Subalgebra& d5_20() {
  static const Subalgebra s = detail::extend_basic_closure(
      Calculus::RCC5, "D5_20",
      {"PO|EQ", "PO|PP|EQ", "PO|PP|PPi", "PO|PPi|EQ", "DR|PO|PP|PPi", "DR|PO|PPi|EQ", "DR|PO|EQ",
       "DR|PO|PP|EQ"});
  return s;
}

inline const Subalgebra& d8_41() {
  static const Subalgebra s = detail::extend_basic_closure(
      Calculus::RCC8, "D8_41", {"TPP|EQ", "TPP|NTPP|EQ", "TPPi|EQ", "TPPi|NTPPi|EQ"});
  return s;
}

inline const Subalgebra& d8_64() {
  static const Subalgebra s = detail::extend_basic_closure(
      Calculus::RCC8, "D8_64",
      {"PO|EQ",
       "PO|TPP|EQ",
       "PO|TPPi|EQ",
       "PO|TPP|TPPi",
       "PO|TPP|NTPP|EQ",
       "PO|TPPi|NTPPi|EQ",
       "PO|TPP|TPPi|NTPPi",
       "PO|TPP|NTPP|TPPi",
       "PO|TPP|NTPP|TPPi|NTPPi",
       "EC|PO|EQ",
       "EC|PO|TPP|EQ",
       "EC|PO|TPPi|EQ",
       "EC|PO|TPPi|NTPPi|EQ",
       "EC|PO|TPP|NTPP|EQ",
       "EC|PO|TPP|TPPi",
       "EC|PO|TPP|TPPi|NTPPi",
       "EC|PO|TPP|NTPP|TPPi",
       "EC|PO|TPP|NTPP|TPPi|NTPPi",
       "DC|EC|PO|EQ",
       "DC|EC|PO|TPP|EQ",
       "DC|EC|PO|TPPi|EQ",
       "DC|EC|PO|TPP|TPPi",
       "DC|EC|PO|TPPi|NTPPi|EQ",
       "DC|EC|PO|TPP|NTPP|EQ",
       "DC|EC|PO|TPP|NTPP|TPPi",
       "DC|EC|PO|TPP|TPPi|NTPPi",
       "DC|EC|PO|TPP|NTPP|TPPi|NTPPi"});
  return s;
}

/// The unique maximal tractable subclass of RCC5 containing all basics: every
/// nonempty relation except the four that mix PP and PPi without PO.
inline const Subalgebra& h5() {
  static const Subalgebra s = [] {
    const Subalgebra excluded = detail::from_names(
        Calculus::RCC5, {"PP|PPi", "PP|PPi|EQ", "DR|PP|PPi", "DR|PP|PPi|EQ"});
    std::vector<Relation> v;
    for (int b = 1; b < 32; ++b) {
      const Relation r(Calculus::RCC5, static_cast<std::uint8_t>(b));
      if (!excluded.contains(r)) v.push_back(r);
    }
    Subalgebra h(Calculus::RCC5, v, "H5");
    h.flags() = {true, true, false, true};
    return h;
  }();
  return s;
}

/// Built-in distributive subalgebras of a calculus, in auto-detection order.
inline std::vector<const Subalgebra*> distributive_builtins(Calculus c) {
  if (c == Calculus::RCC5) return {&d5_14(), &d5_20()};
  return {&d8_41(), &d8_64()};
}

/// Looks up a built-in class by name (B5, B8, D5_14, D5_20, D8_41, D8_64, H5).
inline const Subalgebra* builtin_subalgebra(std::string_view name) {
  for (const Subalgebra* s : {&basic_closure(Calculus::RCC5), &basic_closure(Calculus::RCC8),
                              &d5_14(), &d5_20(), &d8_41(), &d8_64(), &h5()})
    if (s->name() == name) return s;
  return nullptr;
}

/// Result of the maximal-distributive search, with the intermediate sets kept
/// for inspection.
struct MaximalDistributiveResult {
  std::vector<Relation> candidates;                 // relations a with B^ + {a} distributive
  std::vector<std::vector<bool>> d_relation;        // pairwise compatibility over candidates
  std::vector<Subalgebra> maximal;                  // B^ extended by each maximal clique
};

namespace detail {

inline void bron_kerbosch(const std::vector<std::vector<bool>>& adj, std::vector<int>& r,
                          std::vector<int> p, std::vector<int> x,
                          std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // Pivot on the vertex with most neighbours in p.
  int pivot = -1;
  std::size_t best = 0;
  for (const auto* set : {&p, &x})
    for (int u : *set) {
      std::size_t cnt = 0;
      for (int v : p) cnt += adj[u][v];
      if (pivot < 0 || cnt > best) pivot = u, best = cnt;
    }
  const std::vector<int> snapshot = p;
  for (int v : snapshot) {
    if (adj[pivot][v]) continue;
    std::vector<int> np, nx;
    for (int u : p)
      if (adj[v][u]) np.push_back(u);
    for (int u : x)
      if (adj[v][u]) nx.push_back(u);
    r.push_back(v);
    bron_kerbosch(adj, r, np, nx, out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace detail

/// Search for maximal distributive subalgebras: collect every relation a for
/// which B^ + {a} is distributive, link a and b when B^ + {a, b} is, and
/// extend B^ by each maximal clique of that graph.
inline MaximalDistributiveResult maximal_distributive(Calculus c) {
  const Subalgebra& base = basic_closure(c);
  const std::vector<Relation> base_members = base.members();
  MaximalDistributiveResult res;
  for (int b = 1; b < (1 << basic_count(c)); ++b) {
    const Relation a(c, static_cast<std::uint8_t>(b));
    if (base.contains(a)) continue;
    auto v = base_members;
    v.push_back(a);
    if (!distributivity_violation(c, v)) res.candidates.push_back(a);
  }
  const std::size_t m = res.candidates.size();
  res.d_relation.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto v = base_members;
      v.push_back(res.candidates[i]);
      v.push_back(res.candidates[j]);
      const bool ok = !distributivity_violation(c, v);
      res.d_relation[i][j] = res.d_relation[j][i] = ok;
    }
  std::vector<std::vector<int>> cliques;
  std::vector<int> r, p(m), x;
  for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<int>(i);
  detail::bron_kerbosch(res.d_relation, r, p, x, cliques);
  for (auto& clique : cliques) {
    std::sort(clique.begin(), clique.end());
    Subalgebra s = base;
    for (int i : clique) s.insert(res.candidates[i]);
    s.flags().closed = closure(c, s.members()) == s;
    s.flags().distributive = is_distributive(s);
    s.flags().contains_all_basic = true;
    s.flags().tractable = s.flags().closed && s.flags().distributive;
    res.maximal.push_back(std::move(s));
  }
  std::sort(res.maximal.begin(), res.maximal.end(),
            [](const Subalgebra& a, const Subalgebra& b) { return a.size() < b.size(); });
  for (Subalgebra& s : res.maximal)
    s.set_name(std::string(c == Calculus::RCC5 ? "D5_" : "D8_") + std::to_string(s.size()));
  return res;
}

/// True when every listed relation lies in the set.
inline bool all_members(const Subalgebra& s, const std::vector<Relation>& rels) {
  return std::all_of(rels.begin(), rels.end(), [&](Relation r) { return s.contains(r); });
}

}  // namespace qsr
