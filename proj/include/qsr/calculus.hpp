#pragma once

// RCC5 / RCC8 relation algebra: basic relations, composite relations as bit
// masks, converse, set operations and weak composition by table lookup.

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsr/error.hpp"

namespace qsr {

enum class Calculus : std::uint8_t { RCC5, RCC8 };

// Basic relation indices. The index is the bit position in a Relation mask and
// fixes the serialization order.
namespace rcc5 {
inline constexpr int DR = 0, PO = 1, PP = 2, PPi = 3, EQ = 4;
}
namespace rcc8 {
inline constexpr int DC = 0, EC = 1, PO = 2, TPP = 3, NTPP = 4, TPPi = 5, NTPPi = 6, EQ = 7;
}

constexpr int basic_count(Calculus c) noexcept { return c == Calculus::RCC5 ? 5 : 8; }
constexpr std::uint8_t universal_bits(Calculus c) noexcept {
  return c == Calculus::RCC5 ? 0x1F : 0xFF;
}
constexpr int eq_index(Calculus c) noexcept { return c == Calculus::RCC5 ? rcc5::EQ : rcc8::EQ; }
constexpr int po_index(Calculus c) noexcept { return c == Calculus::RCC5 ? rcc5::PO : rcc8::PO; }

inline std::string_view calculus_name(Calculus c) { return c == Calculus::RCC5 ? "RCC5" : "RCC8"; }

inline Calculus parse_calculus(std::string_view s) {
  if (s == "RCC5") return Calculus::RCC5;
  if (s == "RCC8") return Calculus::RCC8;
  throw ParseError(0, "unknown calculus '" + std::string(s) + "' (expected RCC5 or RCC8)");
}

inline std::string_view basic_name(Calculus c, int index) {
  static constexpr std::array<std::string_view, 5> k5{"DR", "PO", "PP", "PPi", "EQ"};
  static constexpr std::array<std::string_view, 8> k8{"DC", "EC", "PO", "TPP",
                                                      "NTPP", "TPPi", "NTPPi", "EQ"};
  return c == Calculus::RCC5 ? k5.at(index) : k8.at(index);
}

inline std::optional<int> basic_index(Calculus c, std::string_view name) {
  for (int i = 0; i < basic_count(c); ++i)
    if (basic_name(c, i) == name) return i;
  return std::nullopt;
}

/// A relation of RCC5 or RCC8: a set of basic relations stored as a bit mask.
/// The empty relation is a legal value (the impossible relation).
class Relation {
 public:
  constexpr Relation() = default;
  constexpr Relation(Calculus c, std::uint8_t bits) : bits_(bits & universal_bits(c)), calc_(c) {}

  static constexpr Relation empty(Calculus c) { return {c, 0}; }
  static constexpr Relation universal(Calculus c) { return {c, universal_bits(c)}; }
  static constexpr Relation basic(Calculus c, int index) {
    return {c, static_cast<std::uint8_t>(1u << index)};
  }
  static constexpr Relation eq(Calculus c) { return basic(c, eq_index(c)); }
  static constexpr Relation of(Calculus c, std::initializer_list<int> members) {
    std::uint8_t b = 0;
    for (int m : members) b |= static_cast<std::uint8_t>(1u << m);
    return {c, b};
  }

  constexpr Calculus calculus() const noexcept { return calc_; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr bool is_empty() const noexcept { return bits_ == 0; }
  constexpr bool is_universal() const noexcept { return bits_ == universal_bits(calc_); }
  constexpr bool contains(int index) const noexcept { return (bits_ >> index) & 1u; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool is_basic() const noexcept { return size() == 1; }
  constexpr bool is_eq() const noexcept { return bits_ == (1u << eq_index(calc_)); }

  // Member indices in ascending (serialization) order.
  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < basic_count(calc_); ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  friend constexpr bool operator==(Relation, Relation) = default;

 private:
  std::uint8_t bits_ = 0;
  Calculus calc_ = Calculus::RCC8;
};

namespace detail {

inline void require_same(Relation a, Relation b) {
  if (a.calculus() != b.calculus()) throw CalculusMismatch();
}

// Weak composition of basic relations, transcribed row by row from the
// standard RCC5 and RCC8 composition tables. cell[a][b] = a ; b.
inline constexpr std::array<std::array<std::uint8_t, 5>, 5> kRcc5Cells = [] {
  constexpr std::uint8_t DR = 1, PO = 2, PP = 4, PPi = 8, EQ = 16, U = 31;
  return std::array<std::array<std::uint8_t, 5>, 5>{{
      // DR             PO               PP               PPi              EQ
      {{U, DR | PO | PP, DR | PO | PP, DR, DR}},                           // DR
      {{DR | PO | PPi, U, PO | PP, DR | PO | PPi, PO}},                    // PO
      {{DR, DR | PO | PP, PP, U, PP}},                                     // PP
      {{DR | PO | PPi, PO | PPi, PO | PP | PPi | EQ, PPi, PPi}},           // PPi
      {{DR, PO, PP, PPi, EQ}},                                             // EQ
  }};
}();

inline constexpr std::array<std::array<std::uint8_t, 8>, 8> kRcc8Cells = [] {
  constexpr std::uint8_t DC = 1, EC = 2, PO = 4, TPP = 8, NTPP = 16, TPPi = 32, NTPPi = 64,
                         EQ = 128, U = 255;
  constexpr std::uint8_t DR_PART = DC | EC | PO | TPP | NTPP;    // DC,EC,PO,TPP,NTPP
  constexpr std::uint8_t DR_PARTI = DC | EC | PO | TPPi | NTPPi; // DC,EC,PO,TPPi,NTPPi
  return std::array<std::array<std::uint8_t, 8>, 8>{{
      // DC
      {{U, DR_PART, DR_PART, DR_PART, DR_PART, DC, DC, DC}},
      // EC
      {{DR_PARTI, DC | EC | PO | TPP | TPPi | EQ, DR_PART, EC | PO | TPP | NTPP, PO | TPP | NTPP,
        DC | EC, DC, EC}},
      // PO
      {{DR_PARTI, DR_PARTI, U, PO | TPP | NTPP, PO | TPP | NTPP, DR_PARTI, DR_PARTI, PO}},
      // TPP
      {{DC, DC | EC, DR_PART, TPP | NTPP, NTPP, DC | EC | PO | TPP | TPPi | EQ, DR_PARTI, TPP}},
      // NTPP
      {{DC, DC, DR_PART, NTPP, NTPP, DR_PART, U, NTPP}},
      // TPPi
      {{DR_PARTI, EC | PO | TPPi | NTPPi, PO | TPPi | NTPPi, PO | TPP | TPPi | EQ, PO | TPP | NTPP,
        TPPi | NTPPi, NTPPi, TPPi}},
      // NTPPi
      {{DR_PARTI, PO | TPPi | NTPPi, PO | TPPi | NTPPi, PO | TPPi | NTPPi,
        PO | TPP | NTPP | TPPi | NTPPi | EQ, NTPPi, NTPPi, NTPPi}},
      // EQ
      {{DC, EC, PO, TPP, NTPP, TPPi, NTPPi, EQ}},
  }};
}();

inline constexpr std::array<int, 5> kRcc5Converse{rcc5::DR, rcc5::PO, rcc5::PPi, rcc5::PP,
                                                  rcc5::EQ};
inline constexpr std::array<int, 8> kRcc8Converse{rcc8::DC,    rcc8::EC,  rcc8::PO,
                                                  rcc8::TPPi,  rcc8::NTPPi, rcc8::TPP,
                                                  rcc8::NTPP,  rcc8::EQ};

}  // namespace detail

/// Composition and converse tables of one calculus, extended from basic
/// relations to every composite relation (256 x 256 lookup).
class CompositionTable {
 public:
  explicit CompositionTable(Calculus c) : calc_(c) {
    const int nb = basic_count(c);
    for (int a = 0; a < nb; ++a) {
      converse_basic_[a] = c == Calculus::RCC5 ? detail::kRcc5Converse[a] : detail::kRcc8Converse[a];
      for (int b = 0; b < nb; ++b)
        cell_[a][b] = c == Calculus::RCC5 ? detail::kRcc5Cells[a][b] : detail::kRcc8Cells[a][b];
    }
    const int nrel = 1 << nb;
    for (int r = 0; r < nrel; ++r) {
      std::uint8_t conv = 0;
      for (int a = 0; a < nb; ++a)
        if ((r >> a) & 1) conv |= static_cast<std::uint8_t>(1u << converse_basic_[a]);
      converse_[r] = conv;
    }
    // Composition of composites is the union of member cells. Build rows of
    // single basics first, then extend by union over the low bit.
    for (int r = 1; r < nrel; ++r) {
      const int low = std::countr_zero(static_cast<unsigned>(r));
      const int rest = r & (r - 1);
      for (int s = 1; s < nrel; ++s) {
        std::uint8_t v;
        if (rest == 0) {
          v = 0;
          for (int b = 0; b < nb; ++b)
            if ((s >> b) & 1) v |= cell_[low][b];
        } else {
          v = compose_[(1 << low)][s] | compose_[rest][s];
        }
        compose_[r][s] = v;
      }
    }
  }

  Calculus calculus() const noexcept { return calc_; }
  std::uint8_t cell(int a, int b) const { return cell_[a][b]; }
  int converse_basic(int a) const { return converse_basic_[a]; }
  std::uint8_t compose(std::uint8_t r, std::uint8_t s) const noexcept { return compose_[r][s]; }
  std::uint8_t converse(std::uint8_t r) const noexcept { return converse_[r]; }

  static const CompositionTable& get(Calculus c) {
    static const CompositionTable t5(Calculus::RCC5);
    static const CompositionTable t8(Calculus::RCC8);
    return c == Calculus::RCC5 ? t5 : t8;
  }

 private:
  Calculus calc_;
  std::array<std::array<std::uint8_t, 8>, 8> cell_{};
  std::array<int, 8> converse_basic_{};
  std::array<std::uint8_t, 256> converse_{};
  std::array<std::array<std::uint8_t, 256>, 256> compose_{};
};

inline Relation compose(Relation r, Relation s) {
  detail::require_same(r, s);
  return {r.calculus(), CompositionTable::get(r.calculus()).compose(r.bits(), s.bits())};
}

inline Relation converse(Relation r) {
  return {r.calculus(), CompositionTable::get(r.calculus()).converse(r.bits())};
}

inline Relation intersect(Relation r, Relation s) {
  detail::require_same(r, s);
  return {r.calculus(), static_cast<std::uint8_t>(r.bits() & s.bits())};
}

inline Relation unite(Relation r, Relation s) {
  detail::require_same(r, s);
  return {r.calculus(), static_cast<std::uint8_t>(r.bits() | s.bits())};
}

inline Relation complement(Relation r) {
  return {r.calculus(), static_cast<std::uint8_t>(~r.bits() & universal_bits(r.calculus()))};
}

inline bool is_subset(Relation r, Relation s) {
  detail::require_same(r, s);
  return (r.bits() & ~s.bits()) == 0;
}

/// Weak composition of a path R1 ; R2 ; ... ; Rs, folded from the left.
inline Relation ct_path(std::span<const Relation> path) {
  if (path.empty()) throw InvalidArgument("ct_path: empty path");
  Relation acc = path.front();
  for (std::size_t i = 1; i < path.size(); ++i) acc = compose(acc, path[i]);
  return acc;
}

inline Relation ct_path(std::initializer_list<Relation> path) {
  return ct_path(std::span<const Relation>(path.begin(), path.size()));
}

/// Text form: basic names joined by '|', "*" for universal, "0" for empty.
inline std::string to_string(Relation r) {
  if (r.is_empty()) return "0";
  if (r.is_universal()) return "*";
  std::string out;
  for (int i : r.members()) {
    if (!out.empty()) out += '|';
    out += basic_name(r.calculus(), i);
  }
  return out;
}

inline Relation parse_relation(Calculus c, std::string_view text) {
  if (text == "*") return Relation::universal(c);
  if (text == "0") return Relation::empty(c);
  if (text.empty()) throw ParseError(0, "empty relation text");
  std::uint8_t bits = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t bar = text.find('|', pos);
    const std::string_view name =
        text.substr(pos, bar == std::string_view::npos ? std::string_view::npos : bar - pos);
    const auto idx = basic_index(c, name);
    if (!idx)
      throw ParseError(0, "unknown " + std::string(calculus_name(c)) + " basic relation '" +
                              std::string(name) + "'");
    bits |= static_cast<std::uint8_t>(1u << *idx);
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  return {c, bits};
}

/// Outcome of the exhaustive relation-algebra check.
struct AlgebraReport {
  bool pass = true;
  std::string law;  // first violated law, empty on pass
  std::vector<Relation> counterexample;
  std::uint64_t triples_checked = 0;
};

/// Exhaustively checks, over every relation of the calculus (the empty one
/// included): associativity, converse involution, (R;S)^-1 = S^-1;R^-1,
/// EQ as two-sided identity, and the cycle law
///   (R;S) & T != 0  <=>  (R^-1;T) & S != 0  <=>  (T;S^-1) & R != 0.
inline AlgebraReport verify_relation_algebra(Calculus c) {
  const auto& t = CompositionTable::get(c);
  const int nrel = 1 << basic_count(c);
  const std::uint8_t eq = Relation::eq(c).bits();
  AlgebraReport rep;
  auto fail = [&](std::string law, std::initializer_list<int> rs) {
    rep.pass = false;
    rep.law = std::move(law);
    for (int r : rs) rep.counterexample.emplace_back(c, static_cast<std::uint8_t>(r));
    return rep;
  };
  for (int a = 0; a < basic_count(c); ++a)
    if (t.converse_basic(t.converse_basic(a)) != a) return fail("converse involution (basic)", {1 << a});
  if (t.converse(eq) != eq) return fail("converse(EQ) = EQ", {eq});
  for (int r = 0; r < nrel; ++r) {
    const auto R = static_cast<std::uint8_t>(r);
    if (t.converse(t.converse(R)) != R) return fail("converse involution", {r});
    if (t.compose(R, eq) != R || t.compose(eq, R) != R) return fail("EQ identity", {r});
    for (int s = 0; s < nrel; ++s) {
      const auto S = static_cast<std::uint8_t>(s);
      const std::uint8_t rs = t.compose(R, S);
      if (t.converse(rs) != t.compose(t.converse(S), t.converse(R)))
        return fail("converse of composition", {r, s});
      const std::uint8_t ri_ = t.converse(R);
      const std::uint8_t si_ = t.converse(S);
      for (int u = 0; u < nrel; ++u) {
        const auto T = static_cast<std::uint8_t>(u);
        ++rep.triples_checked;
        if (t.compose(rs, T) != t.compose(R, t.compose(S, T))) return fail("associativity", {r, s, u});
        const bool c1 = (rs & T) != 0;
        const bool c2 = (t.compose(ri_, T) & S) != 0;
        const bool c3 = (t.compose(T, si_) & R) != 0;
        if (c1 != c2 || c2 != c3) return fail("cycle law", {r, s, u});
      }
    }
  }
  return rep;
}

}  // namespace qsr
