#pragma once

// Constraint network over RCC5/RCC8: an n x n relation matrix kept
// converse-symmetric with EQ on the diagonal and * for absent constraints.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsr/calculus.hpp"

namespace qsr {

/// Unordered variable pair, stored with first < second (0-based).
using Edge = std::pair<std::size_t, std::size_t>;

class Network {
 public:
  Network() = default;

  // n variables, every constraint universal.
  Network(Calculus c, std::size_t n) : calc_(c), n_(n), m_(n * n, universal_bits(c)) {
    for (std::size_t i = 0; i < n; ++i) m_[i * n + i] = Relation::eq(c).bits();
    labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("v" + std::to_string(i + 1));
  }

  Calculus calculus() const noexcept { return calc_; }
  std::size_t size() const noexcept { return n_; }

  Relation at(std::size_t i, std::size_t j) const { return {calc_, m_[index(i, j)]}; }
  std::uint8_t bits(std::size_t i, std::size_t j) const noexcept { return m_[i * n_ + j]; }

  // Sets (i,j) to r and (j,i) to its converse. Diagonal entries are fixed.
  void set(std::size_t i, std::size_t j, Relation r) {
    if (r.calculus() != calc_) throw CalculusMismatch();
    if (i == j) throw InvalidArgument("diagonal constraints are fixed to EQ");
    set_bits(i, j, r.bits());
  }

  void set_bits(std::size_t i, std::size_t j, std::uint8_t b) {
    m_[index(i, j)] = b;
    m_[j * n_ + i] = CompositionTable::get(calc_).converse(b);
  }

  // Intersects (i,j) with r; returns true when the entry changed.
  bool refine(std::size_t i, std::size_t j, Relation r) {
    const std::uint8_t nb = bits(i, j) & r.bits();
    if (nb == bits(i, j)) return false;
    set_bits(i, j, nb);
    return true;
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  void set_label(std::size_t i, std::string l) { labels_.at(i) = std::move(l); }

  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (labels_[i] == label) return i;
    throw InvalidArgument("unknown variable '" + std::string(label) + "'");
  }

  // Non-universal constraints (i<j).
  std::vector<Edge> constraints() const {
    std::vector<Edge> out;
    const std::uint8_t u = universal_bits(calc_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (m_[i * n_ + j] != u) out.emplace_back(i, j);
    return out;
  }

  std::size_t constraint_count() const { return constraints().size(); }

  bool is_basic() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const Relation r = at(i, j);
        if (!r.is_basic() && !r.is_universal()) return false;
      }
    return true;
  }

  // Every off-diagonal entry a single basic relation.
  bool is_scenario() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!at(i, j).is_basic()) return false;
    return true;
  }

  // Checks the diagonal and converse invariants; throws on violation.
  void validate() const {
    const auto& t = CompositionTable::get(calc_);
    if (m_.size() != n_ * n_ || labels_.size() != n_) throw Error("network shape corrupted");
    for (std::size_t i = 0; i < n_; ++i) {
      if (m_[i * n_ + i] != Relation::eq(calc_).bits())
        throw Error("diagonal entry " + std::to_string(i + 1) + " is not EQ");
      for (std::size_t j = 0; j < n_; ++j)
        if (m_[j * n_ + i] != t.converse(m_[i * n_ + j]))
          throw Error("entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      ") and their converse disagree");
    }
  }

  friend bool operator==(const Network& a, const Network& b) {
    return a.calc_ == b.calc_ && a.n_ == b.n_ && a.m_ == b.m_;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw InvalidArgument("variable index out of range");
    return i * n_ + j;
  }

  Calculus calc_ = Calculus::RCC8;
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> m_;
};

/// Entrywise a ⊆ b.
inline bool refines(const Network& a, const Network& b) {
  if (a.calculus() != b.calculus()) throw CalculusMismatch();
  if (a.size() != b.size()) throw InvalidArgument("refines: networks differ in size");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a.bits(i, j) & ~b.bits(i, j)) != 0) return false;
  return true;
}

/// Induced subnetwork on `vars` (0-based, kept in the given order).
inline Network restrict(const Network& net, const std::vector<std::size_t>& vars) {
  if (vars.empty()) throw InvalidArgument("restrict: empty variable set");
  for (std::size_t v : vars)
    if (v >= net.size()) throw InvalidArgument("restrict: unknown variable " + std::to_string(v + 1));
  Network out(net.calculus(), vars.size());
  for (std::size_t a = 0; a < vars.size(); ++a) {
    out.set_label(a, net.label(vars[a]));
    for (std::size_t b = a + 1; b < vars.size(); ++b) {
      if (vars[a] == vars[b]) throw InvalidArgument("restrict: repeated variable");
      out.set_bits(a, b, net.bits(vars[a], vars[b]));
    }
  }
  return out;
}

inline Network restrict(const Network& net, const std::vector<std::string>& labels) {
  std::vector<std::size_t> idx;
  for (const auto& l : labels) idx.push_back(net.index_of(l));
  return restrict(net, idx);
}

/// Network with the constraint between i and j replaced by *.
inline Network remove_constraint(Network net, std::size_t i, std::size_t j) {
  if (i == j) throw InvalidArgument("remove_constraint: i == j");
  net.set(i, j, Relation::universal(net.calculus()));
  return net;
}

// ---------------------------------------------------------------------------
// Text format
//
//   calculus RCC8
//   vars 5
//   labels A B C D E        (optional)
//   # i j relation          (1-based)
//   1 2 DC|EC

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected a positive integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline Network load_network(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<Calculus> calc;
  std::optional<Network> net;
  // Entries given explicitly, to detect converse conflicts.
  std::vector<std::uint8_t> given;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "calculus") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'calculus RCC5|RCC8'");
      if (calc) throw ParseError(lineno, "duplicate calculus line");
      try {
        calc = parse_calculus(tok[1]);
      } catch (const ParseError& e) {
        throw ParseError(lineno, e.what());
      }
      continue;
    }
    if (tok[0] == "vars") {
      if (!calc) throw ParseError(lineno, "'vars' before 'calculus'");
      if (net) throw ParseError(lineno, "duplicate vars line");
      if (tok.size() != 2) throw ParseError(lineno, "expected 'vars N'");
      const std::size_t n = detail::parse_index(tok[1], lineno);
      if (n == 0) throw ParseError(lineno, "network needs at least one variable");
      net.emplace(*calc, n);
      given.assign(n * n, 0);
      continue;
    }
    if (!net) throw ParseError(lineno, "constraint before 'calculus' and 'vars' header");
    if (tok[0] == "labels") {
      if (tok.size() != net->size() + 1)
        throw ParseError(lineno, "expected " + std::to_string(net->size()) + " labels");
      for (std::size_t i = 0; i < net->size(); ++i) {
        for (std::size_t k = 0; k < i; ++k)
          if (net->label(k) == tok[i + 1]) throw ParseError(lineno, "duplicate label");
        net->set_label(i, std::string(tok[i + 1]));
      }
      continue;
    }
    if (tok.size() != 3) throw ParseError(lineno, "expected 'i j relation'");
    const std::size_t i = detail::parse_index(tok[0], lineno);
    const std::size_t j = detail::parse_index(tok[1], lineno);
    if (i == 0 || j == 0 || i > net->size() || j > net->size())
      throw ParseError(lineno, "variable index out of range 1.." + std::to_string(net->size()));
    Relation r;
    try {
      r = parse_relation(*calc, tok[2]);
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.what());
    }
    if (i == j) {
      if (r.is_eq()) continue;
      throw ParseError(lineno, "diagonal constraint must be EQ");
    }
    const std::size_t a = i - 1, b = j - 1;
    if (given[b * net->size() + a]) {
      if (net->at(b, a) != converse(r))
        throw ConverseConflict(lineno, "constraint (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") conflicts with the converse given earlier");
    } else if (given[a * net->size() + b] && net->at(a, b) != r) {
      throw ParseError(lineno, "duplicate constraint (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
    }
    given[a * net->size() + b] = 1;
    net->set(a, b, r);
  }
  if (!net) throw ParseError(lineno, "missing 'calculus' or 'vars' header");
  return *net;
}

inline Network parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_network(in);
}

/// Canonical text: header, labels only when non-default, then every
/// non-universal constraint with i<j in ascending order.
inline std::string save_network(const Network& net) {
  std::ostringstream out;
  out << "calculus " << calculus_name(net.calculus()) << "\n";
  out << "vars " << net.size() << "\n";
  bool default_labels = true;
  for (std::size_t i = 0; i < net.size(); ++i)
    default_labels = default_labels && net.label(i) == "v" + std::to_string(i + 1);
  if (!default_labels) {
    out << "labels";
    for (const auto& l : net.labels()) out << ' ' << l;
    out << "\n";
  }
  for (const auto& [i, j] : net.constraints())
    out << i + 1 << ' ' << j + 1 << ' ' << to_string(net.at(i, j)) << "\n";
  return out.str();
}

inline nlohmann::json to_json(const Network& net) {
  nlohmann::json j;
  j["calculus"] = calculus_name(net.calculus());
  j["vars"] = net.size();
  j["labels"] = net.labels();
  j["constraints"] = nlohmann::json::array();
  for (const auto& [a, b] : net.constraints())
    j["constraints"].push_back({{"i", a + 1}, {"j", b + 1}, {"relation", to_string(net.at(a, b))}});
  return j;
}

/// Collapses each class of variables into its first member. The relation
/// between two representatives is the intersection of every entry between the
/// two classes. Classes must partition the variables; members of a class must
/// be EQ-related in `closed` (the a-closure of net).
inline Network amalgamate_with(const Network& net, const Network& closed,
                               const std::vector<std::vector<std::size_t>>& classes) {
  const Calculus c = net.calculus();
  std::vector<int> owner(net.size(), -1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].empty()) throw InvalidArgument("amalgamate: empty class");
    for (std::size_t v : classes[k]) {
      if (v >= net.size()) throw InvalidArgument("amalgamate: unknown variable");
      if (owner[v] >= 0) throw InvalidArgument("amalgamate: classes overlap");
      owner[v] = static_cast<int>(k);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw InvalidArgument("amalgamate: classes do not cover every variable");
  for (const auto& cls : classes)
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = a + 1; b < cls.size(); ++b) {
        const Relation r = closed.at(cls[a], cls[b]);
        if (!r.contains(eq_index(c)))
          throw InconsistentNetwork("amalgamate: " + net.label(cls[a]) + " and " +
                                    net.label(cls[b]) + " cannot be equal");
        if (!r.is_eq())
          throw PreconditionError("amalgamate: " + net.label(cls[a]) + " EQ " + net.label(cls[b]) +
                                  " is not entailed");
      }
  Network out(c, classes.size());
  for (std::size_t k = 0; k < classes.size(); ++k) out.set_label(k, net.label(classes[k].front()));
  for (std::size_t p = 0; p < classes.size(); ++p)
    for (std::size_t q = p + 1; q < classes.size(); ++q) {
      std::uint8_t acc = universal_bits(c);
      for (std::size_t a : classes[p])
        for (std::size_t b : classes[q]) acc &= net.bits(a, b);
      if (acc == 0)
        throw InconsistentNetwork("amalgamate: empty relation between " + out.label(p) + " and " +
                                  out.label(q));
      out.set_bits(p, q, acc);
    }
  return out;
}

}  // namespace qsr
