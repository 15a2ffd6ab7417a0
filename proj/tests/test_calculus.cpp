#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "golden_tables.hpp"
#include "qsr/calculus.hpp"

using namespace qsr;

namespace {

std::set<std::string> names_of(const char* cell, Calculus c) {
  std::set<std::string> out;
  std::string s = cell;
  if (s == "*") {
    for (int i = 0; i < basic_count(c); ++i) out.insert(std::string(basic_name(c, i)));
    return out;
  }
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '|')) out.insert(part);
  return out;
}

std::set<std::string> names_of(Relation r) {
  std::set<std::string> out;
  for (int i : r.members()) out.insert(std::string(basic_name(r.calculus(), i)));
  return out;
}

}  // namespace

TEST_CASE("RCC5 composition table matches the published table cell by cell") {
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      INFO(basic_name(Calculus::RCC5, a) << " ; " << basic_name(Calculus::RCC5, b));
      CHECK(names_of(compose(Relation::basic(Calculus::RCC5, a), Relation::basic(Calculus::RCC5, b))) ==
            names_of(golden::kRcc5Rows[a][b], Calculus::RCC5));
    }
}

TEST_CASE("RCC8 composition table matches the published table cell by cell") {
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      INFO(basic_name(Calculus::RCC8, a) << " ; " << basic_name(Calculus::RCC8, b));
      CHECK(names_of(compose(Relation::basic(Calculus::RCC8, a), Relation::basic(Calculus::RCC8, b))) ==
            names_of(golden::kRcc8Rows[a][b], Calculus::RCC8));
    }
}

TEST_CASE("basic relations and their converses") {
  using namespace rcc8;
  CHECK(basic_count(Calculus::RCC5) == 5);
  CHECK(basic_count(Calculus::RCC8) == 8);
  const std::map<int, int> conv8{{DC, DC}, {EC, EC}, {PO, PO}, {TPP, TPPi},
                                 {NTPP, NTPPi}, {TPPi, TPP}, {NTPPi, NTPP}, {EQ, EQ}};
  for (auto [a, b] : conv8) CHECK(converse(Relation::basic(Calculus::RCC8, a)) == Relation::basic(Calculus::RCC8, b));
  CHECK(converse(parse_relation(Calculus::RCC5, "PP")) == parse_relation(Calculus::RCC5, "PPi"));
  CHECK(converse(parse_relation(Calculus::RCC5, "DR|PP")) == parse_relation(Calculus::RCC5, "DR|PPi"));
}

TEST_CASE("compose spot values") {
  const auto r5 = [](const char* s) { return parse_relation(Calculus::RCC5, s); };
  const auto r8 = [](const char* s) { return parse_relation(Calculus::RCC8, s); };
  CHECK(compose(r5("PP"), r5("PP")) == r5("PP"));
  CHECK(compose(r5("DR"), r5("PPi")) == r5("DR"));
  CHECK(compose(r8("NTPP"), r8("NTPP")) == r8("NTPP"));
  CHECK(compose(r8("TPP"), r8("TPPi")) == r8("DC|EC|PO|TPP|TPPi|EQ"));
  CHECK(compose(r8("EC"), r8("EC")) == r8("DC|EC|PO|TPP|TPPi|EQ"));
  // Unions distribute over members.
  CHECK(compose(r5("PP|EQ"), r5("PP")) == r5("PP"));
  CHECK(compose(Relation::empty(Calculus::RCC8), r8("DC")).is_empty());
  CHECK(compose(r8("*"), r8("EQ")).is_universal());
}

TEST_CASE("relation set operations") {
  const auto r = [](const char* s) { return parse_relation(Calculus::RCC8, s); };
  CHECK(intersect(r("DC|EC|PO"), r("PO|TPP")) == r("PO"));
  CHECK(unite(r("DC"), r("EC")) == r("DC|EC"));
  CHECK(complement(r("*")).is_empty());
  CHECK(complement(Relation::empty(Calculus::RCC8)).is_universal());
  CHECK(complement(r("DC|EC|PO|TPP")) == r("NTPP|TPPi|NTPPi|EQ"));
  CHECK(is_subset(r("TPP"), r("TPP|NTPP")));
  CHECK_FALSE(is_subset(r("TPP|EQ"), r("TPP|NTPP")));
  CHECK(r("TPP|NTPP").size() == 2);
  CHECK(r("EQ").is_eq());
}

TEST_CASE("operations across calculi are rejected") {
  const Relation a = Relation::basic(Calculus::RCC5, rcc5::PP);
  const Relation b = Relation::basic(Calculus::RCC8, rcc8::TPP);
  CHECK_THROWS_AS(compose(a, b), CalculusMismatch);
  CHECK_THROWS_AS(intersect(a, b), CalculusMismatch);
  CHECK_THROWS_AS(unite(a, b), CalculusMismatch);
  CHECK_THROWS_AS(is_subset(a, b), CalculusMismatch);
}

TEST_CASE("relation text round trip") {
  for (Calculus c : {Calculus::RCC5, Calculus::RCC8})
    for (int b = 0; b < (1 << basic_count(c)); ++b) {
      const Relation r(c, static_cast<std::uint8_t>(b));
      CHECK(parse_relation(c, to_string(r)) == r);
    }
  CHECK(to_string(Relation::universal(Calculus::RCC5)) == "*");
  CHECK(to_string(Relation::empty(Calculus::RCC5)) == "0");
  CHECK(to_string(parse_relation(Calculus::RCC8, "EQ|DC")) == "DC|EQ");
  CHECK_THROWS_AS(parse_relation(Calculus::RCC5, "TPP"), ParseError);
  CHECK_THROWS_AS(parse_relation(Calculus::RCC8, "DC||EC"), ParseError);
  CHECK_THROWS_AS(parse_relation(Calculus::RCC8, ""), ParseError);
  CHECK(parse_calculus("RCC5") == Calculus::RCC5);
  CHECK_THROWS_AS(parse_calculus("rcc5"), ParseError);
  CHECK_THROWS_AS(parse_calculus("IA"), ParseError);
}

TEST_CASE("ct_path folds composition from the left") {
  const auto r = [](const char* s) { return parse_relation(Calculus::RCC8, s); };
  CHECK(ct_path({r("TPP")}) == r("TPP"));
  CHECK(ct_path({r("NTPP"), r("TPP"), r("NTPP")}) == r("NTPP"));
  CHECK(ct_path({r("PO"), r("NTPP"), r("EQ")}) == compose(compose(r("PO"), r("NTPP")), r("EQ")));
  CHECK_THROWS_AS(ct_path(std::span<const Relation>{}), InvalidArgument);
}

TEST_CASE("composition is monotone and distributes over union") {
  for (Calculus c : {Calculus::RCC5, Calculus::RCC8}) {
    const int nrel = 1 << basic_count(c);
    for (int a = 0; a < nrel; a += 7)
      for (int b = 0; b < nrel; b += 5)
        for (int d = 0; d < nrel; d += 11) {
          const Relation R(c, std::uint8_t(a)), S(c, std::uint8_t(b)), T(c, std::uint8_t(d));
          CHECK(compose(R, unite(S, T)) == unite(compose(R, S), compose(R, T)));
          CHECK(is_subset(compose(R, intersect(S, T)), intersect(compose(R, S), compose(R, T))));
        }
  }
}

TEST_CASE("relation algebra axioms hold exhaustively") {
  const auto r5 = verify_relation_algebra(Calculus::RCC5);
  CHECK(r5.pass);
  CHECK(r5.triples_checked == 32u * 32u * 32u);
  const auto r8 = verify_relation_algebra(Calculus::RCC8);
  CHECK(r8.pass);
  CHECK(r8.triples_checked == 256u * 256u * 256u);
}
