#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "support.hpp"

using namespace qsr;
using namespace qsr::test;

namespace {

Network with_edges(const Network& base, std::initializer_list<Edge> keep) {
  Network out(base.calculus(), base.size());
  for (auto [i, j] : keep) out.set(i, j, base.at(i, j));
  return out;
}

const std::vector<const Subalgebra*>& distributive_all() {
  static const std::vector<const Subalgebra*> v{&d5_14(), &d5_20(), &d8_41(), &d8_64()};
  return v;
}

}  // namespace

TEST_CASE("is_redundant on Example 1") {
  const Network e1 = example1();
  CHECK(is_redundant(e1, 0, 1));
  for (auto [i, j] : e1.constraints())
    if (!(i == 0 && j == 1)) CHECK_FALSE(is_redundant(e1, i, j));
  CHECK(is_redundant(e1, 2, 4));  // universal
  CHECK_THROWS_AS(is_redundant(e1, 3, 3), InvalidArgument);
  CHECK(nontrivial(redundant_constraints(e1).redundant, e1) == std::set<Edge>{{0, 1}});
  CHECK(brute_redundant(e1) == std::set<Edge>{{0, 1}});
}

TEST_CASE("prime_iterative on the worked examples") {
  const Network e1 = example1();
  const Network expect1 = remove_constraint(e1, 0, 1);
  std::vector<Edge> order = e1.constraints();
  std::sort(order.begin(), order.end());
  do {
    CHECK(prime_iterative(e1, order) == expect1);
  } while (std::next_permutation(order.begin(), order.end()));

  const Network e2 = example2();
  const Network core2 = with_edges(e2, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(prime_iterative(e2, {{0, 3}, {0, 1}, {0, 2}, {1, 2}, {1, 3}}) ==
        with_edges(e2, {{0, 1}, {0, 2}, {1, 2}, {1, 3}}));
  CHECK(prime_iterative(e2, {{1, 3}, {0, 1}, {0, 2}, {1, 2}, {0, 3}}) ==
        with_edges(e2, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}));
  CHECK(core(e2) == core2);
  CHECK_FALSE(equivalent(core2, e2));
  CHECK(brute_equivalent(prime_iterative(e2, {{1, 3}, {0, 1}, {0, 2}, {1, 2}, {0, 3}}), e2));
  CHECK_FALSE(brute_equivalent(core2, e2));
  CHECK_THROWS_AS(prime_iterative(e2, {{0, 1}}), InvalidArgument);
}

TEST_CASE("core_algorithm1 preconditions") {
  CHECK_THROWS_AS(core_algorithm1(example2()), NotAllDifferent);
  CHECK_THROWS_AS(core_algorithm1(example1()), NotDistributive);
  CHECK_THROWS_AS(core_algorithm1(parse_network("calculus RCC5\nvars 3\n1 2 PP\n2 3 PP\n1 3 DR\n")),
                  InconsistentNetwork);
  Algorithm1Options h;
  h.subalgebra = &h5();
  CHECK_THROWS_AS(core_algorithm1(a_closure(example1()).network, h), NotDistributive);
  CHECK_THROWS_AS(core_algorithm1(nested_chain(), h), CalculusMismatch);
  Algorithm1Options other;
  other.subalgebra = &d5_14();
  CHECK_THROWS_AS(core_algorithm1(nested_chain(), other), CalculusMismatch);
}

TEST_CASE("core_algorithm1 results") {
  const auto chain = core_algorithm1(nested_chain());
  CHECK(nontrivial(chain.report.redundant, nested_chain()) == std::set<Edge>{{0, 2}});
  CHECK(chain.report.method == RedundancyMethod::Algorithm1);
  CHECK(chain.report.subalgebra == "D8_41");
  CHECK(chain.core.constraint_count() == 2);

  // Example 1 lies outside every distributive subalgebra but its closure does not.
  Algorithm1Options o;
  o.membership_on_closure = true;
  const auto e1 = core_algorithm1(example1(), o);
  CHECK(nontrivial(e1.report.redundant, example1()) == std::set<Edge>{{0, 1}});
  CHECK(e1.core == remove_constraint(example1(), 0, 1));
  const std::set<Edge> trivial(e1.report.trivially_redundant.begin(), e1.report.trivially_redundant.end());
  CHECK(trivial == std::set<Edge>{{0, 3}, {1, 2}, {2, 4}, {3, 4}});
  for (const auto& e : trivial)
    CHECK(std::find(e1.report.redundant.begin(), e1.report.redundant.end(), e) != e1.report.redundant.end());
}

TEST_CASE("equivalent") {
  const Network e1 = example1();
  CHECK(equivalent(e1, remove_constraint(e1, 0, 1)));
  CHECK(equivalent(e1, a_closure(e1).network));
  CHECK_FALSE(equivalent(e1, remove_constraint(e1, 2, 3)));
  CHECK(equivalent(nested_chain(), remove_constraint(nested_chain(), 0, 2)));
  CHECK_THROWS_AS(equivalent(e1, Network(Calculus::RCC5, 3)), InvalidArgument);
}

TEST_CASE("Algorithm 1 agrees with independent redundancy checks") {
  Rng rng(31);
  for (const Subalgebra* s : distributive_all())
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 4 + rng.below(3);
      const Network net = random_network(*s, n, rng);
      INFO(s->name() << "\n" << save_network(net));
      const auto a1 = core_algorithm1(net);
      const auto sweep = redundant_constraints(net);
      CHECK(a1.report.redundant == sweep.redundant);
      // Order independence of the iterative procedure.
      std::vector<Edge> order = net.constraints();
      CHECK(prime_iterative(net, order) == a1.core);
      std::reverse(order.begin(), order.end());
      CHECK(prime_iterative(net, order) == a1.core);
      // Redundancy transfers between the network and its closure.
      const Network& closed = a1.closure;
      for (auto [i, j] : net.constraints())
        CHECK(is_redundant(net, i, j) == is_redundant(closed, i, j));
      // The result is prime and equivalent.
      for (auto [i, j] : a1.core.constraints()) CHECK_FALSE(is_redundant(a1.core, i, j));
      CHECK(equivalent(a1.core, net));
      if (n <= 5) {
        CHECK(brute_equivalent(a1.core, net));
        CHECK(nontrivial(a1.report.redundant, net) == brute_redundant(net));
      }
    }
}

TEST_CASE("equivalent matches the scenario oracle on general networks") {
  Rng rng(32);
  for (int t = 0; t < 40; ++t) {
    Network a(Calculus::RCC5, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if (rng.chance(0.7)) a.set_bits(i, j, static_cast<std::uint8_t>(1 + rng.below(31)));
    Network b = a;
    const auto cons = a.constraints();
    if (!cons.empty()) {
      const auto [i, j] = cons[rng.below(cons.size())];
      b = remove_constraint(b, i, j);
    }
    CHECK(equivalent(a, b) == brute_equivalent(a, b));
  }
}

// The following networks are over H5 and all-different, but not over a
// distributive subalgebra; each breaks one of the redundancy characterisations.

TEST_CASE("over H5 a redundant constraint of a path-consistent network can be looser than its triangles") {
  const Network net = parse_network(R"(calculus RCC5
vars 5
1 2 DR|PP
1 3 DR|PPi|EQ
1 4 DR
1 5 DR|PO|PP|PPi
2 3 DR|PP
2 4 DR|PO|PP|PPi
2 5 PO|PP|PPi
3 4 DR|PO|PP
3 5 PO|PP|PPi
)");
  REQUIRE(over_tractable_class(net));
  REQUIRE(all_different(net).all_different);
  REQUIRE(a_closure(net).network == net);
  REQUIRE(brute_redundant(net).count({0, 4}));
  CHECK(is_redundant(net, 0, 4));
  Relation triangles = Relation::universal(Calculus::RCC5);
  for (std::size_t k = 1; k < 4; ++k) triangles = intersect(triangles, compose(net.at(0, k), net.at(k, 4)));
  CHECK(triangles.is_universal());
  CHECK(triangles != net.at(0, 4));
}

TEST_CASE("over H5 redundancy in the closure need not transfer back") {
  const Network net = parse_network(R"(calculus RCC5
vars 5
1 2 DR|EQ
1 5 DR|EQ
2 3 DR|PO|PPi
2 5 PPi
3 4 DR|PO|EQ
4 5 DR|PO|PP|PPi
)");
  REQUIRE(over_tractable_class(net));
  REQUIRE(all_different(net).all_different);
  const Network closed = a_closure(net).network;
  CHECK(brute_redundant(closed).count({0, 4}));
  CHECK(is_redundant(closed, 0, 4));
  CHECK_FALSE(brute_redundant(net).count({0, 4}));
  CHECK_FALSE(is_redundant(net, 0, 4));
}

TEST_CASE("over H5 the core need not be equivalent") {
  const Network net = parse_network(R"(calculus RCC5
vars 4
1 2 DR|PPi|EQ
1 3 DR
1 4 DR|PO|PP
2 3 PPi
2 4 PPi
3 4 PO|PP|PPi
)");
  REQUIRE(over_tractable_class(net));
  REQUIRE(all_different(net).all_different);
  REQUIRE(brute_consistent(net));
  const Network c = core(net);
  CHECK(edge_set(c).size() < edge_set(net).size());
  CHECK_FALSE(brute_equivalent(c, net));
  CHECK_FALSE(equivalent(c, net));
  // Removing one redundant constraint at a time always stays equivalent.
  CHECK(brute_equivalent(prime_iterative(net), net));
}
