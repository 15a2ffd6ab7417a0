#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace qsr;
using namespace qsr::rcc8;

namespace {

Region square(const char* id, std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
  return Region(id, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

int rel(const Region& a, const Region& b) { return rcc8_relation(a, b).members().front(); }

}  // namespace

TEST_CASE("fixture relations cover all eight basics") {
  const Region big = square("big", 0, 0, 10, 10);
  CHECK(rel(square("a", 0, 0, 1, 1), square("b", 6, 0, 7, 1)) == DC);
  CHECK(rel(square("a", 0, 0, 1, 1), square("b", 1, 0, 2, 1)) == EC);
  CHECK(rel(square("a", 0, 0, 1, 1), square("b", 1, 1, 2, 2)) == EC);  // corner contact
  CHECK(rel(square("a", 0, 0, 4, 4), square("b", 2, 2, 6, 6)) == PO);
  CHECK(rel(square("s", 0, 3, 2, 5), big) == TPP);
  CHECK(rel(square("s", 2, 2, 4, 4), big) == NTPP);
  CHECK(rel(big, square("s", 0, 3, 2, 5)) == TPPi);
  CHECK(rel(big, square("s", 2, 2, 4, 4)) == NTPPi);
  CHECK(rel(big, square("t", 0, 0, 10, 10)) == EQ);
  // Same set, different vertex list: an extra collinear vertex and reversed orientation.
  CHECK(rel(big, Region("u", {{0, 0}, {0, 10}, {10, 10}, {10, 0}, {5, 0}})) == EQ);
}

TEST_CASE("non-convex shapes") {
  // L shape with its notch; a square filling the notch touches it along two edges.
  const Region l("L", {{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {0, 4}});
  CHECK(rel(l, square("n", 2, 2, 4, 4)) == EC);
  CHECK(rel(l, square("n", 3, 3, 4, 4)) == DC);
  CHECK(rel(square("in", 0, 0, 1, 3), l) == TPP);
  CHECK(rel(l, square("bb", 0, 0, 4, 4)) == TPP);
  // Square crossing the notch corner partially.
  CHECK(rel(l, square("x", 1, 1, 3, 3)) == PO);
  // A triangle whose hypotenuse touches a square's corner.
  CHECK(rel(Region("t", {{0, 0}, {4, 0}, {0, 4}}), square("c", 2, 2, 3, 3)) == EC);
  CHECK(rel(square("a", 0, 0, 4, 2), square("b", 0, 0, 2, 4)) == PO);
  // Overlap where one boundary passes through a vertex of the other, no proper crossing.
  CHECK(rel(Region("a", {{0, 0}, {4, 0}, {4, 2}, {2, 2}, {0, 2}}), square("b", 0, 0, 2, 4)) == PO);
}

TEST_CASE("relations are converse symmetric and agree with the exact path") {
  const auto regs = generate_regions(25, 5, RegionProfile::Mixed);
  for (std::size_t i = 0; i < regs.size(); ++i)
    for (std::size_t j = 0; j < regs.size(); ++j) {
      if (i == j) continue;
      const Relation r = rcc8_relation(regs[i], regs[j]);
      CHECK(r.is_basic());
      CHECK(r == rcc8_relation_exact(regs[i], regs[j]));
      CHECK(converse(r) == rcc8_relation(regs[j], regs[i]));
    }
}

TEST_CASE("degenerate regions are rejected") {
  CHECK_THROWS_AS(Region("a", {{0, 0}, {1, 1}}), DegenerateRegion);
  CHECK_THROWS_AS(Region("a", {{0, 0}, {1, 1}, {2, 2}}), DegenerateRegion);
  CHECK_THROWS_AS(Region("bowtie", {{0, 0}, {2, 2}, {2, 0}, {0, 2}}), DegenerateRegion);
  CHECK_THROWS_AS(Region("spike", {{0, 0}, {4, 0}, {2, 0}, {2, 3}}), DegenerateRegion);
  CHECK_THROWS_AS(Region("dup", {{0, 0}, {1, 0}, {1, 0}, {0, 1}}), DegenerateRegion);
  CHECK_NOTHROW(Region("closed", {{0, 0}, {1, 0}, {1, 1}, {0, 0}}));
  const Region cw("cw", {{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  CHECK(geom::twice_area(cw.ring()) > 0);
}

TEST_CASE("scenario_from_regions") {
  const auto nested = scenario_from_regions(
      {square("A", 2, 2, 3, 3), square("B", 1, 1, 4, 4), square("C", 0, 0, 5, 5)});
  CHECK(nested.at(0, 1).members().front() == NTPP);
  CHECK(nested.at(0, 2).members().front() == NTPP);
  CHECK(nested.at(1, 2).members().front() == NTPP);
  CHECK(nested.label(2) == "C");
  const auto two = scenario_from_regions({square("A", 0, 0, 1, 1), square("B", 3, 3, 4, 4)});
  CHECK(two.at(0, 1).members().front() == DC);
  CHECK_THROWS_AS(scenario_from_regions({square("A", 0, 0, 1, 1)}), InvalidArgument);
  CHECK_THROWS_AS(scenario_from_regions({square("A", 0, 0, 1, 1), square("A", 3, 3, 4, 4)}),
                  InvalidArgument);
  for (auto p : {RegionProfile::Scattered, RegionProfile::Nested, RegionProfile::Mixed}) {
    const Network s = scenario_from_regions(generate_regions(30, 8, p));
    const auto pc = a_closure(s);
    CHECK(pc.consistent);
    CHECK(pc.network == s);
  }
}

TEST_CASE("hybrid reconstitution") {
  for (auto p : {RegionProfile::Scattered, RegionProfile::Nested, RegionProfile::Mixed}) {
    const auto regs = generate_regions(5, 17, p);
    const Network s = scenario_from_regions(regs);
    const auto a1 = core_algorithm1(s);
    CHECK(hybrid_reconstitute(a1.core, regs) == s);
  }
  // Without any box-disjoint pair the result is the plain closure.
  const std::vector<Region> overlapping{square("A", 0, 0, 4, 4), square("B", 2, 2, 6, 6),
                                        square("C", 1, 1, 2, 2)};
  const Network s = scenario_from_regions(overlapping);
  const Network prime = core_algorithm1(s).core;
  CHECK(hybrid_reconstitute(prime, overlapping) == a_closure(prime).network);
  // A prime network that contradicts the geometry surfaces as an inconsistency:
  // C inside B inside A, while C's box is far from A's.
  const std::vector<Region> regs{square("A", 0, 0, 10, 10), square("B", 2, 2, 4, 4),
                                 square("C", 20, 20, 22, 22)};
  Network bad(Calculus::RCC8, 3);
  for (std::size_t i = 0; i < 3; ++i) bad.set_label(i, regs[i].id());
  bad.set(1, 0, Relation::basic(Calculus::RCC8, NTPP));
  bad.set(2, 1, Relation::basic(Calculus::RCC8, NTPP));
  CHECK_THROWS_AS(hybrid_reconstitute(bad, regs), InconsistentNetwork);
  Network unknown = bad;
  unknown.set_label(0, "nowhere");
  CHECK_THROWS_AS(hybrid_reconstitute(unknown, regs), InvalidArgument);
}

TEST_CASE("region generator") {
  const auto a = generate_regions(40, 7, RegionProfile::Mixed);
  const auto b = generate_regions(40, 7, RegionProfile::Mixed);
  REQUIRE(a.size() == 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ring() == b[i].ring());
    CHECK(a[i].id() == b[i].id());
  }
  CHECK(generate_regions(1, 3, RegionProfile::Scattered).size() == 1);
  CHECK_THROWS_AS(generate_regions(0, 3, RegionProfile::Nested), InvalidArgument);

  // Nested sets are dominated by containment and disjointness, scattered sets
  // by DC/EC/PO.
  auto histogram = [](const Network& s) {
    std::array<int, 8> h{};
    for (auto [i, j] : s.constraints()) ++h[s.at(i, j).members().front()];
    return h;
  };
  const auto hn = histogram(scenario_from_regions(generate_regions(60, 1, RegionProfile::Nested)));
  const auto hs = histogram(scenario_from_regions(generate_regions(60, 1, RegionProfile::Scattered)));
  CHECK(hn[TPP] + hn[NTPP] + hn[TPPi] + hn[NTPPi] > 0);
  CHECK(hn[PO] == 0);
  CHECK(hs[PO] + hs[EC] > 0);
  CHECK(hs[EQ] == 0);
  const auto s3 = scenario_from_regions(generate_regions(3, 7, RegionProfile::Nested));
  CHECK(s3.at(0, 1).members().front() == TPPi);
  CHECK(s3.at(0, 2).members().front() == NTPPi);
}

TEST_CASE("region JSON") {
  const auto regs = generate_regions(4, 2, RegionProfile::Scattered);
  const auto back = regions_from_json(regions_to_json(regs));
  REQUIRE(back.size() == 4);
  CHECK(back[2].ring() == regs[2].ring());
  CHECK_THROWS_AS(regions_from_json(nlohmann::json::parse(R"({"regions":[{"id":"A","ring":[[[0,0],[1,0],[0,1]]]}]})")),
                  ParseError);
  CHECK_THROWS_AS(regions_from_json(nlohmann::json::parse(R"({"regions":[{"id":"A","ring":[[0,0],[1.5,0],[0,1]]}]})")),
                  ParseError);
  CHECK_THROWS_AS(regions_from_json(nlohmann::json::parse(R"({"shapes":[]})")), ParseError);
  CHECK_THROWS_AS(regions_from_json(nlohmann::json::parse(R"({"regions":[{"id":"A","ring":[[0,0],[1,0],[2,0]]}]})")),
                  DegenerateRegion);
}
