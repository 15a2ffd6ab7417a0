#pragma once

// Random networks for tests and benchmarks: a geometric scenario is weakened
// edge by edge inside a subalgebra, so the scenario remains a solution and
// the network stays consistent and all-different.

#include "qsr/geometry.hpp"

namespace qsr {

struct WeakenOptions {
  double extra_basic = 0.3;  // probability of adding each other basic before lifting
  double drop = 0.2;         // probability of making an edge universal
};

/// Complete basic network of n generated regions, in the requested calculus.
inline Network geometric_scenario(Calculus c, std::size_t n, std::uint64_t seed, RegionProfile profile) {
  if (n < 2) throw InvalidArgument("geometric_scenario: n must be at least 2");
  const Network s = scenario_from_regions(generate_regions(n, seed, profile));
  return c == Calculus::RCC8 ? s : to_rcc5(s);
}

/// Each edge becomes the smallest member of s containing its scenario basic
/// and some randomly chosen further basics.
inline Network weaken(const Network& scenario, const Subalgebra& s, Rng& rng,
                      const WeakenOptions& opt = {}) {
  if (scenario.calculus() != s.calculus()) throw CalculusMismatch();
  Network out = scenario;
  const int nb = basic_count(scenario.calculus());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (rng.chance(opt.drop)) {
        out.set_bits(i, j, universal_bits(out.calculus()));
        continue;
      }
      std::uint8_t bits = scenario.bits(i, j);
      for (int b = 0; b < nb; ++b)
        if (rng.chance(opt.extra_basic)) bits |= std::uint8_t(1u << b);
      const auto lifted = s.smallest_superset({out.calculus(), bits});
      out.set(i, j, lifted ? *lifted : Relation::universal(out.calculus()));
    }
  return out;
}

/// A consistent all-different network of n variables over s.
inline Network random_network(const Subalgebra& s, std::size_t n, Rng& rng,
                              const WeakenOptions& opt = {}) {
  static constexpr RegionProfile profiles[] = {RegionProfile::Scattered, RegionProfile::Nested,
                                               RegionProfile::Mixed};
  const Network scen = geometric_scenario(s.calculus(), n, rng.engine()(), profiles[rng.below(3)]);
  return weaken(scen, s, rng, opt);
}

}  // namespace qsr
