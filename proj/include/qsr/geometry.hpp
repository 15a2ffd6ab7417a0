#pragma once

// RCC8 relations between simple polygons with exact integer predicates,
// scenarios from region sets, bounding-box assisted reconstitution of a
// network from its prime subnetwork, and a deterministic region generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsr/reasoning.hpp"

namespace qsr {

struct Point {
  std::int64_t x = 0, y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

struct BoundingBox {
  std::int64_t min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

// Strictly separated boxes: closures cannot meet.
inline bool boxes_disjoint(const BoundingBox& a, const BoundingBox& b) {
  return a.max_x < b.min_x || b.max_x < a.min_x || a.max_y < b.min_y || b.max_y < a.min_y;
}

inline constexpr std::int64_t kMaxCoordinate = std::int64_t{1} << 40;

namespace geom {

using i128 = __int128;

inline int orient(Point a, Point b, Point c) {
  const i128 v = i128(b.x - a.x) * (c.y - a.y) - i128(b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

// p on the closed segment ab, given collinearity.
inline bool within_box(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool on_segment(Point a, Point b, Point p) { return orient(a, b, p) == 0 && within_box(a, b, p); }

// Closed segments share a point.
inline bool segments_meet(Point a, Point b, Point c, Point d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) return true;
  return (o1 == 0 && within_box(a, b, c)) || (o2 == 0 && within_box(a, b, d)) ||
         (o3 == 0 && within_box(c, d, a)) || (o4 == 0 && within_box(c, d, b));
}

// Relative interiors cross at a single point.
inline bool proper_crossing(Point a, Point b, Point c, Point d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

enum class Side { In, On, Out };

// Point against a ring; both given in the same (possibly scaled) coordinates.
inline Side locate(const std::vector<Point>& ring, Point p) {
  bool inside = false;
  const std::size_t m = ring.size();
  for (std::size_t e = 0; e < m; ++e) {
    const Point a = ring[e], b = ring[(e + 1) % m];
    if (on_segment(a, b, p)) return Side::On;
    // Half-open rule on y avoids counting shared vertices twice.
    if ((a.y > p.y) != (b.y > p.y)) {
      const int o = orient(a, b, p);
      if ((b.y > a.y) ? o > 0 : o < 0) inside = !inside;
    }
  }
  return inside ? Side::In : Side::Out;
}

inline i128 twice_area(const std::vector<Point>& ring) {
  i128 s = 0;
  for (std::size_t e = 0; e < ring.size(); ++e) {
    const Point a = ring[e], b = ring[(e + 1) % ring.size()];
    s += i128(a.x) * b.y - i128(b.x) * a.y;
  }
  return s;
}

}  // namespace geom

/// Simple polygon given by its exterior ring, stored counterclockwise.
class Region {
 public:
  Region() = default;
  Region(std::string id, std::vector<Point> ring) : id_(std::move(id)), ring_(std::move(ring)) {
    if (ring_.size() >= 2 && ring_.front() == ring_.back()) ring_.pop_back();
    validate();
    if (geom::twice_area(ring_) < 0) std::reverse(ring_.begin(), ring_.end());
    box_ = {ring_[0].x, ring_[0].y, ring_[0].x, ring_[0].y};
    for (const Point& p : ring_) {
      box_.min_x = std::min(box_.min_x, p.x);
      box_.min_y = std::min(box_.min_y, p.y);
      box_.max_x = std::max(box_.max_x, p.x);
      box_.max_y = std::max(box_.max_y, p.y);
    }
  }

  const std::string& id() const noexcept { return id_; }
  const std::vector<Point>& ring() const noexcept { return ring_; }
  const BoundingBox& box() const noexcept { return box_; }

 private:
  void validate() const {
    const std::string who = "region '" + id_ + "': ";
    const std::size_t m = ring_.size();
    if (m < 3) throw DegenerateRegion(who + "fewer than 3 vertices");
    for (const Point& p : ring_)
      if (std::abs(p.x) > kMaxCoordinate || std::abs(p.y) > kMaxCoordinate)
        throw DegenerateRegion(who + "coordinate out of range");
    for (std::size_t e = 0; e < m; ++e) {
      const Point a = ring_[e], b = ring_[(e + 1) % m];
      if (a == b) throw DegenerateRegion(who + "repeated vertex");
      for (std::size_t f = e + 1; f < m; ++f) {
        const Point c = ring_[f], d = ring_[(f + 1) % m];
        const bool next = f == e + 1, wrap = e == 0 && f == m - 1;
        if (next || wrap) {
          // Adjacent edges share one endpoint and must not fold back onto each other.
          const Point shared = next ? b : a, far1 = next ? a : b, far2 = next ? d : c;
          if (geom::orient(far1, shared, far2) == 0 &&
              (geom::within_box(far1, shared, far2) || geom::within_box(shared, far2, far1)))
            throw DegenerateRegion(who + "self-intersecting boundary");
          continue;
        }
        if (geom::segments_meet(a, b, c, d))
          throw DegenerateRegion(who + "self-intersecting boundary");
      }
    }
    if (geom::twice_area(ring_) == 0) throw DegenerateRegion(who + "zero area");
  }

  std::string id_;
  std::vector<Point> ring_;
  BoundingBox box_;
};

namespace detail {

// Vertices of a, plus the midpoint of every piece of a's boundary once its
// edges are split at b's vertices; coordinates doubled.
inline std::vector<Point> boundary_samples(const Region& a, const Region& b) {
  std::vector<Point> out;
  const auto& ra = a.ring();
  for (std::size_t e = 0; e < ra.size(); ++e) {
    const Point p = ra[e], q = ra[(e + 1) % ra.size()];
    std::vector<Point> cuts{p, q};
    for (const Point& v : b.ring())
      if (v != p && v != q && geom::on_segment(p, q, v)) cuts.push_back(v);
    // Order along the edge.
    std::sort(cuts.begin(), cuts.end(), [&](Point u, Point w) {
      return geom::i128(u.x - p.x) * (q.x - p.x) + geom::i128(u.y - p.y) * (q.y - p.y) <
             geom::i128(w.x - p.x) * (q.x - p.x) + geom::i128(w.y - p.y) * (q.y - p.y);
    });
    out.push_back({2 * p.x, 2 * p.y});
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c)
      out.push_back({cuts[c].x + cuts[c + 1].x, cuts[c].y + cuts[c + 1].y});
  }
  return out;
}

inline std::vector<Point> doubled(const std::vector<Point>& ring) {
  std::vector<Point> out;
  out.reserve(ring.size());
  for (const Point& p : ring) out.push_back({2 * p.x, 2 * p.y});
  return out;
}

struct Contact {
  bool a_in_b = true;   // no sample of a outside b
  bool b_in_a = true;
  bool overlap = false;  // some sample strictly interior to the other region
  bool touch = false;    // boundaries share a point
};

inline Contact classify_samples(const Region& a, const Region& b) {
  Contact c;
  const auto rb = doubled(b.ring()), ra = doubled(a.ring());
  for (const Point& p : boundary_samples(a, b)) {
    const auto s = geom::locate(rb, p);
    if (s == geom::Side::Out) c.a_in_b = false;
    if (s == geom::Side::In) c.overlap = true;
    if (s == geom::Side::On) c.touch = true;
  }
  for (const Point& p : boundary_samples(b, a)) {
    const auto s = geom::locate(ra, p);
    if (s == geom::Side::Out) c.b_in_a = false;
    if (s == geom::Side::In) c.overlap = true;
    if (s == geom::Side::On) c.touch = true;
  }
  return c;
}

inline Relation rcc8_exact(const Region& a, const Region& b) {
  using namespace rcc8;
  const auto& ra = a.ring();
  const auto& rb = b.ring();
  for (std::size_t e = 0; e < ra.size(); ++e)
    for (std::size_t f = 0; f < rb.size(); ++f)
      if (geom::proper_crossing(ra[e], ra[(e + 1) % ra.size()], rb[f], rb[(f + 1) % rb.size()]))
        return Relation::basic(Calculus::RCC8, PO);
  const Contact c = classify_samples(a, b);
  int r;
  if (c.a_in_b && c.b_in_a) r = EQ;
  else if (c.a_in_b) r = c.touch ? TPP : NTPP;
  else if (c.b_in_a) r = c.touch ? TPPi : NTPPi;
  else if (c.overlap) r = PO;
  else if (c.touch) r = EC;
  else r = DC;
  return Relation::basic(Calculus::RCC8, r);
}

}  // namespace detail

/// The RCC8 basic relation holding between two regions. Boxes that are
/// strictly apart give DC without running the exact predicates.
inline Relation rcc8_relation(const Region& a, const Region& b) {
  if (boxes_disjoint(a.box(), b.box())) return Relation::basic(Calculus::RCC8, rcc8::DC);
  return detail::rcc8_exact(a, b);
}

/// Same as rcc8_relation but always through the exact predicates.
inline Relation rcc8_relation_exact(const Region& a, const Region& b) { return detail::rcc8_exact(a, b); }

/// RCC5 image of an RCC8 relation (DC, EC to DR; tangential and
/// non-tangential parts merged).
inline Relation to_rcc5(Relation r) {
  if (r.calculus() == Calculus::RCC5) return r;
  static constexpr int map[8] = {rcc5::DR, rcc5::DR, rcc5::PO, rcc5::PP,
                                 rcc5::PP, rcc5::PPi, rcc5::PPi, rcc5::EQ};
  std::uint8_t out = 0;
  for (int b : r.members()) out |= std::uint8_t(1u << map[b]);
  return {Calculus::RCC5, out};
}

inline Network to_rcc5(const Network& net) {
  Network out(Calculus::RCC5, net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    out.set_label(i, net.label(i));
    for (std::size_t j = i + 1; j < net.size(); ++j) out.set(i, j, to_rcc5(net.at(i, j)));
  }
  return out;
}

/// Complete basic RCC8 network of pairwise relations; labels are region ids.
inline Network scenario_from_regions(const std::vector<Region>& regions) {
  if (regions.size() < 2) throw InvalidArgument("scenario_from_regions: need at least 2 regions");
  std::set<std::string> ids;
  for (const Region& r : regions)
    if (!ids.insert(r.id()).second) throw InvalidArgument("duplicate region id '" + r.id() + "'");
  Network net(Calculus::RCC8, regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    net.set_label(i, regions[i].id());
    for (std::size_t j = i + 1; j < regions.size(); ++j)
      net.set(i, j, rcc8_relation(regions[i], regions[j]));
  }
  return net;
}

/// Seeds DC on every unconstrained pair whose boxes are apart, then closes.
inline Network hybrid_reconstitute(const Network& prime, const std::vector<Region>& regions,
                                   std::size_t* seeded = nullptr) {
  if (prime.calculus() != Calculus::RCC8)
    throw CalculusMismatch();
  std::map<std::string, const Region*> by_id;
  for (const Region& r : regions) by_id[r.id()] = &r;
  std::vector<const Region*> reg(prime.size());
  for (std::size_t i = 0; i < prime.size(); ++i) {
    auto it = by_id.find(prime.label(i));
    if (it == by_id.end())
      throw InvalidArgument("no region with id '" + prime.label(i) + "'");
    reg[i] = it->second;
  }
  Network net = prime;
  std::size_t count = 0;
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (net.at(i, j).is_universal() && boxes_disjoint(reg[i]->box(), reg[j]->box())) {
        net.set(i, j, Relation::basic(Calculus::RCC8, rcc8::DC));
        ++count;
      }
  if (seeded) *seeded = count;
  AClosureResult pc = a_closure(std::move(net));
  if (!pc.consistent)
    throw InconsistentNetwork("reconstitution is inconsistent; the prime network does not match the regions");
  return std::move(pc.network);
}

// Region files: {"regions":[{"id":"A","ring":[[x,y],...]}, ...]}.

inline std::vector<Region> regions_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("regions") || !doc["regions"].is_array())
    throw ParseError(0, "region file must be an object with a \"regions\" array");
  std::vector<Region> out;
  for (const auto& item : doc["regions"]) {
    if (!item.contains("id") || !item.contains("ring"))
      throw ParseError(0, "each region needs \"id\" and \"ring\"");
    const std::string id = item["id"].is_string() ? item["id"].get<std::string>() : item["id"].dump();
    if (item.contains("holes") || item.contains("rings"))
      throw ParseError(0, "region '" + id + "': holes and multi-part regions are not supported");
    std::vector<Point> ring;
    for (const auto& p : item["ring"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        throw ParseError(0, "region '" + id +
                                "': ring must be a list of integer [x,y] pairs (holes and "
                                "multi-part regions are not supported)");
      ring.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
    }
    out.emplace_back(id, std::move(ring));
  }
  return out;
}

inline nlohmann::json regions_to_json(const std::vector<Region>& regions) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Region& r : regions) {
    nlohmann::json ring = nlohmann::json::array();
    for (const Point& p : r.ring()) ring.push_back({p.x, p.y});
    arr.push_back({{"id", r.id()}, {"ring", ring}});
  }
  return {{"regions", arr}};
}

enum class RegionProfile { Scattered, Nested, Mixed };

inline RegionProfile parse_profile(std::string_view s) {
  if (s == "scattered") return RegionProfile::Scattered;
  if (s == "nested") return RegionProfile::Nested;
  if (s == "mixed") return RegionProfile::Mixed;
  throw InvalidArgument("unknown profile '" + std::string(s) + "' (scattered, nested, mixed)");
}

inline const char* profile_name(RegionProfile p) {
  switch (p) {
    case RegionProfile::Scattered: return "scattered";
    case RegionProfile::Nested: return "nested";
    case RegionProfile::Mixed: return "mixed";
  }
  return "?";
}

/// Random source with a platform independent integer draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

namespace detail {

inline Region rect(const std::string& id, std::int64_t x0, std::int64_t y0, std::int64_t x1,
                   std::int64_t y1) {
  return Region(id, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

// A rectangle, an L shape or a right triangle inside the given box.
inline Region shape_in(Rng& rng, const std::string& id, std::int64_t x0, std::int64_t y0,
                       std::int64_t x1, std::int64_t y1) {
  const auto kind = rng.below(4);
  const std::int64_t w = x1 - x0, h = y1 - y0;
  if (kind == 1 && w >= 4 && h >= 4) {
    const std::int64_t cx = x0 + w / 2, cy = y0 + h / 2;
    return Region(id, {{x0, y0}, {x1, y0}, {x1, cy}, {cx, cy}, {cx, y1}, {x0, y1}});
  }
  if (kind == 2) return Region(id, {{x0, y0}, {x1, y0}, {x0, y1}});
  return rect(id, x0, y0, x1, y1);
}

struct Slot {
  std::int64_t x0, y0, x1, y1;
};

// Containment forest: about sqrt(count) roots laid on a grid, every other
// region placed in one of the free child slots of an earlier region (three
// columns per parent), tangent to the parent's boundary some of the time.
inline void nested_forest(Rng& rng, std::size_t count, std::size_t first_id,
                          std::int64_t ox, std::int64_t oy, std::vector<Region>& out) {
  if (count == 0) return;
  const std::int64_t root = std::int64_t{1} << 30;
  const std::size_t roots = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(count))));
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(double(roots))));
  std::vector<Slot> open;
  auto add_slots = [&](std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
    const std::int64_t w = (x1 - x0) / 3;
    if (w < 64 || (y1 - y0) < 64) return;
    for (int c = 0; c < 3; ++c) open.push_back({x0 + c * w, y0, x0 + (c + 1) * w, y1});
  };
  std::size_t made = 0;
  for (std::size_t r = 0; r < roots && made < count; ++r, ++made) {
    const std::int64_t gap = rng.chance(0.3) ? 0 : root / 8;
    const std::int64_t x0 = ox + std::int64_t(r % cols) * (root + root / 8);
    const std::int64_t y0 = oy + std::int64_t(r / cols) * (root + root / 8);
    // gap 0 lets neighbouring roots share an edge (EC).
    const std::int64_t x1 = x0 + root + (gap == 0 ? root / 8 : 0);
    out.push_back(rect("r" + std::to_string(first_id + made), x0, y0, x1, y0 + root));
    add_slots(x0, y0, x1, y0 + root);
  }
  while (made < count && !open.empty()) {
    // Favor the newest slots so chains form.
    const std::size_t pick = rng.chance(0.5) ? open.size() - 1 - rng.below(std::min<std::size_t>(3, open.size()))
                                             : rng.below(open.size());
    const Slot s = open[pick];
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
    const std::int64_t w = s.x1 - s.x0, h = s.y1 - s.y0;
    std::int64_t x0 = s.x0 + w / 8, x1 = s.x1 - w / 8, y0 = s.y0 + h / 8, y1 = s.y1 - h / 8;
    // Reaching the slot's edge makes the region tangent to its parent
    // (outer edges) or externally connected to a sibling (inner edges).
    if (rng.chance(0.25)) y0 = s.y0;
    if (rng.chance(0.15)) y1 = s.y1;
    if (rng.chance(0.2)) x0 = s.x0;
    if (rng.chance(0.2)) x1 = s.x1;
    out.push_back(rect("r" + std::to_string(first_id + made), x0, y0, x1, y1));
    ++made;
    add_slots(x0, y0, x1, y1);
  }
}

inline void scattered_field(Rng& rng, std::size_t count, std::size_t first_id, std::int64_t ox,
                            std::int64_t oy, std::int64_t unit, std::vector<Region>& out) {
  const auto side = std::max<std::int64_t>(
      4, static_cast<std::int64_t>(std::ceil(std::sqrt(double(count)) * 2.5)));
  for (std::size_t k = 0; k < count; ++k) {
    // Coarse grid coordinates make shared edges (EC) common.
    const std::int64_t gx = rng.between(0, side - 1), gy = rng.between(0, side - 1);
    const std::int64_t w = rng.between(1, 3), h = rng.between(1, 3);
    out.push_back(shape_in(rng, "s" + std::to_string(first_id + k), ox + gx * unit,
                           oy + gy * unit, ox + (gx + w) * unit, oy + (gy + h) * unit));
  }
}

}  // namespace detail

/// Deterministic region sets. "scattered" gives mostly DC/EC/PO pairs,
/// "nested" containment hierarchies, "mixed" a scattered layer over a forest.
/// No two regions are equal.
inline std::vector<Region> generate_regions(std::size_t n, std::uint64_t seed, RegionProfile profile) {
  if (n == 0) throw InvalidArgument("generate_regions: n must be at least 1");
  Rng rng(seed);
  std::vector<Region> out;
  switch (profile) {
    case RegionProfile::Nested:
      detail::nested_forest(rng, n, 1, 0, 0, out);
      break;
    case RegionProfile::Scattered:
      detail::scattered_field(rng, n, 1, 0, 0, std::int64_t{1} << 24, out);
      break;
    case RegionProfile::Mixed: {
      const std::size_t a = (n + 1) / 2;
      detail::nested_forest(rng, a, 1, 0, 0, out);
      detail::scattered_field(rng, n - a, a + 1, 0, 0, std::int64_t{1} << 28, out);
      break;
    }
  }
  // Replace regions equal to an earlier one, or left unplaced, by small
  // squares on a free diagonal far from everything else.
  const std::int64_t far = std::int64_t{1} << 38;
  std::size_t extra = 0;
  auto fresh = [&](std::size_t idx) {
    const std::int64_t x = far + std::int64_t(extra++) * 4096;
    return detail::rect("q" + std::to_string(idx + 1), x, x, x + 1024 + rng.between(0, 1000), x + 1024);
  };
  while (out.size() < n) out.push_back(fresh(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (rcc8_relation(out[i], out[j]).is_eq()) {
        out[i] = fresh(i);
        break;
      }
  // Stable, distinct ids.
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Region("R" + std::to_string(i + 1), out[i].ring());
  return out;
}

}  // namespace qsr
