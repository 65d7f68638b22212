#include "mrays/combinat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "orbit_walk.hpp"

namespace mrays {

using detail::u128;

namespace {

// Unreduced periodic angle num / (2^n - 1); 1 is stored as 1/1.
struct Node {
  std::uint64_t num;
  std::uint64_t den;
};

bool less(const Node& a, const Node& b) { return u128(a.num) * b.den < u128(b.num) * a.den; }

struct Chord {
  Node lo;
  Node hi;
  bool strictly_inside(const Node& x) const { return less(lo, x) && less(x, hi); }
};

bool crosses(const Chord& a, const Chord& b) { return a.strictly_inside(b.lo) != a.strictly_inside(b.hi); }

Angle to_angle(const Node& n) { return Angle(BigInt(n.num), BigInt(n.den)); }

void require_period(unsigned n) {
  if (n == 0 || n > 62) throw DomainError("period must lie in [1, 62]");
}

}  // namespace

std::uint64_t count_parabolic(unsigned n) {
  if (n == 0 || n > 63) throw DomainError("count_parabolic needs 1 <= n <= 63");
  std::uint64_t s = std::uint64_t{1} << (n - 1);
  for (unsigned k = 1; k < n; ++k)
    if (n % k == 0) s -= count_parabolic(k);
  return s;
}

PairTable::PairTable(unsigned max_period) : max_period_(max_period) {
  require_period(max_period);
  std::vector<Chord> chords;
  offsets_.push_back(0);

  for (unsigned n = 1; n <= max_period; ++n) {
    if (n == 1) {
      Chord c{{0, 1}, {1, 1}};
      chords.push_back(c);
      pairs_.push_back({Angle::zero(), Angle::one(), 1});
      offsets_.push_back(pairs_.size());
      continue;
    }
    const std::uint64_t m = (std::uint64_t{1} << n) - 1;
    std::vector<Node> nodes;
    for (std::uint64_t a = 1; a < m; ++a)
      if (detail::rotation_period(a, n) == n) nodes.push_back({a, m});

    // Smallest unpaired angle joins the smallest later unpaired angle whose
    // chord crosses no chord drawn so far.
    std::vector<bool> paired(nodes.size(), false);
    const std::size_t first_of_period = pairs_.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (paired[i]) continue;
      bool found = false;
      for (std::size_t j = i + 1; j < nodes.size() && !found; ++j) {
        if (paired[j]) continue;
        Chord candidate{nodes[i], nodes[j]};
        bool clear = std::none_of(chords.begin(), chords.end(), [&](const Chord& c) { return crosses(candidate, c); });
        if (!clear) continue;
        chords.push_back(candidate);
        paired[i] = paired[j] = true;
        pairs_.push_back({to_angle(nodes[i]), to_angle(nodes[j]), n});
        found = true;
      }
      if (!found) throw ConsistencyError("pairing of period " + std::to_string(n) + " stalled");
    }
    if (pairs_.size() - first_of_period != count_parabolic(n))
      throw ConsistencyError("period " + std::to_string(n) + " produced the wrong number of pairs");
    offsets_.push_back(pairs_.size());
  }
}

std::span<const RayPair> PairTable::pairs_of_period(unsigned n) const {
  if (n == 0 || n > max_period_) throw DomainError("period outside the pair table");
  return std::span<const RayPair>(pairs_).subspan(offsets_[n - 1], offsets_[n] - offsets_[n - 1]);
}

const RayPair& PairTable::pair_of(const Angle& theta) const {
  OrbitType t = orbit_type(theta);
  if (!t.periodic()) throw DomainError("angle " + theta.to_string() + " is not periodic");
  if (t.period > max_period_) throw DomainError("angle " + theta.to_string() + " exceeds the pair table");
  for (const RayPair& p : pairs_of_period(t.period))
    if (p.low == theta || p.high == theta) return p;
  throw ConsistencyError("angle " + theta.to_string() + " missing from its period's pairs");
}

Angle PairTable::conjugate(const Angle& theta) const {
  const RayPair& p = pair_of(theta);
  return p.low == theta ? p.high : p.low;
}

std::vector<RayPair> lavaurs_pairs(unsigned n_max) {
  PairTable table(n_max);
  return {table.pairs().begin(), table.pairs().end()};
}

Angle conjugate_angle(const Angle& theta) {
  OrbitType t = orbit_type(theta);
  if (!t.periodic()) throw DomainError("angle " + theta.to_string() + " is not periodic");
  return PairTable(t.period).conjugate(theta);
}

bool is_primitive(const RayPair& pair) {
  if (pair.period == 1) return true;
  Angle x = pair.low;
  for (unsigned j = 1; j < pair.period; ++j) {
    x = x.doubled();
    if (x == pair.high) return false;
  }
  return true;
}

PortraitCycle portrait_cycle(const Angle& theta) {
  OrbitType t = orbit_type(theta);
  if (!t.periodic()) throw DomainError("angle " + theta.to_string() + " is not periodic");
  return portrait_cycle(theta, PairTable(t.period));
}

PortraitCycle portrait_cycle(const Angle& theta, const PairTable& table) {
  const RayPair& pair = table.pair_of(theta);
  const unsigned n = pair.period;
  PortraitCycle cycle;
  if (n == 1) {
    cycle.point_angles = {{theta}};
    return cycle;
  }

  // A dyadic angle inside the wake (low, high) gives a Misiurewicz-type
  // partition under which the portrait persists; rays land together iff
  // their itineraries agree.
  Angle probe;
  for (unsigned bits = 1;; ++bits) {
    BigInt scale = BigInt(1) << bits;
    BigInt a = pair.low.numerator() * scale / pair.low.denominator() + 1;
    Angle candidate(a, scale);
    if (candidate < pair.high) {
      probe = candidate;
      break;
    }
  }
  auto word = itinerary(theta, PartitionContext(probe), n);
  if (std::find(word.begin(), word.end(), Symbol::Star) != word.end())
    throw ConsistencyError("periodic orbit met the probe partition boundary");

  unsigned k = n;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    bool invariant = true;
    for (unsigned i = 0; i < n && invariant; ++i) invariant = word[i] == word[(i + d) % n];
    if (invariant) {
      k = d;
      break;
    }
  }
  const unsigned s = n / k;

  std::vector<Angle> orbit{theta};
  for (unsigned j = 1; j < n; ++j) orbit.push_back(orbit.back().doubled());
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Angle> point;
    for (unsigned j = 0; j < s; ++j) point.push_back(orbit[i + j * k]);
    std::sort(point.begin(), point.end());
    cycle.point_angles.push_back(std::move(point));
  }

  const auto& base = cycle.point_angles.front();
  if (s > 1) {
    auto index_of = [&](const Angle& a) {
      return static_cast<unsigned>(std::find(base.begin(), base.end(), a) - base.begin());
    };
    std::optional<unsigned> step;
    for (unsigned i = 0; i < s; ++i) {
      Angle image = base[i];
      for (unsigned j = 0; j < k; ++j) image = image.doubled();
      unsigned to = index_of(image);
      if (to == s) throw ConsistencyError("first return map left the point's ray set");
      unsigned r = (to + s - i) % s;
      if (step && *step != r) throw ConsistencyError("first return map is not a rotation");
      step = r;
    }
    if (std::gcd(*step, s) != 1) throw ConsistencyError("first return map is not transitive");
    cycle.rotation_num = *step;
    cycle.rotation_den = s;
  }
  return cycle;
}

SectorWidths sector_widths(std::span<const Angle> point_angles) {
  if (point_angles.size() < 2) throw DomainError("sector widths need at least two rays");
  SectorWidths out;
  out.angles.assign(point_angles.begin(), point_angles.end());
  std::sort(out.angles.begin(), out.angles.end());
  auto value = [](const Angle& a) { return Rational(a.numerator(), a.denominator()); };
  for (std::size_t i = 0; i < out.angles.size(); ++i) {
    Rational from = value(out.angles[i]);
    Rational to = i + 1 < out.angles.size() ? value(out.angles[i + 1]) : value(out.angles.front()) + 1;
    out.widths.push_back(to - from);
  }
  return out;
}

MisiurewiczClass misiurewicz_class(const Angle& theta) {
  OrbitType t = orbit_type(theta);
  if (t.periodic()) throw DomainError("angle " + theta.to_string() + " is not strictly preperiodic");
  const unsigned l = t.preperiod;
  const unsigned n = t.period;
  if (l + n > 62) throw DomainError("preperiod + period exceeds 62");

  const std::uint64_t m = (std::uint64_t{1} << n) - 1;
  const std::uint64_t den = m << l;
  const std::uint64_t p =
      static_cast<std::uint64_t>(theta.numerator()) * (den / static_cast<std::uint64_t>(theta.denominator()));
  const std::size_t length = l + 2 * n;

  detail::ArcLabeler<u128> label(p, den, false, den);
  const auto reference = detail::walk<u128>(p, den, label, length);

  MisiurewiczClass cls;
  cls.preperiod = l;
  cls.ray_period = n;
  cls.kneading_period = static_cast<unsigned>(kneading(theta).period());
  for (std::uint64_t a = 1; a < den; a += 2) {
    u128 x = a;
    bool same = true;
    for (std::size_t j = 0; j < length && same; ++j) {
      same = label(x) == reference[j];
      detail::double_mod<u128>(x, den);
    }
    if (same && detail::rotation_period(a % m, n) == n) cls.angles.emplace_back(BigInt(a), BigInt(den));
  }

  const unsigned ratio = n / cls.kneading_period;
  bool size_ok = ratio > 1 ? cls.angles.size() == ratio : (cls.angles.size() == 1 || cls.angles.size() == 2);
  if (!size_ok)
    throw ConsistencyError("class of " + theta.to_string() + " has " + std::to_string(cls.angles.size()) +
                           " rays, expected n/k = " + std::to_string(ratio));
  return cls;
}

std::string pair_record(const RayPair& pair) {
  KneadingSequence k = kneading(pair.low);
  return std::to_string(pair.period) + " " + pair.low.to_string() + " " + pair.high.to_string() + " " +
         k.to_string() + " " + internal_address(k).to_string() + " " +
         (is_primitive(pair) ? "primitive" : "satellite");
}

bool violates_characteristic_arc(const RayPair& pair) {
  auto inside = [&](const Angle& x) { return pair.low < x && x < pair.high; };
  for (const Angle* start : {&pair.low, &pair.high}) {
    Angle x = *start;
    for (unsigned j = 1; j <= pair.period; ++j) {
      x = x.doubled();
      if (inside(x)) return true;
    }
  }
  return false;
}

bool chords_cross(const RayPair& a, const RayPair& b) {
  auto inside = [&](const Angle& x) { return a.low < x && x < a.high; };
  return inside(b.low) != inside(b.high);
}

}  // namespace mrays
