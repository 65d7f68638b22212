#pragma once

// Parameter-plane combinatorics of rational external angles: parabolic
// counts, pairing of periodic angles, primitivity, orbit portraits and
// Misiurewicz ray classes.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrays/angle.hpp"
#include "mrays/kneading.hpp"

namespace mrays {

using Rational = boost::multiprecision::cpp_rational;

/// Two periodic angles whose parameter rays land at one parabolic parameter.
struct RayPair {
  Angle low;
  Angle high;
  unsigned period = 1;

  friend bool operator==(const RayPair&, const RayPair&) = default;
};

/// Number s_n of parabolic parameters of exact ray period n, from
/// sum_{k | n} s_k = 2^(n-1). Valid for 1 <= n <= 63.
std::uint64_t count_parabolic(unsigned n);

/// Pairs of periodic angles for all periods up to a bound, built period by
/// period. Chords of lower periods constrain higher ones, so the table is
/// built sequentially once and then shared read-only.
class PairTable {
 public:
  explicit PairTable(unsigned max_period);

  unsigned max_period() const { return max_period_; }
  /// All pairs ordered by period, then by low angle.
  std::span<const RayPair> pairs() const { return pairs_; }
  std::span<const RayPair> pairs_of_period(unsigned n) const;

  /// The pair containing theta. Throws DomainError if theta is not periodic
  /// or its period exceeds the table.
  const RayPair& pair_of(const Angle& theta) const;
  /// The partner of theta in its pair; 0 and 1 are partners.
  Angle conjugate(const Angle& theta) const;

 private:
  unsigned max_period_;
  std::vector<RayPair> pairs_;
  std::vector<std::size_t> offsets_;  // offsets_[n-1] .. offsets_[n] index period n
};

/// Pairs for every period 1..n_max, in table order.
std::vector<RayPair> lavaurs_pairs(unsigned n_max);

/// Partner of a periodic angle (builds a table up to its period).
Angle conjugate_angle(const Angle& theta);

/// Primitive roots join two distinct cycles of rays; satellite roots have
/// both characteristic angles on one cycle. Period 1 (the cusp at 1/4) is
/// primitive.
bool is_primitive(const RayPair& pair);

/// The cycle of rays on the doubling orbit of theta that land together at
/// the points of one periodic orbit.
struct PortraitCycle {
  std::vector<std::vector<Angle>> point_angles;  // one ascending set per orbit point
  unsigned rotation_num = 0;
  unsigned rotation_den = 1;

  unsigned orbit_period() const { return static_cast<unsigned>(point_angles.size()); }
  unsigned rays_per_point() const { return static_cast<unsigned>(point_angles.front().size()); }
  unsigned ray_period() const { return orbit_period() * rays_per_point(); }
};

PortraitCycle portrait_cycle(const Angle& theta);
PortraitCycle portrait_cycle(const Angle& theta, const PairTable& table);

/// Circular gaps between the sorted angles at one point. Sums to 1.
struct SectorWidths {
  std::vector<Angle> angles;    // ascending
  std::vector<Rational> widths;  // widths[i] spans angles[i] .. angles[i+1] (cyclically)
};

SectorWidths sector_widths(std::span<const Angle> point_angles);

/// Parameter rays landing together at one Misiurewicz point.
struct MisiurewiczClass {
  std::vector<Angle> angles;  // ascending
  unsigned preperiod = 0;
  unsigned ray_period = 1;
  unsigned kneading_period = 1;
};

/// All angles of the same type as theta whose itinerary under the partition
/// of theta equals the kneading sequence of theta. Requires a strictly
/// preperiodic theta with preperiod + period <= 62.
MisiurewiczClass misiurewicz_class(const Angle& theta);

/// Stable whitespace-separated record:
/// `period low high kneading internal_address primitive|satellite`.
std::string pair_record(const RayPair& pair);

/// True when some forward image of low or high falls in the open arc (low, high).
bool violates_characteristic_arc(const RayPair& pair);

/// True when the chords (a, b) and (c, d) cross.
bool chords_cross(const RayPair& a, const RayPair& b);

}  // namespace mrays
