#pragma once

// Exact rational angles on the circle R/Z under the doubling map.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mrays {

using BigInt = boost::multiprecision::cpp_int;

/// Base for every error raised on bad input to the library.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal cross-check fails (a bug, not bad input).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A rational angle in [0, 1], stored in lowest terms.
///
/// The value 1 is kept distinct from 0: it is the same point of the circle
/// and doubles to itself, but the ray at angle 0 is counted twice, once as 0
/// and once as 1. Ordering is numeric, so 1 sorts after every other angle.
class Angle {
 public:
  Angle() = default;
  /// Reduces num/den. Throws DomainError for den == 0 or a value outside [0, 1].
  Angle(BigInt num, BigInt den);
  Angle(std::int64_t num, std::int64_t den) : Angle(BigInt(num), BigInt(den)) {}

  static Angle zero() { return {}; }
  static Angle one();

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  /// 2*theta mod 1; 1 maps to 1.
  Angle doubled() const;
  /// The two preimages theta/2 and (theta+1)/2 under doubling.
  Angle half_low() const;
  Angle half_high() const;

  double to_double() const;
  /// "p/q", with "0" and "1" for the two integers.
  std::string to_string() const;
  /// Binary "0.u:v" with u the preperiodic bits and v the shortest period.
  std::string to_binary() const;

  friend bool operator==(const Angle&, const Angle&) = default;
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

 private:
  struct Raw {};
  Angle(Raw, BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_ = 0;
  BigInt den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

/// Preperiod l and period n of an angle under doubling.
struct OrbitType {
  unsigned preperiod = 0;
  unsigned period = 1;

  bool periodic() const { return preperiod == 0; }
  friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

/// Parses "p/q", the integers "0" and "1", or binary "0.u:v" (v nonempty).
Angle parse_angle(std::string_view text);

/// 2*theta mod 1.
inline Angle double_angle(const Angle& theta) { return theta.doubled(); }

/// Denominator 2^l * m with m odd gives preperiod l and period ord_m(2).
OrbitType orbit_type(const Angle& theta);

/// All angles in [0, 1] of exact period n, ascending. For n = 1 this is {0, 1}.
/// Throws DomainError for n == 0 or n > 62.
std::vector<Angle> enumerate_exact_period(unsigned n);

/// All angles of exact preperiod l >= 1 and exact period n, ascending.
std::vector<Angle> enumerate_exact_type(unsigned preperiod, unsigned period);

namespace detail {

/// Smallest d dividing n with the n-bit word w invariant under rotation by d.
unsigned rotation_period(std::uint64_t word, unsigned n);

/// Multiplicative order of 2 modulo an odd m (1 for m == 1).
std::uint64_t order_of_two(const BigInt& m);

inline unsigned msb_or_zero(const BigInt& v) {
  return v == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v));
}

/// True when v fits in an unsigned 62-bit word.
inline bool fits62(const BigInt& v) { return v >= 0 && msb_or_zero(v) < 62; }

}  // namespace detail

}  // namespace mrays
