#pragma once

// Integer kernels shared by the exact combinatorics. An orbit point x/q is
// labeled against the partition of a base angle p/Q by comparing 2Q*x with
// p*q and (p+Q)*q, so no fraction is ever built inside the loop.

#include <cstdint>
#include <vector>

#include "mrays/angle.hpp"
#include "mrays/kneading.hpp"

namespace mrays::detail {

using u128 = unsigned __int128;

template <class Int>
class ArcLabeler {
 public:
  ArcLabeler(const Int& base_num, const Int& base_den, bool base_is_one, const Int& orbit_den)
      : scale_(base_den * 2),
        lo_(base_num * orbit_den),
        hi_((base_num + base_den) * orbit_den),
        base_is_one_(base_is_one) {}

  // x is the numerator over orbit_den, 0 <= x < orbit_den.
  Symbol operator()(const Int& x) const {
    if (base_is_one_ && x == 0) return Symbol::Star;
    Int v = scale_ * x;
    if (v == lo_ || v == hi_) return Symbol::Star;
    return (lo_ < v && v < hi_) ? Symbol::One : Symbol::Zero;
  }

 private:
  Int scale_;
  Int lo_;
  Int hi_;
  bool base_is_one_;
};

template <class Int>
inline void double_mod(Int& x, const Int& q) {
  x <<= 1;
  if (x >= q) x -= q;
}

/// Orbit numerator of an angle: ONE sits at 0 on the circle.
inline BigInt orbit_numerator(const Angle& a) { return a.is_one() ? BigInt(0) : a.numerator(); }

template <class Int>
std::vector<Symbol> walk(Int x, const Int& q, const ArcLabeler<Int>& label, std::size_t length) {
  std::vector<Symbol> out;
  out.reserve(length);
  for (std::size_t j = 0; j < length; ++j) {
    out.push_back(label(x));
    double_mod(x, q);
  }
  return out;
}

inline u128 to_u128(const BigInt& v) { return static_cast<u128>(static_cast<std::uint64_t>(v)); }

}  // namespace mrays::detail
