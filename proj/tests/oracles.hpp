#pragma once

// Brute-force reference computations for the tests. They work directly on
// boost rationals and plain iteration, sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

inline Q frac(long long p, long long q) { return Q(p) / Q(q); }

inline Q doubled(const Q& x) {
  Q y = 2 * x;
  return y >= 1 ? y - 1 : y;
}

struct Type {
  unsigned preperiod;
  unsigned period;
};

// Iterate until the orbit repeats, on numerators mod the denominator.
inline Type orbit_type(const Q& x) {
  const Z q = denominator(x);
  Z p = numerator(x) % q;
  std::map<Z, unsigned> seen;
  for (unsigned i = 0;; ++i) {
    auto [it, fresh] = seen.emplace(p, i);
    if (!fresh) return {it->second, i - it->second};
    p = 2 * p % q;
  }
}

// Angles a/(2^n - 1) whose orbit has exact period n, ascending; 0 and 1 for n = 1.
inline std::vector<Q> exact_period(unsigned n) {
  if (n == 1) return {Q(0), Q(1)};
  const long long m = (1LL << n) - 1;
  std::vector<Q> out;
  for (long long a = 1; a < m; ++a) {
    Q x = frac(a, m);
    Type t = orbit_type(x);
    if (t.preperiod == 0 && t.period == n) out.push_back(x);
  }
  return out;
}

// Walks the orbit as residues over a common denominator D: x = a / D and
// the partition points sit at theta D / 2 and (theta + 1) D / 2.
inline std::string itinerary(const Q& x, const Q& theta, std::size_t length) {
  const Z d = 2 * boost::multiprecision::lcm(denominator(x), denominator(theta));
  Z a = numerator(x) * (d / denominator(x)) % d;
  const Z lo = numerator(theta) * (d / denominator(theta)) / 2, hi = lo + d / 2;
  std::string s;
  if (d < (Z(1) << 60)) {
    long long ai = a.convert_to<long long>(), di = d.convert_to<long long>();
    long long li = lo.convert_to<long long>(), hi_ = hi.convert_to<long long>();
    for (std::size_t i = 0; i < length; ++i) {
      s.push_back(ai == li || ai == hi_ ? '*' : (ai > li && ai < hi_ ? '1' : '0'));
      ai = 2 * ai % di;
    }
    return s;
  }
  for (std::size_t i = 0; i < length; ++i) {
    s.push_back(a == lo || a == hi ? '*' : (a > lo && a < hi ? '1' : '0'));
    a = 2 * a % d;
  }
  return s;
}

// Shortest period first, then shortest preperiod, read off a long prefix.
inline std::string fold(const std::string& w) {
  const std::size_t L = w.size();
  for (std::size_t per = 1; per <= L / 3; ++per) {
    for (std::size_t pre = 0; pre + 2 * per <= L / 2; ++pre) {
      bool ok = true;
      for (std::size_t i = pre; i + per < L && ok; ++i) ok = w[i] == w[i + per];
      if (ok) return w.substr(0, pre) + "|" + w.substr(pre, per);
    }
  }
  return "?";
}

// The window must hold two full cycles past the preperiod for fold.
inline std::string kneading(const Q& theta) {
  Type t = orbit_type(theta);
  return fold(itinerary(theta, theta, 4 * (t.preperiod + t.period) + 8));
}

// Kneading sequence of a nearby angle, first `length` symbols.
inline std::string nearby_prefix(const Q& theta, const Q& offset, std::size_t length) {
  Q t = theta + offset;
  return itinerary(t, t, length);
}

inline std::string unfold(const std::string& k, std::size_t length) {
  auto bar = k.find('|');
  std::string pre = k.substr(0, bar), per = k.substr(bar + 1);
  std::string s = pre;
  while (s.size() < length) s += per;
  return s.substr(0, length);
}

// All angles of type (l, n) landing with theta by the itinerary criterion,
// using a long itinerary.
inline std::vector<Q> misiurewicz_class(const Q& theta) {
  Type t = orbit_type(theta);
  const long long den = ((1LL << t.period) - 1) << t.preperiod;
  const std::size_t len = 4 * (t.preperiod + t.period) + 8;
  const std::string target = itinerary(theta, theta, len);
  std::vector<Q> out;
  for (long long a = 1; a < den; ++a) {
    Q x = frac(a, den);
    Type u = orbit_type(x);
    if (u.preperiod != t.preperiod || u.period != t.period) continue;
    if (itinerary(x, theta, len) == target) out.push_back(x);
  }
  return out;
}

// Rotation number of the first return map on the rays at one point: the
// map sends the i-th ray (in circular order) to the (i + r)-th.
inline std::pair<unsigned, unsigned> rotation(std::vector<Q> rays, unsigned first_return) {
  std::sort(rays.begin(), rays.end());
  const unsigned s = static_cast<unsigned>(rays.size());
  Q image = rays[0];
  for (unsigned j = 0; j < first_return; ++j) image = doubled(image);
  unsigned r = static_cast<unsigned>(std::find(rays.begin(), rays.end(), image) - rays.begin());
  unsigned g = std::gcd(r, s);
  return {r / g, s / g};
}

// Green's function by direct iteration to a huge radius.
inline double green(std::complex<double> c, std::complex<double> z) {
  double scale = 1.0;
  for (int k = 0; k < 2000; ++k) {
    if (std::norm(z) > 1e60) return std::log(std::abs(z)) * scale;
    z = z * z + c;
    scale *= 0.5;
  }
  return 0.0;
}

}  // namespace oracle
