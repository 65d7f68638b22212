#include "mrays/angle.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace mrays {

namespace {

BigInt pow2(unsigned k) { return BigInt(1) << k; }

template <class Pred>
bool all_of_class(std::string_view s, Pred pred) {
  return std::all_of(s.begin(), s.end(), [pred](char ch) { return pred(static_cast<unsigned char>(ch)) != 0; });
}

int is_digit(int ch) { return std::isdigit(ch); }
int is_bit(int ch) { return ch == '0' || ch == '1'; }

BigInt parse_bits(std::string_view bits) {
  BigInt v = 0;
  for (char ch : bits) v = (v << 1) | (ch == '1' ? 1 : 0);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Angle::Angle(BigInt num, BigInt den) {
  if (den == 0) throw DomainError("angle denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num < 0 || num > den) throw DomainError("angle outside [0, 1]");
  if (num == 0) {
    den = 1;
  } else {
    BigInt g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Angle Angle::one() { return Angle(Raw{}, 1, 1); }

Angle Angle::doubled() const {
  if (is_one()) return *this;
  BigInt n = num_ << 1;
  if (n >= den_) n -= den_;
  return Angle(std::move(n), den_);
}

Angle Angle::half_low() const { return Angle(num_, den_ << 1); }

Angle Angle::half_high() const { return Angle(num_ + den_, den_ << 1); }

double Angle::to_double() const {
  // Scale both parts down together so huge denominators stay finite.
  unsigned shift = detail::msb_or_zero(den_);
  shift = shift > 60 ? shift - 60 : 0;
  return static_cast<double>(num_ >> shift) / static_cast<double>(den_ >> shift);
}

std::string Angle::to_string() const {
  if (num_ == 0) return "0";
  if (is_one()) return "1";
  return num_.str() + "/" + den_.str();
}

std::string Angle::to_binary() const {
  if (is_one()) return "0.:1";
  OrbitType t = orbit_type(*this);
  // theta * 2^l = head + tail with tail = r / m periodic.
  BigInt scaled = num_ << t.preperiod;
  BigInt head = scaled / den_;
  BigInt tail_num = scaled % den_;
  BigInt block = tail_num * (pow2(t.period) - 1) / den_;

  auto bits = [](const BigInt& v, unsigned width) {
    std::string s(width, '0');
    for (unsigned i = 0; i < width; ++i)
      if (bit_test(v, i)) s[width - 1 - i] = '1';
    return s;
  };
  return "0." + bits(head, t.preperiod) + ":" + bits(block, t.period);
}

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.to_string(); }

Angle parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw DomainError("empty angle");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = s.substr(0, slash);
    std::string_view q = s.substr(slash + 1);
    if (p.empty() || q.empty() || !all_of_class(p, is_digit) || !all_of_class(q, is_digit))
      throw DomainError("malformed angle '" + std::string(text) + "'");
    BigInt num{std::string(p)};
    BigInt den{std::string(q)};
    if (den == 0) throw DomainError("angle '" + std::string(text) + "' has zero denominator");
    if (num > den) throw DomainError("angle '" + std::string(text) + "' is outside [0, 1]");
    if (num == den) return Angle::one();
    return Angle(std::move(num), std::move(den));
  }

  if (s.starts_with("0.")) {
    std::string_view rest = s.substr(2);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw DomainError("binary angle '" + std::string(text) + "' lacks ':'");
    std::string_view pre = rest.substr(0, colon);
    std::string_view per = rest.substr(colon + 1);
    if (per.empty() || !all_of_class(pre, is_bit) || !all_of_class(per, is_bit))
      throw DomainError("malformed binary angle '" + std::string(text) + "'");
    BigInt rep = pow2(static_cast<unsigned>(per.size())) - 1;
    BigInt num = parse_bits(pre) * rep + parse_bits(per);
    BigInt den = pow2(static_cast<unsigned>(pre.size())) * rep;
    if (num == den) return Angle::one();
    return Angle(std::move(num), std::move(den));
  }

  if (s == "0") return Angle::zero();
  if (s == "1") return Angle::one();
  throw DomainError("malformed angle '" + std::string(text) + "'");
}

namespace detail {

unsigned rotation_period(std::uint64_t word, unsigned n) {
  const std::uint64_t mask = n >= 64 ? ~0ULL : ((1ULL << n) - 1);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::uint64_t rotated = ((word << d) | (word >> (n - d))) & mask;
    if (rotated == word) return d;
  }
  return n;
}

std::uint64_t order_of_two(const BigInt& m) {
  if (m == 1) return 1;
  if (fits62(m)) {
    const auto mod = static_cast<std::uint64_t>(m);
    std::uint64_t x = 2 % mod;
    std::uint64_t k = 1;
    while (x != 1) {
      x <<= 1;
      if (x >= mod) x -= mod;
      ++k;
    }
    return k;
  }
  BigInt x = 2 % m;
  std::uint64_t k = 1;
  while (x != 1) {
    x <<= 1;
    if (x >= m) x -= m;
    ++k;
  }
  return k;
}

}  // namespace detail

OrbitType orbit_type(const Angle& theta) {
  if (theta.is_zero() || theta.is_one()) return {0, 1};
  const BigInt& den = theta.denominator();
  auto l = static_cast<unsigned>(boost::multiprecision::lsb(den));
  BigInt odd = den >> l;
  auto n = detail::order_of_two(odd);
  return {l, static_cast<unsigned>(n)};
}

std::vector<Angle> enumerate_exact_period(unsigned n) {
  if (n == 0 || n > 62) throw DomainError("period must lie in [1, 62]");
  if (n == 1) return {Angle::zero(), Angle::one()};
  const std::uint64_t m = (1ULL << n) - 1;
  std::vector<Angle> out;
  for (std::uint64_t a = 1; a < m; ++a)
    if (detail::rotation_period(a, n) == n) out.emplace_back(BigInt(a), BigInt(m));
  return out;
}

std::vector<Angle> enumerate_exact_type(unsigned preperiod, unsigned period) {
  if (preperiod == 0) return enumerate_exact_period(period);
  if (period == 0 || preperiod + period > 62) throw DomainError("preperiod + period must lie in [2, 62]");
  const std::uint64_t m = (1ULL << period) - 1;
  const std::uint64_t den = m << preperiod;
  std::vector<Angle> out;
  // Odd numerators keep the full power of two; the tail a mod m fixes the period.
  for (std::uint64_t a = 1; a < den; a += 2)
    if (detail::rotation_period(a % m, period) == period) out.emplace_back(BigInt(a), BigInt(den));
  return out;
}

}  // namespace mrays
