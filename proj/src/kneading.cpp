#include "mrays/kneading.hpp"

#include <algorithm>

#include "orbit_walk.hpp"

namespace mrays {

namespace {

bool is_power_of_prefix(const std::vector<Symbol>& w, std::size_t d) {
  for (std::size_t i = d; i < w.size(); ++i)
    if (w[i] != w[i % d]) return false;
  return true;
}

Symbol parse_symbol(char ch) {
  switch (ch) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case '*': return Symbol::Star;
    default: throw DomainError(std::string("bad kneading symbol '") + ch + "'");
  }
}

}  // namespace

KneadingSequence::KneadingSequence(std::vector<Symbol> preperiodic, std::vector<Symbol> periodic)
    : pre_(std::move(preperiodic)), per_(std::move(periodic)) {
  if (per_.empty()) throw DomainError("kneading sequence needs a nonempty periodic part");
  for (std::size_t d = 1; d < per_.size(); ++d) {
    if (per_.size() % d == 0 && is_power_of_prefix(per_, d)) {
      per_.resize(d);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    pre_.pop_back();
  }
}

KneadingSequence KneadingSequence::parse(std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw DomainError("kneading sequence lacks '|'");
  std::vector<Symbol> pre, per;
  for (char ch : text.substr(0, bar)) pre.push_back(parse_symbol(ch));
  for (char ch : text.substr(bar + 1)) per.push_back(parse_symbol(ch));
  return KneadingSequence(std::move(pre), std::move(per));
}

Symbol KneadingSequence::at(std::size_t position) const {
  if (position == 0) throw DomainError("kneading positions are 1-based");
  std::size_t i = position - 1;
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

std::vector<Symbol> KneadingSequence::prefix(std::size_t count) const {
  std::vector<Symbol> out;
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) out.push_back(at(j));
  return out;
}

bool KneadingSequence::contains_star() const {
  return std::find(per_.begin(), per_.end(), Symbol::Star) != per_.end() ||
         std::find(pre_.begin(), pre_.end(), Symbol::Star) != pre_.end();
}

std::string KneadingSequence::to_string() const { return mrays::to_string(pre_) + "|" + mrays::to_string(per_); }

std::string to_string(const std::vector<Symbol>& word) {
  std::string s;
  s.reserve(word.size());
  for (Symbol sym : word) s.push_back(to_char(sym));
  return s;
}

std::string InternalAddress::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s.push_back('-');
    s += std::to_string(entries[i]);
  }
  return s;
}

Symbol PartitionContext::label(const Angle& alpha) const { return itinerary(alpha, *this, 1).front(); }

std::vector<Symbol> itinerary(const Angle& alpha, const PartitionContext& ctx, std::size_t length) {
  const Angle& base = ctx.base();
  BigInt x = detail::orbit_numerator(alpha);
  const BigInt& q = alpha.denominator();
  const BigInt& p = base.numerator();
  const BigInt& Q = base.denominator();

  if (detail::fits62(q) && detail::fits62(Q)) {
    using detail::u128;
    detail::ArcLabeler<u128> label(detail::to_u128(p), detail::to_u128(Q), base.is_one(), detail::to_u128(q));
    return detail::walk<u128>(detail::to_u128(x), detail::to_u128(q), label, length);
  }
  detail::ArcLabeler<BigInt> label(p, Q, base.is_one(), q);
  return detail::walk<BigInt>(x, q, label, length);
}

KneadingSequence kneading(const Angle& theta) {
  OrbitType t = orbit_type(theta);
  auto word = itinerary(theta, PartitionContext(theta), t.preperiod + t.period);
  std::vector<Symbol> pre(word.begin(), word.begin() + t.preperiod);
  std::vector<Symbol> per(word.begin() + t.preperiod, word.end());
  return KneadingSequence(std::move(pre), std::move(per));
}

std::pair<KneadingSequence, KneadingSequence> limit_kneadings(const Angle& theta) {
  OrbitType t = orbit_type(theta);
  if (!t.periodic()) throw DomainError("limit kneading sequences need a periodic angle, got " + theta.to_string());
  const std::size_t n = t.period;

  // Each orbit point stays at least 1/(2q) away from the partition boundary
  // unless it sits on it; a shift of eps moves everything by less than 2^n eps.
  const BigInt& q = theta.denominator();
  const BigInt eps_den = q << (t.period + 3);
  const BigInt base = detail::orbit_numerator(theta) * (eps_den / q);
  const BigInt below_num = base == 0 ? eps_den - 1 : base - 1;
  const BigInt above_num = base + 1;

  const auto reference = kneading(theta).prefix(n);
  auto one_side = [&](const BigInt& num) {
    Angle nearby(num, eps_den);
    auto word = itinerary(nearby, PartitionContext(nearby), n);
    for (std::size_t j = 0; j < n; ++j) {
      if (reference[j] != Symbol::Star && word[j] != reference[j])
        throw ConsistencyError("perturbed itinerary left the kneading sequence of " + theta.to_string());
      if (word[j] == Symbol::Star) throw ConsistencyError("perturbation landed on a partition boundary");
    }
    return KneadingSequence({}, std::move(word));
  };
  return {one_side(below_num), one_side(above_num)};
}

InternalAddress internal_address(const KneadingSequence& k) {
  const auto& per = k.periodic();
  const std::size_t n = per.size();
  bool star_periodic = k.preperiod() == 0 && per.back() == Symbol::Star &&
                       std::count(per.begin(), per.end(), Symbol::Star) == 1;
  if (!star_periodic) throw DomainError("internal address needs a *-periodic kneading sequence, got " + k.to_string());

  auto sym = [&](std::size_t pos) { return per[(pos - 1) % n]; };
  InternalAddress addr{{1}};
  std::size_t m = 1;
  while (m < n) {
    std::size_t next = m + 1;
    while (sym(next) == sym(next - m)) ++next;
    addr.entries.push_back(static_cast<unsigned>(next));
    m = next;
  }
  return addr;
}

}  // namespace mrays
