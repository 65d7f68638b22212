#pragma once

// Symbol sequences of angles relative to the partition of the circle at the
// two preimages of a base angle.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mrays/angle.hpp"

namespace mrays {

enum class Symbol : char { Zero = '0', One = '1', Star = '*' };

inline char to_char(Symbol s) { return static_cast<char>(s); }

/// A preperiodic word over {0, 1, *}, held in canonical form: the periodic
/// part is primitive and the preperiodic part is as short as possible.
class KneadingSequence {
 public:
  KneadingSequence(std::vector<Symbol> preperiodic, std::vector<Symbol> periodic);

  /// Parses "<preperiodic>|<periodic>", e.g. "110|1" or "|1*".
  static KneadingSequence parse(std::string_view text);

  const std::vector<Symbol>& preperiodic() const { return pre_; }
  const std::vector<Symbol>& periodic() const { return per_; }
  std::size_t preperiod() const { return pre_.size(); }
  std::size_t period() const { return per_.size(); }

  /// Symbol at a 1-based position.
  Symbol at(std::size_t position) const;
  /// The first `count` symbols.
  std::vector<Symbol> prefix(std::size_t count) const;

  bool contains_star() const;
  std::string to_string() const;

  friend bool operator==(const KneadingSequence&, const KneadingSequence&) = default;

 private:
  std::vector<Symbol> pre_;
  std::vector<Symbol> per_;
};

/// Strictly increasing list of periods starting with 1.
struct InternalAddress {
  std::vector<unsigned> entries;

  std::string to_string() const;  // dash-joined, "1-3-4"
  friend bool operator==(const InternalAddress&, const InternalAddress&) = default;
};

/// Partition of the circle at base/2 and (base+1)/2. The open arc holding
/// angle 0 is labeled Zero.
class PartitionContext {
 public:
  explicit PartitionContext(Angle base) : base_(std::move(base)) {}
  const Angle& base() const { return base_; }
  Symbol label(const Angle& alpha) const;

 private:
  Angle base_;
};

/// Labels of alpha, 2 alpha, 4 alpha, ... relative to ctx.
std::vector<Symbol> itinerary(const Angle& alpha, const PartitionContext& ctx, std::size_t length);

/// Itinerary of theta relative to its own partition, in canonical form.
/// K(0) = K(1) = "|*".
KneadingSequence kneading(const Angle& theta);

/// One-sided limits (K-, K+) of the kneading sequence at a periodic angle,
/// approached from below and from above. Throws DomainError if theta is not
/// periodic.
std::pair<KneadingSequence, KneadingSequence> limit_kneadings(const Angle& theta);

/// Internal address from a *-periodic kneading sequence via
/// rho(m) = min{ k > m : K_k != K_{k-m} }. Throws DomainError unless the star
/// sits only at the end of the period.
InternalAddress internal_address(const KneadingSequence& k);

std::string to_string(const std::vector<Symbol>& word);

}  // namespace mrays
