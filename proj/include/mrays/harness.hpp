#pragma once

// Numerical check of the landing theorem for periodic parameter rays at
// desk scale: pairs land together at the root of a hyperbolic component,
// other rays of the same period land elsewhere, and Misiurewicz ray classes
// land together at a solvable preperiodic parameter.

#include <functional>
#include <string>
#include <vector>

#include "mrays/numerics.hpp"

namespace mrays {

struct HarnessOptions {
  unsigned max_period = 6;       // pairs and non-pairs of periods 1..max_period
  unsigned max_preperiodic = 8;  // Misiurewicz classes with l + n <= this
  double tolerance = 1e-4;       // landing agreement and root matching
  double misiurewicz_residual = 1e-10;
  bool check_nonpairs = true;
  SolverConfig rays = SolverConfig::parabolic();
};

/// One line of the report. Field layout by kind:
///   pair <n> <low> <high> <landing> <distance> <root> <root_distance> pass|fail
///   nonpair <n> <a> <b> <distance> pass|fail
///   centers <n> <found> <expected> <max_residual> pass|fail
///   misiurewicz <l> <n> <k> <angles,...> <landing> <spread> <solution> <residual> pass|fail
struct CheckRecord {
  std::string kind;
  std::vector<std::string> fields;
  bool pass = false;
  std::string note;  // human explanation for failures; not part of the record

  std::string to_record() const;
};

struct HarnessReport {
  std::vector<CheckRecord> records;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

/// Runs every check in a fixed order. `progress` (if set) sees each record
/// as it is produced.
HarnessReport verify_theorem(const HarnessOptions& opts,
                             const std::function<void(const CheckRecord&)>& progress = {});

}  // namespace mrays
