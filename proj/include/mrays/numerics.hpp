#pragma once

// Floating-point engine: Green's function, external rays traced by Newton
// pull-back along a geometric potential ladder, and Newton solvers for
// centers, component boundary points and Misiurewicz parameters.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "mrays/angle.hpp"

namespace mrays {

using Complex = std::complex<double>;

/// Raised when a numerical solve fails to converge or finds the wrong kind
/// of solution. The caller may reseed.
class SolverError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct SolverConfig {
  double start_potential = 8.0;       // potential of the first ray point
  int potential_halvings = 64;        // maximum number of levels
  int steps_per_halving = 4;          // ray points between two levels
  int newton_steps_per_level = 10;    // Newton corrections per ray point
  double landing_tolerance = 1e-8;    // successive level endpoints closer than this ...
  int landing_streak = 3;             // ... this many times in a row declare landing
  double landing_potential = 1e-12;   // or the potential falls below this
  int max_iterations = 4096;          // escape iteration cap for potentials and solvers
  double escape_radius = 1e8;
  double agreement_tolerance = 1e-4;  // two landings agree when closer than this

  /// Throws DomainError unless all fields are positive, escape_radius >= 2
  /// and potentials stay representable.
  void validate() const;

  /// Deep ladder used to approach parabolic landing points, where rays
  /// converge only polynomially in the number of levels.
  static SolverConfig parabolic();
};

/// Green's function G_c(z) = lim log|z_N| / 2^N; 0 when the orbit stays bounded.
double potential(Complex c, Complex z, const SolverConfig& cfg = {});

/// Derivative of the n-th iterate at z, i.e. the product of 2 z_j along the orbit.
Complex multiplier(Complex c, Complex z, unsigned n);

enum class Plane { Dynamic, Parameter };
enum class TraceStatus { Landed, Truncated, Lost };

struct RayPoint {
  double potential;
  Complex position;
};

struct RayTrace {
  Angle angle;
  Plane plane = Plane::Parameter;
  Complex c{};  // dynamic plane only
  std::vector<RayPoint> points;
  std::optional<Complex> landing;
  TraceStatus status = TraceStatus::Truncated;
  int levels = 0;             // completed potential halvings
  bool extrapolated = false;  // landing from Richardson extrapolation over levels
  std::string diagnostic;     // why tracing stopped early
};

RayTrace trace_dynamic_ray(Complex c, const Angle& theta, const SolverConfig& cfg = {});
RayTrace trace_parameter_ray(const Angle& theta, const SolverConfig& cfg = {});

enum class SolutionKind { Center, Root, Boundary, Misiurewicz };

struct NewtonResult {
  Complex parameter{};
  SolutionKind kind = SolutionKind::Center;
  double residual = 0.0;  // size of the last Newton correction |f / f'|
  std::optional<Complex> multiplier;
  std::optional<Complex> orbit_point;  // periodic point for boundary solutions
  unsigned preperiod = 0;
  unsigned period = 0;    // exact period of the (critical or periodic) orbit found
  int iterations = 0;
};

/// All parameters where 0 has exact period n, found by Newton with implicit
/// deflation of lower-period centers and of roots already found. Sorted by
/// real then imaginary part. Throws SolverError if the count falls short
/// of s_n within the seed budget.
std::vector<NewtonResult> find_centers(unsigned n, const SolverConfig& cfg = {});

/// Point of the period-n component around `center` with multiplier
/// exp(2 pi i t), by continuation of (c, z) in the multiplier radius.
/// t = 0 gives the root.
NewtonResult component_boundary(Complex center, unsigned n, double t, const SolverConfig& cfg = {});

/// Newton on g(c) = c_{l+n+1} - c_{l+1} for the critical orbit c_0 = 0,
/// c_1 = c. The solution must have exact preperiod l; its exact orbit period
/// (a divisor of n) is reported in `period`.
NewtonResult solve_misiurewicz(unsigned preperiod, unsigned period, Complex seed, const SolverConfig& cfg = {});

struct PairReport {
  bool agree = false;
  double distance = 0.0;
  Complex landing{};  // midpoint of the two landing estimates
  RayTrace first;
  RayTrace second;
};

/// Traces both parameter rays; they agree when both land and the landing
/// estimates are within cfg.agreement_tolerance.
PairReport verify_pair(const Angle& first, const Angle& second, const SolverConfig& cfg = {});

std::string to_string(TraceStatus s);
std::string to_string(SolutionKind k);
std::string format_complex(Complex z, int precision = 12);
/// Parses "a", "a+bi", "a-bi", "bi", "i" or "a,b".
Complex parse_complex(std::string_view text);

}  // namespace mrays
