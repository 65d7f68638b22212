#include <cmath>
#include <limits>
#include <numbers>

#include "mrays/numerics.hpp"

namespace mrays {

namespace {

Complex ldexp(Complex z, int e) { return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)}; }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// (f(x) - target) / f'(x) where f is the m-th iterate of z -> z^2 + c started
// at x (dynamic plane) or c -> p_c^m(c) (parameter plane). The derivative is
// carried as d * 2^e so deep iterates near repelling orbits cannot overflow.
std::optional<Complex> newton_correction(Plane plane, Complex c, Complex x, int m, Complex target) {
  const Complex add = plane == Plane::Parameter ? x : c;
  Complex z = x;
  Complex d = 1.0;
  int e = 0;
  for (int k = 0; k < m; ++k) {
    d = 2.0 * z * d;
    if (plane == Plane::Parameter) d += std::ldexp(1.0, -e);
    z = z * z + add;
    if (std::abs(d) > 1e150) {
      d = ldexp(d, -480);
      e += 480;
    }
    if (!finite(z) || !finite(d)) return std::nullopt;
  }
  Complex step = (z - target) / d;
  if (!finite(step)) return std::nullopt;
  return ldexp(step, -e);
}

// Near parabolic points the level endpoints x(m) approach the landing point
// like a power series in 1/m, so Richardson extrapolation over levels M, M/2,
// M/4 removes the 1/m and 1/m^2 terms. Geometric convergence (repelling
// landing points) is left alone.
std::optional<Complex> extrapolate(const RayTrace& r, int S) {
  const int M = r.levels;
  if (M < 8) return std::nullopt;
  auto at = [&](int level) { return r.points[static_cast<std::size_t>(level) * S].position; };
  const Complex x1 = at(M), x2 = at(M / 2), x4 = at(M / 4);
  const double late = std::abs(x1 - x2), early = std::abs(x2 - x4);
  if (early == 0.0 || late < 0.05 * early) return std::nullopt;
  return (8.0 * x1 - 6.0 * x2 + x4) / 3.0;
}

RayTrace trace(Plane plane, Complex c, const Angle& theta, const SolverConfig& cfg) {
  cfg.validate();
  RayTrace out;
  out.angle = theta;
  out.plane = plane;
  out.c = c;

  const int S = cfg.steps_per_halving;
  const double t0 = cfg.start_potential;
  const double two_pi = 2.0 * std::numbers::pi;

  Complex x = std::polar(std::exp(t0), two_pi * theta.to_double());
  out.points.push_back({t0, x});

  Angle phase = theta;  // 2^m theta
  int m = 0;
  Complex level_anchor = x;
  int streak = 0;

  for (int j = 1; j <= S * cfg.potential_halvings; ++j) {
    const int level_iterate = (j + S - 1) / S;
    while (m < level_iterate) {
      phase = phase.doubled();
      ++m;
    }
    const double t = t0 * std::exp2(-static_cast<double>(j) / S);
    // Image potential 2^m t lies in [t0, 2 t0), far enough out that the
    // Boettcher coordinate is the identity to working accuracy.
    const double image_potential = t0 * std::exp2(static_cast<double>(m * S - j) / S);
    const Complex target = std::polar(std::exp(image_potential), two_pi * phase.to_double());

    double last = 0.0;
    for (int it = 0; it < cfg.newton_steps_per_level; ++it) {
      auto step = newton_correction(plane, c, x, m, target);
      if (!step) {
        out.status = TraceStatus::Lost;
        out.diagnostic = "non-finite Newton step at level " + std::to_string(out.levels);
        return out;
      }
      x -= *step;
      last = std::abs(*step);
      if (last <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    if (!(last <= 1e-9 * (1.0 + std::abs(x)))) {
      out.status = TraceStatus::Lost;
      out.diagnostic = "Newton did not converge at level " + std::to_string(out.levels);
      return out;
    }
    out.points.push_back({t, x});

    if (j % S == 0) {
      ++out.levels;
      streak = std::abs(x - level_anchor) < cfg.landing_tolerance ? streak + 1 : 0;
      level_anchor = x;
      if (streak >= cfg.landing_streak) {
        out.status = TraceStatus::Landed;
        out.landing = x;
        return out;
      }
      if (t < cfg.landing_potential) {
        out.status = TraceStatus::Landed;
        out.landing = x;
        if (auto better = extrapolate(out, S)) {
          out.landing = better;
          out.extrapolated = true;
        }
        return out;
      }
    }
  }
  out.status = TraceStatus::Truncated;
  out.diagnostic = "potential ladder exhausted";
  return out;
}

}  // namespace

RayTrace trace_dynamic_ray(Complex c, const Angle& theta, const SolverConfig& cfg) {
  return trace(Plane::Dynamic, c, theta, cfg);
}

RayTrace trace_parameter_ray(const Angle& theta, const SolverConfig& cfg) {
  return trace(Plane::Parameter, Complex{}, theta, cfg);
}

PairReport verify_pair(const Angle& first, const Angle& second, const SolverConfig& cfg) {
  PairReport r;
  r.first = trace_parameter_ray(first, cfg);
  r.second = trace_parameter_ray(second, cfg);
  if (r.first.landing && r.second.landing) {
    r.distance = std::abs(*r.first.landing - *r.second.landing);
    r.landing = 0.5 * (*r.first.landing + *r.second.landing);
    r.agree = r.first.status == TraceStatus::Landed && r.second.status == TraceStatus::Landed &&
              r.distance < cfg.agreement_tolerance;
  } else {
    r.distance = std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace mrays
