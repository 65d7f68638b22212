#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include "mrays/combinat.hpp"
#include "mrays/numerics.hpp"

namespace mrays {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// f'/f for f(c) = p_c^n(0). Once the orbit is huge, z^2 + c ~ z^2 and the
// ratio simply doubles, which keeps escaping seeds finite.
Complex log_derivative(Complex c, unsigned n) {
  Complex z = 0.0, d = 0.0;
  for (unsigned k = 0; k < n; ++k) {
    d = 2.0 * z * d + 1.0;
    z = z * z + c;
    if (std::abs(z) > 1e100) {
      Complex ratio = d / z;
      for (unsigned rest = k + 1; rest < n; ++rest) ratio *= 2.0;
      return ratio;
    }
  }
  return d / z;
}

struct Critical {
  Complex value;
  Complex derivative;
};

Critical critical_iterate(Complex c, unsigned n) {
  Complex z = 0.0, d = 0.0;
  for (unsigned k = 0; k < n; ++k) {
    d = 2.0 * z * d + 1.0;
    z = z * z + c;
  }
  return {z, d};
}

std::vector<unsigned> proper_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Newton for a center of exact period n, deflating every known root.
std::optional<NewtonResult> deflated_newton(Complex seed, unsigned n, const std::vector<Complex>& known, int max_steps) {
  Complex c = seed;
  bool converged = false;
  for (int it = 0; it < max_steps; ++it) {
    Complex l = log_derivative(c, n);
    for (const Complex& r : known) l -= 1.0 / (c - r);
    if (!finite(l) || l == 0.0) return std::nullopt;
    Complex step = 1.0 / l;
    c -= step;
    if (!finite(c) || std::abs(c) > 4.0) return std::nullopt;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(c))) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;

  NewtonResult res;
  res.kind = SolutionKind::Center;
  res.period = n;
  double last = 0.0;
  for (int it = 0; it < 4; ++it) {
    Critical f = critical_iterate(c, n);
    if (f.value == 0.0) {
      last = 0.0;
      break;
    }
    Complex step = f.value / f.derivative;
    c -= step;
    last = std::abs(step);
    ++res.iterations;
  }
  res.parameter = c;
  res.residual = last;
  res.multiplier = Complex{0.0};
  return res;
}

struct Jet {
  Complex z;    // p^n(z)
  Complex dz;   // d/dz
  Complex dc;   // d/dc
  Complex dzz;  // d2/dz2
  Complex dzc;  // d2/dz dc
};

Jet periodic_jet(Complex c, Complex z, unsigned n) {
  Jet j{z, 1.0, 0.0, 0.0, 0.0};
  for (unsigned k = 0; k < n; ++k) {
    Complex x = j.z;
    Jet next;
    next.dzz = 2.0 * (j.dz * j.dz + x * j.dzz);
    next.dzc = 2.0 * (j.dc * j.dz + x * j.dzc);
    next.dz = 2.0 * x * j.dz;
    next.dc = 2.0 * x * j.dc + 1.0;
    next.z = x * x + c;
    j = next;
  }
  return j;
}

// Newton for p^n(z) = z, (p^n)'(z) = lambda. Returns the last step size.
struct BoundaryStep {
  Complex c;
  Complex z;
  double last_step;
  int iterations;
  bool ok;
};

BoundaryStep solve_boundary(Complex c, Complex z, unsigned n, Complex lambda, int max_steps, double tol) {
  BoundaryStep s{c, z, 0.0, 0, false};
  for (int it = 0; it < max_steps; ++it) {
    Jet j = periodic_jet(s.c, s.z, n);
    Complex f1 = j.z - s.z;
    Complex f2 = j.dz - lambda;
    Complex a = j.dz - 1.0, b = j.dc;
    Complex e = j.dzz, f = j.dzc;
    Complex det = a * f - b * e;
    if (!finite(det) || det == 0.0) return s;
    Complex delta_z = (f1 * f - b * f2) / det;
    Complex delta_c = (a * f2 - e * f1) / det;
    s.z -= delta_z;
    s.c -= delta_c;
    s.iterations = it + 1;
    s.last_step = std::abs(delta_c) + std::abs(delta_z);
    if (!finite(s.c) || !finite(s.z)) return s;
    if (s.last_step <= tol * (1.0 + std::abs(s.c) + std::abs(s.z))) {
      s.ok = true;
      return s;
    }
  }
  return s;
}

std::optional<BoundaryStep> satellite_root(Complex c, Complex z, unsigned n) {
  for (unsigned k : proper_divisors(n)) {
    Complex zk = z;
    for (unsigned j = 0; j < k; ++j) zk = zk * zk + c;
    if (std::abs(zk - z) > 0.05) continue;
    const unsigned q = n / k;
    Complex mu = multiplier(c, z, k);
    // Nearest primitive q-th root of unity.
    Complex best = 0.0;
    for (unsigned p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Complex w = std::polar(1.0, kTwoPi * p / q);
      if (best == 0.0 || std::abs(w - mu) < std::abs(best - mu)) best = w;
    }
    if (best == 0.0 || std::abs(best - mu) > 0.05) continue;
    BoundaryStep s = solve_boundary(c, z, k, best, 50, 1e-15);
    if (s.ok && std::abs(s.c - c) < 1e-3) return s;
  }
  return std::nullopt;
}

}  // namespace

std::vector<NewtonResult> find_centers(unsigned n, const SolverConfig& cfg) {
  cfg.validate();
  if (n == 0 || n > 16) throw DomainError("center search supports periods 1..16");
  const std::size_t expected = count_parabolic(n);

  std::vector<Complex> known;
  for (unsigned d : proper_divisors(n))
    for (const NewtonResult& r : find_centers(d, cfg)) known.push_back(r.parameter);

  std::vector<NewtonResult> found;
  const std::size_t budget = 32 * expected + 64;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < budget && found.size() < expected; ++k) {
    // Seeds spiral outward on an annulus enclosing the Mandelbrot set.
    double radius = 2.1 + 0.4 * std::fmod(0.618033988749895 * static_cast<double>(k), 1.0);
    Complex seed = std::polar(radius, golden * static_cast<double>(k) + 0.1);
    auto res = deflated_newton(seed, n, known, std::min(cfg.max_iterations, 2000));
    if (!res || !(res->residual < 1e-10)) continue;

    bool exact = true;
    for (unsigned d : proper_divisors(n)) exact = exact && std::abs(critical_iterate(res->parameter, d).value) > 1e-9;
    bool fresh = std::none_of(found.begin(), found.end(), [&](const NewtonResult& f) {
      return std::abs(f.parameter - res->parameter) < 1e-9;
    });
    if (!exact || !fresh) continue;
    found.push_back(*res);
    known.push_back(res->parameter);
  }
  if (found.size() != expected)
    throw SolverError("found " + std::to_string(found.size()) + " of " + std::to_string(expected) +
                      " centers of period " + std::to_string(n));

  std::sort(found.begin(), found.end(), [](const NewtonResult& a, const NewtonResult& b) {
    if (a.parameter.real() != b.parameter.real()) return a.parameter.real() < b.parameter.real();
    return a.parameter.imag() < b.parameter.imag();
  });
  return found;
}

NewtonResult component_boundary(Complex center, unsigned n, double t, const SolverConfig& cfg) {
  cfg.validate();
  if (n == 0) throw DomainError("period must be positive");
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("boundary parameter t must lie in [0, 1)");
  const Complex direction = std::polar(1.0, kTwoPi * t);
  const int steps = cfg.newton_steps_per_level * 3;

  BoundaryStep state = solve_boundary(center, 0.0, n, 0.0, steps, 1e-14);
  if (!state.ok) throw SolverError("no period-" + std::to_string(n) + " center near " + format_complex(center));

  // At a satellite root the period-n cycle collapses onto its parent cycle
  // and the system above degenerates, so the root is approached from radius
  // 63/64 in one jump and then refined on the parent cycle.
  const double stop = t == 0.0 ? 63.0 / 64.0 : 1.0;
  double radius = 0.0;
  double step = 1.0 / 64.0;
  while (radius < stop) {
    double next = std::min(stop, radius + step);
    BoundaryStep trial = solve_boundary(state.c, state.z, n, next * direction, steps, 1e-13);
    bool accept = (trial.ok || trial.last_step < 1e-10) && finite(trial.c) && std::abs(trial.c - state.c) < 0.5;
    if (accept) {
      state = trial;
      radius = next;
      step = std::min(step * 2.0, 1.0 / 64.0);
    } else {
      step *= 0.5;
      if (step < 1e-7) throw SolverError("boundary continuation stalled at radius " + std::to_string(radius));
    }
  }

  if (t == 0.0) {
    BoundaryStep root = solve_boundary(state.c, state.z, n, 1.0, std::max(200, steps), 1e-15);
    if (!finite(root.c) || !finite(root.z) || std::abs(root.c - state.c) > 0.5)
      throw SolverError("root solve diverged for the component at " + format_complex(center));
    if (!root.ok) {
      if (auto parent = satellite_root(root.c, root.z, n)) root = *parent;
    }
    state = root;
  }

  NewtonResult res;
  res.parameter = state.c;
  res.kind = t == 0.0 ? SolutionKind::Root : SolutionKind::Boundary;
  res.residual = state.last_step;
  res.multiplier = multiplier(state.c, state.z, n);
  res.orbit_point = state.z;
  res.period = n;
  res.iterations = state.iterations;
  return res;
}

NewtonResult solve_misiurewicz(unsigned preperiod, unsigned period, Complex seed, const SolverConfig& cfg) {
  cfg.validate();
  if (preperiod == 0 || period == 0) throw DomainError("Misiurewicz solve needs preperiod >= 1 and period >= 1");
  const unsigned l = preperiod, n = period;
  const unsigned total = l + n + 1;

  auto orbit = [&](Complex c) {
    std::vector<Complex> z(total + 1), d(total + 1);
    z[0] = d[0] = 0.0;
    for (unsigned k = 1; k <= total; ++k) {
      d[k] = 2.0 * z[k - 1] * d[k - 1] + 1.0;
      z[k] = z[k - 1] * z[k - 1] + c;
    }
    return std::pair{z, d};
  };

  Complex c = seed;
  double last = std::numeric_limits<double>::infinity();
  int it = 0;
  int settled = 0;
  for (; it < std::min(cfg.max_iterations, 200); ++it) {
    auto [z, d] = orbit(c);
    Complex g = z[l + n + 1] - z[l + 1];
    Complex dg = d[l + n + 1] - d[l + 1];
    if (g == 0.0) {
      last = 0.0;
      break;
    }
    Complex step = g / dg;
    if (!finite(step)) throw SolverError("Misiurewicz Newton diverged from " + format_complex(seed));
    c -= step;
    last = std::abs(step);
    // A couple of extra steps once converged to settle rounding.
    if (last <= 1e-14 * (1.0 + std::abs(c)) && ++settled >= 2) break;
  }
  if (!(last < 1e-10)) throw SolverError("Misiurewicz Newton did not converge from " + format_complex(seed));

  auto [z, d] = orbit(c);
  const double tol = 1e-8 * std::max(1.0, std::abs(z[l + 1]));
  if (std::abs(z[l] - z[l + n]) <= tol)
    throw SolverError("solution " + format_complex(c) + " has preperiod below " + std::to_string(l));

  unsigned k = n;
  for (unsigned div = 1; div < n; ++div) {
    if (n % div == 0 && std::abs(z[l + 1 + div] - z[l + 1]) <= tol) {
      k = div;
      break;
    }
  }

  NewtonResult res;
  res.parameter = c;
  res.kind = SolutionKind::Misiurewicz;
  res.residual = last;
  res.preperiod = l;
  res.period = k;
  res.multiplier = multiplier(c, z[l + 1], k);
  res.iterations = it;
  return res;
}

}  // namespace mrays
