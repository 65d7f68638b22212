#include <cmath>
#include <cstdio>
#include <string>

#include "mrays/numerics.hpp"

namespace mrays {

void SolverConfig::validate() const {
  if (!(start_potential > 0) || potential_halvings <= 0 || steps_per_halving <= 0 || newton_steps_per_level <= 0 ||
      !(landing_tolerance > 0) || landing_streak <= 0 || !(landing_potential > 0) || max_iterations <= 0 ||
      !(agreement_tolerance > 0))
    throw DomainError("solver configuration fields must be positive");
  if (!(escape_radius >= 2)) throw DomainError("escape radius must be at least 2");
  // Potentials are stored as doubles; keep the deepest one a normal number.
  if (std::log2(start_potential) - potential_halvings < -1000)
    throw DomainError("potential ladder underflows: too many halvings");
}

SolverConfig SolverConfig::parabolic() {
  SolverConfig cfg;
  cfg.potential_halvings = 1000;
  cfg.landing_potential = 1e-300;
  cfg.landing_tolerance = 1e-10;
  return cfg;
}

double potential(Complex c, Complex z, const SolverConfig& cfg) {
  const double r2 = cfg.escape_radius * cfg.escape_radius;
  double scale = 1.0;
  for (int k = 0; k < cfg.max_iterations; ++k) {
    double m2 = std::norm(z);
    if (m2 > r2) return 0.5 * std::log(m2) * scale;
    z = z * z + c;
    scale *= 0.5;
  }
  return 0.0;
}

Complex multiplier(Complex c, Complex z, unsigned n) {
  Complex d = 1.0;
  for (unsigned j = 0; j < n; ++j) {
    d *= 2.0 * z;
    z = z * z + c;
  }
  return d;
}

std::string to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::Landed: return "landed";
    case TraceStatus::Truncated: return "truncated";
    case TraceStatus::Lost: return "lost";
  }
  return "?";
}

std::string to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Center: return "center";
    case SolutionKind::Root: return "root";
    case SolutionKind::Boundary: return "boundary";
    case SolutionKind::Misiurewicz: return "misiurewicz";
  }
  return "?";
}

std::string format_complex(Complex z, int precision) {
  char buf[96];
  double im = z.imag() == 0.0 ? 0.0 : z.imag();  // no "-0i"
  double re = z.real() == 0.0 ? 0.0 : z.real();
  std::snprintf(buf, sizeof buf, "%.*g%+.*gi", precision, re, precision, im);
  return buf;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw DomainError("empty complex number");

  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed complex number '" + std::string(text) + "'");
    }
    if (used != part.size()) throw DomainError("malformed complex number '" + std::string(text) + "'");
    return v;
  };

  if (auto comma = s.find(','); comma != std::string::npos)
    return {number(s.substr(0, comma)), number(s.substr(comma + 1))};

  if (s.back() != 'i') return {number(s), 0.0};

  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return number(part);
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {number(body.substr(0, split)), imag_part(body.substr(split))};
}

}  // namespace mrays
