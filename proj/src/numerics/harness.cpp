#include "mrays/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>

#include "mrays/combinat.hpp"

namespace mrays {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string point(Complex z) { return format_complex(z, 10); }

struct Landing {
  bool landed = false;
  Complex at{};
};

Landing land(const Angle& theta, const SolverConfig& cfg) {
  RayTrace t = trace_parameter_ray(theta, cfg);
  if (t.status != TraceStatus::Landed || !t.landing) return {};
  return {true, *t.landing};
}

void emit(HarnessReport& report, CheckRecord rec, const std::function<void(const CheckRecord&)>& progress) {
  if (progress) progress(rec);
  report.records.push_back(std::move(rec));
}

}  // namespace

std::string CheckRecord::to_record() const {
  std::string out = kind;
  for (const auto& f : fields) out += " " + f;
  out += pass ? " pass" : " fail";
  return out;
}

std::size_t HarnessReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
}

HarnessReport verify_theorem(const HarnessOptions& opts, const std::function<void(const CheckRecord&)>& progress) {
  opts.rays.validate();
  if (opts.max_period == 0 || opts.max_period > 16) throw DomainError("harness periods must lie in 1..16");
  if (opts.max_preperiodic > 16) throw DomainError("harness preperiod + period bound must be at most 16");
  if (!(opts.tolerance > 0)) throw DomainError("harness tolerance must be positive");

  HarnessReport report;
  PairTable table(opts.max_period);

  for (unsigned n = 1; n <= opts.max_period; ++n) {
    // Centers and the roots of their components.
    std::vector<Complex> roots;
    {
      CheckRecord rec{"centers", {std::to_string(n)}, false, {}};
      const auto expected = count_parabolic(n);
      try {
        auto centers = find_centers(n);
        double worst = 0.0;
        for (const auto& c : centers) {
          worst = std::max(worst, c.residual);
          roots.push_back(component_boundary(c.parameter, n, 0.0).parameter);
        }
        rec.fields.insert(rec.fields.end(), {std::to_string(centers.size()), std::to_string(expected), sci(worst)});
        rec.pass = centers.size() == expected && worst < 1e-12;
      } catch (const DomainError& e) {
        rec.fields.insert(rec.fields.end(), {"0", std::to_string(expected), "inf"});
        rec.note = e.what();
      }
      emit(report, std::move(rec), progress);
    }

    // One trace per angle; pairs and non-pairs reuse the landings.
    std::map<Angle, Landing> landings;
    for (const Angle& a : enumerate_exact_period(n)) landings[a] = land(a, opts.rays);

    std::vector<bool> used(roots.size(), false);
    for (const RayPair& p : table.pairs_of_period(n)) {
      const Landing& a = landings.at(p.low);
      const Landing& b = landings.at(p.high);
      CheckRecord rec{"pair", {std::to_string(n), p.low.to_string(), p.high.to_string()}, false, {}};
      if (!a.landed || !b.landed) {
        rec.fields.insert(rec.fields.end(), {"-", "inf", "-", "inf"});
        rec.note = "ray did not land";
        emit(report, std::move(rec), progress);
        continue;
      }
      const double distance = std::abs(a.at - b.at);
      const Complex mid = 0.5 * (a.at + b.at);
      std::size_t best = roots.size();
      double best_distance = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < roots.size(); ++i) {
        double d = std::abs(roots[i] - mid);
        if (d < best_distance) {
          best_distance = d;
          best = i;
        }
      }
      bool fresh = best < roots.size() && !used[best];
      if (best < roots.size()) used[best] = true;
      rec.fields.insert(rec.fields.end(), {point(mid), sci(distance), best < roots.size() ? point(roots[best]) : "-",
                                           sci(best_distance)});
      rec.pass = distance < opts.tolerance && best_distance < opts.tolerance && fresh;
      if (!fresh) rec.note = "component root already claimed by another pair";
      emit(report, std::move(rec), progress);
    }

    if (!opts.check_nonpairs) continue;
    std::vector<Angle> angles;
    for (const auto& [a, l] : landings) angles.push_back(a);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      for (std::size_t j = i + 1; j < angles.size(); ++j) {
        if (table.conjugate(angles[i]) == angles[j]) continue;
        const Landing& a = landings.at(angles[i]);
        const Landing& b = landings.at(angles[j]);
        CheckRecord rec{"nonpair", {std::to_string(n), angles[i].to_string(), angles[j].to_string()}, false, {}};
        // A ray that failed to land cannot be shown to land elsewhere.
        double distance = a.landed && b.landed ? std::abs(a.at - b.at) : 0.0;
        rec.fields.push_back(a.landed && b.landed ? sci(distance) : "nan");
        rec.pass = a.landed && b.landed && distance >= opts.tolerance;
        emit(report, std::move(rec), progress);
      }
    }
  }

  for (unsigned total = 2; total <= opts.max_preperiodic; ++total) {
    for (unsigned l = 1; l < total; ++l) {
      const unsigned n = total - l;
      std::vector<Angle> seen;
      for (const Angle& theta : enumerate_exact_type(l, n)) {
        if (std::binary_search(seen.begin(), seen.end(), theta)) continue;
        MisiurewiczClass cls = misiurewicz_class(theta);
        seen.insert(seen.end(), cls.angles.begin(), cls.angles.end());
        std::sort(seen.begin(), seen.end());

        std::string joined;
        for (const Angle& a : cls.angles) joined += (joined.empty() ? "" : ",") + a.to_string();
        CheckRecord rec{"misiurewicz",
                        {std::to_string(l), std::to_string(n), std::to_string(cls.kneading_period), joined},
                        false,
                        {}};

        std::vector<Complex> points;
        for (const Angle& a : cls.angles) {
          Landing x = land(a, opts.rays);
          if (x.landed) points.push_back(x.at);
        }
        if (points.size() != cls.angles.size()) {
          rec.fields.insert(rec.fields.end(), {"-", "inf", "-", "inf"});
          rec.note = "ray did not land";
          emit(report, std::move(rec), progress);
          continue;
        }
        Complex mean = 0.0;
        for (Complex p : points) mean += p;
        mean /= static_cast<double>(points.size());
        double spread = 0.0;
        for (Complex p : points)
          for (Complex q : points) spread = std::max(spread, std::abs(p - q));
        rec.fields.push_back(point(mean));
        rec.fields.push_back(sci(spread));
        try {
          NewtonResult sol = solve_misiurewicz(l, n, mean);
          rec.fields.push_back(point(sol.parameter));
          rec.fields.push_back(sci(sol.residual));
          rec.pass = spread < opts.tolerance && sol.residual < opts.misiurewicz_residual && sol.preperiod == l &&
                     sol.period == cls.kneading_period && std::abs(sol.parameter - mean) < opts.tolerance;
          if (!rec.pass) rec.note = "solution has orbit period " + std::to_string(sol.period);
        } catch (const DomainError& e) {
          rec.fields.insert(rec.fields.end(), {"-", "inf"});
          rec.note = e.what();
        }
        emit(report, std::move(rec), progress);
      }
    }
  }
  return report;
}

}  // namespace mrays
