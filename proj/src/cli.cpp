#include "mrays/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>
#include <sstream>

#include "mrays/combinat.hpp"
#include "mrays/harness.hpp"
#include "mrays/render.hpp"

namespace mrays {

namespace {

constexpr unsigned kNumericBound = 16;  // double precision stops being trustworthy beyond this
constexpr unsigned kCenterBound = 12;

struct Options {
  bool machine = false;
  unsigned class_bound = 24;  // l + n for Misiurewicz class enumeration
};

std::string join(const std::vector<Angle>& angles, const std::string& sep) {
  std::string out;
  for (const Angle& a : angles) out += (out.empty() ? "" : sep) + a.to_string();
  return out;
}

std::string fraction(const Rational& r) {
  std::ostringstream s;
  s << numerator(r);
  if (denominator(r) != 1) s << "/" << denominator(r);
  return s.str();
}

Angle require_periodic(const std::string& text) {
  Angle a = parse_angle(text);
  if (orbit_type(a).preperiod != 0) throw DomainError("angle " + a.to_string() + " is not periodic");
  return a;
}

void numeric_bound(const Angle& a) {
  OrbitType t = orbit_type(a);
  if (t.preperiod > kNumericBound || t.period > kNumericBound)
    throw DomainError("angle " + a.to_string() + " has preperiod or period above " + std::to_string(kNumericBound) +
                      ", beyond double precision");
}

std::string pair_human(const RayPair& p) {
  KneadingSequence k = kneading(p.low);
  std::ostringstream s;
  s << p.low << " " << p.high << "  period " << p.period << "  kneading " << k.to_string() << "  address "
    << internal_address(k).to_string() << "  " << (is_primitive(p) ? "primitive" : "satellite");
  return s.str();
}

SolverConfig trace_config(int halvings, double tolerance) {
  SolverConfig cfg = SolverConfig::parabolic();
  if (halvings > 0) cfg.potential_halvings = halvings;
  if (tolerance > 0) cfg.landing_tolerance = tolerance;
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorics and numerics of rational external rays of the Mandelbrot set", "mrays"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--machine", opt.machine, "Stable whitespace-separated records instead of prose");

  std::function<void()> action;

  // knead
  auto* knead = app.add_subcommand("knead", "Kneading sequence of an angle");
  std::string knead_angle;
  bool knead_limits = false;
  knead->add_option("angle", knead_angle, "p/q or 0.u:v")->required();
  knead->add_flag("--limits", knead_limits, "Also print the one-sided limits K- and K+ (periodic angles)");
  knead->callback([&] {
    action = [&] {
      Angle a = parse_angle(knead_angle);
      KneadingSequence k = kneading(a);
      std::optional<std::pair<KneadingSequence, KneadingSequence>> lim;
      if (knead_limits) lim = limit_kneadings(a);
      if (opt.machine) {
        out << a << " " << k.to_string();
        if (lim) out << " " << lim->first.to_string() << " " << lim->second.to_string();
        out << "\n";
      } else {
        out << k.to_string() << "\n";
        if (lim) out << "K- = " << lim->first.to_string() << "\nK+ = " << lim->second.to_string() << "\n";
      }
    };
  });

  // address
  auto* address = app.add_subcommand("address", "Internal address of a periodic angle");
  std::string address_angle;
  address->add_option("angle", address_angle)->required();
  address->callback([&] {
    action = [&] {
      Angle a = require_periodic(address_angle);
      if (a.is_zero() || a.is_one()) throw DomainError("the address of angle 0 is just 1");
      InternalAddress addr = internal_address(kneading(a));
      if (opt.machine) out << a << " ";
      out << addr.to_string() << "\n";
    };
  });

  // pair
  auto* pair = app.add_subcommand("pair", "Partner of a periodic angle");
  std::string pair_angle;
  pair->add_option("angle", pair_angle)->required();
  pair->callback([&] {
    action = [&] {
      Angle a = require_periodic(pair_angle);
      unsigned n = orbit_type(a).period;
      if (n > 24) throw DomainError("pairing is limited to periods up to 24");
      PairTable table(n);
      const RayPair& p = table.pair_of(a);
      out << (opt.machine ? pair_record(p) : pair_human(p)) << "\n";
    };
  });

  // pairs
  auto* pairs = app.add_subcommand("pairs", "All pairs of one period");
  unsigned pairs_period = 0;
  pairs->add_option("--period", pairs_period)->required()->check(CLI::Range(1u, 24u));
  pairs->callback([&] {
    action = [&] {
      PairTable table(pairs_period);
      for (const RayPair& p : table.pairs_of_period(pairs_period))
        out << (opt.machine ? pair_record(p) : pair_human(p)) << "\n";
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Parabolic counts s_1 .. s_max");
  unsigned count_max = 0;
  count->add_option("--max", count_max)->required()->check(CLI::Range(1u, 63u));
  count->callback([&] {
    action = [&] {
      for (unsigned n = 1; n <= count_max; ++n) {
        if (opt.machine)
          out << n << " " << count_parabolic(n) << "\n";
        else
          out << count_parabolic(n) << (n == count_max ? "\n" : " ");
      }
    };
  });

  // portrait
  auto* portrait = app.add_subcommand("portrait", "Rays landing with a periodic ray and their rotation number");
  std::string portrait_angle;
  portrait->add_option("angle", portrait_angle)->required();
  portrait->callback([&] {
    action = [&] {
      Angle a = require_periodic(portrait_angle);
      if (orbit_type(a).period > 24) throw DomainError("portraits are limited to periods up to 24");
      PortraitCycle pc = portrait_cycle(a);
      const std::string rot = std::to_string(pc.rotation_num) + "/" + std::to_string(pc.rotation_den);
      if (opt.machine) {
        out << a << " " << pc.orbit_period() << " " << pc.rays_per_point() << " " << rot << " ";
        for (std::size_t i = 0; i < pc.point_angles.size(); ++i) out << (i ? ";" : "") << join(pc.point_angles[i], ",");
        out << "\n";
        return;
      }
      out << "ray period " << pc.ray_period() << " = orbit period " << pc.orbit_period() << " x "
          << pc.rays_per_point() << " rays per point, rotation number " << rot << "\n";
      for (std::size_t i = 0; i < pc.point_angles.size(); ++i) {
        out << "point " << i + 1 << ": " << join(pc.point_angles[i], " ");
        if (pc.rays_per_point() > 1) {
          SectorWidths sw = sector_widths(pc.point_angles[i]);
          out << "  widths";
          for (const Rational& w : sw.widths) out << " " << fraction(w);
        }
        out << "\n";
      }
    };
  });

  // misiurewicz
  auto* misiurewicz = app.add_subcommand("misiurewicz", "Parameter rays landing together at a Misiurewicz point");
  std::string mis_angle;
  misiurewicz->add_option("angle", mis_angle)->required();
  misiurewicz->add_option("--bound", opt.class_bound, "Largest preperiod + period enumerated")
      ->check(CLI::Range(2u, 62u));
  misiurewicz->callback([&] {
    action = [&] {
      Angle a = parse_angle(mis_angle);
      OrbitType t = orbit_type(a);
      if (t.preperiod == 0) throw DomainError("angle " + a.to_string() + " is periodic, not preperiodic");
      if (t.preperiod + t.period > opt.class_bound)
        throw DomainError("preperiod + period = " + std::to_string(t.preperiod + t.period) + " exceeds the bound " +
                          std::to_string(opt.class_bound) + " (raise --bound)");
      MisiurewiczClass cls = misiurewicz_class(a);
      if (opt.machine)
        out << a << " " << cls.preperiod << " " << cls.ray_period << " " << cls.kneading_period << " "
            << join(cls.angles, ",") << "\n";
      else
        out << join(cls.angles, " ") << "\n";
    };
  });

  // trace
  auto* trace = app.add_subcommand("trace", "Trace a parameter ray or a dynamic ray");
  bool trace_parameter = false;
  std::string trace_c, trace_angle;
  bool trace_points = false;
  int trace_halvings = 0;
  double trace_tolerance = 0;
  auto* param_flag = trace->add_flag("--parameter", trace_parameter, "Parameter plane");
  auto* dyn_opt = trace->add_option("--dynamic", trace_c, "Dynamic plane of z^2 + c");
  param_flag->excludes(dyn_opt);
  trace->add_option("--angle", trace_angle)->required();
  trace->add_flag("--points", trace_points, "Print every ray point");
  trace->add_option("--halvings", trace_halvings, "Potential halvings (default 1000)")->check(CLI::Range(1, 1000));
  trace->add_option("--tolerance", trace_tolerance, "Landing tolerance between levels")
      ->check(CLI::PositiveNumber);
  trace->callback([&] {
    action = [&] {
      if (!trace_parameter && trace_c.empty()) throw CLI::RequiredError("--parameter or --dynamic");
      Angle a = parse_angle(trace_angle);
      numeric_bound(a);
      SolverConfig cfg = trace_config(trace_halvings, trace_tolerance);
      RayTrace r = trace_parameter ? trace_parameter_ray(a, cfg) : trace_dynamic_ray(parse_complex(trace_c), a, cfg);
      const std::string plane = trace_parameter ? "parameter" : "dynamic";
      const std::string landing = r.landing ? format_complex(*r.landing) : "-";
      if (opt.machine) {
        out << "trace " << plane << " " << a << " " << to_string(r.status) << " " << landing << " " << r.levels << " "
            << (r.extrapolated ? "extrapolated" : "direct") << "\n";
      } else {
        out << plane << " ray " << a;
        if (!trace_parameter) out << " for c = " << format_complex(r.c);
        out << ": " << to_string(r.status);
        if (r.landing) out << " at " << landing;
        out << " after " << r.levels << " levels" << (r.extrapolated ? " (extrapolated)" : "") << "\n";
        if (!r.diagnostic.empty()) out << r.diagnostic << "\n";
      }
      if (trace_points) {
        char buf[64];
        for (const RayPoint& p : r.points) {
          std::snprintf(buf, sizeof buf, "%.6e", p.potential);
          out << (opt.machine ? "point " : "  ") << buf << " " << format_complex(p.position) << "\n";
        }
      }
      if (r.status == TraceStatus::Lost) throw SolverError("ray lost: " + r.diagnostic);
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Newton solvers");
  solve->require_subcommand(1);
  auto* center = solve->add_subcommand("center", "All centers of one period");
  unsigned center_period = 0;
  center->add_option("--period", center_period)->required()->check(CLI::Range(1u, kCenterBound));
  center->callback([&] {
    action = [&] {
      for (const NewtonResult& r : find_centers(center_period)) {
        char res[32];
        std::snprintf(res, sizeof res, "%.3e", r.residual);
        if (opt.machine)
          out << "center " << center_period << " " << format_complex(r.parameter) << " " << res << "\n";
        else
          out << format_complex(r.parameter) << "  residual " << res << "\n";
      }
    };
  });
  auto* boundary = solve->add_subcommand("boundary", "Point of a component with multiplier exp(2 pi i t)");
  std::string boundary_center;
  unsigned boundary_period = 0;
  double boundary_t = 0.0;
  boundary->add_option("--center", boundary_center)->required();
  boundary->add_option("--period", boundary_period)->required()->check(CLI::Range(1u, kNumericBound));
  boundary->add_option("--t", boundary_t, "Internal angle in [0, 1); 0 gives the root");
  boundary->callback([&] {
    action = [&] {
      NewtonResult r = component_boundary(parse_complex(boundary_center), boundary_period, boundary_t);
      char res[32];
      std::snprintf(res, sizeof res, "%.3e", r.residual);
      if (opt.machine)
        out << to_string(r.kind) << " " << boundary_period << " " << format_complex(r.parameter) << " "
            << format_complex(*r.multiplier) << " " << res << "\n";
      else
        out << to_string(r.kind) << " " << format_complex(r.parameter) << "  multiplier "
            << format_complex(*r.multiplier, 6) << "  residual " << res << "\n";
    };
  });
  auto* mis_solve = solve->add_subcommand("misiurewicz", "Parameter with preperiodic critical orbit");
  unsigned mis_l = 0, mis_n = 0;
  std::string mis_seed;
  mis_solve->add_option("--preperiod", mis_l)->required()->check(CLI::Range(1u, kNumericBound));
  mis_solve->add_option("--period", mis_n)->required()->check(CLI::Range(1u, kNumericBound));
  mis_solve->add_option("--seed", mis_seed)->required();
  mis_solve->callback([&] {
    action = [&] {
      NewtonResult r = solve_misiurewicz(mis_l, mis_n, parse_complex(mis_seed));
      char res[32];
      std::snprintf(res, sizeof res, "%.3e", r.residual);
      if (opt.machine)
        out << "misiurewicz " << r.preperiod << " " << r.period << " " << format_complex(r.parameter) << " " << res
            << "\n";
      else
        out << format_complex(r.parameter) << "  preperiod " << r.preperiod << "  orbit period " << r.period
            << "  residual " << res << "\n";
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Numerical check of the landing theorem");
  HarnessOptions hopt;
  bool no_nonpairs = false;
  verify->add_option("--max-period", hopt.max_period)->capture_default_str()->check(CLI::Range(1u, kNumericBound));
  verify->add_option("--max-preperiodic", hopt.max_preperiodic, "Misiurewicz classes with l + n up to this")
      ->capture_default_str()
      ->check(CLI::Range(0u, kNumericBound));
  verify->add_option("--tolerance", hopt.tolerance)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_flag("--no-nonpairs", no_nonpairs, "Skip checking that non-paired rays land apart");
  verify->callback([&] {
    action = [&] {
      hopt.check_nonpairs = !no_nonpairs;
      std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // kind -> (pass, fail)
      HarnessReport report = verify_theorem(hopt, [&](const CheckRecord& r) {
        if (opt.machine) {
          out << r.to_record() << "\n";
        } else if (!r.pass) {
          out << "FAIL " << r.to_record() << (r.note.empty() ? "" : "  (" + r.note + ")") << "\n";
        }
        auto& t = tally[r.kind];
        (r.pass ? t.first : t.second)++;
      });
      if (!opt.machine)
        for (const auto& [kind, t] : tally) out << kind << ": " << t.first << " passed, " << t.second << " failed\n";
      if (!report.all_pass()) throw DomainError(std::to_string(report.failures()) + " checks failed");
    };
  });

  // render
  auto* render_cmd = app.add_subcommand("render", "Escape-time image with ray overlays (binary PPM)");
  RenderSpec spec;
  std::string plane = "mandelbrot", julia_c, view_center, size = "512x384", kernel_name = "auto", output;
  std::vector<std::string> rays;
  unsigned threads = 0;
  render_cmd->add_option("--plane", plane)->check(CLI::IsMember({"mandelbrot", "julia"}))->capture_default_str();
  render_cmd->add_option("--c", julia_c, "Parameter of the Julia set");
  render_cmd->add_option("--center", view_center, "View center (default -0.5 for the Mandelbrot set, 0 for Julia)");
  render_cmd->add_option("--width", spec.width, "Real extent of the view")->capture_default_str();
  render_cmd->add_option("--size", size, "WxH in pixels")->capture_default_str();
  render_cmd->add_option("--iterations", spec.max_iterations)->capture_default_str()->check(CLI::PositiveNumber);
  render_cmd->add_option("--radius", spec.escape_radius)->capture_default_str();
  render_cmd->add_option("--ray", rays, "Angle of a ray to draw (repeatable)");
  render_cmd->add_option("--kernel", kernel_name)->check(CLI::IsMember({"auto", "scalar", "avx2"}))->capture_default_str();
  render_cmd->add_option("--threads", threads, "Worker threads, 0 for all cores");
  render_cmd->add_option("-o,--output", output)->required();
  render_cmd->callback([&] {
    action = [&] {
      unsigned w = 0, h = 0;
      char x = 0;
      std::istringstream ss(size);
      if (!(ss >> w >> x >> h) || x != 'x' || !ss.eof()) throw CLI::ValidationError("--size", "expected WxH");
      spec.pixels_w = w;
      spec.pixels_h = h;
      if (plane == "julia") {
        if (julia_c.empty()) throw CLI::RequiredError("--c (for --plane julia)");
        spec.plane = PlaneKind::Julia;
        spec.julia_c = parse_complex(julia_c);
        spec.center = 0.0;
        if (!render_cmd->count("--width")) spec.width = 4.0;
      }
      if (!view_center.empty()) spec.center = parse_complex(view_center);
      for (const auto& r : rays) {
        Angle a = parse_angle(r);
        numeric_bound(a);
        spec.overlays.push_back(a);
      }
      spec.validate();
      Kernel k = resolve(kernel_name == "scalar" ? Kernel::Scalar : kernel_name == "avx2" ? Kernel::Avx2 : Kernel::Auto);
      Image img = render_with_overlays(spec, SolverConfig::parabolic(), k, threads);
      write_image(img, output);
      if (opt.machine)
        out << "render " << output << " " << w << " " << h << " " << to_string(k) << "\n";
      else
        out << "wrote " << output << " (" << w << "x" << h << ", " << to_string(k) << " kernel)\n";
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (action) action();
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    err << "internal consistency check failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mrays
