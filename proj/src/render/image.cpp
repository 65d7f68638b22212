#include <array>
#include <cmath>
#include <fstream>

#include "mrays/render.hpp"

namespace mrays {

namespace {

void plot(Image& img, long x, long y, const std::uint8_t* color) {
  if (x < 0 || y < 0 || x >= static_cast<long>(img.width) || y >= static_cast<long>(img.height)) return;
  std::uint8_t* p = img.at(static_cast<unsigned>(x), static_cast<unsigned>(y));
  p[0] = color[0];
  p[1] = color[1];
  p[2] = color[2];
}

// Liang-Barsky against a box one pixel larger than the image, so that huge
// off-screen segments near the start of a ray cost nothing.
bool clip(double& x0, double& y0, double& x1, double& y1, double w, double h) {
  const double dx = x1 - x0, dy = y1 - y0;
  double lo = 0.0, hi = 1.0;
  const std::array<double, 4> p{-dx, dx, -dy, dy};
  const std::array<double, 4> q{x0 + 1.0, w - x0, y0 + 1.0, h - y0};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    double r = q[i] / p[i];
    if (p[i] < 0.0)
      lo = std::max(lo, r);
    else
      hi = std::min(hi, r);
    if (lo > hi) return false;
  }
  x1 = x0 + hi * dx;
  y1 = y0 + hi * dy;
  x0 = x0 + lo * dx;
  y0 = y0 + lo * dy;
  return true;
}

void line(Image& img, double fx0, double fy0, double fx1, double fy1, const std::uint8_t* color) {
  if (!std::isfinite(fx0) || !std::isfinite(fy0) || !std::isfinite(fx1) || !std::isfinite(fy1)) return;
  if (!clip(fx0, fy0, fx1, fy1, img.width, img.height)) return;
  long x0 = std::lround(fx0), y0 = std::lround(fy0);
  const long x1 = std::lround(fx1), y1 = std::lround(fy1);
  const long dx = std::labs(x1 - x0), dy = -std::labs(y1 - y0);
  const long sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  long err = dx + dy;
  for (;;) {
    plot(img, x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    long e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace

Image render(const RenderSpec& spec, Kernel kernel, unsigned threads) {
  const auto counts = escape_counts(spec, kernel, threads);
  std::vector<std::uint8_t> shade(static_cast<std::size_t>(spec.max_iterations) + 1, 0);
  const double top = std::log(static_cast<double>(spec.max_iterations) + 1.0);
  for (int k = 1; k <= spec.max_iterations; ++k)
    shade[k] = static_cast<std::uint8_t>(std::lround(32.0 + 223.0 * std::log(static_cast<double>(k) + 1.0) / top));

  Image img(spec.pixels_w, spec.pixels_h);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::uint8_t g = shade[static_cast<std::size_t>(counts[i])];
    img.rgb[3 * i] = img.rgb[3 * i + 1] = img.rgb[3 * i + 2] = g;
  }
  return img;
}

Image overlay_trace(Image img, const RenderSpec& spec, const RayTrace& trace) {
  const bool julia = spec.plane == PlaneKind::Julia;
  if (julia != (trace.plane == Plane::Dynamic)) throw DomainError("ray plane does not match the rendered plane");
  if (julia && trace.c != spec.julia_c) throw DomainError("dynamic ray was traced for a different parameter");

  for (std::size_t i = 1; i < trace.points.size(); ++i) {
    auto [x0, y0] = spec.to_pixel(trace.points[i - 1].position);
    auto [x1, y1] = spec.to_pixel(trace.points[i].position);
    line(img, x0, y0, x1, y1, kRayColor);
  }
  if (trace.points.size() == 1) {
    auto [x, y] = spec.to_pixel(trace.points[0].position);
    if (std::isfinite(x) && std::isfinite(y)) plot(img, std::lround(x), std::lround(y), kRayColor);
  }
  if (trace.landing) {
    auto [fx, fy] = spec.to_pixel(*trace.landing);
    if (std::isfinite(fx) && std::isfinite(fy) && std::abs(fx) < 1e9 && std::abs(fy) < 1e9) {
      const long x = std::lround(fx), y = std::lround(fy);
      for (long d = -2; d <= 2; ++d) {
        plot(img, x + d, y, kLandingColor);
        plot(img, x, y + d, kLandingColor);
      }
    }
  }
  return img;
}

Image render_with_overlays(const RenderSpec& spec, const SolverConfig& cfg, Kernel kernel, unsigned threads) {
  Image img = render(spec, kernel, threads);
  for (const Angle& a : spec.overlays) {
    RayTrace t = spec.plane == PlaneKind::Julia ? trace_dynamic_ray(spec.julia_c, a, cfg) : trace_parameter_ray(a, cfg);
    img = overlay_trace(std::move(img), spec, t);
  }
  return img;
}

std::string encode_ppm(const Image& img) {
  if (img.rgb.size() != std::size_t{3} * img.width * img.height) throw DomainError("image buffer has the wrong size");
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

void write_image(const Image& img, const std::filesystem::path& path) {
  const std::string bytes = encode_ppm(img);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace mrays
