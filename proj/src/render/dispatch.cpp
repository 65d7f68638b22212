#include <algorithm>
#include <cmath>
#include <thread>

#include "mrays/render.hpp"

namespace mrays {

bool avx2_available() {
#if defined(MRAYS_HAVE_AVX2)
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

Kernel resolve(Kernel k) {
  if (k == Kernel::Auto) return avx2_available() ? Kernel::Avx2 : Kernel::Scalar;
  if (k == Kernel::Avx2 && !avx2_available()) throw DomainError("AVX2 kernel requested but the CPU lacks AVX2");
  return k;
}

std::string to_string(Kernel k) {
  switch (k) {
    case Kernel::Auto: return "auto";
    case Kernel::Scalar: return "scalar";
    case Kernel::Avx2: return "avx2";
  }
  return "?";
}

void RenderSpec::validate() const {
  if (pixels_w == 0 || pixels_h == 0) throw DomainError("image size must be positive");
  if (std::size_t{pixels_w} * pixels_h > kMaxPixels)
    throw DomainError("image of " + std::to_string(pixels_w) + "x" + std::to_string(pixels_h) + " exceeds the limit of " +
                      std::to_string(kMaxPixels) + " pixels");
  if (!(width > 0) || !std::isfinite(width)) throw DomainError("view width must be positive");
  if (max_iterations <= 0) throw DomainError("max iterations must be positive");
  if (!(escape_radius >= 2)) throw DomainError("escape radius must be at least 2");
}

Complex RenderSpec::pixel_center(double x, double y) const {
  const double scale = width / pixels_w;
  return {center.real() + (x + 0.5 - 0.5 * pixels_w) * scale, center.imag() - (y + 0.5 - 0.5 * pixels_h) * scale};
}

std::pair<double, double> RenderSpec::to_pixel(Complex z) const {
  const double scale = width / pixels_w;
  return {(z.real() - center.real()) / scale + 0.5 * pixels_w - 0.5,
          (center.imag() - z.imag()) / scale + 0.5 * pixels_h - 0.5};
}

std::vector<std::int32_t> escape_counts(const RenderSpec& spec, Kernel kernel, unsigned threads) {
  spec.validate();
  const Kernel k = resolve(kernel);
  const auto run = k == Kernel::Avx2 ? kernels::escape_avx2 : kernels::escape_scalar;
  const unsigned w = spec.pixels_w, h = spec.pixels_h;

  // Coordinates are computed once, outside the kernels, so both kernels see
  // the same inputs.
  std::vector<double> re(w), im(h);
  for (unsigned x = 0; x < w; ++x) re[x] = spec.pixel_center(x, 0).real();
  for (unsigned y = 0; y < h; ++y) im[y] = spec.pixel_center(0, y).imag();

  std::vector<std::int32_t> counts(std::size_t{w} * h);
  auto rows = [&](unsigned first, unsigned stride) {
    std::vector<double> row_im(w);
    for (unsigned y = first; y < h; y += stride) {
      std::fill(row_im.begin(), row_im.end(), im[y]);
      kernels::Row row{re.data(), row_im.data(), w, spec.plane == PlaneKind::Julia, spec.julia_c.real(),
                       spec.julia_c.imag(), spec.max_iterations, spec.escape_radius * spec.escape_radius,
                       counts.data() + std::size_t{y} * w};
      run(row);
    }
  };

  unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n = std::min(n, h);
  if (n <= 1) {
    rows(0, 1);
  } else {
    // Rows are interleaved across workers; each writes only its own rows.
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(rows, t, n);
  }
  return counts;
}

}  // namespace mrays
