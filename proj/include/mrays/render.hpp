#pragma once

// Escape-time images of the Mandelbrot set and of filled Julia sets, with
// traced rays drawn on top, written as binary PPM.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrays/numerics.hpp"

namespace mrays {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PlaneKind { Mandelbrot, Julia };

inline constexpr std::size_t kMaxPixels = std::size_t{1} << 26;

struct RenderSpec {
  PlaneKind plane = PlaneKind::Mandelbrot;
  Complex julia_c{};  // Julia plane only
  Complex center{-0.5, 0.0};
  double width = 3.0;  // real extent of the view; pixels are square
  unsigned pixels_w = 512;
  unsigned pixels_h = 384;
  int max_iterations = 256;
  double escape_radius = 2.0;
  std::vector<Angle> overlays;

  /// Throws DomainError for non-positive sizes, escape_radius < 2 or more
  /// than kMaxPixels pixels.
  void validate() const;

  /// Center of pixel (x, y); y grows downward, imaginary part upward.
  Complex pixel_center(double x, double y) const;
  /// Inverse of pixel_center, in fractional pixel coordinates.
  std::pair<double, double> to_pixel(Complex z) const;
};

struct Image {
  unsigned width = 0;
  unsigned height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  Image() = default;
  Image(unsigned w, unsigned h) : width(w), height(h), rgb(std::size_t{3} * w * h, 0) {}

  std::uint8_t* at(unsigned x, unsigned y) { return &rgb[(std::size_t{y} * width + x) * 3]; }
  const std::uint8_t* at(unsigned x, unsigned y) const { return &rgb[(std::size_t{y} * width + x) * 3]; }

  friend bool operator==(const Image&, const Image&) = default;
};

enum class Kernel { Auto, Scalar, Avx2 };

namespace kernels {
// Escape iteration (1-based) for each start point, 0 when the orbit stays
// within the radius for max_iterations steps. Mandelbrot: z0 = 0, c = point.
// Julia: z0 = point, c fixed. Both kernels perform the same floating-point
// operations in the same order, so their outputs are identical.
struct Row {
  const double* re;
  const double* im;
  std::size_t count;
  bool julia;
  double c_re, c_im;
  int max_iterations;
  double radius_sq;
  std::int32_t* out;
};
void escape_scalar(const Row& row);
void escape_avx2(const Row& row);
}  // namespace kernels

bool avx2_available();
Kernel resolve(Kernel k);
std::string to_string(Kernel k);

/// Escape iterations for every pixel, row-major. threads = 0 uses the
/// hardware concurrency; the result does not depend on it.
std::vector<std::int32_t> escape_counts(const RenderSpec& spec, Kernel kernel = Kernel::Auto, unsigned threads = 0);

/// Logarithmic grayscale on the escape iteration; interior black.
Image render(const RenderSpec& spec, Kernel kernel = Kernel::Auto, unsigned threads = 0);

inline constexpr std::uint8_t kRayColor[3] = {255, 48, 48};
inline constexpr std::uint8_t kLandingColor[3] = {48, 255, 48};

/// Draws the trace as a clipped polyline and marks the landing point with a
/// small cross. The trace plane must match the spec. Pixels off the stroke
/// and marker are left untouched.
Image overlay_trace(Image img, const RenderSpec& spec, const RayTrace& trace);

/// Renders the spec and draws every overlay angle, traced in the matching plane.
Image render_with_overlays(const RenderSpec& spec, const SolverConfig& cfg = SolverConfig::parabolic(),
                           Kernel kernel = Kernel::Auto, unsigned threads = 0);

std::string encode_ppm(const Image& img);
void write_image(const Image& img, const std::filesystem::path& path);

}  // namespace mrays
