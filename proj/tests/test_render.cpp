#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "mrays/render.hpp"

using namespace mrays;

namespace {

RenderSpec golden_spec() {
  RenderSpec s;
  s.center = {-0.5, 0.0};
  s.width = 3.0;
  s.pixels_w = 96;
  s.pixels_h = 72;
  s.max_iterations = 128;
  return s;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<RenderSpec> sample_specs() {
  std::vector<RenderSpec> out;
  RenderSpec s = golden_spec();
  out.push_back(s);
  s.center = {-0.7436, 0.1318};
  s.width = 0.01;
  s.pixels_w = 61;  // odd widths exercise the scalar tail
  s.pixels_h = 37;
  s.max_iterations = 700;
  out.push_back(s);
  s = golden_spec();
  s.plane = PlaneKind::Julia;
  s.julia_c = {-0.12, 0.75};
  s.center = {0, 0};
  s.width = 3.2;
  s.escape_radius = 4.0;
  out.push_back(s);
  s.julia_c = {0.285, 0.01};
  s.pixels_w = 33;
  s.pixels_h = 5;
  out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree exactly") {
  if (!avx2_available()) {
    MESSAGE("no AVX2 on this CPU; the dispatch falls back to scalar");
    CHECK(resolve(Kernel::Auto) == Kernel::Scalar);
    return;
  }
  CHECK(resolve(Kernel::Auto) == Kernel::Avx2);
  for (const RenderSpec& s : sample_specs()) {
    auto scalar = escape_counts(s, Kernel::Scalar, 1);
    auto simd = escape_counts(s, Kernel::Avx2, 1);
    CHECK(scalar == simd);
    CHECK(render(s, Kernel::Scalar, 1) == render(s, Kernel::Avx2, 1));
  }
}

TEST_CASE("kernels on a hand-checked row") {
  // c = 1: 0, 1, 2, 5 leaves radius 2 on the third step.
  const double re[] = {1.0, -1.0, 0.0, 0.25, -2.0, 3.0, 0.3, -0.75, 0.5};
  const double im[] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.6, 0.1, 0.5};
  for (auto fn : {kernels::escape_scalar, kernels::escape_avx2}) {
    if (fn == kernels::escape_avx2 && !avx2_available()) continue;
    std::int32_t out[9];
    kernels::Row row{re, im, 9, false, 0, 0, 100, 4.0, out};
    fn(row);
    CHECK(out[0] == 3);
    CHECK(out[1] == 0);
    CHECK(out[2] == 0);
    CHECK(out[3] == 0);
    CHECK(out[4] == 0);  // -2 stays on the boundary circle
    CHECK(out[5] == 1);
  }
  // Julia plane with c = 0: the unit disk is interior.
  const double jr[] = {0.0, 0.5, 1.5};
  const double ji[] = {0.0, 0.5, 0.0};
  std::int32_t out[3];
  kernels::escape_scalar({jr, ji, 3, true, 0, 0, 50, 4.0, out});
  CHECK(out[0] == 0);
  CHECK(out[1] == 0);
  CHECK(out[2] == 1);  // 1.5 squares to 2.25
}

TEST_CASE("pixel geometry") {
  RenderSpec s = golden_spec();
  Complex z = s.pixel_center(47.5, 35.5);
  CHECK(std::abs(z - s.center) < 1e-12);
  auto [x, y] = s.to_pixel(s.pixel_center(10, 20));
  CHECK(x == doctest::Approx(10));
  CHECK(y == doctest::Approx(20));
  CHECK(s.pixel_center(0, 0).imag() > s.pixel_center(0, 10).imag());
}

TEST_CASE("spec validation") {
  RenderSpec s = golden_spec();
  s.pixels_w = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = golden_spec();
  s.escape_radius = 1.5;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = golden_spec();
  s.pixels_w = 1 << 14;
  s.pixels_h = 1 << 14;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = golden_spec();
  s.width = -1;
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("thread count does not change the image") {
  RenderSpec s = sample_specs()[1];
  Image one = render(s, Kernel::Auto, 1);
  for (unsigned t : {2u, 3u, 8u}) CHECK(render(s, Kernel::Auto, t) == one);
}

TEST_CASE("PPM encoding") {
  Image img(2, 1);
  img.at(0, 0)[0] = 255;
  img.at(1, 0)[2] = 7;
  std::string bytes = encode_ppm(img);
  CHECK(bytes == std::string("P6\n2 1\n255\n\xff\x00\x00\x00\x00\x07", 17));

  auto path = std::filesystem::temp_directory_path() / "mrays_test_render.ppm";
  write_image(img, path);
  CHECK(read_file(path) == bytes);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(write_image(img, "/nonexistent-dir/x.ppm"), IoError);
}

TEST_CASE("overlays touch only ray and marker pixels") {
  RenderSpec s = golden_spec();
  Image base = render(s);

  RayTrace empty;
  empty.plane = Plane::Parameter;
  CHECK(overlay_trace(base, s, empty) == base);

  RayTrace t = trace_parameter_ray(Angle(1, 3), SolverConfig::parabolic());
  Image drawn = overlay_trace(base, s, t);
  CHECK_FALSE(drawn == base);
  for (unsigned y = 0; y < s.pixels_h; ++y) {
    for (unsigned x = 0; x < s.pixels_w; ++x) {
      const std::uint8_t* a = base.at(x, y);
      const std::uint8_t* b = drawn.at(x, y);
      if (std::equal(a, a + 3, b)) continue;
      bool ray = std::equal(b, b + 3, kRayColor);
      bool mark = std::equal(b, b + 3, kLandingColor);
      CHECK((ray || mark));
    }
  }
  // The landing marker sits at -3/4.
  auto [lx, ly] = s.to_pixel(*t.landing);
  const std::uint8_t* m = drawn.at(static_cast<unsigned>(lx), static_cast<unsigned>(ly));
  CHECK(std::equal(m, m + 3, kLandingColor));

  RenderSpec with = s;
  with.overlays = {Angle(1, 3)};
  CHECK(render_with_overlays(with) == drawn);
}

TEST_CASE("golden image re-renders byte for byte") {
  const std::filesystem::path golden = std::filesystem::path(MRAYS_GOLDEN_DIR) / "mandelbrot_96x72.ppm";
  REQUIRE(std::filesystem::exists(golden));
  const std::string expected = read_file(golden);
  CHECK(encode_ppm(render(golden_spec(), Kernel::Scalar, 1)) == expected);
  CHECK(encode_ppm(render(golden_spec(), Kernel::Auto, 0)) == expected);
}
