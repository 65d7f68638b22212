#include "mrays/render.hpp"

namespace mrays::kernels {

void escape_scalar(const Row& row) {
  for (std::size_t i = 0; i < row.count; ++i) {
    double x = row.julia ? row.re[i] : 0.0;
    double y = row.julia ? row.im[i] : 0.0;
    const double cr = row.julia ? row.c_re : row.re[i];
    const double ci = row.julia ? row.c_im : row.im[i];
    std::int32_t escaped = 0;
    for (int k = 1; k <= row.max_iterations; ++k) {
      // 2xy as t + t keeps the rounding identical to the vector kernel.
      const double t = x * y;
      const double nx = (x * x - y * y) + cr;
      const double ny = (t + t) + ci;
      x = nx;
      y = ny;
      if (x * x + y * y > row.radius_sq) {
        escaped = k;
        break;
      }
    }
    row.out[i] = escaped;
  }
}

}  // namespace mrays::kernels
