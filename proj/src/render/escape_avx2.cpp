// Built with -mavx2 only; called after a runtime CPU check.

#include "mrays/render.hpp"

#if defined(MRAYS_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace mrays::kernels {

#if defined(MRAYS_HAVE_AVX2)

void escape_avx2(const Row& row) {
  std::size_t i = 0;
  const __m256d radius_sq = _mm256_set1_pd(row.radius_sq);
  for (; i + 4 <= row.count; i += 4) {
    const __m256d pr = _mm256_loadu_pd(row.re + i);
    const __m256d pi = _mm256_loadu_pd(row.im + i);
    __m256d x = row.julia ? pr : _mm256_setzero_pd();
    __m256d y = row.julia ? pi : _mm256_setzero_pd();
    const __m256d cr = row.julia ? _mm256_set1_pd(row.c_re) : pr;
    const __m256d ci = row.julia ? _mm256_set1_pd(row.c_im) : pi;

    __m256i escaped = _mm256_setzero_si256();
    __m256d active = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (int k = 1; k <= row.max_iterations; ++k) {
      const __m256d t = _mm256_mul_pd(x, y);
      const __m256d nx = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)), cr);
      const __m256d ny = _mm256_add_pd(_mm256_add_pd(t, t), ci);
      // Escaped lanes keep their last values so they cannot overflow.
      x = _mm256_blendv_pd(x, nx, active);
      y = _mm256_blendv_pd(y, ny, active);
      const __m256d mag = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
      const __m256d out = _mm256_and_pd(_mm256_cmp_pd(mag, radius_sq, _CMP_GT_OQ), active);
      escaped = _mm256_blendv_epi8(escaped, _mm256_set1_epi64x(k), _mm256_castpd_si256(out));
      active = _mm256_andnot_pd(out, active);
      if (_mm256_movemask_pd(active) == 0) break;
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), escaped);
    for (int l = 0; l < 4; ++l) row.out[i + l] = static_cast<std::int32_t>(lanes[l]);
  }
  if (i < row.count) {
    Row tail = row;
    tail.re += i;
    tail.im += i;
    tail.out += i;
    tail.count -= i;
    escape_scalar(tail);
  }
}

#else

void escape_avx2(const Row& row) { escape_scalar(row); }

#endif

}  // namespace mrays::kernels
