#include "relaysim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define RELAYSIM_HAS_AVX2_TU 1
#endif

namespace relaysim::kernels::avx2 {

#ifdef RELAYSIM_HAS_AVX2_TU

bool available() noexcept {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

__attribute__((target("avx2"))) inline __m256d ipow4(__m256d base, int e) {
  __m256d result = _mm256_set1_pd(1.0);
  while (e > 0) {
    if (e & 1) result = _mm256_mul_pd(result, base);
    base = _mm256_mul_pd(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace

__attribute__((target("avx2"))) void squared_distances(const double* xs, const double* ys,
                                                       std::size_t n, double x0, double y0,
                                                       double* out) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vy0 = _mm256_set1_pd(y0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx0);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy0);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  scalar::squared_distances(xs + i, ys + i, n - i, x0, y0, out + i);
}

__attribute__((target("avx2"))) void link_probabilities(const double* dist, std::size_t n,
                                                        const LinkParams& lp, double* out) {
  if (lp.kind == LinkModel::LognormalShadowing && lp.int_exponent < 0) {
    // no vector pow; keep the reference path
    scalar::link_probabilities(dist, n, lp, out);
    return;
  }
  const __m256d radius = _mm256_set1_pd(lp.radius);
  const __m256d two_r = _mm256_set1_pd(2.0 * lp.radius);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  if (lp.kind == LinkModel::UnitDisk) {
    for (; i + 4 <= n; i += 4) {
      const __m256d d = _mm256_loadu_pd(dist + i);
      _mm256_storeu_pd(out + i, _mm256_and_pd(_mm256_cmp_pd(d, radius, _CMP_LE_OQ), one));
    }
  } else {
    for (; i + 4 <= n; i += 4) {
      const __m256d d = _mm256_loadu_pd(dist + i);
      const __m256d near_mask = _mm256_cmp_pd(d, radius, _CMP_LE_OQ);
      const __m256d far_mask = _mm256_cmp_pd(d, two_r, _CMP_LE_OQ);
      const __m256d r_near = _mm256_div_pd(d, radius);
      const __m256d r_far = _mm256_div_pd(_mm256_sub_pd(two_r, d), radius);
      const __m256d p_near =
          _mm256_sub_pd(one, _mm256_mul_pd(half, ipow4(r_near, lp.int_exponent)));
      const __m256d p_far = _mm256_mul_pd(half, ipow4(r_far, lp.int_exponent));
      __m256d p = _mm256_blendv_pd(zero, p_far, far_mask);
      p = _mm256_blendv_pd(p, p_near, near_mask);
      _mm256_storeu_pd(out + i, p);
    }
  }
  scalar::link_probabilities(dist + i, n - i, lp, out + i);
}

#else

bool available() noexcept { return false; }

void squared_distances(const double* xs, const double* ys, std::size_t n, double x0, double y0,
                       double* out) {
  scalar::squared_distances(xs, ys, n, x0, y0, out);
}

void link_probabilities(const double* dist, std::size_t n, const LinkParams& lp, double* out) {
  scalar::link_probabilities(dist, n, lp, out);
}

#endif

}  // namespace relaysim::kernels::avx2
