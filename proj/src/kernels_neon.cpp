#include "relaysim/kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)
#include <arm_neon.h>
#define RELAYSIM_HAS_NEON_TU 1
#endif

namespace relaysim::kernels::neon {

#ifdef RELAYSIM_HAS_NEON_TU

bool available() noexcept { return true; }  // baseline on AArch64

namespace {

inline float64x2_t ipow2(float64x2_t base, int e) {
  float64x2_t result = vdupq_n_f64(1.0);
  while (e > 0) {
    if (e & 1) result = vmulq_f64(result, base);
    base = vmulq_f64(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace

void squared_distances(const double* xs, const double* ys, std::size_t n, double x0, double y0,
                       double* out) {
  const float64x2_t vx0 = vdupq_n_f64(x0);
  const float64x2_t vy0 = vdupq_n_f64(y0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vx0);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vy0);
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)));
  }
  scalar::squared_distances(xs + i, ys + i, n - i, x0, y0, out + i);
}

void link_probabilities(const double* dist, std::size_t n, const LinkParams& lp, double* out) {
  if (lp.kind == LinkModel::LognormalShadowing && lp.int_exponent < 0) {
    scalar::link_probabilities(dist, n, lp, out);
    return;
  }
  const float64x2_t radius = vdupq_n_f64(lp.radius);
  const float64x2_t two_r = vdupq_n_f64(2.0 * lp.radius);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  if (lp.kind == LinkModel::UnitDisk) {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t d = vld1q_f64(dist + i);
      vst1q_f64(out + i, vbslq_f64(vcleq_f64(d, radius), one, zero));
    }
  } else {
    for (; i + 2 <= n; i += 2) {
      const float64x2_t d = vld1q_f64(dist + i);
      const uint64x2_t near_mask = vcleq_f64(d, radius);
      const uint64x2_t far_mask = vcleq_f64(d, two_r);
      const float64x2_t r_near = vdivq_f64(d, radius);
      const float64x2_t r_far = vdivq_f64(vsubq_f64(two_r, d), radius);
      const float64x2_t p_near = vsubq_f64(one, vmulq_f64(half, ipow2(r_near, lp.int_exponent)));
      const float64x2_t p_far = vmulq_f64(half, ipow2(r_far, lp.int_exponent));
      float64x2_t p = vbslq_f64(far_mask, p_far, zero);
      p = vbslq_f64(near_mask, p_near, p);
      vst1q_f64(out + i, p);
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

}  // namespace relaysim::kernels::neon
