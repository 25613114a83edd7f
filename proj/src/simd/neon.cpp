// AArch64 NEON variants (Advanced SIMD is mandatory on AArch64, so no
// runtime probe is needed beyond the build architecture).

#include "seqclust/simd.hpp"

#include <arm_neon.h>

#include <cstdint>

#include "exp_constants.hpp"

namespace seqclust::simd::detail {
namespace {

inline float64x2_t exp_neon(float64x2_t x) {
    const uint64x2_t keep = vcgeq_f64(x, vdupq_n_f64(expc::kExpMinArg));
    x = vmaxq_f64(x, vdupq_n_f64(expc::kExpMinArg));

    const float64x2_t k = vrndnq_f64(vmulq_f64(x, vdupq_n_f64(expc::kLog2e)));
    float64x2_t r = vfmsq_f64(x, k, vdupq_n_f64(expc::kLn2Hi));
    r = vfmsq_f64(r, k, vdupq_n_f64(expc::kLn2Lo));

    float64x2_t p = vdupq_n_f64(expc::kCoeffs[0]);
    for (int i = 1; i < 13; ++i) {
        p = vfmaq_f64(vdupq_n_f64(expc::kCoeffs[i]), p, r);
    }

    const int64x2_t ki = vcvtq_s64_f64(k);
    const int64x2_t bits = vshlq_n_s64(vaddq_s64(ki, vdupq_n_s64(1023)), 52);
    const float64x2_t result = vmulq_f64(p, vreinterpretq_f64_s64(bits));
    return vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(result), keep));
}

double gauss_row_sum_1d(const double* xs, std::size_t n, double y, double neg_scale) {
    const float64x2_t vy = vdupq_n_f64(y);
    const float64x2_t vs = vdupq_n_f64(neg_scale);
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t l = 0;
    for (; l + 4 <= n; l += 4) {
        const float64x2_t d0 = vsubq_f64(vld1q_f64(xs + l), vy);
        const float64x2_t d1 = vsubq_f64(vld1q_f64(xs + l + 2), vy);
        acc0 = vaddq_f64(acc0, exp_neon(vmulq_f64(vs, vmulq_f64(d0, d0))));
        acc1 = vaddq_f64(acc1, exp_neon(vmulq_f64(vs, vmulq_f64(d1, d1))));
    }
    for (; l + 2 <= n; l += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(xs + l), vy);
        acc0 = vaddq_f64(acc0, exp_neon(vmulq_f64(vs, vmulq_f64(d, d))));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    if (l < n) {
        const double d = xs[l] - y;
        sum += vgetq_lane_f64(exp_neon(vdupq_n_f64(neg_scale * (d * d))), 0);
    }
    return sum;
}

double exp_sum(const double* d2, std::size_t n, double neg_scale) {
    const float64x2_t vs = vdupq_n_f64(neg_scale);
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t l = 0;
    for (; l + 4 <= n; l += 4) {
        acc0 = vaddq_f64(acc0, exp_neon(vmulq_f64(vs, vld1q_f64(d2 + l))));
        acc1 = vaddq_f64(acc1, exp_neon(vmulq_f64(vs, vld1q_f64(d2 + l + 2))));
    }
    for (; l + 2 <= n; l += 2) {
        acc0 = vaddq_f64(acc0, exp_neon(vmulq_f64(vs, vld1q_f64(d2 + l))));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    if (l < n) {
        sum += vgetq_lane_f64(exp_neon(vdupq_n_f64(neg_scale * d2[l])), 0);
    }
    return sum;
}

double squared_distance(const double* a, const double* b, std::size_t dim) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t d = 0;
    for (; d + 2 <= dim; d += 2) {
        const float64x2_t diff = vsubq_f64(vld1q_f64(a + d), vld1q_f64(b + d));
        acc = vfmaq_f64(acc, diff, diff);
    }
    double sum = vaddvq_f64(acc);
    for (; d < dim; ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable t{Isa::neon, &gauss_row_sum_1d, &exp_sum, &squared_distance};
    return t;
}

}  // namespace seqclust::simd::detail
