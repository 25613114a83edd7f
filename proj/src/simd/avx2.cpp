// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached after the
// dispatcher confirmed CPU support.

#include "seqclust/simd.hpp"

#include <immintrin.h>

#include <cstdint>

#include "exp_constants.hpp"

namespace seqclust::simd::detail {
namespace {

inline __m256d exp_avx2(__m256d x) {
    const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(expc::kExpMinArg), _CMP_LT_OQ);
    x = _mm256_max_pd(x, _mm256_set1_pd(expc::kExpMinArg));

    const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(expc::kLog2e)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(expc::kLn2Hi), x);
    r = _mm256_fnmadd_pd(k, _mm256_set1_pd(expc::kLn2Lo), r);

    __m256d p = _mm256_set1_pd(expc::kCoeffs[0]);
    for (int i = 1; i < 13; ++i) {
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(expc::kCoeffs[i]));
    }

    // 2^k, k in [-1022, 0]
    const __m256i ki = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, result);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256i tail_mask(std::size_t rem) {
    alignas(32) static const std::int64_t table[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + 4 - rem));
}

double gauss_row_sum_1d(const double* xs, std::size_t n, double y, double neg_scale) {
    const __m256d vy = _mm256_set1_pd(y);
    const __m256d vs = _mm256_set1_pd(neg_scale);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t l = 0;
    for (; l + 8 <= n; l += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(xs + l), vy);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(xs + l + 4), vy);
        acc0 = _mm256_add_pd(acc0, exp_avx2(_mm256_mul_pd(vs, _mm256_mul_pd(d0, d0))));
        acc1 = _mm256_add_pd(acc1, exp_avx2(_mm256_mul_pd(vs, _mm256_mul_pd(d1, d1))));
    }
    for (; l + 4 <= n; l += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + l), vy);
        acc0 = _mm256_add_pd(acc0, exp_avx2(_mm256_mul_pd(vs, _mm256_mul_pd(d, d))));
    }
    if (l < n) {
        const __m256i mask = tail_mask(n - l);
        const __m256d d = _mm256_sub_pd(_mm256_maskload_pd(xs + l, mask), vy);
        const __m256d e = exp_avx2(_mm256_mul_pd(vs, _mm256_mul_pd(d, d)));
        acc1 = _mm256_add_pd(acc1, _mm256_and_pd(e, _mm256_castsi256_pd(mask)));
    }
    return hsum(_mm256_add_pd(acc0, acc1));
}

double exp_sum(const double* d2, std::size_t n, double neg_scale) {
    const __m256d vs = _mm256_set1_pd(neg_scale);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t l = 0;
    for (; l + 8 <= n; l += 8) {
        acc0 = _mm256_add_pd(acc0, exp_avx2(_mm256_mul_pd(vs, _mm256_loadu_pd(d2 + l))));
        acc1 = _mm256_add_pd(acc1, exp_avx2(_mm256_mul_pd(vs, _mm256_loadu_pd(d2 + l + 4))));
    }
    for (; l + 4 <= n; l += 4) {
        acc0 = _mm256_add_pd(acc0, exp_avx2(_mm256_mul_pd(vs, _mm256_loadu_pd(d2 + l))));
    }
    if (l < n) {
        const __m256i mask = tail_mask(n - l);
        const __m256d e = exp_avx2(_mm256_mul_pd(vs, _mm256_maskload_pd(d2 + l, mask)));
        acc1 = _mm256_add_pd(acc1, _mm256_and_pd(e, _mm256_castsi256_pd(mask)));
    }
    return hsum(_mm256_add_pd(acc0, acc1));
}

double squared_distance(const double* a, const double* b, std::size_t dim) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t d = 0;
    for (; d + 4 <= dim; d += 4) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a + d), _mm256_loadu_pd(b + d));
        acc = _mm256_fmadd_pd(diff, diff, acc);
    }
    double sum = hsum(acc);
    for (; d < dim; ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable t{Isa::avx2, &gauss_row_sum_1d, &exp_sum, &squared_distance};
    return t;
}

}  // namespace seqclust::simd::detail
