// AVX-512F variants. Compiled with -mavx512f -mfma; only reached after the
// dispatcher confirmed CPU support.

#include "seqclust/simd.hpp"

#include <immintrin.h>

#include "exp_constants.hpp"

namespace seqclust::simd::detail {
namespace {

inline __m512d exp_avx512(__m512d x) {
    const __mmask8 keep = _mm512_cmp_pd_mask(x, _mm512_set1_pd(expc::kExpMinArg), _CMP_GE_OQ);
    x = _mm512_max_pd(x, _mm512_set1_pd(expc::kExpMinArg));

    const __m512d k = _mm512_roundscale_pd(_mm512_mul_pd(x, _mm512_set1_pd(expc::kLog2e)),
                                           _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m512d r = _mm512_fnmadd_pd(k, _mm512_set1_pd(expc::kLn2Hi), x);
    r = _mm512_fnmadd_pd(k, _mm512_set1_pd(expc::kLn2Lo), r);

    __m512d p = _mm512_set1_pd(expc::kCoeffs[0]);
    for (int i = 1; i < 13; ++i) {
        p = _mm512_fmadd_pd(p, r, _mm512_set1_pd(expc::kCoeffs[i]));
    }
    return _mm512_maskz_mov_pd(keep, _mm512_scalef_pd(p, k));
}

inline __mmask8 tail_mask(std::size_t rem) {
    return static_cast<__mmask8>((1u << rem) - 1u);
}

double gauss_row_sum_1d(const double* xs, std::size_t n, double y, double neg_scale) {
    const __m512d vy = _mm512_set1_pd(y);
    const __m512d vs = _mm512_set1_pd(neg_scale);
    __m512d acc0 = _mm512_setzero_pd();
    __m512d acc1 = _mm512_setzero_pd();
    std::size_t l = 0;
    for (; l + 16 <= n; l += 16) {
        const __m512d d0 = _mm512_sub_pd(_mm512_loadu_pd(xs + l), vy);
        const __m512d d1 = _mm512_sub_pd(_mm512_loadu_pd(xs + l + 8), vy);
        acc0 = _mm512_add_pd(acc0, exp_avx512(_mm512_mul_pd(vs, _mm512_mul_pd(d0, d0))));
        acc1 = _mm512_add_pd(acc1, exp_avx512(_mm512_mul_pd(vs, _mm512_mul_pd(d1, d1))));
    }
    for (; l + 8 <= n; l += 8) {
        const __m512d d = _mm512_sub_pd(_mm512_loadu_pd(xs + l), vy);
        acc0 = _mm512_add_pd(acc0, exp_avx512(_mm512_mul_pd(vs, _mm512_mul_pd(d, d))));
    }
    if (l < n) {
        const __mmask8 m = tail_mask(n - l);
        const __m512d d = _mm512_sub_pd(_mm512_maskz_loadu_pd(m, xs + l), vy);
        const __m512d e = exp_avx512(_mm512_mul_pd(vs, _mm512_mul_pd(d, d)));
        acc1 = _mm512_mask_add_pd(acc1, m, acc1, e);
    }
    return _mm512_reduce_add_pd(_mm512_add_pd(acc0, acc1));
}

double exp_sum(const double* d2, std::size_t n, double neg_scale) {
    const __m512d vs = _mm512_set1_pd(neg_scale);
    __m512d acc0 = _mm512_setzero_pd();
    __m512d acc1 = _mm512_setzero_pd();
    std::size_t l = 0;
    for (; l + 16 <= n; l += 16) {
        acc0 = _mm512_add_pd(acc0, exp_avx512(_mm512_mul_pd(vs, _mm512_loadu_pd(d2 + l))));
        acc1 = _mm512_add_pd(acc1, exp_avx512(_mm512_mul_pd(vs, _mm512_loadu_pd(d2 + l + 8))));
    }
    for (; l + 8 <= n; l += 8) {
        acc0 = _mm512_add_pd(acc0, exp_avx512(_mm512_mul_pd(vs, _mm512_loadu_pd(d2 + l))));
    }
    if (l < n) {
        const __mmask8 m = tail_mask(n - l);
        const __m512d e = exp_avx512(_mm512_mul_pd(vs, _mm512_maskz_loadu_pd(m, d2 + l)));
        acc1 = _mm512_mask_add_pd(acc1, m, acc1, e);
    }
    return _mm512_reduce_add_pd(_mm512_add_pd(acc0, acc1));
}

double squared_distance(const double* a, const double* b, std::size_t dim) {
    __m512d acc = _mm512_setzero_pd();
    std::size_t d = 0;
    for (; d + 8 <= dim; d += 8) {
        const __m512d diff = _mm512_sub_pd(_mm512_loadu_pd(a + d), _mm512_loadu_pd(b + d));
        acc = _mm512_fmadd_pd(diff, diff, acc);
    }
    if (d < dim) {
        const __mmask8 m = tail_mask(dim - d);
        const __m512d diff =
            _mm512_sub_pd(_mm512_maskz_loadu_pd(m, a + d), _mm512_maskz_loadu_pd(m, b + d));
        acc = _mm512_fmadd_pd(diff, diff, acc);
    }
    return _mm512_reduce_add_pd(acc);
}

}  // namespace

const KernelTable& avx512_table() {
    static const KernelTable t{Isa::avx512, &gauss_row_sum_1d, &exp_sum, &squared_distance};
    return t;
}

}  // namespace seqclust::simd::detail
