#include "seqclust/simd.hpp"

#include <cmath>

namespace seqclust::simd::detail {
namespace {

double gauss_row_sum_1d(const double* xs, std::size_t n, double y, double neg_scale) {
    double sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        const double d = xs[l] - y;
        sum += std::exp(neg_scale * (d * d));
    }
    return sum;
}

double exp_sum(const double* d2, std::size_t n, double neg_scale) {
    double sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        sum += std::exp(neg_scale * d2[l]);
    }
    return sum;
}

double squared_distance(const double* a, const double* b, std::size_t dim) {
    double sum = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{Isa::scalar, &gauss_row_sum_1d, &exp_sum, &squared_distance};
    return t;
}

}  // namespace seqclust::simd::detail
