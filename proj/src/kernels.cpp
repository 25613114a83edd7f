#include "seqclust/kernels.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seqclust/simd.hpp"

namespace seqclust {

void KernelSpec::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw std::invalid_argument("kernel bandwidth must be positive and finite");
    }
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kernel arguments have different dimensions (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    double d2 = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double diff = x[d] - y[d];
        d2 += diff * diff;
    }
    const double k = std::exp(spec.neg_scale() * d2);
    assert(k >= 0.0 && k <= spec.bound());
    return k;
}

double kernel_row_sum(const KernelSpec& spec, const DataSequence& seq, std::size_t count,
                      std::span<const double> y, std::vector<double>& scratch) {
    const auto& kt = simd::active();
    const std::size_t dim = seq.dim();
    if (y.size() != dim) throw std::invalid_argument("sample dimension mismatch");
    if (count == 0) return 0.0;
    const double* xs = seq.values().data();
    if (dim == 1) return kt.gauss_row_sum_1d(xs, count, y[0], spec.neg_scale());

    scratch.resize(count);
    for (std::size_t l = 0; l < count; ++l) {
        scratch[l] = kt.squared_distance(xs + l * dim, y.data(), dim);
    }
    return kt.exp_sum(scratch.data(), count, spec.neg_scale());
}

double kernel_block_sum(const KernelSpec& spec, const DataSequence& a, const DataSequence& b,
                        std::size_t n) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sample dimension mismatch");
    if (n > a.size() || n > b.size()) throw std::out_of_range("block larger than sequence");
    std::vector<double> scratch;
    double total = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        total += kernel_row_sum(spec, a, n, b.sample(m), scratch);
    }
    return total;
}

}  // namespace seqclust
