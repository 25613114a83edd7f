#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqclust/types.hpp"

namespace seqclust {

enum class KernelKind { gaussian };

// k(x, y) = exp(-||x - y||^2 / (2 * bandwidth^2)). Bounded by 1 for every
// bandwidth, with k(x, x) = 1.
struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double bandwidth = 1.0;

    // Upper bound on the kernel (the constant written G in the bounds module).
    double bound() const { return 1.0; }

    // Multiplier applied to squared distances inside exp().
    double neg_scale() const { return -0.5 / (bandwidth * bandwidth); }

    // Throws std::invalid_argument for a non-positive or non-finite bandwidth.
    void validate() const;
};

// Single kernel evaluation (always the scalar path). Throws on dimension
// mismatch.
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

// sum_{l < count} k(seq.sample(l), y), using the active SIMD variant.
// `scratch` is reused for multi-dimensional squared distances.
double kernel_row_sum(const KernelSpec& spec, const DataSequence& seq, std::size_t count,
                      std::span<const double> y, std::vector<double>& scratch);

// sum_{l < n} sum_{m < n} k(a_l, b_m) over the first n samples of each.
// Rows are accumulated in order of m, so kernel_block_sum(a, a, n) and
// kernel_block_sum(a, b, n) agree bit-for-bit when a == b.
double kernel_block_sum(const KernelSpec& spec, const DataSequence& a, const DataSequence& b,
                        std::size_t n);

}  // namespace seqclust
