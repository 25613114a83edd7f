#pragma once

// Data-parallel inner loops for the Gaussian kernel sums that dominate MMD
// estimation. Every kernel has a portable scalar reference; vector variants
// are compiled per ISA and chosen once at startup from CPUID.
//
// All variants compute the same quantities; they differ only in summation
// order and in the exp approximation (< 2 ulp), so results agree with the
// scalar reference to ~1e-14 relative. Within one variant the results are
// deterministic.

#include <cstddef>
#include <string_view>
#include <vector>

namespace seqclust::simd {

enum class Isa { scalar, avx2, avx512, neon };

struct KernelTable {
    Isa isa;

    // sum_l exp(neg_scale * (xs[l] - y)^2)
    double (*gauss_row_sum_1d)(const double* xs, std::size_t n, double y, double neg_scale);

    // sum_l exp(neg_scale * d2[l])
    double (*exp_sum)(const double* d2, std::size_t n, double neg_scale);

    // sum_d (a[d] - b[d])^2
    double (*squared_distance)(const double* a, const double* b, std::size_t dim);
};

std::string_view name(Isa isa);

// Parses "scalar", "avx2", "avx512", "neon"; throws std::invalid_argument.
Isa parse_isa(std::string_view text);

bool supported(Isa isa);
std::vector<Isa> supported_isas();

// Table for a specific ISA; throws std::runtime_error when the host or build
// lacks it.
const KernelTable& table(Isa isa);

// Best supported ISA, unless overridden by select() or by the SEQCLUST_ISA
// environment variable read on first use.
const KernelTable& active();
void select(Isa isa);

namespace detail {
const KernelTable& scalar_table();
#if defined(SEQCLUST_HAVE_X86_KERNELS)
const KernelTable& avx2_table();
const KernelTable& avx512_table();
#endif
#if defined(SEQCLUST_HAVE_NEON_KERNELS)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace seqclust::simd
