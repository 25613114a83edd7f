#include "seqclust/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace seqclust::simd {

std::string_view name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::avx512: return "avx512";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

Isa parse_isa(std::string_view text) {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512, Isa::neon}) {
        if (name(isa) == text) return isa;
    }
    throw std::invalid_argument("unknown SIMD variant '" + std::string(text) + "'");
}

bool supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
#if defined(SEQCLUST_HAVE_X86_KERNELS)
        case Isa::avx2:
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
        case Isa::avx512:
            return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("fma");
#endif
#if defined(SEQCLUST_HAVE_NEON_KERNELS)
        case Isa::neon: return true;
#endif
        default: return false;
    }
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512, Isa::neon}) {
        if (supported(isa)) out.push_back(isa);
    }
    return out;
}

const KernelTable& table(Isa isa) {
    if (!supported(isa)) {
        throw std::runtime_error("SIMD variant '" + std::string(name(isa)) +
                                 "' is not available on this host");
    }
    switch (isa) {
#if defined(SEQCLUST_HAVE_X86_KERNELS)
        case Isa::avx2: return detail::avx2_table();
        case Isa::avx512: return detail::avx512_table();
#endif
#if defined(SEQCLUST_HAVE_NEON_KERNELS)
        case Isa::neon: return detail::neon_table();
#endif
        default: return detail::scalar_table();
    }
}

namespace {

const KernelTable* initial_table() {
    if (const char* env = std::getenv("SEQCLUST_ISA"); env != nullptr && *env != '\0') {
        return &table(parse_isa(env));
    }
    for (Isa isa : {Isa::avx512, Isa::avx2, Isa::neon}) {
        if (supported(isa)) return &table(isa);
    }
    return &detail::scalar_table();
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> ptr{initial_table()};
    return ptr;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_release); }

}  // namespace seqclust::simd
