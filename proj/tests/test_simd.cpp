#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "seqclust/simd.hpp"

using namespace seqclust;

namespace {

std::vector<double> uniform(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// Long-double reference, independent of every table.
long double exp_sum_ref(const std::vector<double>& d2, double neg_scale) {
    long double s = 0;
    for (double d : d2) s += std::exp(static_cast<long double>(neg_scale) * d);
    return s;
}

}  // namespace

TEST(Simd, ScalarAlwaysSupported) {
    EXPECT_TRUE(simd::supported(simd::Isa::scalar));
    const auto isas = simd::supported_isas();
    ASSERT_FALSE(isas.empty());
    EXPECT_EQ(isas.front(), simd::Isa::scalar);
}

TEST(Simd, ParseRoundTrip) {
    for (auto isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::avx512, simd::Isa::neon}) {
        EXPECT_EQ(simd::parse_isa(simd::name(isa)), isa);
    }
    EXPECT_THROW(simd::parse_isa("sse9"), std::invalid_argument);
}

TEST(Simd, ExpSumMatchesReferenceAllIsas) {
    std::mt19937_64 rng(7);
    for (auto isa : simd::supported_isas()) {
        const auto& t = simd::table(isa);
        for (std::size_t n = 0; n <= 70; ++n) {
            const auto d2 = uniform(n, 0.0, 60.0, rng);
            const long double ref = exp_sum_ref(d2, -0.5);
            const double got = t.exp_sum(d2.data(), n, -0.5);
            EXPECT_NEAR(got, static_cast<double>(ref), 1e-14 * std::max(1.0L, ref))
                << simd::name(isa) << " n=" << n;
        }
    }
}

TEST(Simd, ExpSumUnderflowRange) {
    // Arguments far below the double range must contribute nothing, not NaN.
    std::vector<double> d2 = {0.0, 1500.0, 1e6, 2000.0, 1e300, 0.0, 3.0};
    for (auto isa : simd::supported_isas()) {
        const double got = simd::table(isa).exp_sum(d2.data(), d2.size(), -0.5);
        EXPECT_NEAR(got, 2.0 + std::exp(-1.5), 1e-15) << simd::name(isa);
    }
}

TEST(Simd, GaussRowSumEquivalentToScalar) {
    std::mt19937_64 rng(11);
    const auto& ref = simd::table(simd::Isa::scalar);
    for (auto isa : simd::supported_isas()) {
        const auto& t = simd::table(isa);
        for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 31u, 33u, 100u, 1001u}) {
            const auto x = uniform(n, -6.0, 6.0, rng);
            for (double bw : {0.3, 1.0, 4.0}) {
                const double ns = -0.5 / (bw * bw);
                const double y = uniform(1, -3.0, 3.0, rng)[0];
                const double a = ref.gauss_row_sum_1d(x.data(), n, y, ns);
                const double b = t.gauss_row_sum_1d(x.data(), n, y, ns);
                EXPECT_NEAR(a, b, 1e-13 * std::max(1.0, a)) << simd::name(isa) << " n=" << n;
            }
        }
    }
}

TEST(Simd, SquaredDistanceEquivalentToScalar) {
    std::mt19937_64 rng(13);
    const auto& ref = simd::table(simd::Isa::scalar);
    for (auto isa : simd::supported_isas()) {
        const auto& t = simd::table(isa);
        for (std::size_t dim = 1; dim <= 40; ++dim) {
            const auto a = uniform(dim, -2.0, 2.0, rng);
            const auto b = uniform(dim, -2.0, 2.0, rng);
            const double r = ref.squared_distance(a.data(), b.data(), dim);
            EXPECT_NEAR(r, t.squared_distance(a.data(), b.data(), dim), 1e-13 * std::max(1.0, r))
                << simd::name(isa) << " dim=" << dim;
        }
    }
}

TEST(Simd, SelectSwitchesActiveTable) {
    const auto before = simd::active().isa;
    simd::select(simd::Isa::scalar);
    EXPECT_EQ(simd::active().isa, simd::Isa::scalar);
    simd::select(before);
    EXPECT_EQ(simd::active().isa, before);
}

TEST(Simd, UnsupportedIsaRejected) {
    for (auto isa : {simd::Isa::avx2, simd::Isa::avx512, simd::Isa::neon}) {
        if (!simd::supported(isa)) {
            EXPECT_THROW(simd::table(isa), std::runtime_error);
        }
    }
}
