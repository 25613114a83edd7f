#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "seqclust/geometry.hpp"
#include "seqclust/linkage.hpp"
#include "seqclust/sources.hpp"
#include "test_util.hpp"

using namespace seqclust;
using namespace seqclust::testing;

namespace {

// Population MMD between unit-variance normals, unit bandwidth.
double mmd_normals(double a, double b) {
    return std::sqrt(2.0 / std::sqrt(3.0) * (1.0 - std::exp(-(a - b) * (a - b) / 6.0)));
}

DistanceMatrix population_matrix(const ExampleSpec& ex) {
    const std::size_t m = ex.sources.size();
    DistanceMatrix d(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            d.set(i, j, mmd_normals(std::get<GaussianSource>(ex.sources[i]).mean,
                                    std::get<GaussianSource>(ex.sources[j]).mean));
        }
    }
    return d;
}

void expect_nondecreasing(const LinkageResult& r) {
    for (std::size_t t = 1; t < r.merges.size(); ++t) {
        ASSERT_LE(r.merges[t - 1].distance, r.merges[t].distance);
    }
}

}  // namespace

TEST(Slink, TwoItems) {
    DistanceMatrix d(2);
    d.set(0, 1, 0.3);
    const auto r = slink(d, StopRule::known_k(2));
    EXPECT_EQ(r.partition, Partition(2, {{0}, {1}}));
    EXPECT_DOUBLE_EQ(r.gamma, 0.3);
    EXPECT_TRUE(r.merges.empty());
    EXPECT_EQ(clink(d, StopRule::known_k(2)).partition, Partition(2, {{0}, {1}}));
}

TEST(Slink, ThreePointsClosestPairMergesFirst) {
    const auto d = DistanceMatrix::from_rows({{0, 0.1, 0.7}, {0.1, 0, 0.3}, {0.7, 0.3, 0}});
    const auto r = slink(d, StopRule::known_k(2));
    EXPECT_EQ(r.partition, Partition(3, {{0, 1}, {2}}));
    ASSERT_EQ(r.merges.size(), 1u);
    EXPECT_EQ(r.merges[0].a, 0u);
    EXPECT_EQ(r.merges[0].b, 1u);
    EXPECT_DOUBLE_EQ(r.gamma, 0.3);
}

TEST(Slink, TiesBrokenBySmallestPair) {
    DistanceMatrix d(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) d.set(i, j, 1.0);
    }
    const auto r = slink(d, StopRule::known_k(3));
    EXPECT_EQ(r.partition, Partition(4, {{0, 1}, {2}, {3}}));
    const auto r2 = slink(d, StopRule::known_k(2));
    EXPECT_EQ(r2.partition, Partition(4, {{0, 1, 2}, {3}}));
}

TEST(Slink, RecoversPlantedWhenInnerBelowGap) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t m = 2 + rng() % 20;
        const std::size_t k = 1 + rng() % m;
        const auto p = random_partition(m, k, rng);
        const auto d = planted_single(p, rng);
        if (k >= 2) {
            ASSERT_LT(d_i_fast(d, p), d_h(d, p));
        }
        const auto r = slink(d, StopRule::known_k(k));
        ASSERT_EQ(r.partition, p) << rep;
        expect_nondecreasing(r);
        if (k >= 2) {
            ASSERT_DOUBLE_EQ(r.gamma, d_h(d, p));
        }
    }
}

TEST(Clink, RecoversPlantedWhenDiameterBelowGap) {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t m = 2 + rng() % 20;
        const std::size_t k = 1 + rng() % m;
        const auto p = random_partition(m, k, rng);
        const auto d = planted_complete(p, rng);
        ASSERT_EQ(clink(d, StopRule::known_k(k)).partition, p) << rep;
    }
}

TEST(Slink, MergeHeightsNondecreasingOnRandomMatrices) {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t m = 2 + rep % 25;
        const auto r = slink(random_matrix(m, rng), StopRule::known_k(1));
        EXPECT_EQ(r.merges.size(), m - 1);
        expect_nondecreasing(r);
    }
}

TEST(Slink, ThresholdMode) {
    std::mt19937_64 rng(34);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t m = 2 + rep % 15;
        const auto d = random_matrix(m, rng);
        const double stop = 0.05 + 0.3 * (rep % 4);
        const auto r = slink(d, StopRule::threshold(stop));
        for (const auto& mg : r.merges) EXPECT_LT(mg.distance, stop);
        if (r.partition.num_clusters() >= 2) {
            EXPECT_GE(min_cross_distance(d, r.partition), stop);
        }
    }
    EXPECT_THROW(slink(DistanceMatrix(3), StopRule::threshold(0.0)), std::invalid_argument);
}

TEST(Slink, SingleLinkageMatchesKruskalComponents) {
    // Cutting the MST at its K-1 largest edges gives the same clusters.
    std::mt19937_64 rng(35);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 3 + rep % 12;
        const std::size_t k = 1 + rng() % m;
        const auto d = random_matrix(m, rng);
        std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) edges.emplace_back(d(i, j), i, j);
        }
        std::sort(edges.begin(), edges.end());
        std::vector<std::size_t> parent(m);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::size_t comps = m;
        for (const auto& [w, i, j] : edges) {
            if (comps == k) break;
            const auto a = find(i), b = find(j);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        std::vector<std::int64_t> labels(m);
        for (std::size_t i = 0; i < m; ++i) labels[i] = static_cast<std::int64_t>(find(i));
        EXPECT_EQ(slink(d, StopRule::known_k(k)).partition, Partition::from_labels(labels));
    }
}

TEST(Clink, FailsOnExampleOnePopulationDistances) {
    const auto ex = example(1);
    const auto d = population_matrix(ex);
    EXPECT_GT(d_l(d, ex.truth), d_h(d, ex.truth));
    EXPECT_NE(clink(d, StopRule::known_k(2)).partition, ex.truth);
    EXPECT_EQ(slink(d, StopRule::known_k(2)).partition, ex.truth);
}

TEST(KMedoids, KEqualsM) {
    std::mt19937_64 rng(36);
    const auto d = random_matrix(7, rng);
    const auto r = kmedoids(d, 7);
    EXPECT_EQ(r.partition.num_clusters(), 7u);
    EXPECT_EQ(r.objective, 0.0);
}

TEST(KMedoids, ExampleTwoRecoveredExampleOneNot) {
    const auto ex2 = example(2);
    EXPECT_EQ(kmedoids(population_matrix(ex2), 2).partition, ex2.truth);
    const auto ex1 = example(1);
    EXPECT_NE(kmedoids(population_matrix(ex1), 2).partition, ex1.truth);
}

TEST(KMedoids, RecoversWellSeparatedAndIsDeterministic) {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t m = 4 + rep % 12;
        const std::size_t k = 2 + rng() % 3;
        if (k > m) continue;
        const auto p = random_partition(m, k, rng);
        DistanceMatrix d = planted_complete(p, rng, 0.01, 2.0);
        const auto lab = p.labels();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (lab[i] != lab[j]) d.set(i, j, 1.0 + d(i, j) / 2.0);
            }
        }
        KMedoidsOptions opt;
        opt.seed = rep;
        const auto a = kmedoids(d, k, opt);
        EXPECT_EQ(a.partition, p) << rep;
        const auto b = kmedoids(d, k, opt);
        EXPECT_EQ(a.medoids, b.medoids);
        // one medoid per cluster
        const auto labels = a.partition.labels();
        std::set<std::size_t> seen;
        for (auto med : a.medoids) seen.insert(labels[med]);
        EXPECT_EQ(seen.size(), k);
    }
}

TEST(KMedoids, ObjectiveIsSumToAssignedMedoid) {
    std::mt19937_64 rng(38);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t m = 5 + rep % 10;
        const auto d = random_matrix(m, rng);
        const auto r = kmedoids(d, 3);
        double total = 0.0;
        const auto labels = r.partition.labels();
        for (std::size_t i = 0; i < m; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (auto med : r.medoids) best = std::min(best, d(i, med));
            total += best;
        }
        EXPECT_NEAR(r.objective, total, 1e-12);
    }
    EXPECT_THROW(kmedoids(DistanceMatrix(3), 4), std::invalid_argument);
}
