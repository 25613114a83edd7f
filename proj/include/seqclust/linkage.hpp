#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqclust/types.hpp"

namespace seqclust {

// When agglomeration stops: at a known number of clusters, or as soon as
// the closest pair of clusters is at least `distance` apart.
struct StopRule {
    enum class Mode { known_k, threshold };

    Mode mode = Mode::known_k;
    std::size_t k = 2;
    double distance = 0.0;

    static StopRule known_k(std::size_t k) { return {Mode::known_k, k, 0.0}; }
    static StopRule threshold(double d_stop) { return {Mode::threshold, 0, d_stop}; }
};

struct Merge {
    std::size_t a;  // smallest member of each merged cluster
    std::size_t b;
    double distance;
};

struct LinkageResult {
    Partition partition;
    std::vector<Merge> merges;
    // Smallest member-to-member distance across the final clusters (0 if one cluster).
    double gamma = 0.0;
};

enum class Linkage { single, complete };

// Agglomerative clustering from singletons. Inter-cluster distance is the
// min (single) or max (complete) over cross pairs. Ties go to the pair whose
// (smaller, larger) cluster representatives are lexicographically smallest,
// a cluster's representative being its smallest member.
LinkageResult agglomerate(const DistanceMatrix& matrix, StopRule stop, Linkage linkage);

inline LinkageResult slink(const DistanceMatrix& matrix, StopRule stop) {
    return agglomerate(matrix, stop, Linkage::single);
}
inline LinkageResult clink(const DistanceMatrix& matrix, StopRule stop) {
    return agglomerate(matrix, stop, Linkage::complete);
}

// Minimum cross-cluster entry of `matrix` under `partition` (K >= 2).
double min_cross_distance(const DistanceMatrix& matrix, const Partition& partition);

struct KMedoidsOptions {
    std::uint64_t seed = 1;
    std::size_t restarts = 10;
    std::size_t max_iter = 100;
};

struct KMedoidsResult {
    Partition partition;
    std::vector<std::size_t> medoids;
    double objective = 0.0;  // sum of distances to the assigned medoid
};

// PAM: random distinct initial medoids, nearest-medoid assignment, then
// best-improvement medoid/non-medoid swaps until none improves or max_iter.
// Best of `restarts` initializations. Deterministic given the seed.
KMedoidsResult kmedoids(const DistanceMatrix& matrix, std::size_t k,
                        const KMedoidsOptions& options = {});

}  // namespace seqclust
