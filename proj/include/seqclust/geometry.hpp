#pragma once

// Separation of a reference partition under a distance matrix:
//
//   d_H     smallest distance between members of different clusters
//   d_L     largest distance between members of the same cluster
//   d_I     over clusters, the largest "weakest link": for each two-way split
//           of a cluster take the smallest cross-split distance, maximize
//           over splits
//
// Singleton clusters contribute 0 to both d_L and d_I.

#include <cstddef>
#include <vector>

#include "seqclust/types.hpp"

namespace seqclust {

struct SeparationReport {
    double d_l = 0.0;
    double d_h = 0.0;
    double d_i = 0.0;
    std::vector<double> diameter;   // d(D_k) per cluster
    std::vector<double> inner;      // d_I(D_k) per cluster
};

// Throws std::invalid_argument when truth has fewer than 2 clusters.
double d_h(const DistanceMatrix& matrix, const Partition& truth);
double d_l(const DistanceMatrix& matrix, const Partition& truth);

// Enumerates all 2^(s-1) - 1 splits of every cluster. Rejects clusters larger
// than kMaxBruteForceCluster.
inline constexpr std::size_t kMaxBruteForceCluster = 20;
double d_i_bruteforce(const DistanceMatrix& matrix, const Partition& truth);

// Same value via the largest edge of each cluster's minimum spanning tree
// (the minimax/bottleneck property). O(s^2) per cluster.
double d_i_fast(const DistanceMatrix& matrix, const Partition& truth);

// Per-cluster forms.
double cluster_diameter(const DistanceMatrix& matrix, const std::vector<std::size_t>& members);
double cluster_bottleneck(const DistanceMatrix& matrix, const std::vector<std::size_t>& members);

// All of the above; d_h is left at 0 for a single-cluster truth.
SeparationReport separation(const DistanceMatrix& matrix, const Partition& truth);

}  // namespace seqclust
