#include "seqclust/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace seqclust {

namespace {

void check_sizes(const DistanceMatrix& matrix, const Partition& truth) {
    if (matrix.size() != truth.num_items()) {
        throw std::invalid_argument("partition covers " + std::to_string(truth.num_items()) +
                                    " items but the matrix has " +
                                    std::to_string(matrix.size()));
    }
}

}  // namespace

double d_h(const DistanceMatrix& matrix, const Partition& truth) {
    check_sizes(matrix, truth);
    if (truth.num_clusters() < 2) {
        throw std::invalid_argument("d_H is undefined for a single cluster");
    }
    const auto label = truth.labels();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            if (label[i] != label[j]) best = std::min(best, matrix(i, j));
        }
    }
    return best;
}

double cluster_diameter(const DistanceMatrix& matrix, const std::vector<std::size_t>& members) {
    double worst = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            worst = std::max(worst, matrix(members[a], members[b]));
        }
    }
    return worst;
}

double d_l(const DistanceMatrix& matrix, const Partition& truth) {
    check_sizes(matrix, truth);
    double worst = 0.0;
    for (const auto& c : truth.clusters()) worst = std::max(worst, cluster_diameter(matrix, c));
    return worst;
}

namespace {

// Member 0 is pinned to side A, so each unordered split is visited once.
double bottleneck_bruteforce(const DistanceMatrix& matrix,
                             const std::vector<std::size_t>& members) {
    const std::size_t s = members.size();
    if (s < 2) return 0.0;
    double best = 0.0;
    const std::uint32_t splits = 1u << (s - 1);
    for (std::uint32_t mask = 1; mask < splits; ++mask) {
        // bit b of mask set -> members[b + 1] on side B
        double cross = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < s; ++a) {
            const bool a_in_b = a > 0 && ((mask >> (a - 1)) & 1u);
            for (std::size_t b = a + 1; b < s; ++b) {
                const bool b_in_b = (mask >> (b - 1)) & 1u;
                if (a_in_b != b_in_b) cross = std::min(cross, matrix(members[a], members[b]));
            }
        }
        best = std::max(best, cross);
    }
    return best;
}

}  // namespace

double d_i_bruteforce(const DistanceMatrix& matrix, const Partition& truth) {
    check_sizes(matrix, truth);
    double worst = 0.0;
    for (const auto& c : truth.clusters()) {
        if (c.size() > kMaxBruteForceCluster) {
            throw std::invalid_argument("cluster of size " + std::to_string(c.size()) +
                                        " is too large to enumerate; use d_i_fast");
        }
        worst = std::max(worst, bottleneck_bruteforce(matrix, c));
    }
    return worst;
}

double cluster_bottleneck(const DistanceMatrix& matrix, const std::vector<std::size_t>& members) {
    // Prim's algorithm; the answer is the heaviest tree edge.
    const std::size_t s = members.size();
    if (s < 2) return 0.0;
    std::vector<bool> in_tree(s, false);
    std::vector<double> link(s, std::numeric_limits<double>::infinity());
    link[0] = 0.0;
    double heaviest = 0.0;
    for (std::size_t step = 0; step < s; ++step) {
        std::size_t next = s;
        for (std::size_t v = 0; v < s; ++v) {
            if (!in_tree[v] && (next == s || link[v] < link[next])) next = v;
        }
        in_tree[next] = true;
        heaviest = std::max(heaviest, link[next]);
        for (std::size_t v = 0; v < s; ++v) {
            if (!in_tree[v]) link[v] = std::min(link[v], matrix(members[next], members[v]));
        }
    }
    return heaviest;
}

double d_i_fast(const DistanceMatrix& matrix, const Partition& truth) {
    check_sizes(matrix, truth);
    double worst = 0.0;
    for (const auto& c : truth.clusters()) worst = std::max(worst, cluster_bottleneck(matrix, c));
    return worst;
}

SeparationReport separation(const DistanceMatrix& matrix, const Partition& truth) {
    check_sizes(matrix, truth);
    SeparationReport r;
    for (const auto& c : truth.clusters()) {
        r.diameter.push_back(cluster_diameter(matrix, c));
        r.inner.push_back(cluster_bottleneck(matrix, c));
        r.d_l = std::max(r.d_l, r.diameter.back());
        r.d_i = std::max(r.d_i, r.inner.back());
    }
    if (truth.num_clusters() >= 2) r.d_h = d_h(matrix, truth);
    return r;
}

}  // namespace seqclust
