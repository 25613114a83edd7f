#include "seqclust/linkage.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "seqclust/rng.hpp"

namespace seqclust {

namespace {

void validate_stop(const StopRule& stop, std::size_t m) {
    if (stop.mode == StopRule::Mode::known_k) {
        if (stop.k < 1 || stop.k > m) {
            throw std::invalid_argument("known K must be in [1, " + std::to_string(m) +
                                        "], got " + std::to_string(stop.k));
        }
    } else if (!(stop.distance > 0.0)) {
        throw std::invalid_argument("threshold stop distance must be positive");
    }
}

// Slot index doubles as the cluster representative: a merge keeps the slot of
// the smaller representative.
class Agglomerator {
public:
    Agglomerator(const DistanceMatrix& matrix, Linkage linkage)
        : m_(matrix.size()), linkage_(linkage), d_(m_ * m_), alive_(m_, true), nn_(m_, 0),
          members_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            members_[i] = {i};
            for (std::size_t j = 0; j < m_; ++j) d_[i * m_ + j] = matrix(i, j);
        }
        for (std::size_t i = 0; i < m_; ++i) refresh(i);
        live_ = m_;
    }

    std::size_t live() const { return live_; }

    // Closest live pair (a < b) and its distance.
    std::tuple<std::size_t, std::size_t, double> closest() const {
        std::size_t best_row = m_;
        for (std::size_t r = 0; r < m_; ++r) {
            if (!alive_[r]) continue;
            if (best_row == m_ || less(r, nn_[r], best_row, nn_[best_row])) best_row = r;
        }
        const std::size_t a = std::min(best_row, nn_[best_row]);
        const std::size_t b = std::max(best_row, nn_[best_row]);
        return {a, b, at(a, b)};
    }

    void merge(std::size_t a, std::size_t b) {
        alive_[b] = false;
        --live_;
        members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
        members_[b].clear();
        for (std::size_t c = 0; c < m_; ++c) {
            if (!alive_[c] || c == a) continue;
            const double da = at(a, c);
            const double db = at(b, c);
            const double merged = linkage_ == Linkage::single ? std::min(da, db) : std::max(da, db);
            d_[a * m_ + c] = merged;
            d_[c * m_ + a] = merged;
        }
        refresh(a);
        for (std::size_t c = 0; c < m_; ++c) {
            if (!alive_[c] || c == a) continue;
            if (nn_[c] == a || nn_[c] == b) {
                refresh(c);
            } else if (less(c, a, c, nn_[c])) {
                nn_[c] = a;
            }
        }
    }

    std::vector<std::vector<std::size_t>> clusters() const {
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t i = 0; i < m_; ++i) {
            if (alive_[i]) out.push_back(members_[i]);
        }
        return out;
    }

private:
    std::size_t m_;
    Linkage linkage_;
    std::vector<double> d_;
    std::vector<bool> alive_;
    std::vector<std::size_t> nn_;
    std::vector<std::vector<std::size_t>> members_;
    std::size_t live_ = 0;

    double at(std::size_t i, std::size_t j) const { return d_[i * m_ + j]; }

    // Pair (r1, c1) orders before (r2, c2): distance, then (min, max) slot.
    bool less(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) const {
        const auto k1 = std::make_tuple(at(r1, c1), std::min(r1, c1), std::max(r1, c1));
        const auto k2 = std::make_tuple(at(r2, c2), std::min(r2, c2), std::max(r2, c2));
        return k1 < k2;
    }

    void refresh(std::size_t r) {
        std::size_t best = m_;
        for (std::size_t c = 0; c < m_; ++c) {
            if (c == r || !alive_[c]) continue;
            if (best == m_ || less(r, c, r, best)) best = c;
        }
        nn_[r] = best == m_ ? r : best;
    }
};

}  // namespace

double min_cross_distance(const DistanceMatrix& matrix, const Partition& partition) {
    if (partition.num_clusters() < 2) {
        throw std::invalid_argument("cross-cluster distance needs at least 2 clusters");
    }
    if (partition.num_items() != matrix.size()) {
        throw std::invalid_argument("partition and matrix sizes differ");
    }
    const auto label = partition.labels();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = i + 1; j < matrix.size(); ++j) {
            if (label[i] != label[j]) best = std::min(best, matrix(i, j));
        }
    }
    return best;
}

LinkageResult agglomerate(const DistanceMatrix& matrix, StopRule stop, Linkage linkage) {
    const std::size_t m = matrix.size();
    if (m < 2) throw std::invalid_argument("clustering needs at least 2 sequences");
    validate_stop(stop, m);

    Agglomerator state(matrix, linkage);
    LinkageResult result;
    const std::size_t target = stop.mode == StopRule::Mode::known_k ? stop.k : 1;
    while (state.live() > target) {
        const auto [a, b, dist] = state.closest();
        if (stop.mode == StopRule::Mode::threshold && dist >= stop.distance) break;
        assert(linkage != Linkage::single || result.merges.empty() ||
               result.merges.back().distance <= dist);
        result.merges.push_back({a, b, dist});
        state.merge(a, b);
    }
    result.partition = Partition(m, state.clusters());
    if (result.partition.num_clusters() >= 2) {
        result.gamma = min_cross_distance(matrix, result.partition);
    }
    return result;
}

namespace {

struct Assignment {
    std::vector<std::size_t> owner;  // position in the medoid list
    double cost = 0.0;
};

Assignment assign(const DistanceMatrix& d, const std::vector<std::size_t>& medoids) {
    const std::size_t m = d.size();
    Assignment out;
    out.owner.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t best = 0;
        for (std::size_t k = 0; k < medoids.size(); ++k) {
            if (medoids[k] == i) {
                best = k;
                break;
            }
            if (d(i, medoids[k]) < d(i, medoids[best])) best = k;
        }
        out.owner[i] = best;
        out.cost += d(i, medoids[best]);
    }
    return out;
}

}  // namespace

KMedoidsResult kmedoids(const DistanceMatrix& matrix, std::size_t k,
                        const KMedoidsOptions& options) {
    const std::size_t m = matrix.size();
    if (k < 1 || k > m) {
        throw std::invalid_argument("k-medoids needs 1 <= K <= M, got K=" + std::to_string(k));
    }
    if (options.restarts == 0) throw std::invalid_argument("k-medoids needs at least one restart");

    KMedoidsResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
        std::mt19937_64 rng(derive_seed(options.seed, {restart}));
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::size_t> medoids(order.begin(), order.begin() + static_cast<long>(k));

        Assignment current = assign(matrix, medoids);
        for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
            double best_cost = current.cost;
            std::size_t best_slot = k;
            std::size_t best_point = m;
            for (std::size_t slot = 0; slot < k; ++slot) {
                for (std::size_t h = 0; h < m; ++h) {
                    if (std::find(medoids.begin(), medoids.end(), h) != medoids.end()) continue;
                    auto trial = medoids;
                    trial[slot] = h;
                    const double cost = assign(matrix, trial).cost;
                    if (cost < best_cost - 1e-12 * std::max(1.0, best_cost)) {
                        best_cost = cost;
                        best_slot = slot;
                        best_point = h;
                    }
                }
            }
            if (best_slot == k) break;
            medoids[best_slot] = best_point;
            current = assign(matrix, medoids);
        }

        if (current.cost < best.objective) {
            std::vector<std::vector<std::size_t>> clusters(k);
            for (std::size_t i = 0; i < m; ++i) clusters[current.owner[i]].push_back(i);
            best.partition = Partition(m, std::move(clusters));
            best.medoids = medoids;
            best.objective = current.cost;
        }
    }
    return best;
}

}  // namespace seqclust
