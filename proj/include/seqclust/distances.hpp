#pragma once

// Batch and streaming estimators of the distance between two data sequences:
//
//   MMD:  sqrt(max(0, (1/n^2) sum_{l,m} h_lm)),
//         h_lm = k(x_l, x_m) + k(y_l, y_m) - 2 k(x_l, y_m)      (biased V-statistic)
//   KSD:  sup_a |F_x(a) - F_y(a)| over the empirical CDFs (scalar samples only)
//
// The streaming forms consume one new sample per sequence per step and agree
// with the batch forms on every prefix (MMD to rounding, KSD exactly).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "seqclust/kernels.hpp"
#include "seqclust/types.hpp"

namespace seqclust {

enum class DistanceKind { mmd, ksd };

std::string_view to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view text);

double mmd_batch(const DataSequence& x, const DataSequence& y, const KernelSpec& spec);
double ksd_batch(const DataSequence& x, const DataSequence& y);

// Kolmogorov-Smirnov statistic of two ascending arrays of equal length, as
// max |count_x(<= a) - count_y(<= a)| / n over all sample points a.
double ks_statistic_sorted(std::span<const double> x, std::span<const double> y);

// Running state of the MMD estimate between one pair of sequences. Retains
// the full sample history since every step touches all earlier samples.
class MmdPairState {
public:
    MmdPairState(KernelSpec spec, std::size_t dim = 1);

    // Advance from time n-1 to n. Cost O(n) kernel evaluations.
    void update(std::span<const double> new_x, std::span<const double> new_y);

    std::size_t n() const { return x_.size(); }
    // n^2 times the squared statistic, i.e. sum_{l,m <= n} h_lm.
    double sq_sum() const { return sq_sum_; }
    double distance() const;

private:
    KernelSpec spec_;
    DataSequence x_;
    DataSequence y_;
    double sq_sum_ = 0.0;
    std::vector<double> scratch_;
};

// Running state of the KSD estimate between one pair of scalar sequences.
class KsdPairState {
public:
    // O(log n) search plus an O(n) shift per insertion.
    void update(std::span<const double> new_x, std::span<const double> new_y);

    std::size_t n() const { return x_.size(); }
    double distance() const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

// Functional spellings of the two streaming updates.
MmdPairState mmd_update(MmdPairState state, std::span<const double> new_x,
                        std::span<const double> new_y);
KsdPairState ksd_update(KsdPairState state, std::span<const double> new_x,
                        std::span<const double> new_y);

// All pairwise distances of equal-length sequences (M >= 2).
DistanceMatrix pairwise_matrix(std::span<const DataSequence> sequences, DistanceKind kind,
                               const KernelSpec& spec);

// Streaming pairwise distances for M sequences advancing in lockstep. Shares
// per-sequence work across pairs: for MMD, each sequence keeps its running
// self-similarity sum_{l,m} k(x_l, x_m) and each pair only its cross sum; for
// KSD, each sequence keeps one sorted copy of its samples. Distances equal
// those of the per-pair states above.
class StreamingDistances {
public:
    StreamingDistances(std::size_t m, std::size_t dim, DistanceKind kind, KernelSpec spec);

    // One new sample per sequence; samples[i] belongs to sequence i.
    void push(std::span<const std::span<const double>> samples);
    void push(const std::vector<std::vector<double>>& samples);

    std::size_t num_sequences() const { return m_; }
    std::size_t n() const { return n_; }
    DistanceKind kind() const { return kind_; }
    const DataSequence& sequence(std::size_t i) const { return seqs_[i]; }

    double distance(std::size_t i, std::size_t j) const;
    DistanceMatrix matrix() const;

private:
    std::size_t m_;
    std::size_t n_ = 0;
    DistanceKind kind_;
    KernelSpec spec_;
    std::vector<DataSequence> seqs_;
    std::vector<double> self_sum_;       // MMD: per sequence
    std::vector<double> cross_sum_;      // MMD: per pair, packed i < j
    std::vector<std::vector<double>> sorted_;  // KSD: per sequence
    std::vector<double> row_prev_;       // scratch: row sums against the n-1 earlier samples
    std::vector<double> scratch_;

    std::size_t pair_index(std::size_t i, std::size_t j) const;
};

}  // namespace seqclust
