#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace seqclust {

// Ordered i.i.d. samples from one source. Samples are real vectors of a fixed
// dimension, stored row-major.
class DataSequence {
public:
    explicit DataSequence(std::size_t dim = 1, std::int64_t id = 0);
    DataSequence(std::size_t dim, std::vector<double> values, std::int64_t id = 0);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return values_.size() / dim_; }
    bool empty() const { return values_.empty(); }
    std::int64_t id() const { return id_; }

    std::span<const double> sample(std::size_t t) const {
        return {values_.data() + t * dim_, dim_};
    }
    std::span<const double> values() const { return values_; }

    // Throws std::invalid_argument on dimension mismatch or non-finite entries.
    void push_back(std::span<const double> sample);
    void reserve(std::size_t n) { values_.reserve(n * dim_); }

    // First n samples (n <= size()).
    DataSequence prefix(std::size_t n) const;

private:
    std::size_t dim_;
    std::vector<double> values_;
    std::int64_t id_;
};

// Symmetric M x M matrix of nonnegative finite distances with zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t m = 0) : m_(m), d_(m * m, 0.0) {}

    // Validates symmetry, zero diagonal, finiteness and nonnegativity.
    static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * m_ + j]; }

    // Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);

    // Copy with rows/columns reordered: result(a, b) = this(perm[a], perm[b]).
    DistanceMatrix permuted(std::span<const std::size_t> perm) const;

private:
    std::size_t m_;
    std::vector<double> d_;
};

// Disjoint nonempty clusters covering 0..M-1. Stored canonically (members
// ascending, clusters ordered by smallest member) so == is label-free.
class Partition {
public:
    Partition() = default;
    // Throws std::invalid_argument unless the clusters form a valid partition
    // of 0..m-1.
    Partition(std::size_t m, std::vector<std::vector<std::size_t>> clusters);

    // labels[i] is the cluster label of item i; any label values are allowed.
    static Partition from_labels(std::span<const std::int64_t> labels);

    std::size_t num_items() const { return m_; }
    std::size_t num_clusters() const { return clusters_.size(); }
    const std::vector<std::vector<std::size_t>>& clusters() const { return clusters_; }
    const std::vector<std::size_t>& cluster(std::size_t k) const { return clusters_[k]; }

    // Canonical cluster index of every item.
    std::vector<std::size_t> labels() const;

    // Relabels items: item perm[a] of this partition becomes item a.
    Partition permuted(std::span<const std::size_t> perm) const;

    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t m_ = 0;
    std::vector<std::vector<std::size_t>> clusters_;
};

// True iff both describe the same set of index sets.
bool partitions_equal(const Partition& a, const Partition& b);

}  // namespace seqclust
