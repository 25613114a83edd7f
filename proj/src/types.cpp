#include "seqclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace seqclust {

DataSequence::DataSequence(std::size_t dim, std::int64_t id) : dim_(dim), id_(id) {
    if (dim == 0) throw std::invalid_argument("sample dimension must be at least 1");
}

DataSequence::DataSequence(std::size_t dim, std::vector<double> values, std::int64_t id)
    : dim_(dim), values_(std::move(values)), id_(id) {
    if (dim == 0) throw std::invalid_argument("sample dimension must be at least 1");
    if (values_.size() % dim != 0) {
        throw std::invalid_argument("value count is not a multiple of the sample dimension");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample value");
    }
}

void DataSequence::push_back(std::span<const double> sample) {
    if (sample.size() != dim_) {
        throw std::invalid_argument("sample dimension " + std::to_string(sample.size()) +
                                    " does not match sequence dimension " +
                                    std::to_string(dim_));
    }
    for (double v : sample) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample value");
    }
    values_.insert(values_.end(), sample.begin(), sample.end());
}

DataSequence DataSequence::prefix(std::size_t n) const {
    if (n > size()) throw std::out_of_range("prefix longer than sequence");
    return DataSequence(dim_, std::vector<double>(values_.begin(), values_.begin() + n * dim_),
                        id_);
}

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t m = rows.size();
    DistanceMatrix out(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != m) throw std::invalid_argument("distance matrix is not square");
        if (rows[i][i] != 0.0) throw std::invalid_argument("distance matrix diagonal must be 0");
        for (std::size_t j = 0; j < m; ++j) {
            const double v = rows[i][j];
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("distance entries must be finite and nonnegative");
            }
            if (v != rows[j][i]) throw std::invalid_argument("distance matrix is not symmetric");
            out.d_[i * m + j] = v;
        }
    }
    return out;
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
    d_[i * m_ + j] = value;
    d_[j * m_ + i] = value;
}

DistanceMatrix DistanceMatrix::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != m_) throw std::invalid_argument("permutation size mismatch");
    DistanceMatrix out(m_);
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t b = 0; b < m_; ++b) {
            out.d_[a * m_ + b] = (*this)(perm[a], perm[b]);
        }
    }
    return out;
}

Partition::Partition(std::size_t m, std::vector<std::vector<std::size_t>> clusters)
    : m_(m), clusters_(std::move(clusters)) {
    std::vector<bool> seen(m, false);
    std::size_t covered = 0;
    for (auto& c : clusters_) {
        if (c.empty()) throw std::invalid_argument("partition has an empty cluster");
        std::sort(c.begin(), c.end());
        for (std::size_t i : c) {
            if (i >= m) throw std::invalid_argument("partition index out of range");
            if (seen[i]) throw std::invalid_argument("partition clusters overlap");
            seen[i] = true;
            ++covered;
        }
    }
    if (covered != m) throw std::invalid_argument("partition does not cover every item");
    std::sort(clusters_.begin(), clusters_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
    std::map<std::int64_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
    std::vector<std::vector<std::size_t>> clusters;
    clusters.reserve(groups.size());
    for (auto& [label, members] : groups) clusters.push_back(std::move(members));
    return Partition(labels.size(), std::move(clusters));
}

std::vector<std::size_t> Partition::labels() const {
    std::vector<std::size_t> out(m_);
    for (std::size_t k = 0; k < clusters_.size(); ++k) {
        for (std::size_t i : clusters_[k]) out[i] = k;
    }
    return out;
}

Partition Partition::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != m_) throw std::invalid_argument("permutation size mismatch");
    const auto old = labels();
    std::vector<std::int64_t> relabeled(m_);
    for (std::size_t a = 0; a < m_; ++a) relabeled[a] = static_cast<std::int64_t>(old[perm[a]]);
    return from_labels(relabeled);
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < clusters_.size(); ++k) {
        if (k) os << ',';
        os << '{';
        for (std::size_t j = 0; j < clusters_[k].size(); ++j) {
            if (j) os << ',';
            os << clusters_[k][j] + 1;
        }
        os << '}';
    }
    os << '}';
    return os.str();
}

bool partitions_equal(const Partition& a, const Partition& b) { return a == b; }

}  // namespace seqclust
