#include "seqclust/distances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace seqclust {

std::string_view to_string(DistanceKind kind) {
    return kind == DistanceKind::mmd ? "mmd" : "ksd";
}

DistanceKind parse_distance_kind(std::string_view text) {
    if (text == "mmd") return DistanceKind::mmd;
    if (text == "ksd") return DistanceKind::ksd;
    throw std::invalid_argument("unknown distance '" + std::string(text) + "' (expected mmd or ksd)");
}

namespace {

void check_pair(const DataSequence& x, const DataSequence& y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("distance of an empty sequence");
    if (x.size() != y.size()) {
        throw std::invalid_argument("sequences have different lengths (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    if (x.dim() != y.dim()) throw std::invalid_argument("sequences have different dimensions");
}

void check_scalar(std::size_t dim) {
    if (dim != 1) {
        throw std::invalid_argument("KSD is defined for scalar samples only (got dimension " +
                                    std::to_string(dim) + ")");
    }
}

double mmd_from_sums(double self_x, double self_y, double cross, std::size_t n) {
    const double sq = (self_x + self_y) - 2.0 * cross;
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return std::sqrt(std::max(0.0, sq) / nn);
}

std::vector<double> sorted_values(const DataSequence& s) {
    std::vector<double> v(s.values().begin(), s.values().end());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

double mmd_batch(const DataSequence& x, const DataSequence& y, const KernelSpec& spec) {
    check_pair(x, y);
    const std::size_t n = x.size();
    return mmd_from_sums(kernel_block_sum(spec, x, x, n), kernel_block_sum(spec, y, y, n),
                         kernel_block_sum(spec, x, y, n), n);
}

double ks_statistic_sorted(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("KSD needs equal sample counts");
    if (x.empty()) throw std::invalid_argument("KSD of empty samples");
    const std::size_t n = x.size();
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t best = 0;
    while (i < n && j < n) {
        const double a = std::min(x[i], y[j]);
        while (i < n && x[i] == a) ++i;
        while (j < n && y[j] == a) ++j;
        best = std::max(best, i > j ? i - j : j - i);
    }
    // Once one side is exhausted its CDF is 1 and the gap only shrinks.
    return static_cast<double>(best) / static_cast<double>(n);
}

double ksd_batch(const DataSequence& x, const DataSequence& y) {
    check_pair(x, y);
    check_scalar(x.dim());
    return ks_statistic_sorted(sorted_values(x), sorted_values(y));
}

MmdPairState::MmdPairState(KernelSpec spec, std::size_t dim) : spec_(spec), x_(dim), y_(dim) {
    spec_.validate();
}

void MmdPairState::update(std::span<const double> new_x, std::span<const double> new_y) {
    const std::size_t dim = x_.dim();
    if (new_x.size() != dim || new_y.size() != dim) {
        throw std::invalid_argument("sample dimension mismatch");
    }
    const std::size_t prev = x_.size();
    // Row sums against the prev earlier samples; see StreamingDistances::push
    // for the shared form of the same update.
    const double rxx = kernel_row_sum(spec_, x_, prev, new_x, scratch_);
    const double ryy = kernel_row_sum(spec_, y_, prev, new_y, scratch_);
    const double rxy = kernel_row_sum(spec_, x_, prev, new_y, scratch_);
    const double ryx = kernel_row_sum(spec_, y_, prev, new_x, scratch_);

    const double self_x = (rxx + rxx) + kernel_eval(spec_, new_x, new_x);
    const double self_y = (ryy + ryy) + kernel_eval(spec_, new_y, new_y);
    const double cross = (rxy + ryx) + kernel_eval(spec_, new_x, new_y);
    sq_sum_ += (self_x + self_y) - 2.0 * cross;

    x_.push_back(new_x);
    y_.push_back(new_y);
}

double MmdPairState::distance() const {
    if (n() == 0) return 0.0;
    const double nn = static_cast<double>(n()) * static_cast<double>(n());
    return std::sqrt(std::max(0.0, sq_sum_) / nn);
}

void KsdPairState::update(std::span<const double> new_x, std::span<const double> new_y) {
    check_scalar(new_x.size());
    check_scalar(new_y.size());
    if (!std::isfinite(new_x[0]) || !std::isfinite(new_y[0])) {
        throw std::invalid_argument("non-finite sample value");
    }
    x_.insert(std::upper_bound(x_.begin(), x_.end(), new_x[0]), new_x[0]);
    y_.insert(std::upper_bound(y_.begin(), y_.end(), new_y[0]), new_y[0]);
}

double KsdPairState::distance() const {
    if (x_.empty()) return 0.0;
    return ks_statistic_sorted(x_, y_);
}

MmdPairState mmd_update(MmdPairState state, std::span<const double> new_x,
                        std::span<const double> new_y) {
    state.update(new_x, new_y);
    return state;
}

KsdPairState ksd_update(KsdPairState state, std::span<const double> new_x,
                        std::span<const double> new_y) {
    state.update(new_x, new_y);
    return state;
}

DistanceMatrix pairwise_matrix(std::span<const DataSequence> sequences, DistanceKind kind,
                               const KernelSpec& spec) {
    const std::size_t m = sequences.size();
    if (m < 2) throw std::invalid_argument("need at least 2 sequences");
    for (std::size_t i = 1; i < m; ++i) check_pair(sequences[0], sequences[i]);
    const std::size_t n = sequences[0].size();

    DistanceMatrix out(m);
    if (kind == DistanceKind::ksd) {
        check_scalar(sequences[0].dim());
        std::vector<std::vector<double>> sorted;
        sorted.reserve(m);
        for (const auto& s : sequences) sorted.push_back(sorted_values(s));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                out.set(i, j, ks_statistic_sorted(sorted[i], sorted[j]));
            }
        }
        return out;
    }

    spec.validate();
    std::vector<double> self(m);
    for (std::size_t i = 0; i < m; ++i) {
        self[i] = kernel_block_sum(spec, sequences[i], sequences[i], n);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double cross = kernel_block_sum(spec, sequences[i], sequences[j], n);
            out.set(i, j, mmd_from_sums(self[i], self[j], cross, n));
        }
    }
    return out;
}

StreamingDistances::StreamingDistances(std::size_t m, std::size_t dim, DistanceKind kind,
                                       KernelSpec spec)
    : m_(m), kind_(kind), spec_(spec) {
    if (m < 2) throw std::invalid_argument("need at least 2 sequences");
    if (kind == DistanceKind::ksd) {
        check_scalar(dim);
        sorted_.resize(m);
    } else {
        spec_.validate();
        self_sum_.assign(m, 0.0);
        cross_sum_.assign(m * (m - 1) / 2, 0.0);
        row_prev_.assign(m * m, 0.0);
    }
    seqs_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) seqs_.emplace_back(dim, static_cast<std::int64_t>(i));
}

std::size_t StreamingDistances::pair_index(std::size_t i, std::size_t j) const {
    // i < j, row-major upper triangle
    return i * m_ - i * (i + 1) / 2 + (j - i - 1);
}

void StreamingDistances::push(const std::vector<std::vector<double>>& samples) {
    std::vector<std::span<const double>> spans(samples.begin(), samples.end());
    push(spans);
}

void StreamingDistances::push(std::span<const std::span<const double>> samples) {
    if (samples.size() != m_) throw std::invalid_argument("need one sample per sequence");
    const std::size_t dim = seqs_[0].dim();
    for (const auto& s : samples) {
        if (s.size() != dim) throw std::invalid_argument("sample dimension mismatch");
    }

    if (kind_ == DistanceKind::ksd) {
        for (std::size_t i = 0; i < m_; ++i) {
            auto& v = sorted_[i];
            v.insert(std::upper_bound(v.begin(), v.end(), samples[i][0]), samples[i][0]);
            seqs_[i].push_back(samples[i]);
        }
        ++n_;
        return;
    }

    // row_prev_[i * m + j] = sum over the earlier samples of sequence i of
    // k(., new sample of j).
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) {
            row_prev_[i * m_ + j] = kernel_row_sum(spec_, seqs_[i], n_, samples[j], scratch_);
        }
    }
    for (std::size_t i = 0; i < m_; ++i) {
        const double r = row_prev_[i * m_ + i];
        self_sum_[i] += (r + r) + kernel_eval(spec_, samples[i], samples[i]);
    }
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j) {
            cross_sum_[pair_index(i, j)] += (row_prev_[i * m_ + j] + row_prev_[j * m_ + i]) +
                                            kernel_eval(spec_, samples[i], samples[j]);
        }
    }
    for (std::size_t i = 0; i < m_; ++i) seqs_[i].push_back(samples[i]);
    ++n_;
}

double StreamingDistances::distance(std::size_t i, std::size_t j) const {
    if (i == j || n_ == 0) return 0.0;
    if (i > j) std::swap(i, j);
    if (kind_ == DistanceKind::ksd) return ks_statistic_sorted(sorted_[i], sorted_[j]);
    return mmd_from_sums(self_sum_[i], self_sum_[j], cross_sum_[pair_index(i, j)], n_);
}

DistanceMatrix StreamingDistances::matrix() const {
    DistanceMatrix out(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j) out.set(i, j, distance(i, j));
    }
    return out;
}

}  // namespace seqclust
