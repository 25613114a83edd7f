#pragma once

// Sequential single-linkage clustering (SLINK-SEQ).
//
// All M sequences advance in lockstep. After every step the pairwise distance
// estimates are refreshed incrementally, SLINK with known K is rerun, and the
// test statistic
//
//   Gamma_n = min over cross-cluster pairs (i, j) of d_hat(i, j, n)
//
// is compared against the threshold T_n = C / n^alpha. Sampling stops at the
// first n >= n_min with Gamma_n >= T_n; the partition computed at that step is
// returned.

#include <cstddef>
#include <span>
#include <vector>

#include "seqclust/distances.hpp"
#include "seqclust/kernels.hpp"
#include "seqclust/types.hpp"

namespace seqclust {

// Source of i.i.d. samples, one stream per sequence.
class SampleStreams {
public:
    virtual ~SampleStreams() = default;
    virtual std::size_t num_sequences() const = 0;
    virtual std::size_t dim() const = 0;
    // Writes the next sample of sequence i into out (size dim()). Returns
    // false once that stream is exhausted.
    virtual bool next(std::size_t i, std::span<double> out) = 0;
};

struct SeqConfig {
    double c = 1.0;
    double alpha = 0.5;
    std::size_t k = 2;
    DistanceKind distance = DistanceKind::mmd;
    KernelSpec kernel{};
    std::size_t n_max = 1'000'000;
    std::size_t n_min = 3;

    // Throws std::invalid_argument unless C > 0, 0 < alpha <= 1,
    // 2 <= K <= m and n_max >= n_min >= 3.
    void validate(std::size_t m) const;
};

// C / n^alpha
double threshold(std::size_t n, const SeqConfig& cfg);

// Gamma_n: minimum cross-cluster entry (same formula as d_h). K >= 2.
double gamma(const DistanceMatrix& matrix, const Partition& partition);

struct TracePoint {
    std::size_t n;
    double gamma;
    double threshold;
};

struct SeqOutcome {
    Partition partition;
    std::size_t stopping_time = 0;
    std::vector<TracePoint> trace;  // one entry per n = 2 .. stopping_time
    bool truncated = false;
};

// Step-by-step driver shared by slink_seq and the experiment harness.
// Construction draws the two initial samples per sequence.
class SlinkSeqRunner {
public:
    SlinkSeqRunner(SampleStreams& streams, const SeqConfig& cfg);

    // Draws one sample per sequence and reclusters. Returns false (state
    // unchanged) if any stream is exhausted.
    bool advance();

    std::size_t n() const { return distances_.n(); }
    double gamma() const { return gamma_; }
    const Partition& partition() const { return partition_; }
    DistanceMatrix matrix() const { return distances_.matrix(); }
    const StreamingDistances& distances() const { return distances_; }

private:
    SampleStreams& streams_;
    SeqConfig cfg_;
    StreamingDistances distances_;
    Partition partition_;
    double gamma_ = 0.0;
    std::vector<std::vector<double>> buffer_;

    bool draw();
    void recluster();
};

SeqOutcome slink_seq(SampleStreams& streams, const SeqConfig& cfg);

}  // namespace seqclust
