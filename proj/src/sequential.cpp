#include "seqclust/sequential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "seqclust/linkage.hpp"

namespace seqclust {

void SeqConfig::validate(std::size_t m) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("C must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
    if (k < 2 || k > m) {
        throw std::invalid_argument("K must be in [2, " + std::to_string(m) + "], got " +
                                    std::to_string(k));
    }
    if (n_min < 3) throw std::invalid_argument("n_min must be at least 3");
    if (n_max < n_min) throw std::invalid_argument("n_max must be at least n_min");
    if (distance == DistanceKind::mmd) kernel.validate();
}

double threshold(std::size_t n, const SeqConfig& cfg) {
    return cfg.c / std::pow(static_cast<double>(n), cfg.alpha);
}

double gamma(const DistanceMatrix& matrix, const Partition& partition) {
    return min_cross_distance(matrix, partition);
}

SlinkSeqRunner::SlinkSeqRunner(SampleStreams& streams, const SeqConfig& cfg)
    : streams_(streams),
      cfg_(cfg),
      distances_(streams.num_sequences(), streams.dim(), cfg.distance, cfg.kernel),
      buffer_(streams.num_sequences(), std::vector<double>(streams.dim())) {
    cfg_.validate(streams.num_sequences());
    for (int i = 0; i < 2; ++i) {
        if (!draw()) throw std::invalid_argument("streams must provide at least 2 samples");
    }
    recluster();
}

bool SlinkSeqRunner::draw() {
    for (std::size_t i = 0; i < buffer_.size(); ++i) {
        if (!streams_.next(i, buffer_[i])) return false;
    }
    distances_.push(buffer_);
    return true;
}

void SlinkSeqRunner::recluster() {
    const DistanceMatrix d = distances_.matrix();
    auto result = slink(d, StopRule::known_k(cfg_.k));
    partition_ = std::move(result.partition);
    gamma_ = result.gamma;
}

bool SlinkSeqRunner::advance() {
    if (!draw()) return false;
    recluster();
    return true;
}

SeqOutcome slink_seq(SampleStreams& streams, const SeqConfig& cfg) {
    SlinkSeqRunner runner(streams, cfg);
    SeqOutcome out;
    while (true) {
        const std::size_t n = runner.n();
        const double t = threshold(n, cfg);
        out.trace.push_back({n, runner.gamma(), t});
        if (n >= cfg.n_min && runner.gamma() >= t) break;
        if (n >= cfg.n_max || !runner.advance()) {
            out.truncated = true;
            break;
        }
    }
    out.partition = runner.partition();
    out.stopping_time = runner.n();
    return out;
}

}  // namespace seqclust
