#include "seqclust/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "seqclust/linkage.hpp"
#include "seqclust/rng.hpp"

namespace seqclust {

namespace {

// Stream salts. FSS and SEQ points add their sweep index.
constexpr std::uint64_t kFssSalt = 0x10000;
constexpr std::uint64_t kSeqSalt = 0x20000;
constexpr std::uint64_t kTuneSalt = 0x30000;
constexpr std::uint64_t kSeparationSalt = 0x40000;
constexpr std::uint64_t kKMedoidsKey = 0x6b6d6564;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::optional<double> log_or_censored(std::size_t errors, std::size_t trials) {
    if (errors == 0) return std::nullopt;
    return std::log(static_cast<double>(errors) / static_cast<double>(trials));
}

std::size_t resolve_k(std::size_t k, const Problem& problem) {
    const std::size_t kk = k == 0 ? problem.truth().num_clusters() : k;
    if (kk < 1 || kk > problem.num_sequences()) {
        throw std::invalid_argument("K must be in [1, " + std::to_string(problem.num_sequences()) +
                                    "]");
    }
    return kk;
}

void check_distance(DistanceKind kind, const KernelSpec& kernel, const Problem& problem) {
    if (kind == DistanceKind::ksd && problem.dim() != 1) {
        throw std::invalid_argument("KSD needs scalar samples; use MMD for multi-dimensional data");
    }
    if (kind == DistanceKind::mmd) kernel.validate();
}

}  // namespace

Problem Problem::from_example(int id) {
    Problem p;
    p.spec_ = example(id);
    p.truth_ = p.spec_->truth;
    p.label_ = std::to_string(id);
    return p;
}

Problem Problem::from_data(std::vector<DataSequence> data, Partition truth, std::string label) {
    if (data.size() < 2) throw std::invalid_argument("need at least 2 sequences");
    if (truth.num_items() != data.size()) {
        throw std::invalid_argument("truth has " + std::to_string(truth.num_items()) +
                                    " labels for " + std::to_string(data.size()) + " sequences");
    }
    for (const auto& s : data) {
        if (s.dim() != data.front().dim()) {
            throw std::invalid_argument("sequences have different dimensions");
        }
    }
    Problem p;
    p.data_ = std::move(data);
    p.truth_ = std::move(truth);
    p.label_ = std::move(label);
    return p;
}

std::size_t Problem::dim() const { return data_.empty() ? 1 : data_.front().dim(); }

std::size_t Problem::max_samples() const {
    if (data_.empty()) return std::numeric_limits<std::size_t>::max();
    std::size_t n = data_.front().size();
    for (const auto& s : data_) n = std::min(n, s.size());
    return n;
}

std::unique_ptr<SampleStreams> Problem::streams(std::uint64_t seed, std::uint64_t salt,
                                                std::uint64_t trial) const {
    if (spec_) return std::make_unique<SyntheticStreams>(spec_->sources, seed, salt, trial);
    std::vector<std::vector<std::size_t>> order(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
        order[i].resize(data_[i].size());
        std::iota(order[i].begin(), order[i].end(), std::size_t{0});
        auto rng = make_rng(seed, {salt, trial, i});
        std::shuffle(order[i].begin(), order[i].end(), rng);
    }
    return std::make_unique<ReplayStreams>(data_, std::move(order));
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers == 0) throw std::invalid_argument("workers must be at least 1");
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::string_view to_string(Algorithm algo) {
    switch (algo) {
        case Algorithm::slink: return "slink";
        case Algorithm::clink: return "clink";
        case Algorithm::kmedoids: return "kmedoids";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "slink") return Algorithm::slink;
    if (text == "clink") return Algorithm::clink;
    if (text == "kmedoids") return Algorithm::kmedoids;
    throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                                "' (expected slink, clink or kmedoids)");
}

Partition cluster_once(SampleStreams& streams, std::size_t n, const FssConfig& cfg, std::size_t k,
                       std::uint64_t kmedoids_seed) {
    const auto seqs = draw_prefix(streams, n);
    const DistanceMatrix d = pairwise_matrix(seqs, cfg.distance, cfg.kernel);
    switch (cfg.algo) {
        case Algorithm::slink: return slink(d, StopRule::known_k(k)).partition;
        case Algorithm::clink: return clink(d, StopRule::known_k(k)).partition;
        case Algorithm::kmedoids: {
            KMedoidsOptions opt;
            opt.seed = kmedoids_seed;
            return kmedoids(d, k, opt).partition;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<FssRow> run_fss(const Problem& problem, const FssConfig& cfg) {
    if (cfg.n_values.empty()) throw std::invalid_argument("empty sample-size sweep");
    if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
    if (cfg.workers == 0) throw std::invalid_argument("workers must be at least 1");
    check_distance(cfg.distance, cfg.kernel, problem);
    const std::size_t k = resolve_k(cfg.k, problem);
    for (std::size_t n : cfg.n_values) {
        if (n < 1 || n > problem.max_samples()) {
            throw std::invalid_argument("sample size " + std::to_string(n) + " not available");
        }
    }

    std::vector<FssRow> rows;
    for (std::size_t p = 0; p < cfg.n_values.size(); ++p) {
        const auto start = std::chrono::steady_clock::now();
        const std::size_t n = cfg.n_values[p];
        const std::uint64_t salt = kFssSalt + p;
        std::vector<char> wrong(cfg.trials, 0);
        parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
            auto streams = problem.streams(cfg.seed, salt, t);
            const auto found =
                cluster_once(*streams, n, cfg, k, derive_seed(cfg.seed, {salt, t, kKMedoidsKey}));
            wrong[t] = partitions_equal(found, problem.truth()) ? 0 : 1;
        });
        FssRow row;
        row.example = problem.label();
        row.algo = cfg.algo;
        row.distance = cfg.distance;
        row.n = n;
        row.trials = cfg.trials;
        row.errors = static_cast<std::size_t>(std::count(wrong.begin(), wrong.end(), 1));
        row.p_e = static_cast<double>(row.errors) / static_cast<double>(row.trials);
        row.ln_p_e = log_or_censored(row.errors, row.trials);
        row.wall_ms = elapsed_ms(start);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

SeqConfig seq_config(const SeqSweepConfig& sweep, double c, std::size_t k) {
    SeqConfig cfg;
    cfg.c = c;
    cfg.alpha = sweep.alpha;
    cfg.k = k;
    cfg.distance = sweep.distance;
    cfg.kernel = sweep.kernel;
    cfg.n_max = sweep.n_max;
    return cfg;
}

void check_sweep(const SeqSweepConfig& cfg, const Problem& problem) {
    if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
    if (cfg.workers == 0) throw std::invalid_argument("workers must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
        throw std::invalid_argument("alpha must be in (0, 1]");
    }
    check_distance(cfg.distance, cfg.kernel, problem);
}

}  // namespace

std::vector<SeqRow> run_seq(const Problem& problem, const SeqSweepConfig& cfg) {
    if (cfg.c_values.empty()) throw std::invalid_argument("empty C sweep");
    check_sweep(cfg, problem);
    const std::size_t k = resolve_k(cfg.k, problem);

    struct Outcome {
        bool wrong;
        std::size_t n;
        bool truncated;
    };
    std::vector<SeqRow> rows;
    for (std::size_t p = 0; p < cfg.c_values.size(); ++p) {
        const auto start = std::chrono::steady_clock::now();
        const SeqConfig sc = seq_config(cfg, cfg.c_values[p], k);
        sc.validate(problem.num_sequences());
        const std::uint64_t salt = kSeqSalt + p;
        std::vector<Outcome> out(cfg.trials);
        parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
            auto streams = problem.streams(cfg.seed, salt, t);
            const auto res = slink_seq(*streams, sc);
            out[t] = {!partitions_equal(res.partition, problem.truth()), res.stopping_time,
                      res.truncated};
        });
        SeqRow row;
        row.example = problem.label();
        row.distance = cfg.distance;
        row.c = sc.c;
        row.alpha = sc.alpha;
        row.trials = cfg.trials;
        double sum = 0.0;
        for (const auto& o : out) {
            row.errors += o.wrong ? 1 : 0;
            row.truncated += o.truncated ? 1 : 0;
            sum += static_cast<double>(o.n);
        }
        row.mean_n = sum / static_cast<double>(cfg.trials);
        double ss = 0.0;
        for (const auto& o : out) {
            const double dev = static_cast<double>(o.n) - row.mean_n;
            ss += dev * dev;
        }
        row.std_n = cfg.trials > 1 ? std::sqrt(ss / static_cast<double>(cfg.trials - 1)) : 0.0;
        row.p_e = static_cast<double>(row.errors) / static_cast<double>(row.trials);
        row.ln_p_e = log_or_censored(row.errors, row.trials);
        row.wall_ms = elapsed_ms(start);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// Gamma_n along one sample path, extended on demand.
struct GammaPath {
    std::unique_ptr<SampleStreams> streams;
    std::unique_ptr<SlinkSeqRunner> runner;
    std::vector<double> gamma;  // gamma[n], valid from n = 2
    bool exhausted = false;

    double at(std::size_t n) {
        while (gamma.size() <= n && !exhausted) {
            if (runner->advance()) {
                gamma.push_back(runner->gamma());
            } else {
                exhausted = true;
            }
        }
        return n < gamma.size() ? gamma[n] : std::numeric_limits<double>::infinity();
    }
};

}  // namespace

TuneResult tune_c(const Problem& problem, const SeqSweepConfig& cfg, double target_n,
                  std::size_t trials, double tolerance) {
    check_sweep(cfg, problem);
    const std::size_t k = resolve_k(cfg.k, problem);
    const SeqConfig base = seq_config(cfg, 1.0, k);
    base.validate(problem.num_sequences());
    if (!(target_n > static_cast<double>(base.n_min))) {
        throw std::invalid_argument("target mean N must exceed n_min");
    }
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");

    std::vector<GammaPath> paths(trials);
    parallel_for(trials, cfg.workers, [&](std::size_t t) {
        auto& path = paths[t];
        path.streams = problem.streams(cfg.seed, kTuneSalt, t);
        path.runner = std::make_unique<SlinkSeqRunner>(*path.streams, base);
        path.gamma.assign(3, 0.0);
        path.gamma[2] = path.runner->gamma();
    });

    auto mean_n = [&](double c) {
        std::vector<std::size_t> stop(trials);
        parallel_for(trials, cfg.workers, [&](std::size_t t) {
            std::size_t n = base.n_min;
            while (n < base.n_max) {
                if (paths[t].at(n) >= c / std::pow(static_cast<double>(n), base.alpha)) break;
                ++n;
            }
            stop[t] = std::min(n, paths[t].gamma.size() - 1);
        });
        double sum = 0.0;
        for (auto s : stop) sum += static_cast<double>(s);
        return sum / static_cast<double>(trials);
    };

    auto close = [&](double m) { return std::abs(m - target_n) <= tolerance * target_n; };
    double lo = 0.0;
    double hi = 1.0;
    double m_hi = mean_n(hi);
    while (m_hi < target_n) {
        if (hi > 1e12) throw std::runtime_error("could not reach the target mean N");
        lo = hi;
        hi *= 2.0;
        m_hi = mean_n(hi);
    }
    TuneResult best{hi, m_hi, trials};
    for (int iter = 0; iter < 100 && !close(best.mean_n); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double m = mean_n(mid);
        if (std::abs(m - target_n) < std::abs(best.mean_n - target_n)) best = {mid, m, trials};
        if (m < target_n) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * hi) break;
    }
    return best;
}

SeparationReport estimate_separation(const Problem& problem, DistanceKind kind,
                                     const KernelSpec& kernel, std::size_t n_ref,
                                     std::uint64_t seed) {
    check_distance(kind, kernel, problem);
    if (n_ref < 1) throw std::invalid_argument("n_ref must be at least 1");
    const std::size_t n = std::min(n_ref, problem.max_samples());
    auto streams = problem.streams(seed, kSeparationSalt, 0);
    const auto seqs = draw_prefix(*streams, n);
    return separation(pairwise_matrix(seqs, kind, kernel), problem.truth());
}

BoundRow bound_row(std::string label, const BoundParams& params,
                   std::optional<double> simulated_slope) {
    return {std::move(label), params, seq_constants(params), simulated_slope};
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("line fit needs at least two points");
    }
    const double nn = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / nn;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / nn;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("line fit needs two distinct x values");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

std::optional<double> fss_slope(const std::vector<FssRow>& rows) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& r : rows) {
        if (r.ln_p_e) {
            x.push_back(static_cast<double>(r.n));
            y.push_back(*r.ln_p_e);
        }
    }
    if (x.size() < 2) return std::nullopt;
    return fit_line(x, y).slope;
}

}  // namespace seqclust
