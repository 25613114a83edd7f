#pragma once

// Monte-Carlo experiment runner.
//
// A Problem is a set of sample sources plus the true partition: either one of
// the synthetic examples, or sequences loaded from CSV together with their
// labels. Every trial draws fresh streams keyed by (seed, salt, trial), so
// results do not depend on the number of workers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqclust/bounds.hpp"
#include "seqclust/distances.hpp"
#include "seqclust/geometry.hpp"
#include "seqclust/kernels.hpp"
#include "seqclust/sequential.hpp"
#include "seqclust/sources.hpp"
#include "seqclust/types.hpp"

namespace seqclust {

class Problem {
public:
    static Problem from_example(int id);
    // CSV trials replay a fresh random ordering of each sequence's rows, so a
    // trial at sample size n uses n rows drawn without replacement.
    static Problem from_data(std::vector<DataSequence> data, Partition truth, std::string label);

    const std::string& label() const { return label_; }
    const Partition& truth() const { return truth_; }
    std::size_t num_sequences() const { return truth_.num_items(); }
    std::size_t dim() const;
    bool synthetic() const { return data_.empty(); }
    // Longest sample size every stream can provide (unbounded for examples).
    std::size_t max_samples() const;
    const std::optional<ExampleSpec>& spec() const { return spec_; }

    std::unique_ptr<SampleStreams> streams(std::uint64_t seed, std::uint64_t salt,
                                           std::uint64_t trial) const;

private:
    std::string label_;
    Partition truth_;
    std::optional<ExampleSpec> spec_;
    std::vector<DataSequence> data_;
};

// Runs fn(0) .. fn(count - 1) on `workers` threads. Each index runs exactly
// once; fn must only write to per-index state.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

enum class Algorithm { slink, clink, kmedoids };
std::string_view to_string(Algorithm algo);
Algorithm parse_algorithm(std::string_view text);

struct FssConfig {
    Algorithm algo = Algorithm::slink;
    DistanceKind distance = DistanceKind::mmd;
    KernelSpec kernel{};
    std::vector<std::size_t> n_values;
    std::size_t trials = 5000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::size_t k = 0;  // 0: number of true clusters
};

struct SeqSweepConfig {
    DistanceKind distance = DistanceKind::mmd;
    KernelSpec kernel{};
    std::vector<double> c_values;
    double alpha = 0.5;
    std::size_t trials = 3000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::size_t k = 0;
    std::size_t n_max = 1'000'000;
};

struct FssRow {
    std::string example;
    Algorithm algo = Algorithm::slink;
    DistanceKind distance = DistanceKind::mmd;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double p_e = 0.0;
    std::optional<double> ln_p_e;  // empty when no error was observed
    double wall_ms = 0.0;
    bool censored() const { return !ln_p_e.has_value(); }
};

struct SeqRow {
    std::string example;
    DistanceKind distance = DistanceKind::mmd;
    double c = 0.0;
    double alpha = 0.0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double p_e = 0.0;
    std::optional<double> ln_p_e;
    double mean_n = 0.0;
    double std_n = 0.0;
    std::size_t truncated = 0;
    double wall_ms = 0.0;
    bool censored() const { return !ln_p_e.has_value(); }
};

// Throws std::invalid_argument on an empty sweep, zero trials or workers,
// or a sample size the problem cannot provide.
std::vector<FssRow> run_fss(const Problem& problem, const FssConfig& cfg);
std::vector<SeqRow> run_seq(const Problem& problem, const SeqSweepConfig& cfg);

// One FSS realization: cluster the n-sample prefix of each stream. Returns
// the partition found.
Partition cluster_once(SampleStreams& streams, std::size_t n, const FssConfig& cfg, std::size_t k,
                       std::uint64_t kmedoids_seed);

struct TuneResult {
    double c = 0.0;
    double mean_n = 0.0;
    std::size_t trials = 0;
};

// Finds C whose mean stopping time over `trials` fixed sample paths is within
// `tolerance` (relative) of target_n, by bisection on C. Mean N is
// nondecreasing in C on fixed paths. Paths use a salt disjoint from run_seq.
TuneResult tune_c(const Problem& problem, const SeqSweepConfig& cfg, double target_n,
                  std::size_t trials = 1000, double tolerance = 0.02);

SeparationReport estimate_separation(const Problem& problem, DistanceKind kind,
                                     const KernelSpec& kernel, std::size_t n_ref = 10000,
                                     std::uint64_t seed = 1);

struct BoundRow {
    std::string label;
    BoundParams params;
    DerivedConstants constants;
    std::optional<double> simulated_slope;
};

BoundRow bound_row(std::string label, const BoundParams& params,
                   std::optional<double> simulated_slope = {});

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares; needs at least two distinct x values.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Slope of ln P_e against n over the uncensored rows.
std::optional<double> fss_slope(const std::vector<FssRow>& rows);

// Output. Timing columns are written as 0 when `timing` is false, which
// makes the files byte-comparable across runs.
void write_csv(std::ostream& out, const std::vector<FssRow>& rows, bool timing = true);
void write_csv(std::ostream& out, const std::vector<SeqRow>& rows, bool timing = true);
void write_bound_table(std::ostream& out, const std::vector<BoundRow>& rows);
// Two columns "x ln_p_e" per series, censored points omitted. x is n (FSS)
// or mean N (SEQ).
void write_plotdata(std::ostream& out, const std::vector<FssRow>& rows);
void write_plotdata(std::ostream& out, const std::vector<SeqRow>& rows);

}  // namespace seqclust
