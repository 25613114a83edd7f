// seqclust: distance matrices, one-shot clustering and Monte-Carlo
// experiments for clustering data sequences by distribution.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqclust/bounds.hpp"
#include "seqclust/distances.hpp"
#include "seqclust/harness.hpp"
#include "seqclust/linkage.hpp"
#include "seqclust/simd.hpp"
#include "seqclust/sources.hpp"

using namespace seqclust;

namespace {

struct Common {
    int example = 0;
    std::string csv;
    std::vector<std::int64_t> truth;
    std::string distance = "mmd";
    double bandwidth = 1.0;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::string out;
    std::string format = "csv";
    std::string isa;
    bool no_timing = false;
};

void add_source_options(CLI::App* cmd, Common& c) {
    auto* ex = cmd->add_option("--example", c.example, "Synthetic example 1..5")
                   ->check(CLI::Range(1, 5));
    auto* csv = cmd->add_option("--csv", c.csv, "CSV file: seq_id,dim_0[,dim_1,...]")
                    ->check(CLI::ExistingFile);
    ex->excludes(csv);
    cmd->add_option("--truth", c.truth, "True cluster label per CSV sequence (comma list)")
        ->delimiter(',');
    cmd->add_option("--distance", c.distance, "mmd or ksd")
        ->check(CLI::IsMember({"mmd", "ksd"}));
    cmd->add_option("--bandwidth", c.bandwidth, "Gaussian kernel bandwidth")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Master seed");
}

void add_run_options(CLI::App* cmd, Common& c) {
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "Output directory (default: stdout)");
    cmd->add_option("--format", c.format, "csv or plotdata")
        ->check(CLI::IsMember({"csv", "plotdata"}));
    cmd->add_flag("--no-timing", c.no_timing, "Write wall_ms as 0 for byte-stable output");
}

Problem load_problem(const Common& c) {
    if (c.example != 0) {
        if (!c.truth.empty()) throw std::invalid_argument("--truth applies to --csv input only");
        return Problem::from_example(c.example);
    }
    if (c.csv.empty()) throw std::invalid_argument("one of --example or --csv is required");
    auto data = ingest_csv(std::filesystem::path(c.csv));
    Partition truth;
    if (c.truth.empty()) {
        std::vector<std::int64_t> labels(data.size(), 0);
        truth = Partition::from_labels(labels);
    } else {
        if (c.truth.size() != data.size()) {
            throw std::invalid_argument("--truth has " + std::to_string(c.truth.size()) +
                                        " labels for " + std::to_string(data.size()) +
                                        " sequences");
        }
        truth = Partition::from_labels(c.truth);
    }
    return Problem::from_data(std::move(data), std::move(truth),
                              std::filesystem::path(c.csv).stem().string());
}

KernelSpec kernel_of(const Common& c) {
    KernelSpec k;
    k.bandwidth = c.bandwidth;
    k.validate();
    return k;
}

// Writes to --out/<stem>.<ext>, or stdout.
template <class Fn>
void emit(const Common& c, const std::string& stem, Fn&& write) {
    if (c.out.empty()) {
        write(std::cout);
        return;
    }
    std::filesystem::create_directories(c.out);
    const auto path =
        std::filesystem::path(c.out) / (stem + (c.format == "plotdata" ? ".dat" : ".csv"));
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    write(f);
    std::cerr << "wrote " << path.string() << "\n";
}

std::vector<DataSequence> sample_sequences(const Problem& p, const Common& c, std::size_t n) {
    if (!p.synthetic()) n = std::min(n, p.max_samples());
    auto streams = p.streams(c.seed, 0, 0);
    return draw_prefix(*streams, n);
}

void print_matrix(std::ostream& out, const DistanceMatrix& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            out << (j ? "," : "") << d(i, j);
        }
        out << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering of data sequences by distribution (MMD / KSD)"};
    app.require_subcommand(1);
    Common c;
    std::string isa;
    app.add_option("--isa", isa, "Force a kernel ISA: scalar, avx2, avx512, neon");

    std::size_t n_single = 1000;
    std::size_t k = 0;
    std::string algo = "slink";
    std::vector<std::size_t> n_list;
    std::vector<double> c_list;
    double alpha = 0.5;
    std::size_t trials = 0;
    std::optional<double> target_n;
    std::size_t tune_trials = 1000;
    std::size_t n_max = 1'000'000;
    std::size_t n_ref = 10000;

    auto* distance_cmd = app.add_subcommand("distance", "Pairwise distance matrix");
    add_source_options(distance_cmd, c);
    distance_cmd->add_option("--n", n_single, "Samples per sequence (examples; CSV uses all)");

    auto* cluster_cmd = app.add_subcommand("cluster", "One clustering of n samples per sequence");
    add_source_options(cluster_cmd, c);
    cluster_cmd->add_option("--n", n_single, "Samples per sequence");
    cluster_cmd->add_option("--algo", algo, "slink, clink or kmedoids")
        ->check(CLI::IsMember({"slink", "clink", "kmedoids"}));
    cluster_cmd->add_option("--k", k, "Number of clusters (default: from truth)");

    auto* fss_cmd = app.add_subcommand("fss", "Error probability vs sample size");
    add_source_options(fss_cmd, c);
    add_run_options(fss_cmd, c);
    fss_cmd->add_option("--algo", algo, "slink, clink or kmedoids")
        ->check(CLI::IsMember({"slink", "clink", "kmedoids"}));
    fss_cmd->add_option("--k", k, "Number of clusters (default: from truth)");
    fss_cmd->add_option("--n", n_list, "Sample sizes (comma list)")->delimiter(',')->required();
    fss_cmd->add_option("--trials", trials, "Trials per point (default 5000)");

    auto* seq_cmd = app.add_subcommand("seq", "Sequential test: error probability vs E[N]");
    add_source_options(seq_cmd, c);
    add_run_options(seq_cmd, c);
    seq_cmd->add_option("--k", k, "Number of clusters (default: from truth)");
    auto* c_opt = seq_cmd->add_option("--c", c_list, "Threshold scales C (comma list)")
                      ->delimiter(',');
    auto* target_opt =
        seq_cmd->add_option("--target-n", target_n, "Tune C to this mean stopping time");
    c_opt->excludes(target_opt);
    seq_cmd->add_option("--tune-trials", tune_trials, "Sample paths used for tuning");
    seq_cmd->add_option("--alpha", alpha, "Threshold exponent in (0, 1]");
    seq_cmd->add_option("--trials", trials, "Trials per point (default 3000)");
    seq_cmd->add_option("--n-max", n_max, "Truncation sample size");

    auto* sep_cmd = app.add_subcommand("separation", "Estimate d_L, d_H, d_I of the truth");
    add_source_options(sep_cmd, c);
    sep_cmd->add_option("--n-ref", n_ref, "Samples per sequence");

    double b_di = -1.0;
    double b_dh = -1.0;
    std::size_t b_m = 0;
    std::size_t b_k = 0;
    double b_g = 1.0;
    std::optional<double> b_dth;
    std::optional<double> b_delta;
    double b_c = 0.0;
    std::optional<double> b_slope;
    auto* bounds_cmd = app.add_subcommand("bounds", "Bound constants for given separations");
    bounds_cmd->add_option("--example", c.example, "Use the reference separations of 1..5")
        ->check(CLI::Range(1, 5));
    bounds_cmd->add_option("--distance", c.distance, "Reference table: mmd or ksd")
        ->check(CLI::IsMember({"mmd", "ksd"}));
    bounds_cmd->add_option("--d-i", b_di, "d_I");
    bounds_cmd->add_option("--d-h", b_dh, "d_H");
    bounds_cmd->add_option("--m", b_m, "Number of sequences");
    bounds_cmd->add_option("--k", b_k, "Number of clusters");
    bounds_cmd->add_option("--g", b_g, "Kernel bound");
    bounds_cmd->add_option("--d-th", b_dth, "Threshold in (d_I, d_H)");
    bounds_cmd->add_option("--delta", b_delta, "delta in (0, 1 - sqrt(d_I/d_H))");
    bounds_cmd->add_option("--c", b_c, "Threshold scale for the sequential constants");
    bounds_cmd->add_option("--slope", b_slope, "Simulated slope to print alongside");
    bounds_cmd->add_option("--out", c.out, "Output directory (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!isa.empty()) simd::select(simd::parse_isa(isa));
        const DistanceKind kind = parse_distance_kind(c.distance);

        if (*distance_cmd) {
            const Problem p = load_problem(c);
            const auto seqs = sample_sequences(p, c, n_single);
            print_matrix(std::cout, pairwise_matrix(seqs, kind, kernel_of(c)));
        } else if (*cluster_cmd) {
            const Problem p = load_problem(c);
            FssConfig cfg;
            cfg.algo = parse_algorithm(algo);
            cfg.distance = kind;
            cfg.kernel = kernel_of(c);
            const std::size_t kk = k ? k : p.truth().num_clusters();
            const std::size_t n = p.synthetic() ? n_single : std::min(n_single, p.max_samples());
            auto streams = p.streams(c.seed, 0, 0);
            const Partition found = cluster_once(*streams, n, cfg, kk, c.seed);
            std::cout << "partition " << found.to_string() << "\n";
            if (p.truth().num_clusters() > 1 || !p.synthetic()) {
                std::cout << "matches_truth " << (partitions_equal(found, p.truth()) ? 1 : 0)
                          << "\n";
            }
        } else if (*fss_cmd) {
            const Problem p = load_problem(c);
            FssConfig cfg;
            cfg.algo = parse_algorithm(algo);
            cfg.distance = kind;
            cfg.kernel = kernel_of(c);
            cfg.n_values = n_list;
            if (trials) cfg.trials = trials;
            cfg.seed = c.seed;
            cfg.workers = c.workers;
            cfg.k = k;
            const auto rows = run_fss(p, cfg);
            emit(c, "fss", [&](std::ostream& o) {
                if (c.format == "plotdata") {
                    write_plotdata(o, rows);
                } else {
                    write_csv(o, rows, !c.no_timing);
                }
            });
        } else if (*seq_cmd) {
            const Problem p = load_problem(c);
            SeqSweepConfig cfg;
            cfg.distance = kind;
            cfg.kernel = kernel_of(c);
            cfg.alpha = alpha;
            if (trials) cfg.trials = trials;
            cfg.seed = c.seed;
            cfg.workers = c.workers;
            cfg.k = k;
            cfg.n_max = n_max;
            if (target_n) {
                const auto tuned = tune_c(p, cfg, *target_n, tune_trials);
                std::cerr << "tuned C = " << tuned.c << " (mean N " << tuned.mean_n << " over "
                          << tuned.trials << " paths)\n";
                cfg.c_values = {tuned.c};
            } else {
                cfg.c_values = c_list;
            }
            if (cfg.c_values.empty()) throw std::invalid_argument("give --c or --target-n");
            const auto rows = run_seq(p, cfg);
            emit(c, "seq", [&](std::ostream& o) {
                if (c.format == "plotdata") {
                    write_plotdata(o, rows);
                } else {
                    write_csv(o, rows, !c.no_timing);
                }
            });
        } else if (*sep_cmd) {
            const Problem p = load_problem(c);
            const auto rep = estimate_separation(p, kind, kernel_of(c), n_ref, c.seed);
            std::cout << "d_l,d_h,d_i\n" << rep.d_l << ',' << rep.d_h << ',' << rep.d_i << "\n";
        } else if (*bounds_cmd) {
            std::string label = "custom";
            if (c.example != 0) {
                const ExampleSpec ex = example(c.example);
                const auto& ref = kind == DistanceKind::mmd ? ex.mmd : ex.ksd;
                if (!ref) throw std::invalid_argument("no reference separations for this example");
                if (b_di < 0) b_di = ref->d_i;
                if (b_dh < 0) b_dh = ref->d_h;
                if (!b_m) b_m = ex.truth.num_items();
                if (!b_k) b_k = ex.truth.num_clusters();
                label = "example" + std::to_string(c.example);
            }
            if (b_di < 0 || b_dh < 0 || !b_m || !b_k) {
                throw std::invalid_argument("bounds needs --example or all of --d-i --d-h --m --k");
            }
            const auto params = BoundParams::make(b_di, b_dh, b_m, b_k, b_g, b_dth, b_delta, b_c);
            const std::vector<BoundRow> rows{bound_row(label, params, b_slope)};
            emit(c, "bounds", [&](std::ostream& o) { write_bound_table(o, rows); });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
