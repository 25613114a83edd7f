#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <sstream>

#include "seqclust/harness.hpp"

using namespace seqclust;

namespace {

std::string csv_of(const std::vector<FssRow>& rows) {
    std::ostringstream os;
    write_csv(os, rows, false);
    return os.str();
}

std::string csv_of(const std::vector<SeqRow>& rows) {
    std::ostringstream os;
    write_csv(os, rows, false);
    return os.str();
}

// E k(X, Y) for independent unit-variance Gaussian mixtures, bandwidth 1.
double mean_kernel(const SourceSpec& a, const SourceSpec& b) {
    auto comps = [](const SourceSpec& s) {
        std::vector<MixtureComponent> out;
        if (const auto* g = std::get_if<GaussianSource>(&s)) {
            out.push_back({g->mean, g->variance, 1.0});
        } else {
            out = std::get<MixtureSource>(s).components;
        }
        return out;
    };
    double sum = 0.0;
    for (const auto& x : comps(a)) {
        for (const auto& y : comps(b)) {
            const double diff = x.mean - y.mean;
            sum += x.weight * y.weight * std::exp(-diff * diff / 6.0) / std::sqrt(3.0);
        }
    }
    return sum;
}

}  // namespace

TEST(Harness, ParallelForRunsEachIndexOnce) {
    for (std::size_t workers : {1u, 2u, 7u}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
        for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
    }
    EXPECT_THROW(parallel_for(3, 0, [](std::size_t) {}), std::invalid_argument);
    EXPECT_THROW(parallel_for(50, 4,
                              [](std::size_t i) {
                                  if (i == 17) throw std::runtime_error("x");
                              }),
                 std::runtime_error);
}

TEST(Harness, FssIdenticalAcrossWorkerCounts) {
    const auto p = Problem::from_example(3);
    FssConfig cfg;
    cfg.n_values = {10, 20};
    cfg.trials = 60;
    cfg.seed = 5;
    const auto one = csv_of(run_fss(p, cfg));
    cfg.workers = 4;
    EXPECT_EQ(one, csv_of(run_fss(p, cfg)));
    cfg.algo = Algorithm::kmedoids;
    cfg.distance = DistanceKind::ksd;
    const auto km4 = csv_of(run_fss(p, cfg));
    cfg.workers = 1;
    EXPECT_EQ(km4, csv_of(run_fss(p, cfg)));
}

TEST(Harness, SeqIdenticalAcrossWorkerCounts) {
    const auto p = Problem::from_example(2);
    SeqSweepConfig cfg;
    cfg.c_values = {0.5, 1.0};
    cfg.trials = 40;
    const auto one = csv_of(run_seq(p, cfg));
    cfg.workers = 3;
    EXPECT_EQ(one, csv_of(run_seq(p, cfg)));
}

TEST(Harness, CensoredRowsHaveNoLog) {
    const auto p = Problem::from_example(3);
    FssConfig cfg;
    cfg.n_values = {400};
    cfg.trials = 20;
    const auto rows = run_fss(p, cfg);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].errors, 0u);
    EXPECT_TRUE(rows[0].censored());
    EXPECT_EQ(csv_of(rows), "example,algo,distance,n,trials,errors,p_e,ln_p_e,censored,wall_ms\n"
                            "3,slink,mmd,400,20,0,0,,1,0\n");
}

TEST(Harness, ErrorsAtTinySampleSize) {
    const auto p = Problem::from_example(1);
    FssConfig cfg;
    cfg.n_values = {2};
    cfg.trials = 50;
    const auto rows = run_fss(p, cfg);
    EXPECT_GT(rows[0].errors, 40u);
    ASSERT_TRUE(rows[0].ln_p_e.has_value());
    EXPECT_DOUBLE_EQ(*rows[0].ln_p_e, std::log(rows[0].p_e));
}

TEST(Harness, TinyThresholdStopsAtMinimum) {
    const auto p = Problem::from_example(3);
    SeqSweepConfig cfg;
    cfg.c_values = {1e-9};
    cfg.trials = 30;
    const auto rows = run_seq(p, cfg);
    EXPECT_DOUBLE_EQ(rows[0].mean_n, 3.0);
    EXPECT_DOUBLE_EQ(rows[0].std_n, 0.0);
    EXPECT_EQ(rows[0].truncated, 0u);
}

TEST(Harness, ConfigErrors) {
    const auto p = Problem::from_example(3);
    FssConfig cfg;
    EXPECT_THROW(run_fss(p, cfg), std::invalid_argument);
    cfg.n_values = {10};
    cfg.trials = 0;
    EXPECT_THROW(run_fss(p, cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.k = 26;
    EXPECT_THROW(run_fss(p, cfg), std::invalid_argument);
    SeqSweepConfig s;
    s.c_values = {1.0};
    s.alpha = 0.0;
    EXPECT_THROW(run_seq(p, s), std::invalid_argument);
    EXPECT_THROW(parse_algorithm("dbscan"), std::invalid_argument);
}

TEST(Harness, TuneHitsTarget) {
    const auto p = Problem::from_example(3);
    SeqSweepConfig cfg;
    const auto t = tune_c(p, cfg, 30.0, 200);
    EXPECT_NEAR(t.mean_n, 30.0, 0.6);
    EXPECT_GT(t.c, 0.0);
    EXPECT_THROW(tune_c(p, cfg, 2.0, 10), std::invalid_argument);
}

TEST(Harness, CsvProblemResamplesRows) {
    // Two tight groups of sequences, rows replayed in a fresh order per trial.
    std::vector<DataSequence> data;
    auto rng = make_rng(3, {});
    std::normal_distribution<double> z(0.0, 1.0);
    for (int i = 0; i < 4; ++i) {
        std::vector<double> v(120);
        for (auto& x : v) x = z(rng) + (i < 2 ? 0.0 : 3.0);
        data.emplace_back(2, std::move(v), i);
    }
    const std::vector<std::int64_t> labels{0, 0, 1, 1};
    const auto p = Problem::from_data(data, Partition::from_labels(labels), "toy");
    EXPECT_EQ(p.dim(), 2u);
    EXPECT_EQ(p.max_samples(), 60u);
    FssConfig cfg;
    cfg.n_values = {40};
    cfg.trials = 10;
    const auto rows = run_fss(p, cfg);
    EXPECT_EQ(rows[0].errors, 0u);
    EXPECT_EQ(rows[0].example, "toy");
    cfg.n_values = {61};
    EXPECT_THROW(run_fss(p, cfg), std::invalid_argument);
    cfg.n_values = {40};
    cfg.distance = DistanceKind::ksd;
    EXPECT_THROW(run_fss(p, cfg), std::invalid_argument);
    auto a = p.streams(1, 0, 0), b = p.streams(1, 0, 1);
    const auto pa = draw_prefix(*a, 60), pb = draw_prefix(*b, 60);
    EXPECT_NE(pa[0].sample(0)[0], pb[0].sample(0)[0]);
}

TEST(Harness, SeparationMatchesPopulationOnMixtures) {
    for (int id : {4, 5}) {
        const auto p = Problem::from_example(id);
        const auto& sources = p.spec()->sources;
        const std::size_t m = sources.size();
        DistanceMatrix pop(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const double d2 = mean_kernel(sources[i], sources[i]) +
                                  mean_kernel(sources[j], sources[j]) -
                                  2.0 * mean_kernel(sources[i], sources[j]);
                pop.set(i, j, std::sqrt(d2));
            }
        }
        const auto want = separation(pop, p.truth());
        const auto rep = estimate_separation(p, DistanceKind::mmd, KernelSpec{}, 2000);
        EXPECT_NEAR(rep.d_l, want.d_l, 0.03) << id;
        EXPECT_NEAR(rep.d_h, want.d_h, 0.03) << id;
        EXPECT_NEAR(rep.d_i, want.d_i, 0.03) << id;
    }
}

TEST(Harness, LineFit) {
    const auto f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 1.0, 1e-12);
    EXPECT_THROW(fit_line({1, 1}, {2, 3}), std::invalid_argument);
    EXPECT_THROW(fit_line({1}, {2}), std::invalid_argument);
    std::vector<FssRow> rows(3);
    rows[0].n = 10;
    rows[0].ln_p_e = -1.0;
    rows[1].n = 20;
    rows[1].ln_p_e = -2.0;
    rows[2].n = 30;  // censored, ignored
    EXPECT_NEAR(*fss_slope(rows), -0.1, 1e-12);
}

TEST(Harness, BoundTableColumns) {
    std::ostringstream os;
    write_bound_table(os, {bound_row("e3", BoundParams::make(0.0, 0.41289, 25, 5), -0.09)});
    const auto text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "label,d_i,d_h,d_th,g,m,k,delta,a_f,b_f,b_f_midpoint,n_fss,n_tilde,c_m,alpha1,alpha,"
              "simulated_slope");
    EXPECT_NE(text.find(",-0.09\n"), std::string::npos);
}

TEST(Harness, PlotdataSkipsCensored) {
    std::vector<FssRow> rows(2);
    rows[0].example = "3";
    rows[0].n = 30;
    rows[0].ln_p_e = -0.5;
    rows[1].example = "3";
    rows[1].n = 80;
    std::ostringstream os;
    write_plotdata(os, rows);
    EXPECT_EQ(os.str(), "# example3_slink_mmd\n# n ln_p_e\n30 -0.5\n\n\n");
}
