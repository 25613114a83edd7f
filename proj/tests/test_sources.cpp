#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "seqclust/sources.hpp"

using namespace seqclust;

namespace {

double mean_of(const DataSequence& s) {
    const auto v = s.values();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(const DataSequence& s) {
    const double m = mean_of(s);
    double ss = 0.0;
    for (double x : s.values()) ss += (x - m) * (x - m);
    return ss / static_cast<double>(s.size() - 1);
}

std::string csv_error(const std::string& text) {
    std::istringstream in(text);
    try {
        ingest_csv(in);
    } catch (const std::runtime_error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Sources, GaussianMoments) {
    auto rng = make_rng(1, {0});
    const auto s = draw_sequence(GaussianSource{1.15, 1.0}, 200000, rng);
    EXPECT_NEAR(mean_of(s), 1.15, 0.02);
    EXPECT_NEAR(var_of(s), 1.0, 0.02);
}

TEST(Sources, MixtureMoments) {
    // 0.7 N(0,1) + 0.3 N(0.5,1): mean 0.15, variance 1 + 0.21 * 0.25.
    auto rng = make_rng(2, {0});
    const MixtureSource mix{{{0.0, 1.0, 0.7}, {0.5, 1.0, 0.3}}};
    const auto s = draw_sequence(mix, 200000, rng);
    EXPECT_NEAR(mean_of(s), 0.15, 0.02);
    EXPECT_NEAR(var_of(s), 1.0525, 0.02);
}

TEST(Sources, Validation) {
    EXPECT_THROW(validate(GaussianSource{0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(validate(MixtureSource{}), std::invalid_argument);
    EXPECT_THROW(validate(MixtureSource{{{0, 1, 0.5}, {1, 1, 0.4}}}), std::invalid_argument);
    EXPECT_THROW(validate(MixtureSource{{{0, 1, 1.5}, {1, 1, -0.5}}}), std::invalid_argument);
    EXPECT_NO_THROW(validate(MixtureSource{{{0, 1, 0.5}, {1, 2, 0.5}}}));
}

TEST(Sources, ExamplesShape) {
    const std::size_t sizes[][2] = {{12, 2}, {10, 2}, {25, 5}, {6, 2}, {6, 2}};
    for (int id = 1; id <= 5; ++id) {
        const auto ex = example(id);
        EXPECT_EQ(ex.sources.size(), sizes[id - 1][0]);
        EXPECT_EQ(ex.truth.num_items(), sizes[id - 1][0]);
        EXPECT_EQ(ex.truth.num_clusters(), sizes[id - 1][1]);
        ASSERT_TRUE(ex.mmd.has_value());
        EXPECT_EQ(ex.ksd.has_value(), id <= 3);
    }
    EXPECT_THROW(example(0), std::invalid_argument);
    EXPECT_THROW(example(6), std::invalid_argument);
}

TEST(Sources, ExampleOneMeans) {
    const auto ex = example(1);
    EXPECT_DOUBLE_EQ(std::get<GaussianSource>(ex.sources[0]).mean, 0.4);
    EXPECT_DOUBLE_EQ(std::get<GaussianSource>(ex.sources[11]).mean, 2.15);
    EXPECT_EQ(ex.truth.cluster(1), (std::vector<std::size_t>{9, 10, 11}));
}

TEST(Sources, SyntheticStreamsIndependentOfCallOrder) {
    const auto ex = example(2);
    SyntheticStreams a(ex.sources, 7, 1, 2), b(ex.sources, 7, 1, 2);
    double x = 0, y = 0;
    std::vector<double> first_a, first_b;
    for (std::size_t i = 0; i < ex.sources.size(); ++i) {
        a.next(i, {&x, 1});
        first_a.push_back(x);
    }
    for (std::size_t i = ex.sources.size(); i-- > 0;) {
        b.next(i, {&y, 1});
        first_b.insert(first_b.begin(), y);
    }
    EXPECT_EQ(first_a, first_b);
    SyntheticStreams c(ex.sources, 7, 1, 3);
    c.next(0, {&x, 1});
    EXPECT_NE(x, first_a[0]);
}

TEST(Sources, ReplayAndPrefix) {
    std::vector<DataSequence> data{DataSequence(1, {1, 2, 3}), DataSequence(1, {4, 5, 6})};
    ReplayStreams r(data, {{2, 1, 0}, {0, 2, 1}});
    const auto p = draw_prefix(r, 2);
    EXPECT_EQ(std::vector<double>(p[0].values().begin(), p[0].values().end()),
              (std::vector<double>{3, 2}));
    EXPECT_EQ(std::vector<double>(p[1].values().begin(), p[1].values().end()),
              (std::vector<double>{4, 6}));
    ReplayStreams again(data);
    EXPECT_THROW(draw_prefix(again, 4), std::runtime_error);
}

TEST(Csv, ParsesMultiDim) {
    std::istringstream in("seq_id,dim_0,dim_1\n7,1.5,2\n7,3,4\n\n2,-1,0.25\n2,5e-1,1\n");
    const auto seqs = ingest_csv(in);
    ASSERT_EQ(seqs.size(), 2u);
    EXPECT_EQ(seqs[0].id(), 7);
    EXPECT_EQ(seqs[0].dim(), 2u);
    EXPECT_EQ(seqs[0].size(), 2u);
    EXPECT_EQ(seqs[1].sample(1)[0], 0.5);
    EXPECT_EQ(seqs[1].sample(0)[1], 0.25);
}

TEST(Csv, ErrorsCarryLineNumbers) {
    EXPECT_EQ(csv_error(""), "CSV input is empty");
    EXPECT_NE(csv_error("id,dim_0\n1,2\n").find("line 1"), std::string::npos);
    EXPECT_NE(csv_error("seq_id,dim_0\n1,2\n1,x\n").find("line 3"), std::string::npos);
    EXPECT_NE(csv_error("seq_id,dim_0\n1,2\n1,2,3\n").find("line 3"), std::string::npos);
    EXPECT_NE(csv_error("seq_id,dim_0\n1,2\n2,2\n1,3\n").find("not consecutive"),
              std::string::npos);
    EXPECT_NE(csv_error("seq_id,dim_0\na,2\n").find("seq_id"), std::string::npos);
    EXPECT_NE(csv_error("seq_id,dim_0\n1,nan\n").find("line 2"), std::string::npos);
    EXPECT_EQ(csv_error("seq_id,dim_0\n"), "CSV input has no data rows");
}
