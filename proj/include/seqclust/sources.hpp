#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "seqclust/rng.hpp"
#include "seqclust/sequential.hpp"
#include "seqclust/types.hpp"

namespace seqclust {

struct GaussianSource {
    double mean = 0.0;
    double variance = 1.0;
};

struct MixtureComponent {
    double mean = 0.0;
    double variance = 1.0;
    double weight = 1.0;
};

struct MixtureSource {
    std::vector<MixtureComponent> components;
};

using SourceSpec = std::variant<GaussianSource, MixtureSource>;

// Throws std::invalid_argument for non-positive variances, non-positive
// weights, or mixture weights not summing to 1 (within 1e-9).
void validate(const SourceSpec& spec);

// One scalar draw. Mixtures pick a component by weight, then draw from it.
double sample(const SourceSpec& spec, Rng& rng);

// n draws as a one-dimensional sequence.
DataSequence draw_sequence(const SourceSpec& spec, std::size_t n, Rng& rng, std::int64_t id = 0);

struct ReferenceDistances {
    double d_l;
    double d_h;
    double d_i;
};

// One of the five synthetic configurations with its published reference
// separations (MMD with the unit-bandwidth Gaussian kernel, and KSD where
// published).
struct ExampleSpec {
    int id = 0;
    std::vector<SourceSpec> sources;
    Partition truth;
    std::optional<ReferenceDistances> mmd;
    std::optional<ReferenceDistances> ksd;
};

// id in 1..5; throws std::invalid_argument otherwise.
ExampleSpec example(int id);

// Independent streams for the sources of one Monte-Carlo trial. Sequence i
// draws from make_rng(master, {salt, trial, i}).
class SyntheticStreams : public SampleStreams {
public:
    SyntheticStreams(std::vector<SourceSpec> sources, std::uint64_t master, std::uint64_t salt,
                     std::uint64_t trial);

    std::size_t num_sequences() const override { return sources_.size(); }
    std::size_t dim() const override { return 1; }
    bool next(std::size_t i, std::span<double> out) override;

private:
    std::vector<SourceSpec> sources_;
    std::vector<Rng> rngs_;
    std::vector<std::normal_distribution<double>> normals_;
};

// Replays fixed sequences; stream i is exhausted after sequences[i].size()
// samples. When `order` is given, sequence i is replayed in the order
// order[i] (a permutation of its row indices).
class ReplayStreams : public SampleStreams {
public:
    explicit ReplayStreams(std::span<const DataSequence> sequences,
                           std::vector<std::vector<std::size_t>> order = {});

    std::size_t num_sequences() const override { return sequences_.size(); }
    std::size_t dim() const override { return sequences_.front().dim(); }
    bool next(std::size_t i, std::span<double> out) override;

private:
    std::span<const DataSequence> sequences_;
    std::vector<std::vector<std::size_t>> order_;
    std::vector<std::size_t> cursor_;
};

// Pulls n samples from every stream. Throws std::runtime_error if a stream
// runs out first.
std::vector<DataSequence> draw_prefix(SampleStreams& streams, std::size_t n);

// CSV with header `seq_id,dim_0[,dim_1,...]`, one sample per row, rows of a
// sequence consecutive and in time order. Sequences are returned in order of
// first appearance. Throws std::runtime_error with the offending line number
// on malformed input.
std::vector<DataSequence> ingest_csv(std::istream& in);
std::vector<DataSequence> ingest_csv(const std::filesystem::path& path);

}  // namespace seqclust
