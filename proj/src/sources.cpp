#include "seqclust/sources.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

namespace seqclust {

namespace {

struct Validator {
    void operator()(const GaussianSource& g) const {
        if (!(g.variance > 0.0) || !std::isfinite(g.variance) || !std::isfinite(g.mean)) {
            throw std::invalid_argument("gaussian source needs a finite mean and positive variance");
        }
    }
    void operator()(const MixtureSource& m) const {
        if (m.components.empty()) throw std::invalid_argument("mixture has no components");
        double total = 0.0;
        for (const auto& c : m.components) {
            (*this)(GaussianSource{c.mean, c.variance});
            if (!(c.weight > 0.0)) throw std::invalid_argument("mixture weights must be positive");
            total += c.weight;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw std::invalid_argument("mixture weights must sum to 1");
        }
    }
};

double draw(const SourceSpec& spec, Rng& rng, std::normal_distribution<double>& z) {
    if (const auto* g = std::get_if<GaussianSource>(&spec)) {
        return g->mean + std::sqrt(g->variance) * z(rng);
    }
    const auto& mix = std::get<MixtureSource>(spec);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    const MixtureComponent* chosen = &mix.components.back();
    for (const auto& c : mix.components) {
        acc += c.weight;
        if (u < acc) {
            chosen = &c;
            break;
        }
    }
    return chosen->mean + std::sqrt(chosen->variance) * z(rng);
}

ExampleSpec gaussian_example(int id, const std::vector<std::vector<double>>& cluster_means) {
    ExampleSpec ex;
    ex.id = id;
    std::vector<std::vector<std::size_t>> clusters;
    for (const auto& means : cluster_means) {
        clusters.emplace_back();
        for (double mu : means) {
            clusters.back().push_back(ex.sources.size());
            ex.sources.emplace_back(GaussianSource{mu, 1.0});
        }
    }
    ex.truth = Partition(ex.sources.size(), std::move(clusters));
    return ex;
}

ExampleSpec mixture_example(int id,
                            const std::vector<std::vector<std::pair<double, double>>>& clusters) {
    ExampleSpec ex;
    ex.id = id;
    std::vector<std::vector<std::size_t>> members;
    for (const auto& cluster : clusters) {
        members.emplace_back();
        for (const auto& [m1, m2] : cluster) {
            members.back().push_back(ex.sources.size());
            ex.sources.emplace_back(MixtureSource{{{m1, 1.0, 0.7}, {m2, 1.0, 0.3}}});
        }
    }
    ex.truth = Partition(ex.sources.size(), std::move(members));
    return ex;
}

}  // namespace

void validate(const SourceSpec& spec) { std::visit(Validator{}, spec); }

double sample(const SourceSpec& spec, Rng& rng) {
    validate(spec);
    std::normal_distribution<double> z(0.0, 1.0);
    return draw(spec, rng, z);
}

DataSequence draw_sequence(const SourceSpec& spec, std::size_t n, Rng& rng, std::int64_t id) {
    validate(spec);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> values(n);
    for (auto& v : values) v = draw(spec, rng, z);
    return DataSequence(1, std::move(values), id);
}

ExampleSpec example(int id) {
    ExampleSpec ex;
    switch (id) {
        case 1:
            ex = gaussian_example(1, {{0.4, 0.55, 0.7, 0.85, 1.0, 1.15, 1.3, 1.45, 1.6},
                                      {1.85, 2.0, 2.15}});
            ex.mmd = ReferenceDistances{0.49401, 0.11152, 0.06238};
            ex.ksd = ReferenceDistances{0.444, 0.0995, 0.0541};
            break;
        case 2:
            ex = gaussian_example(2, {{0.7, 0.85, 1.0, 1.15, 1.3}, {1.7, 1.85, 2.0, 2.15, 2.3}});
            ex.mmd = ReferenceDistances{0.26219, 0.1665, 0.06238};
            ex.ksd = ReferenceDistances{0.2362, 0.1668, 0.0541};
            break;
        case 3: {
            std::vector<std::vector<double>> means;
            for (int k = 1; k <= 5; ++k) means.emplace_back(5, static_cast<double>(k - 1));
            ex = gaussian_example(3, means);
            ex.mmd = ReferenceDistances{0.0, 0.41289, 0.0};
            ex.ksd = ReferenceDistances{0.0, 0.3789, 0.0};
            break;
        }
        case 4:
            ex = mixture_example(4, {{{-0.5, 0.0}, {0.0, 0.5}, {0.5, 1.0}},
                                     {{1.2, 1.7}, {1.7, 2.2}, {2.2, 2.7}}});
            ex.mmd = ReferenceDistances{0.41258, 0.25897, 0.24583};
            break;
        case 5:
            ex = mixture_example(5, {{{-0.5, 0.0}, {0.0, 0.5}, {0.5, 1.0}},
                                     {{1.35, 1.85}, {1.85, 2.35}, {2.35, 2.85}}});
            ex.mmd = ReferenceDistances{0.41258, 0.35536, 0.24583};
            break;
        default:
            throw std::invalid_argument("example id must be in 1..5, got " + std::to_string(id));
    }
    return ex;
}

SyntheticStreams::SyntheticStreams(std::vector<SourceSpec> sources, std::uint64_t master,
                                   std::uint64_t salt, std::uint64_t trial)
    : sources_(std::move(sources)) {
    rngs_.reserve(sources_.size());
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        validate(sources_[i]);
        rngs_.push_back(make_rng(master, {salt, trial, i}));
    }
    normals_.assign(sources_.size(), std::normal_distribution<double>(0.0, 1.0));
}

bool SyntheticStreams::next(std::size_t i, std::span<double> out) {
    out[0] = draw(sources_[i], rngs_[i], normals_[i]);
    return true;
}

ReplayStreams::ReplayStreams(std::span<const DataSequence> sequences,
                             std::vector<std::vector<std::size_t>> order)
    : sequences_(sequences), order_(std::move(order)), cursor_(sequences.size(), 0) {
    if (sequences_.empty()) throw std::invalid_argument("no sequences to replay");
    for (const auto& s : sequences_) {
        if (s.dim() != sequences_.front().dim()) {
            throw std::invalid_argument("replayed sequences have different dimensions");
        }
    }
    if (!order_.empty() && order_.size() != sequences_.size()) {
        throw std::invalid_argument("one replay order per sequence required");
    }
}

bool ReplayStreams::next(std::size_t i, std::span<double> out) {
    const auto& seq = sequences_[i];
    const std::size_t limit = order_.empty() ? seq.size() : order_[i].size();
    if (cursor_[i] >= limit) return false;
    const std::size_t row = order_.empty() ? cursor_[i] : order_[i][cursor_[i]];
    const auto s = seq.sample(row);
    std::copy(s.begin(), s.end(), out.begin());
    ++cursor_[i];
    return true;
}

std::vector<DataSequence> draw_prefix(SampleStreams& streams, std::size_t n) {
    const std::size_t m = streams.num_sequences();
    std::vector<DataSequence> out;
    out.reserve(m);
    std::vector<double> buf(streams.dim());
    for (std::size_t i = 0; i < m; ++i) {
        DataSequence seq(streams.dim(), static_cast<std::int64_t>(i));
        seq.reserve(n);
        for (std::size_t t = 0; t < n; ++t) {
            if (!streams.next(i, buf)) {
                throw std::runtime_error("sequence " + std::to_string(i + 1) + " has fewer than " +
                                         std::to_string(n) + " samples");
            }
            seq.push_back(buf);
        }
        out.push_back(std::move(seq));
    }
    return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("CSV line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::vector<DataSequence> ingest_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw std::runtime_error("CSV input is empty");
    {
        auto header = split_fields(trim(line));
        if (header.size() < 2 || trim(header[0]) != "seq_id") {
            fail(line_no, "header must be seq_id,dim_0[,dim_1,...]");
        }
        for (std::size_t d = 1; d < header.size(); ++d) {
            if (trim(header[d]) != "dim_" + std::to_string(d - 1)) {
                fail(line_no, "expected column dim_" + std::to_string(d - 1));
            }
        }
        dim = header.size() - 1;
    }

    std::vector<DataSequence> out;
    std::unordered_set<std::int64_t> finished;
    std::vector<double> sample(dim);
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto fields = split_fields(text);
        if (fields.size() != dim + 1) {
            fail(line_no, "expected " + std::to_string(dim + 1) + " fields, found " +
                              std::to_string(fields.size()));
        }
        std::int64_t id = 0;
        {
            const auto f = trim(fields[0]);
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), id);
            if (ec != std::errc() || ptr != f.data() + f.size()) fail(line_no, "bad seq_id");
        }
        for (std::size_t d = 0; d < dim; ++d) {
            const auto f = trim(fields[d + 1]);
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), sample[d]);
            if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(sample[d])) {
                fail(line_no, "bad value in column dim_" + std::to_string(d));
            }
        }
        if (out.empty() || out.back().id() != id) {
            if (!out.empty()) finished.insert(out.back().id());
            if (finished.count(id)) {
                fail(line_no, "rows of seq_id " + std::to_string(id) + " are not consecutive");
            }
            out.emplace_back(dim, id);
        }
        out.back().push_back(sample);
    }
    if (out.empty()) throw std::runtime_error("CSV input has no data rows");
    return out;
}

std::vector<DataSequence> ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return ingest_csv(in);
}

}  // namespace seqclust
