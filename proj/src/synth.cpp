#include "coregraph/synth.hpp"

#include <algorithm>
#include <cmath>

#include "coregraph/io.hpp"
#include "coregraph/parallel.hpp"
#include "coregraph/rng.hpp"

namespace coregraph {

namespace {

double sqdist_rows(const EmbeddingMatrix& emb, std::size_t a, std::size_t b) {
    double s = 0.0;
    const double* pa = emb.values.data() + a * emb.d;
    const double* pb = emb.values.data() + b * emb.d;
    for (std::size_t t = 0; t < emb.d; ++t) {
        const double diff = pa[t] - pb[t];
        s += diff * diff;
    }
    return s;
}

double kde_bandwidth(const EmbeddingMatrix& emb, std::uint64_t seed) {
    const std::size_t take = std::min<std::size_t>(emb.n, 200);
    SplitMix64 rng = rng_stream(seed, "synth.kde");
    std::vector<index_t> pool(emb.n);
    for (std::size_t i = 0; i < emb.n; ++i) pool[i] = static_cast<index_t>(i);
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }

    std::vector<double> pairwise;
    pairwise.reserve(take * (take - 1) / 2);
    for (std::size_t a = 0; a < take; ++a)
        for (std::size_t b = a + 1; b < take; ++b)
            pairwise.push_back(std::sqrt(sqdist_rows(emb, pool[a], pool[b])));
    if (pairwise.empty()) return 1.0;
    std::sort(pairwise.begin(), pairwise.end());
    const double median = pairwise[pairwise.size() / 2];
    return median > 0.0 ? median : 1.0;
}

ScoreVector inverse_density_scores(const EmbeddingMatrix& emb, std::uint64_t seed) {
    const double h = kde_bandwidth(emb, seed);
    const double inv = 1.0 / (2.0 * h * h);

    ScoreVector neg_log(emb.n);
    parallel_for(0, emb.n, 64, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double density = 0.0;
            for (std::size_t j = 0; j < emb.n; ++j) density += std::exp(-sqdist_rows(emb, i, j) * inv);
            neg_log[i] = -std::log(density / static_cast<double>(emb.n));
        }
    });
    return normalize_scores(neg_log);
}

}  // namespace

SynthDataset generate(const MixtureSpec& spec) {
    if (spec.dimension < 1) throw ValidationError("invalid-spec: dimension must be >= 1");
    if (spec.components.empty()) throw ValidationError("invalid-spec: at least one component required");
    std::size_t total = 0;
    for (const auto& comp : spec.components) {
        if (comp.mean.size() != spec.dimension)
            throw ValidationError("invalid-spec: component mean has " + std::to_string(comp.mean.size()) +
                                  " entries, expected " + std::to_string(spec.dimension));
        if (!(comp.stddev > 0.0)) throw ValidationError("invalid-spec: component stddev must be > 0");
        total += comp.count;
    }
    if (total < 1) throw ValidationError("invalid-spec: total sample count must be >= 1");

    SynthDataset data;
    data.embeddings.n = total;
    data.embeddings.d = spec.dimension;
    data.embeddings.values.resize(total * spec.dimension);
    data.labels.reserve(total);

    SplitMix64 rng = rng_stream(spec.seed, "synth");
    std::size_t row = 0;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        const auto& comp = spec.components[c];
        for (std::size_t s = 0; s < comp.count; ++s, ++row) {
            double* out = data.embeddings.values.data() + row * spec.dimension;
            for (std::size_t t = 0; t < spec.dimension; ++t)
                out[t] = comp.mean[t] + comp.stddev * rng.next_gaussian();
            data.labels.push_back(static_cast<index_t>(c));
        }
    }

    switch (spec.score_rule) {
        case ScoreRule::Uniform:
            data.scores = normalize_scores(ScoreVector(total, 1.0));
            break;
        case ScoreRule::InverseDensity:
            data.scores = inverse_density_scores(data.embeddings, spec.seed);
            break;
        case ScoreRule::CustomFile:
            data.scores = read_scores(spec.custom_score_path, total);
            break;
    }
    return data;
}

}  // namespace coregraph
