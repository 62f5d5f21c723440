#pragma once

#include <cstdint>
#include <string>

#include "coregraph/types.hpp"

namespace coregraph {

enum class ScoreRule {
    InverseDensity,  // min-max normalized -log of a Gaussian KDE
    Uniform,         // constant (normalizes to all 0.5)
    CustomFile,      // scores read from custom_score_path
};

struct MixtureComponent {
    std::vector<double> mean;
    double stddev = 1.0;
    std::size_t count = 0;
};

struct MixtureSpec {
    std::size_t dimension = 0;
    std::uint64_t seed = 0;
    ScoreRule score_rule = ScoreRule::InverseDensity;
    std::string custom_score_path;
    std::vector<MixtureComponent> components;
};

struct SynthDataset {
    EmbeddingMatrix embeddings;
    ScoreVector scores;
    LabelVector labels;  // component index, contiguous blocks
};

// Draws each component's samples with the seeded generator (labels follow
// component order). Inverse-density scores come from a Gaussian KDE whose
// bandwidth is the median pairwise distance of a 200-point subsample.
SynthDataset generate(const MixtureSpec& spec);

}  // namespace coregraph
