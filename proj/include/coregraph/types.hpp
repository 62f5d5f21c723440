#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coregraph/error.hpp"

namespace coregraph {

using index_t = std::uint32_t;

// Dense row-major matrix of embedding coordinates, one row per sample.
// Stored as doubles in memory regardless of the on-disk precision; all
// distance arithmetic runs in double.
struct EmbeddingMatrix {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> values;  // n * d, row-major

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values.data() + i * d, d);
    }
};

// Per-sample difficulty scores (node features of the dataset graph).
using ScoreVector = std::vector<double>;

// Optional per-sample category labels; ids may be sparse.
using LabelVector = std::vector<index_t>;

// Everything a selection run needs to be reproduced.
struct SelectionConfig {
    double prune_rate = 0.0;   // fraction of the dataset removed
    std::size_t budget = 0;    // resolved subset size (0 = derive from rate)
    std::size_t k = 10;        // neighbors per node
    double gamma_f = 1.0;      // forward kernel sharpness
    double gamma_r = 0.3;      // reverse kernel sharpness
    std::string method = "d2";
    std::uint64_t seed = 0;
    bool stratify_by_label = false;
    bool normalize_scores = false;
    bool symmetrize_graph = false;
};

// Selection result. `indices` preserves selection order.
struct Coreset {
    std::vector<index_t> indices;
    std::string method;
    SelectionConfig config;
    std::uint64_t seed = 0;
    std::size_t source_n = 0;  // size of the dataset the indices refer to
};

// Cross-checked view over one dataset's inputs. Borrows, does not own.
struct ValidatedBundle {
    const EmbeddingMatrix* embeddings = nullptr;
    const ScoreVector* scores = nullptr;
    const LabelVector* labels = nullptr;  // nullptr when absent
};

// Checks every type invariant across the three inputs: buffer shape, finite
// values, matching lengths. Throws ValidationError ("dimension-mismatch",
// "non-finite-value" with the offending index).
ValidatedBundle validate_pair(const EmbeddingMatrix& emb, const ScoreVector& scores,
                              const LabelVector* labels = nullptr);

// Budget m = round(n * (1 - alpha)), half away from zero, clamped to [1, n].
// Throws ValidationError("invalid-rate") unless 0 <= alpha < 1.
std::size_t budget_from_rate(std::size_t n, double alpha);

// Min-max rescale to [0, 1]. A constant vector maps to all 0.5 so that the
// unit-score mode passes through unchanged in relative terms.
ScoreVector normalize_scores(const ScoreVector& scores);

// Rows of `emb` at the given indices, in order.
EmbeddingMatrix select_rows(const EmbeddingMatrix& emb, std::span<const index_t> indices);

}  // namespace coregraph
