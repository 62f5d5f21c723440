#pragma once

#include <span>
#include <string>

#include "coregraph/types.hpp"

namespace coregraph {

struct ScoreHistogram {
    std::vector<std::size_t> counts;  // sums to the coreset size
    double range_lo = 0.0;            // full-dataset score range, not the coreset's
    double range_hi = 0.0;
    double entropy_nats = 0.0;
};

struct CoresetReport {
    std::size_t coreset_size = 0;
    double auc_pr = 0.0;
    std::string auc_pr_mode;  // "eval-set" or "self-coverage"
    double covering_radius = 0.0;
    bool has_scores = false;
    ScoreHistogram histogram;
};

// Mean distance from each evaluation point to its nearest coreset point.
// Lower is better coverage.
double auc_pr(const EmbeddingMatrix& coreset, const EmbeddingMatrix& eval);

// Max distance from any point of the full set to its nearest coreset point.
double covering_radius(const EmbeddingMatrix& coreset, const EmbeddingMatrix& full);

// Equal-width histogram of the selected samples' scores over the FULL
// dataset's score range, plus Shannon entropy in nats (0 log 0 := 0).
ScoreHistogram score_distribution(const ScoreVector& scores, std::span<const index_t> coreset,
                                  std::size_t bins);

// Projection onto the top-2 principal components (mean-centered power
// iteration with deflation). Component signs are fixed by making the
// largest-magnitude loading positive; rank-deficient input yields a zero
// second column.
EmbeddingMatrix project_2d(const EmbeddingMatrix& emb, std::uint64_t seed = 0);

CoresetReport evaluate_coreset(const EmbeddingMatrix& emb, const Coreset& coreset,
                               const EmbeddingMatrix* eval_set, const ScoreVector* scores,
                               std::size_t bins);

}  // namespace coregraph
