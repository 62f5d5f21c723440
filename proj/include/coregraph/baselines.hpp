#pragma once

#include <cstdint>

#include "coregraph/types.hpp"

namespace coregraph {

// Coverage-based stratified sampling over the difficulty-score range.
struct CcsConfig {
    std::size_t bin_count = 50;  // equal-width score strata
    double beta = 0.0;           // fraction of hardest samples cut before binning
};

struct KMeansResult {
    EmbeddingMatrix centroids;       // c x d
    std::vector<index_t> assignment;  // nearest centroid per sample
    std::size_t iterations = 0;
    std::size_t empty_reseeds = 0;   // degenerate clusters re-seeded from the farthest point
};

// Uniform sample of m indices without replacement. Output order is the
// draw order.
Coreset random_select(std::size_t n, std::size_t m, std::uint64_t seed);

// The m largest scores, descending; equal scores yield the lower index first.
Coreset topk_select(const ScoreVector& scores, std::size_t m);

// Greedy farthest-first traversal. The first center is the point farthest
// from the dataset mean; each next center maximizes the distance to its
// nearest chosen center. Ties resolve to the lowest index. Deterministic.
Coreset kcenter_select(const EmbeddingMatrix& emb, std::size_t m);

// Drops the floor(beta*n) hardest samples, splits the remaining score range
// into equal-width bins, spreads the budget as evenly as the bin populations
// allow (see ccs_bin_allocation), and samples uniformly inside each bin.
Coreset ccs_select(const ScoreVector& scores, std::size_t m, const CcsConfig& cfg,
                   std::uint64_t seed);

// CCS strata with greedy k-center selection inside each bin instead of
// uniform sampling; allocation rule shared with ccs_select.
Coreset ccs_kcenter_select(const EmbeddingMatrix& emb, const ScoreVector& scores, std::size_t m,
                           const CcsConfig& cfg);

// Budget split across bins: repeatedly hand one slot to the least-allocated
// bin that still has unsampled members, preferring the bin with the most
// remaining members on ties (then the lowest bin id). Exposed for tests.
std::vector<std::size_t> ccs_bin_allocation(const std::vector<std::size_t>& bin_sizes, std::size_t m);

// Per class: samples whose distance to the class centroid is closest to the
// class median distance, budgets proportional to class size.
Coreset moderate_select(const EmbeddingMatrix& emb, const LabelVector& labels, std::size_t m);

// Lloyd k-means with seeded farthest-point initialization; the returned score
// of each sample is its distance to the assigned centroid (self-supervised
// difficulty proxy).
ScoreVector prototypicality_scores(const EmbeddingMatrix& emb, std::size_t clusters,
                                   std::uint64_t seed, std::size_t max_iters = 100,
                                   double tol = 1e-6, KMeansResult* result = nullptr);

}  // namespace coregraph
