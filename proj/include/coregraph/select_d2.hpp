#pragma once

#include <cstdint>
#include <map>

#include "coregraph/graph.hpp"
#include "coregraph/types.hpp"

namespace coregraph {

struct SelectionStats {
    std::uint64_t queue_pushes = 0;  // total heap pushes; bounded by n + m*k
};

struct StageTimes {
    double graph_build_s = 0.0;  // k-NN search + graph initialization
    double forward_pass_s = 0.0;
    double selection_s = 0.0;
};

// Iterative diversity-aware selection over post-forward node scores.
// Repeats m times: pick the unselected node with the highest live score
// (tie: lowest index), then down-weight each of its still-unselected
// out-neighbors j by exp(-gamma_r * d(k,j)^2) * x_k, with x_k read at
// selection time. Implemented with a lazy-deletion max-heap: stale entries
// are discarded on pop, and every down-weight pushes one refreshed entry,
// so total pushes stay within n + m*k. The selection sequence is identical
// to rescanning all remaining candidates each round.
std::vector<index_t> d2_select(const DatasetGraph& g, std::size_t m, double gamma_r,
                               SelectionStats* stats = nullptr);

// Per-class budgets proportional to class size (largest-remainder rounding,
// summing exactly to m). Every nonempty class gets at least one slot; throws
// "budget-below-class-count" when m is smaller than the number of classes.
std::map<index_t, std::size_t> stratified_budgets(const LabelVector& labels, std::size_t m);

// Full pipeline: k-NN, graph initialization, forward pass, selection. With
// cfg.stratify_by_label and labels present, an independent graph + selection
// runs per class (ascending label order) on that class's budget, keeping the
// distance scale intra-class. Scores are used as given; pass unit scores for
// the self-supervised mode.
Coreset d2_prune(const EmbeddingMatrix& emb, const ScoreVector& scores,
                 const LabelVector* labels, const SelectionConfig& cfg,
                 StageTimes* times = nullptr, SelectionStats* stats = nullptr);

}  // namespace coregraph
