#include "coregraph/select_d2.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "coregraph/knn.hpp"

namespace coregraph {

namespace {

struct QueueEntry {
    double score;
    index_t idx;
};

// Max-heap by score; equal scores surface the lowest index first.
struct QueueLess {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.score != b.score) return a.score < b.score;
        return a.idx > b.idx;
    }
};

double elapsed_s(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

}  // namespace

std::vector<index_t> d2_select(const DatasetGraph& g, std::size_t m, double gamma_r,
                               SelectionStats* stats) {
    if (!g.forward_applied)
        throw ValidationError("forward-pass-missing: selection requires the forward pass");
    if (m > g.n)
        throw ValidationError("budget-exceeds-n: budget " + std::to_string(m) + " for n=" +
                              std::to_string(g.n));
    if (!(gamma_r >= 0.0))
        throw ValidationError("invalid-rate: gamma_r must be >= 0");

    std::vector<double> live = g.node_scores;
    std::vector<char> selected(g.n, 0);
    std::uint64_t pushes = 0;

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueLess> queue;
    for (std::size_t i = 0; i < g.n; ++i) queue.push(QueueEntry{live[i], static_cast<index_t>(i)});
    pushes += g.n;

    std::vector<index_t> picked;
    picked.reserve(m);
    while (picked.size() < m) {
        const QueueEntry top = queue.top();
        queue.pop();
        // An unselected node always has an entry carrying its current score,
        // so stale or already-selected entries can simply be dropped.
        if (selected[top.idx] || top.score != live[top.idx]) continue;

        selected[top.idx] = 1;
        picked.push_back(top.idx);
        const double picked_score = live[top.idx];

        for (std::size_t e = g.offsets[top.idx]; e < g.offsets[top.idx + 1]; ++e) {
            const index_t j = g.targets[e];
            if (selected[j]) continue;
            const double dist = g.edge_dist[e];
            live[j] -= std::exp(-gamma_r * dist * dist) * picked_score;
            queue.push(QueueEntry{live[j], j});
            ++pushes;
        }
    }

    if (stats != nullptr) stats->queue_pushes = pushes;
    return picked;
}

std::map<index_t, std::size_t> stratified_budgets(const LabelVector& labels, std::size_t m) {
    if (labels.empty()) throw ValidationError("missing-labels: stratified budgets need labels");
    if (m > labels.size())
        throw ValidationError("budget-exceeds-n: budget " + std::to_string(m) + " for n=" +
                              std::to_string(labels.size()));

    std::map<index_t, std::size_t> counts;
    for (index_t lab : labels) ++counts[lab];
    if (m < counts.size())
        throw ValidationError("budget-below-class-count: budget " + std::to_string(m) +
                              " cannot cover " + std::to_string(counts.size()) + " classes");

    const double n = static_cast<double>(labels.size());
    std::map<index_t, std::size_t> budgets;
    std::vector<std::pair<double, index_t>> remainders;  // (-remainder, label) for stable sort
    std::size_t assigned = 0;
    for (const auto& [lab, count] : counts) {
        const double quota = static_cast<double>(count) * static_cast<double>(m) / n;
        const auto base = static_cast<std::size_t>(std::floor(quota));
        budgets[lab] = base;
        assigned += base;
        remainders.emplace_back(-(quota - static_cast<double>(base)), lab);
    }
    std::sort(remainders.begin(), remainders.end());
    for (std::size_t i = 0; assigned < m; ++i) {
        ++budgets[remainders[i % remainders.size()].second];
        ++assigned;
    }

    // Proportional rounding can starve tiny classes; shift slots from the
    // largest budget until every class holds at least one.
    for (;;) {
        index_t starved = 0;
        bool found = false;
        std::size_t starved_count = 0;
        for (const auto& [lab, b] : budgets) {
            if (b == 0 && counts[lab] > starved_count) {
                starved = lab;
                starved_count = counts[lab];
                found = true;
            }
        }
        if (!found) break;
        index_t donor = 0;
        std::size_t donor_budget = 0;
        for (const auto& [lab, b] : budgets) {
            if (b > donor_budget) {
                donor = lab;
                donor_budget = b;
            }
        }
        --budgets[donor];
        ++budgets[starved];
    }
    return budgets;
}

namespace {

// One global (or per-class) run: k-NN -> graph -> forward -> select.
std::vector<index_t> run_pipeline(const EmbeddingMatrix& emb, const ScoreVector& scores,
                                  std::size_t m, const SelectionConfig& cfg,
                                  StageTimes* times, SelectionStats* stats) {
    auto t0 = std::chrono::steady_clock::now();
    const NeighborList neighbors = build_knn(emb, cfg.k);
    DatasetGraph g = build_graph(scores, neighbors, cfg.gamma_f, cfg.symmetrize_graph);
    if (times != nullptr) times->graph_build_s += elapsed_s(t0);

    t0 = std::chrono::steady_clock::now();
    forward_message_pass(g);
    if (times != nullptr) times->forward_pass_s += elapsed_s(t0);

    t0 = std::chrono::steady_clock::now();
    SelectionStats local;
    auto picked = d2_select(g, m, cfg.gamma_r, &local);
    if (times != nullptr) times->selection_s += elapsed_s(t0);
    if (stats != nullptr) stats->queue_pushes += local.queue_pushes;
    return picked;
}

}  // namespace

Coreset d2_prune(const EmbeddingMatrix& emb, const ScoreVector& scores,
                 const LabelVector* labels, const SelectionConfig& cfg,
                 StageTimes* times, SelectionStats* stats) {
    validate_pair(emb, scores, labels);
    const std::size_t m = cfg.budget > 0 ? cfg.budget : budget_from_rate(emb.n, cfg.prune_rate);
    if (m > emb.n)
        throw ValidationError("budget-exceeds-n: budget " + std::to_string(m) + " for n=" +
                              std::to_string(emb.n));

    Coreset out;
    out.method = "d2";
    out.config = cfg;
    out.config.budget = m;
    out.seed = cfg.seed;
    out.source_n = emb.n;

    if (!cfg.stratify_by_label || labels == nullptr) {
        out.indices = run_pipeline(emb, scores, m, cfg, times, stats);
        return out;
    }

    const auto budgets = stratified_budgets(*labels, m);
    std::map<index_t, std::vector<index_t>> members;
    for (std::size_t i = 0; i < labels->size(); ++i)
        members[(*labels)[i]].push_back(static_cast<index_t>(i));

    for (const auto& [lab, class_budget] : budgets) {
        if (class_budget == 0) continue;
        const auto& idx = members.at(lab);
        const EmbeddingMatrix class_emb = select_rows(emb, idx);
        ScoreVector class_scores(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) class_scores[i] = scores[idx[i]];
        const auto local = run_pipeline(class_emb, class_scores, class_budget, cfg, times, stats);
        for (index_t li : local) out.indices.push_back(idx[li]);
    }
    return out;
}

}  // namespace coregraph
