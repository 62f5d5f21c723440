#include "coregraph/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "coregraph/knn.hpp"
#include "coregraph/parallel.hpp"
#include "coregraph/rng.hpp"
#include "coregraph/select_d2.hpp"

namespace coregraph {

namespace {

void require_budget(std::size_t m, std::size_t n) {
    if (m < 1) throw ValidationError("invalid-rate: budget must be >= 1");
    if (m > n)
        throw ValidationError("budget-exceeds-n: budget " + std::to_string(m) + " for n=" +
                              std::to_string(n));
}

SelectionConfig minimal_config(std::string method, std::size_t n, std::size_t m,
                               std::uint64_t seed) {
    SelectionConfig cfg;
    cfg.method = std::move(method);
    cfg.budget = m;
    cfg.prune_rate = 1.0 - static_cast<double>(m) / static_cast<double>(n);
    cfg.seed = seed;
    return cfg;
}

double sqdist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double diff = a[t] - b[t];
        s += diff * diff;
    }
    return s;
}

std::vector<double> column_mean(const EmbeddingMatrix& emb, std::span<const index_t> rows) {
    std::vector<double> mean(emb.d, 0.0);
    for (index_t r : rows) {
        const auto row = emb.row(r);
        for (std::size_t t = 0; t < emb.d; ++t) mean[t] += row[t];
    }
    for (auto& v : mean) v /= static_cast<double>(rows.size());
    return mean;
}

// Greedy farthest-first traversal over a subset of rows; returns positions
// into `rows` in pick order.
std::vector<std::size_t> farthest_first(const EmbeddingMatrix& emb, std::span<const index_t> rows,
                                        std::size_t m) {
    const std::vector<double> mean = column_mean(emb, rows);
    std::size_t first = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double d2 = sqdist(emb.row(rows[i]), mean);
        if (d2 > best) {
            best = d2;
            first = i;
        }
    }

    std::vector<std::size_t> picked{first};
    std::vector<double> nearest(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        nearest[i] = sqdist(emb.row(rows[i]), emb.row(rows[first]));

    while (picked.size() < m) {
        std::size_t next = 0;
        double far = -1.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (nearest[i] > far) {
                far = nearest[i];
                next = i;
            }
        }
        picked.push_back(next);
        nearest[next] = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            nearest[i] = std::min(nearest[i], sqdist(emb.row(rows[i]), emb.row(rows[next])));
    }
    return picked;
}

// Draws `count` elements of `pool` without replacement (partial
// Fisher-Yates); pool is consumed in place.
void draw_into(std::vector<index_t>& pool, std::size_t count, SplitMix64& rng,
               std::vector<index_t>& out) {
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
}

struct CcsBins {
    std::vector<std::vector<index_t>> members;  // ascending index within each bin
};

CcsBins ccs_binning(const ScoreVector& scores, std::size_t m, const CcsConfig& cfg) {
    const std::size_t n = scores.size();
    if (cfg.bin_count < 1) throw ValidationError("invalid-rate: bin count must be >= 1");
    if (!(cfg.beta >= 0.0) || cfg.beta >= 1.0)
        throw ValidationError("invalid-rate: beta must lie in [0, 1)");

    // Hard cutoff: remove the floor(beta*n) highest-scoring samples.
    const auto cut = static_cast<std::size_t>(std::floor(cfg.beta * static_cast<double>(n)));
    std::vector<index_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](index_t a, index_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    std::vector<index_t> kept(order.begin() + cut, order.end());
    if (m > kept.size())
        throw ValidationError("budget-infeasible: budget " + std::to_string(m) + " exceeds " +
                              std::to_string(kept.size()) + " samples left after the beta cutoff");
    std::sort(kept.begin(), kept.end());

    double lo = scores[kept[0]], hi = scores[kept[0]];
    for (index_t i : kept) {
        lo = std::min(lo, scores[i]);
        hi = std::max(hi, scores[i]);
    }

    CcsBins bins;
    bins.members.resize(cfg.bin_count);
    for (index_t i : kept) {
        std::size_t b = 0;
        if (hi > lo) {
            b = static_cast<std::size_t>((scores[i] - lo) / (hi - lo) * static_cast<double>(cfg.bin_count));
            if (b >= cfg.bin_count) b = cfg.bin_count - 1;
        }
        bins.members[b].push_back(i);
    }
    return bins;
}

}  // namespace

Coreset random_select(std::size_t n, std::size_t m, std::uint64_t seed) {
    require_budget(m, n);
    SplitMix64 rng = rng_stream(seed, "select.random");
    std::vector<index_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);

    Coreset out;
    out.method = "random";
    out.config = minimal_config("random", n, m, seed);
    out.seed = seed;
    out.source_n = n;
    out.indices.reserve(m);
    draw_into(pool, m, rng, out.indices);
    return out;
}

Coreset topk_select(const ScoreVector& scores, std::size_t m) {
    require_budget(m, scores.size());
    std::vector<index_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](index_t a, index_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    Coreset out;
    out.method = "topk";
    out.config = minimal_config("topk", scores.size(), m, 0);
    out.source_n = scores.size();
    out.indices.assign(order.begin(), order.begin() + m);
    return out;
}

Coreset kcenter_select(const EmbeddingMatrix& emb, std::size_t m) {
    require_budget(m, emb.n);
    std::vector<index_t> rows(emb.n);
    std::iota(rows.begin(), rows.end(), 0);
    const auto picked = farthest_first(emb, rows, m);

    Coreset out;
    out.method = "kcenter";
    out.config = minimal_config("kcenter", emb.n, m, 0);
    out.source_n = emb.n;
    out.indices.reserve(m);
    for (std::size_t p : picked) out.indices.push_back(static_cast<index_t>(p));
    return out;
}

std::vector<std::size_t> ccs_bin_allocation(const std::vector<std::size_t>& bin_sizes,
                                            std::size_t m) {
    std::size_t capacity = 0;
    for (std::size_t s : bin_sizes) capacity += s;
    if (m > capacity) throw ValidationError("budget-infeasible: bins hold fewer samples than the budget");

    std::vector<std::size_t> alloc(bin_sizes.size(), 0);
    for (std::size_t slot = 0; slot < m; ++slot) {
        std::size_t pick = bin_sizes.size();
        for (std::size_t b = 0; b < bin_sizes.size(); ++b) {
            if (alloc[b] >= bin_sizes[b]) continue;
            if (pick == bin_sizes.size()) {
                pick = b;
                continue;
            }
            const std::size_t rem_b = bin_sizes[b] - alloc[b];
            const std::size_t rem_p = bin_sizes[pick] - alloc[pick];
            if (alloc[b] < alloc[pick] || (alloc[b] == alloc[pick] && rem_b > rem_p)) pick = b;
        }
        ++alloc[pick];
    }
    return alloc;
}

Coreset ccs_select(const ScoreVector& scores, std::size_t m, const CcsConfig& cfg,
                   std::uint64_t seed) {
    require_budget(m, scores.size());
    CcsBins bins = ccs_binning(scores, m, cfg);
    std::vector<std::size_t> sizes(bins.members.size());
    for (std::size_t b = 0; b < bins.members.size(); ++b) sizes[b] = bins.members[b].size();
    const auto alloc = ccs_bin_allocation(sizes, m);

    Coreset out;
    out.method = "ccs";
    out.config = minimal_config("ccs", scores.size(), m, seed);
    out.seed = seed;
    out.source_n = scores.size();
    out.indices.reserve(m);
    SplitMix64 rng = rng_stream(seed, "select.ccs");
    for (std::size_t b = 0; b < bins.members.size(); ++b)
        draw_into(bins.members[b], alloc[b], rng, out.indices);
    return out;
}

Coreset ccs_kcenter_select(const EmbeddingMatrix& emb, const ScoreVector& scores, std::size_t m,
                           const CcsConfig& cfg) {
    require_budget(m, scores.size());
    if (scores.size() != emb.n)
        throw ValidationError("dimension-mismatch: " + std::to_string(scores.size()) +
                              " scores for " + std::to_string(emb.n) + " samples");
    CcsBins bins = ccs_binning(scores, m, cfg);
    std::vector<std::size_t> sizes(bins.members.size());
    for (std::size_t b = 0; b < bins.members.size(); ++b) sizes[b] = bins.members[b].size();
    const auto alloc = ccs_bin_allocation(sizes, m);

    Coreset out;
    out.method = "ccs-kcenter";
    out.config = minimal_config("ccs-kcenter", scores.size(), m, 0);
    out.source_n = scores.size();
    out.indices.reserve(m);
    for (std::size_t b = 0; b < bins.members.size(); ++b) {
        if (alloc[b] == 0) continue;
        const auto picked = farthest_first(emb, bins.members[b], alloc[b]);
        for (std::size_t p : picked) out.indices.push_back(bins.members[b][p]);
    }
    return out;
}

Coreset moderate_select(const EmbeddingMatrix& emb, const LabelVector& labels, std::size_t m) {
    if (labels.size() != emb.n)
        throw ValidationError("missing-labels: moderate selection needs one label per sample");
    require_budget(m, emb.n);
    const auto budgets = stratified_budgets(labels, m);

    std::map<index_t, std::vector<index_t>> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
        members[labels[i]].push_back(static_cast<index_t>(i));

    Coreset out;
    out.method = "moderate";
    out.config = minimal_config("moderate", emb.n, m, 0);
    out.config.stratify_by_label = true;
    out.source_n = emb.n;

    for (const auto& [lab, class_budget] : budgets) {
        if (class_budget == 0) continue;
        const auto& idx = members.at(lab);
        const std::vector<double> center = column_mean(emb, idx);

        std::vector<double> dist(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            dist[i] = std::sqrt(sqdist(emb.row(idx[i]), center));

        std::vector<double> sorted = dist;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t mid = sorted.size() / 2;
        const double median = (sorted.size() % 2 == 1)
                                  ? sorted[mid]
                                  : 0.5 * (sorted[mid - 1] + sorted[mid]);

        std::vector<std::size_t> rank(idx.size());
        std::iota(rank.begin(), rank.end(), 0);
        std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
            const double da = std::abs(dist[a] - median), db = std::abs(dist[b] - median);
            if (da != db) return da < db;
            return idx[a] < idx[b];
        });
        for (std::size_t r = 0; r < class_budget; ++r) out.indices.push_back(idx[rank[r]]);
    }
    return out;
}

ScoreVector prototypicality_scores(const EmbeddingMatrix& emb, std::size_t clusters,
                                   std::uint64_t seed, std::size_t max_iters, double tol,
                                   KMeansResult* result) {
    const std::size_t n = emb.n, d = emb.d;
    if (clusters < 1 || clusters > n)
        throw ValidationError("invalid-rate: cluster count must lie in [1, n]");

    // Farthest-point seeding; the first centroid is a seeded uniform draw.
    SplitMix64 rng = rng_stream(seed, "kmeans");
    std::vector<double> centroids(clusters * d);
    std::vector<char> chosen(n, 0);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

    auto place = [&](std::size_t c, std::size_t point) {
        const auto row = emb.row(point);
        std::copy(row.begin(), row.end(), centroids.begin() + c * d);
        chosen[point] = 1;
        for (std::size_t i = 0; i < n; ++i)
            nearest[i] = std::min(nearest[i], sqdist(emb.row(i), row));
    };
    place(0, static_cast<std::size_t>(rng.next_below(n)));
    for (std::size_t c = 1; c < clusters; ++c) {
        std::size_t far = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            if (nearest[i] > best) {
                best = nearest[i];
                far = i;
            }
        }
        place(c, far);
    }

    std::vector<index_t> assignment(n, 0);
    std::vector<double> assigned_sq(n, 0.0);
    std::size_t iterations = 0, reseeds = 0;

    auto assign_all = [&] {
        parallel_for(0, n, 2048, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                std::size_t best_c = 0;
                double best_d = std::numeric_limits<double>::infinity();
                const auto row = emb.row(i);
                for (std::size_t c = 0; c < clusters; ++c) {
                    const double d2 = sqdist(row, std::span<const double>(centroids.data() + c * d, d));
                    if (d2 < best_d) {
                        best_d = d2;
                        best_c = c;
                    }
                }
                assignment[i] = static_cast<index_t>(best_c);
                assigned_sq[i] = best_d;
            }
        });
    };

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        iterations = iter + 1;
        assign_all();

        std::vector<double> next(clusters * d, 0.0);
        std::vector<std::size_t> counts(clusters, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = emb.row(i);
            double* acc = next.data() + assignment[i] * d;
            for (std::size_t t = 0; t < d; ++t) acc[t] += row[t];
            ++counts[assignment[i]];
        }

        // Empty clusters re-seed at the point farthest from its centroid.
        std::vector<std::size_t> by_far(n);
        bool any_empty = false;
        for (std::size_t c = 0; c < clusters; ++c) any_empty = any_empty || counts[c] == 0;
        if (any_empty) {
            std::iota(by_far.begin(), by_far.end(), 0);
            std::sort(by_far.begin(), by_far.end(), [&](std::size_t a, std::size_t b) {
                if (assigned_sq[a] != assigned_sq[b]) return assigned_sq[a] > assigned_sq[b];
                return a < b;
            });
        }
        std::size_t far_cursor = 0;
        double shift = 0.0;
        for (std::size_t c = 0; c < clusters; ++c) {
            double* target = next.data() + c * d;
            if (counts[c] == 0) {
                const auto row = emb.row(by_far[far_cursor++]);
                std::copy(row.begin(), row.end(), target);
                ++reseeds;
            } else {
                for (std::size_t t = 0; t < d; ++t) target[t] /= static_cast<double>(counts[c]);
            }
            shift = std::max(shift, std::sqrt(sqdist(
                std::span<const double>(target, d),
                std::span<const double>(centroids.data() + c * d, d))));
        }
        centroids = std::move(next);
        if (shift < tol) break;
    }
    assign_all();

    ScoreVector scores(n);
    for (std::size_t i = 0; i < n; ++i) scores[i] = std::sqrt(assigned_sq[i]);

    if (result != nullptr) {
        result->centroids = EmbeddingMatrix{clusters, d, centroids};
        result->assignment = assignment;
        result->iterations = iterations;
        result->empty_reseeds = reseeds;
    }
    return scores;
}

}  // namespace coregraph
