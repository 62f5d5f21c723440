#pragma once

// Independent reference implementations used to check the library: naive
// full-scan k-NN, dense-matrix message passing, rescan-based selection,
// double-loop coverage metrics, and a Jacobi eigensolver. Deliberately
// written in the most literal way possible; none of these share code with
// the optimized paths they verify.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "coregraph/graph.hpp"
#include "coregraph/knn.hpp"
#include "coregraph/rng.hpp"
#include "coregraph/types.hpp"

namespace oracles {

using coregraph::DatasetGraph;
using coregraph::EmbeddingMatrix;
using coregraph::index_t;
using coregraph::NeighborList;
using coregraph::ScoreVector;

inline EmbeddingMatrix random_embeddings(coregraph::SplitMix64& rng, std::size_t n, std::size_t d,
                                         double scale = 1.0) {
    EmbeddingMatrix emb;
    emb.n = n;
    emb.d = d;
    emb.values.resize(n * d);
    for (auto& v : emb.values) v = (rng.next_double() * 2.0 - 1.0) * scale;
    return emb;
}

inline ScoreVector random_scores(coregraph::SplitMix64& rng, std::size_t n) {
    ScoreVector s(n);
    for (auto& v : s) v = rng.next_double();
    return s;
}

// Naive k-NN: every pairwise distance, full sort by (distance, index).
inline NeighborList naive_knn(const EmbeddingMatrix& emb, std::size_t k) {
    const std::size_t n = emb.n;
    NeighborList out;
    out.n = n;
    out.k = n > 0 ? std::min(k, n - 1) : 0;
    if (out.k == 0) return out;
    out.indices.resize(n * out.k);
    out.distances.resize(n * out.k);

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, index_t>> all;
        all.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            all.emplace_back(coregraph::euclidean_distance(emb.row(i), emb.row(j)),
                             static_cast<index_t>(j));
        }
        std::sort(all.begin(), all.end());
        for (std::size_t r = 0; r < out.k; ++r) {
            out.indices[i * out.k + r] = all[r].second;
            out.distances[i * out.k + r] = all[r].first;
        }
    }
    return out;
}

// Dense forward pass: x' = x + (E o M) x with M the 0/1 out-adjacency and E
// the full kernel matrix.
inline ScoreVector dense_forward(const EmbeddingMatrix& emb, const ScoreVector& scores,
                                 const NeighborList& neighbors, double gamma_f) {
    const std::size_t n = emb.n;
    std::vector<double> kernel(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < neighbors.k; ++r) {
            const index_t j = neighbors.indices[i * neighbors.k + r];
            const double dist = coregraph::euclidean_distance(emb.row(i), emb.row(j));
            kernel[i * n + j] = std::exp(-gamma_f * dist * dist);
        }
    }
    ScoreVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = scores[i];
        for (std::size_t j = 0; j < n; ++j) acc += kernel[i * n + j] * scores[j];
        out[i] = acc;
    }
    return out;
}

// Selection by rescanning every remaining candidate each round. Also returns
// the final live scores for locality checks.
struct NaiveSelection {
    std::vector<index_t> order;
    std::vector<double> final_scores;
};

inline NaiveSelection naive_d2_select(const DatasetGraph& g, std::size_t m, double gamma_r) {
    std::vector<double> live = g.node_scores;
    std::vector<char> selected(g.n, 0);
    NaiveSelection result;
    for (std::size_t round = 0; round < m; ++round) {
        std::size_t best = g.n;
        for (std::size_t i = 0; i < g.n; ++i) {
            if (selected[i]) continue;
            if (best == g.n || live[i] > live[best]) best = i;
        }
        selected[best] = 1;
        result.order.push_back(static_cast<index_t>(best));
        const double score = live[best];
        for (std::size_t e = g.offsets[best]; e < g.offsets[best + 1]; ++e) {
            const index_t j = g.targets[e];
            if (selected[j]) continue;
            const double dist = g.edge_dist[e];
            live[j] -= std::exp(-gamma_r * dist * dist) * score;
        }
    }
    result.final_scores = std::move(live);
    return result;
}

inline double brute_auc(const EmbeddingMatrix& coreset, const EmbeddingMatrix& eval) {
    double sum = 0.0;
    for (std::size_t i = 0; i < eval.n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < coreset.n; ++c)
            best = std::min(best, coregraph::euclidean_distance(eval.row(i), coreset.row(c)));
        sum += best;
    }
    return sum / static_cast<double>(eval.n);
}

inline double covering_radius_of(const EmbeddingMatrix& emb, const std::vector<index_t>& centers) {
    double radius = 0.0;
    for (std::size_t i = 0; i < emb.n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (index_t c : centers)
            best = std::min(best, coregraph::euclidean_distance(emb.row(i), emb.row(c)));
        radius = std::max(radius, best);
    }
    return radius;
}

// Exhaustive optimal k-center radius over all m-subsets; usable for n <= 12.
inline double optimal_kcenter_radius(const EmbeddingMatrix& emb, std::size_t m) {
    std::vector<index_t> subset(m);
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = emb.n;

    std::vector<std::size_t> comb(m);
    std::iota(comb.begin(), comb.end(), 0);
    for (;;) {
        for (std::size_t i = 0; i < m; ++i) subset[i] = static_cast<index_t>(comb[i]);
        best = std::min(best, covering_radius_of(emb, subset));
        std::size_t i = m;
        while (i > 0 && comb[i - 1] == n - m + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
    return best;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t d) {
    for (std::size_t sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += a[p * d + q] * a[p * d + q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a[p * d + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t r = 0; r < d; ++r) {
                    const double arp = a[r * d + p], arq = a[r * d + q];
                    a[r * d + p] = c * arp - s * arq;
                    a[r * d + q] = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < d; ++r) {
                    const double apr = a[p * d + r], aqr = a[q * d + r];
                    a[p * d + r] = c * apr - s * aqr;
                    a[q * d + r] = s * apr + c * aqr;
                }
            }
        }
    }
    std::vector<double> eig(d);
    for (std::size_t i = 0; i < d; ++i) eig[i] = a[i * d + i];
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

// Sample covariance of the rows (divisor n - 1).
inline std::vector<double> covariance_matrix(const EmbeddingMatrix& emb) {
    const std::size_t n = emb.n, d = emb.d;
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < d; ++t) mean[t] += emb.values[i * d + t];
    for (auto& v : mean) v /= static_cast<double>(n);

    std::vector<double> cov(d * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < d; ++p) {
            const double xp = emb.values[i * d + p] - mean[p];
            for (std::size_t q = 0; q < d; ++q)
                cov[p * d + q] += xp * (emb.values[i * d + q] - mean[q]);
        }
    }
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (auto& v : cov) v /= denom;
    return cov;
}

}  // namespace oracles
