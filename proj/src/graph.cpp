#include "coregraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <tuple>

#include "coregraph/parallel.hpp"

namespace coregraph {

namespace {

double rbf_weight(double gamma, double dist) {
    return std::exp(-gamma * dist * dist);
}

}  // namespace

DatasetGraph build_graph(const ScoreVector& scores, const NeighborList& neighbors,
                         double gamma_f, bool symmetrize) {
    if (scores.size() != neighbors.n)
        throw ValidationError("dimension-mismatch: " + std::to_string(scores.size()) +
                              " scores for a " + std::to_string(neighbors.n) + "-node graph");
    if (!(gamma_f >= 0.0))
        throw ValidationError("invalid-rate: gamma_f must be >= 0");

    const std::size_t n = neighbors.n;
    const std::size_t k = neighbors.k;

    DatasetGraph g;
    g.n = n;
    g.gamma_f = gamma_f;
    g.node_scores = scores;
    g.offsets.assign(n + 1, 0);

    if (!symmetrize) {
        g.targets.resize(n * k);
        g.edge_dist.resize(n * k);
        g.edge_weight.resize(n * k);
        for (std::size_t i = 0; i <= n; ++i) g.offsets[i] = i * k;
        parallel_for(0, n, 1024, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                for (std::size_t r = 0; r < k; ++r) {
                    const std::size_t e = i * k + r;
                    g.targets[e] = neighbors.indices[e];
                    g.edge_dist[e] = neighbors.distances[e];
                    g.edge_weight[e] = rbf_weight(gamma_f, neighbors.distances[e]);
                }
            }
        });
        return g;
    }

    // Union of each edge and its reverse, deduplicated, rows re-sorted by
    // (distance, target).
    std::vector<std::vector<std::pair<double, index_t>>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i].reserve(k * 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < k; ++r) {
            const index_t j = neighbors.indices[i * k + r];
            const double dist = neighbors.distances[i * k + r];
            rows[i].emplace_back(dist, j);
            rows[j].emplace_back(dist, static_cast<index_t>(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = rows[i];
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return std::tie(a.first, a.second) < std::tie(b.first, b.second); });
        row.erase(std::unique(row.begin(), row.end()), row.end());
        g.offsets[i + 1] = g.offsets[i] + row.size();
    }
    g.targets.resize(g.offsets[n]);
    g.edge_dist.resize(g.offsets[n]);
    g.edge_weight.resize(g.offsets[n]);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t e = g.offsets[i];
        for (const auto& [dist, j] : rows[i]) {
            g.targets[e] = j;
            g.edge_dist[e] = dist;
            g.edge_weight[e] = rbf_weight(gamma_f, dist);
            ++e;
        }
    }
    return g;
}

void forward_message_pass(DatasetGraph& g) {
    if (g.forward_applied)
        throw ValidationError("double-application: forward pass already applied to this graph");

    std::vector<double> updated(g.n);
    parallel_for(0, g.n, 1024, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double acc = g.node_scores[i];
            for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e)
                acc += g.edge_weight[e] * g.node_scores[g.targets[e]];
            updated[i] = acc;
        }
    });
    g.node_scores = std::move(updated);
    g.forward_applied = true;
}

std::vector<SubPopulation> extract_subpopulations(const NeighborList& neighbors, double threshold) {
    if (!(threshold > 0.0))
        throw ValidationError("invalid-rate: threshold must be > 0");

    const std::size_t n = neighbors.n;
    std::vector<index_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);

    auto find = [&](index_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](index_t a, index_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a; else parent[a] = b;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < neighbors.k; ++r) {
            if (neighbors.distances[i * neighbors.k + r] < threshold)
                unite(static_cast<index_t>(i), neighbors.indices[i * neighbors.k + r]);
        }
    }

    std::vector<std::vector<index_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(static_cast<index_t>(i))].push_back(static_cast<index_t>(i));

    std::vector<SubPopulation> out;
    for (auto& members : groups) {
        if (members.empty()) continue;
        out.push_back(SubPopulation{std::move(members), threshold});
    }
    std::sort(out.begin(), out.end(), [](const SubPopulation& a, const SubPopulation& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return a.members.front() < b.members.front();
    });
    return out;
}

void dump_graph(const DatasetGraph& g, std::ostream& out) {
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e)
            out << i << ' ' << g.targets[e] << ' ' << g.edge_dist[e] << ' ' << g.edge_weight[e] << '\n';
    }
}

}  // namespace coregraph
