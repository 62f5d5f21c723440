#pragma once

#include <iosfwd>
#include <span>

#include "coregraph/knn.hpp"
#include "coregraph/types.hpp"

namespace coregraph {

// Sparse dataset graph: difficulty scores as node features, k-NN adjacency
// with RBF edge weights e = exp(-gamma_f * d^2). Edge distances are kept so
// the selection loop can re-kernelize with a different gamma without
// recomputing them. CSR layout; rows are sorted ascending by (distance,
// target index).
struct DatasetGraph {
    std::size_t n = 0;
    double gamma_f = 1.0;
    std::vector<std::size_t> offsets;  // n + 1
    std::vector<index_t> targets;
    std::vector<double> edge_dist;
    std::vector<double> edge_weight;
    std::vector<double> node_scores;
    bool forward_applied = false;

    std::size_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
    std::span<const index_t> out_neighbors(std::size_t i) const {
        return std::span<const index_t>(targets.data() + offsets[i], degree(i));
    }
};

// Maximal set of samples mutually reachable through edges shorter than the
// threshold.
struct SubPopulation {
    std::vector<index_t> members;  // ascending
    double threshold = 0.0;
};

// Materializes the graph from precomputed neighbor lists. With `symmetrize`
// the adjacency becomes the union of each edge and its reverse; by default
// every node keeps exactly its own k-NN out-edges.
DatasetGraph build_graph(const ScoreVector& scores, const NeighborList& neighbors,
                         double gamma_f, bool symmetrize = false);

// Single simultaneous score update: x_i <- x_i + sum_j e_ij * x_j over i's
// out-neighbors, all terms read from the pre-update scores. Throws if the
// pass was already applied; the algorithm propagates exactly once.
void forward_message_pass(DatasetGraph& g);

// Connected components of the undirected closure of edges with d < threshold,
// singletons included, sorted by size descending then smallest member.
std::vector<SubPopulation> extract_subpopulations(const NeighborList& neighbors, double threshold);

// Debug dump, one "i j distance weight" line per edge.
void dump_graph(const DatasetGraph& g, std::ostream& out);

}  // namespace coregraph
