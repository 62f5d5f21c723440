#pragma once

#include <span>

#include "coregraph/types.hpp"

namespace coregraph {

// Exact k-nearest-neighbor lists over an embedding matrix. Each row holds
// min(k, n-1) entries sorted ascending by distance, ties broken by ascending
// sample index; a sample never lists itself. Rows are stored flat with a
// uniform stride of k_effective.
struct NeighborList {
    std::size_t n = 0;
    std::size_t k = 0;  // effective neighbor count = min(requested, n-1)
    std::vector<index_t> indices;
    std::vector<double> distances;

    std::span<const index_t> neighbors(std::size_t i) const {
        return std::span<const index_t>(indices.data() + i * k, k);
    }
    std::span<const double> dists(std::size_t i) const {
        return std::span<const double>(distances.data() + i * k, k);
    }
};

// ||a - b||_2 with double accumulation. Throws on unequal dimension.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Exact brute-force k-NN, parallel over query rows. The candidate scan is
// tiled for cache reuse but accumulates each squared distance in the same
// coordinate order as euclidean_distance, so results are bit-identical to a
// naive full sort by (distance, index) at any thread count.
NeighborList build_knn(const EmbeddingMatrix& emb, std::size_t k);

}  // namespace coregraph
