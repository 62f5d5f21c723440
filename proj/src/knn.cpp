#include "coregraph/knn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <utility>

#include "coregraph/parallel.hpp"

namespace coregraph {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ValidationError("dimension-mismatch: rows of length " + std::to_string(a.size()) +
                              " and " + std::to_string(b.size()));
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double diff = a[t] - b[t];
        s += diff * diff;
    }
    return std::sqrt(s);
}

namespace {

constexpr std::size_t kTile = 128;    // candidates per transposed tile
constexpr std::size_t kQBlock = 16;   // queries sharing one tile pass

// Squared distances of one query row against a transposed candidate tile.
// t-major accumulation matches euclidean_distance exactly.
void tile_sqdist(const double* __restrict a, const double* __restrict tile,
                 double* __restrict out, std::size_t d, std::size_t width) {
    std::memset(out, 0, width * sizeof(double));
    for (std::size_t t = 0; t < d; ++t) {
        const double at = a[t];
        const double* __restrict row = tile + t * kTile;
        for (std::size_t c = 0; c < width; ++c) {
            const double diff = at - row[c];
            out[c] += diff * diff;
        }
    }
}

using HeapEntry = std::pair<double, index_t>;  // (squared distance, index)

}  // namespace

NeighborList build_knn(const EmbeddingMatrix& emb, std::size_t k) {
    const std::size_t n = emb.n, d = emb.d;
    NeighborList out;
    out.n = n;
    out.k = n > 0 ? std::min(k, n - 1) : 0;
    if (out.k == 0) return out;
    const std::size_t keff = out.k;
    out.indices.resize(n * keff);
    out.distances.resize(n * keff);

    // Candidate coordinates transposed in tiles of kTile columns so the
    // inner distance loop reads contiguous memory.
    const std::size_t ntiles = (n + kTile - 1) / kTile;
    std::vector<double> transposed(ntiles * d * kTile, 0.0);
    parallel_for(0, ntiles, 1, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t tile = lo; tile < hi; ++tile) {
            const std::size_t c0 = tile * kTile;
            const std::size_t width = std::min(kTile, n - c0);
            double* dst = transposed.data() + tile * d * kTile;
            for (std::size_t t = 0; t < d; ++t)
                for (std::size_t c = 0; c < width; ++c)
                    dst[t * kTile + c] = emb.values[(c0 + c) * d + t];
        }
    });

    parallel_for(0, n, kQBlock, [&](std::size_t qlo, std::size_t qhi) {
        std::vector<double> sqd(kTile);
        std::vector<HeapEntry> heaps(kQBlock * keff);
        std::vector<std::size_t> sizes(kQBlock);
        std::vector<HeapEntry> worst(kQBlock);

        for (std::size_t q0 = qlo; q0 < qhi; q0 += kQBlock) {
            const std::size_t qw = std::min(kQBlock, qhi - q0);
            std::fill(sizes.begin(), sizes.begin() + qw, 0);
            std::fill(worst.begin(), worst.begin() + qw,
                      HeapEntry{std::numeric_limits<double>::infinity(), 0});

            // Each tile is streamed once for the whole query block.
            for (std::size_t tile = 0; tile < ntiles; ++tile) {
                const std::size_t c0 = tile * kTile;
                const std::size_t width = std::min(kTile, n - c0);
                const double* tp = transposed.data() + tile * d * kTile;

                for (std::size_t qi = 0; qi < qw; ++qi) {
                    const std::size_t q = q0 + qi;
                    tile_sqdist(emb.values.data() + q * d, tp, sqd.data(), d, width);

                    HeapEntry* heap = heaps.data() + qi * keff;
                    std::size_t& hs = sizes[qi];
                    for (std::size_t c = 0; c < width; ++c) {
                        const auto j = static_cast<index_t>(c0 + c);
                        if (j == q) continue;
                        const HeapEntry cand{sqd[c], j};
                        if (hs < keff) {
                            heap[hs++] = cand;
                            if (hs == keff) {
                                std::make_heap(heap, heap + keff);
                                worst[qi] = heap[0];
                            }
                        } else if (cand < worst[qi]) {
                            std::pop_heap(heap, heap + keff);
                            heap[keff - 1] = cand;
                            std::push_heap(heap, heap + keff);
                            worst[qi] = heap[0];
                        }
                    }
                }
            }

            for (std::size_t qi = 0; qi < qw; ++qi) {
                HeapEntry* heap = heaps.data() + qi * keff;
                std::sort(heap, heap + keff);
                const std::size_t q = q0 + qi;
                for (std::size_t r = 0; r < keff; ++r) {
                    out.indices[q * keff + r] = heap[r].second;
                    out.distances[q * keff + r] = std::sqrt(heap[r].first);
                }
            }
        }
    });

    return out;
}

}  // namespace coregraph
