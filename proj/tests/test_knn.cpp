#include <doctest.h>

#include "coregraph/knn.hpp"
#include "coregraph/parallel.hpp"
#include "support/oracles.hpp"

using namespace coregraph;

namespace {

EmbeddingMatrix points_1d(std::initializer_list<double> xs) {
    EmbeddingMatrix emb;
    emb.n = xs.size();
    emb.d = 1;
    emb.values.assign(xs);
    return emb;
}

}  // namespace

TEST_CASE("euclidean_distance basics") {
    const std::vector<double> a{0, 0}, b{3, 4};
    CHECK(euclidean_distance(a, b) == 5.0);
    const std::vector<double> c{1, 2, 3};
    CHECK(euclidean_distance(c, c) == 0.0);
    const std::vector<double> p{1}, q{-2};
    CHECK(euclidean_distance(p, q) == 3.0);
    CHECK_THROWS_AS(euclidean_distance(a, c), ValidationError);
}

TEST_CASE("build_knn on a 1-D line with a tie") {
    const auto emb = points_1d({0, 1, 2});
    const auto nn = build_knn(emb, 1);
    REQUIRE(nn.k == 1);
    CHECK(nn.neighbors(0)[0] == 1);
    CHECK(nn.neighbors(1)[0] == 0);  // 0 and 2 tie at distance 1; lowest index wins
    CHECK(nn.neighbors(2)[0] == 1);
    CHECK(nn.dists(0)[0] == 1.0);
    CHECK(nn.dists(1)[0] == 1.0);
    CHECK(nn.dists(2)[0] == 1.0);
}

TEST_CASE("build_knn clamps k") {
    const auto emb = points_1d({0, 1, 2});
    const auto none = build_knn(emb, 0);
    CHECK(none.k == 0);
    CHECK(none.indices.empty());

    const auto two = points_1d({5, 9});
    const auto nn = build_knn(two, 5);
    REQUIRE(nn.k == 1);
    CHECK(nn.neighbors(0)[0] == 1);
    CHECK(nn.neighbors(1)[0] == 0);
}

TEST_CASE("build_knn equals the naive full-sort oracle") {
    SplitMix64 rng = rng_stream(3, "test.knn.oracle");
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.next_below(120);
        const std::size_t d = 1 + rng.next_below(8);
        const std::size_t k = rng.next_below(11);
        auto emb = oracles::random_embeddings(rng, n, d);
        // Occasionally duplicate a row so zero distances are exercised.
        if (trial % 3 == 0 && n >= 2) {
            const std::size_t src = rng.next_below(n), dst = rng.next_below(n);
            for (std::size_t t = 0; t < d; ++t) emb.values[dst * d + t] = emb.values[src * d + t];
        }

        const auto fast = build_knn(emb, k);
        const auto ref = oracles::naive_knn(emb, k);
        REQUIRE(fast.k == ref.k);
        CHECK(fast.indices == ref.indices);
        CHECK(fast.distances == ref.distances);
    }
}

TEST_CASE("distances are symmetric") {
    SplitMix64 rng = rng_stream(4, "test.knn.sym");
    const auto emb = oracles::random_embeddings(rng, 40, 6);
    for (std::size_t i = 0; i < emb.n; ++i)
        for (std::size_t j = 0; j < emb.n; ++j)
            CHECK(euclidean_distance(emb.row(i), emb.row(j)) ==
                  euclidean_distance(emb.row(j), emb.row(i)));
}

TEST_CASE("parallel and single-threaded builds agree") {
    SplitMix64 rng = rng_stream(5, "test.knn.threads");
    const auto emb = oracles::random_embeddings(rng, 333, 7);

    set_max_threads(1);
    const auto serial = build_knn(emb, 9);
    set_max_threads(4);
    const auto parallel = build_knn(emb, 9);
    set_max_threads(0);

    CHECK(serial.indices == parallel.indices);
    CHECK(serial.distances == parallel.distances);
}
