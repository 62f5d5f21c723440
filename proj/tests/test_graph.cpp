#include <doctest.h>

#include <cmath>
#include <sstream>

#include "coregraph/graph.hpp"
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

DatasetGraph line_graph(double gamma_f) {
    const auto emb = points_1d({0, 1, 2});
    return build_graph({1, 2, 3}, build_knn(emb, 1), gamma_f);
}

}  // namespace

TEST_CASE("edge weights follow the RBF kernel") {
    const auto g = line_graph(1.0);
    for (double w : g.edge_weight) CHECK(w == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    const auto flat = line_graph(0.0);
    for (double w : flat.edge_weight) CHECK(w == 1.0);

    // Duplicate points keep weight 1 at any sharpness.
    const auto dup = points_1d({3, 3});
    const auto gd = build_graph({1, 1}, build_knn(dup, 1), 123.0);
    for (double w : gd.edge_weight) CHECK(w == 1.0);
}

TEST_CASE("forward pass on the 1-D line") {
    auto g = line_graph(1.0);
    forward_message_pass(g);
    const double e1 = std::exp(-1.0);
    CHECK(g.node_scores[0] == doctest::Approx(1 + 2 * e1).epsilon(1e-12));  // ~1.735759
    CHECK(g.node_scores[1] == doctest::Approx(2 + 1 * e1).epsilon(1e-12));  // ~2.367879
    CHECK(g.node_scores[2] == doctest::Approx(3 + 2 * e1).epsilon(1e-12));  // ~3.735759
}

TEST_CASE("forward pass edge cases") {
    const auto emb = points_1d({0, 1, 2});

    auto isolated = build_graph({1, 2, 3}, build_knn(emb, 0), 1.0);
    forward_message_pass(isolated);
    CHECK(isolated.node_scores == ScoreVector{1, 2, 3});

    auto zeros = build_graph({0, 0, 0}, build_knn(emb, 2), 1.0);
    forward_message_pass(zeros);
    CHECK(zeros.node_scores == ScoreVector{0, 0, 0});
}

TEST_CASE("forward pass applies exactly once") {
    auto g = line_graph(1.0);
    forward_message_pass(g);
    CHECK_THROWS_WITH_AS(forward_message_pass(g), doctest::Contains("double-application"),
                         ValidationError);
}

TEST_CASE("forward pass equals the dense oracle") {
    SplitMix64 rng = rng_stream(21, "test.graph.dense");
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.next_below(60);
        const std::size_t d = 1 + rng.next_below(6);
        const std::size_t k = rng.next_below(9);
        const double gamma = (trial % 4) * 0.5;
        const auto emb = oracles::random_embeddings(rng, n, d);
        const auto scores = oracles::random_scores(rng, n);
        const auto nn = build_knn(emb, k);

        auto g = build_graph(scores, nn, gamma);
        forward_message_pass(g);
        const auto expected = oracles::dense_forward(emb, scores, nn, gamma);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(g.node_scores[i] - expected[i]) <= 1e-9);
    }
}

TEST_CASE("forward pass only adds mass for non-negative scores") {
    SplitMix64 rng = rng_stream(22, "test.graph.mono");
    const auto emb = oracles::random_embeddings(rng, 80, 4);
    const auto scores = oracles::random_scores(rng, 80);
    auto g = build_graph(scores, build_knn(emb, 5), 0.7);
    forward_message_pass(g);
    for (std::size_t i = 0; i < emb.n; ++i) CHECK(g.node_scores[i] >= scores[i]);
}

TEST_CASE("huge sharpness recovers the input scores") {
    SplitMix64 rng = rng_stream(23, "test.graph.limit");
    const auto emb = oracles::random_embeddings(rng, 50, 3);
    const auto scores = oracles::random_scores(rng, 50);
    auto g = build_graph(scores, build_knn(emb, 6), 1e9);
    forward_message_pass(g);
    for (std::size_t i = 0; i < emb.n; ++i) CHECK(std::abs(g.node_scores[i] - scores[i]) <= 1e-6);
}

TEST_CASE("symmetrize unions each edge with its reverse") {
    const auto emb = points_1d({0, 1, 3});
    const auto nn = build_knn(emb, 1);  // 0->1, 1->0, 2->1
    const auto g = build_graph({1, 1, 1}, nn, 1.0, true);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);  // gains the reverse of 2->1
    CHECK(g.degree(2) == 1);
    CHECK(g.out_neighbors(1)[0] == 0);
    CHECK(g.out_neighbors(1)[1] == 2);
}

TEST_CASE("sub-population extraction on separated points") {
    const auto emb = points_1d({0, 0.1, 5});
    const auto nn = build_knn(emb, 2);

    const auto split = extract_subpopulations(nn, 0.5);
    REQUIRE(split.size() == 2);
    CHECK(split[0].members == std::vector<index_t>{0, 1});
    CHECK(split[1].members == std::vector<index_t>{2});

    const auto all_single = extract_subpopulations(nn, 1e-6);
    CHECK(all_single.size() == 3);

    const auto one = extract_subpopulations(nn, 100.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].members.size() == 3);

    CHECK_THROWS_AS(extract_subpopulations(nn, 0.0), ValidationError);
}

TEST_CASE("sub-populations partition the index set") {
    SplitMix64 rng = rng_stream(24, "test.graph.subpop");
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.next_below(80);
        const auto emb = oracles::random_embeddings(rng, n, 2);
        const auto nn = build_knn(emb, 3);
        const auto pops = extract_subpopulations(nn, 0.2 + rng.next_double());

        std::vector<char> seen(n, 0);
        std::size_t total = 0;
        std::size_t prev_size = n + 1;
        for (const auto& pop : pops) {
            CHECK(pop.members.size() <= prev_size);  // sorted by size descending
            prev_size = pop.members.size();
            for (index_t mbr : pop.members) {
                CHECK(!seen[mbr]);
                seen[mbr] = 1;
                ++total;
            }
        }
        CHECK(total == n);
    }
}

TEST_CASE("graph dump is line oriented") {
    const auto g = line_graph(1.0);
    std::ostringstream out;
    dump_graph(g, out);
    std::istringstream in(out.str());
    std::size_t lines = 0;
    std::size_t i, j;
    double dist, weight;
    while (in >> i >> j >> dist >> weight) {
        CHECK(i < 3);
        CHECK(j < 3);
        CHECK(dist == 1.0);
        CHECK(weight == doctest::Approx(std::exp(-1.0)));
        ++lines;
    }
    CHECK(lines == 3);
}
