#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coregraph/metrics.hpp"
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

TEST_CASE("auc_pr basics") {
    CHECK(auc_pr(points_1d({1}), points_1d({0, 2})) == 1.0);
    const auto same = points_1d({3, 4, 5});
    CHECK(auc_pr(same, same) == 0.0);
    CHECK_THROWS_WITH_AS(auc_pr(EmbeddingMatrix{}, same), doctest::Contains("empty-coreset"),
                         ValidationError);
}

TEST_CASE("auc_pr equals the double-loop oracle") {
    SplitMix64 rng = rng_stream(51, "test.auc.oracle");
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t nc = 1 + rng.next_below(40);
        const std::size_t ne = 1 + rng.next_below(200);
        const std::size_t d = 1 + rng.next_below(6);
        const auto coreset = oracles::random_embeddings(rng, nc, d);
        const auto eval = oracles::random_embeddings(rng, ne, d);
        CHECK(std::abs(auc_pr(coreset, eval) - oracles::brute_auc(coreset, eval)) <= 1e-9);
    }
}

TEST_CASE("auc_pr shrinks when the coreset grows") {
    SplitMix64 rng = rng_stream(52, "test.auc.mono");
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.next_below(4);
        const auto eval = oracles::random_embeddings(rng, 60, d);
        const auto big = oracles::random_embeddings(rng, 2 + rng.next_below(30), d);

        EmbeddingMatrix small;  // strict prefix of big
        small.n = 1 + rng.next_below(big.n - 1);
        small.d = d;
        small.values.assign(big.values.begin(), big.values.begin() + small.n * d);

        CHECK(auc_pr(big, eval) <= auc_pr(small, eval) + 1e-12);
    }
}

TEST_CASE("covering_radius basics") {
    const auto full = points_1d({0, 1, 2, 10});
    CHECK(covering_radius(full, full) == 0.0);
    CHECK(covering_radius(points_1d({1}), full) == 9.0);

    // A larger coreset can only shrink the radius.
    CHECK(covering_radius(points_1d({1, 10}), full) <= covering_radius(points_1d({1}), full));
}

TEST_CASE("score_distribution histograms over the full range") {
    ScoreVector scores(10);
    for (std::size_t i = 0; i < 10; ++i) scores[i] = static_cast<double>(i + 1);

    std::vector<index_t> everything(10);
    std::iota(everything.begin(), everything.end(), 0);
    const auto one = score_distribution(scores, everything, 1);
    CHECK(one.counts == std::vector<std::size_t>{10});
    CHECK(one.entropy_nats == 0.0);

    const auto two = score_distribution(scores, everything, 2);
    CHECK(two.counts == std::vector<std::size_t>{5, 5});
    CHECK(two.entropy_nats == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const std::vector<index_t> lower{0, 1, 2, 3, 4};
    const auto skew = score_distribution(scores, lower, 2);
    CHECK(skew.counts == std::vector<std::size_t>{5, 0});
    CHECK(skew.entropy_nats == 0.0);
    CHECK(skew.range_lo == 1.0);
    CHECK(skew.range_hi == 10.0);
}

TEST_CASE("histogram mass and entropy bounds") {
    SplitMix64 rng = rng_stream(53, "test.hist");
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.next_below(200);
        const auto scores = oracles::random_scores(rng, n);
        const std::size_t bins = 1 + rng.next_below(12);
        std::vector<index_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.next_below(2) == 0) subset.push_back(static_cast<index_t>(i));
        if (subset.empty()) subset.push_back(0);

        const auto h = score_distribution(scores, subset, bins);
        std::size_t mass = 0;
        for (std::size_t c : h.counts) mass += c;
        CHECK(mass == subset.size());
        CHECK(h.entropy_nats >= 0.0);
        CHECK(h.entropy_nats <= std::log(static_cast<double>(bins)) + 1e-12);
    }
}

TEST_CASE("project_2d keeps axis-aligned data intact") {
    // Product grid: the two coordinates are exactly uncorrelated, so the
    // principal axes coincide with the coordinate axes.
    EmbeddingMatrix emb;
    emb.n = 64;
    emb.d = 2;
    emb.values.resize(128);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            emb.values[(i * 8 + j) * 2] = static_cast<double>(i) * 1.4;  // dominant variance
            emb.values[(i * 8 + j) * 2 + 1] = static_cast<double>(j) * 0.01;
        }
    }
    const auto proj = project_2d(emb);

    std::vector<double> mean(2, 0.0);
    for (std::size_t i = 0; i < emb.n; ++i) {
        mean[0] += emb.values[i * 2];
        mean[1] += emb.values[i * 2 + 1];
    }
    mean[0] /= static_cast<double>(emb.n);
    mean[1] /= static_cast<double>(emb.n);
    for (std::size_t i = 0; i < emb.n; ++i) {
        CHECK(proj.values[i * 2] ==
              doctest::Approx(emb.values[i * 2] - mean[0]).epsilon(1e-8).scale(1.0));
        CHECK(proj.values[i * 2 + 1] ==
              doctest::Approx(emb.values[i * 2 + 1] - mean[1]).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("project_2d degenerate inputs") {
    EmbeddingMatrix constant;
    constant.n = 5;
    constant.d = 3;
    constant.values.assign(15, 4.2);
    const auto proj = project_2d(constant);
    for (double v : proj.values) CHECK(v == 0.0);

    EmbeddingMatrix thin;
    thin.n = 3;
    thin.d = 1;
    thin.values = {1, 2, 3};
    CHECK_THROWS_AS(project_2d(thin), ValidationError);

    // Rank-1 data: all variance lands on the first component.
    EmbeddingMatrix line;
    line.n = 50;
    line.d = 3;
    line.values.resize(150);
    SplitMix64 rng = rng_stream(55, "test.pca.rank1");
    for (std::size_t i = 0; i < line.n; ++i) {
        const double t = rng.next_double();
        line.values[i * 3] = t;
        line.values[i * 3 + 1] = 2 * t;
        line.values[i * 3 + 2] = -t;
    }
    const auto flat = project_2d(line);
    for (std::size_t i = 0; i < line.n; ++i) CHECK(std::abs(flat.values[i * 2 + 1]) <= 1e-7);
}

TEST_CASE("project_2d captures the top-2 eigenvalue mass") {
    SplitMix64 rng = rng_stream(56, "test.pca.var");
    const auto emb = oracles::random_embeddings(rng, 50, 5);
    const auto proj = project_2d(emb);

    double var = 0.0;
    std::vector<double> mean(2, 0.0);
    for (std::size_t i = 0; i < proj.n; ++i) {
        mean[0] += proj.values[i * 2];
        mean[1] += proj.values[i * 2 + 1];
    }
    mean[0] /= static_cast<double>(proj.n);
    mean[1] /= static_cast<double>(proj.n);
    for (std::size_t i = 0; i < proj.n; ++i) {
        const double a = proj.values[i * 2] - mean[0];
        const double b = proj.values[i * 2 + 1] - mean[1];
        var += a * a + b * b;
    }
    var /= static_cast<double>(proj.n - 1);

    const auto eig = oracles::jacobi_eigenvalues(oracles::covariance_matrix(emb), emb.d);
    const double expected = eig[0] + eig[1];
    CHECK(std::abs(var - expected) / expected <= 1e-6);
}

TEST_CASE("evaluate_coreset assembles the report") {
    SplitMix64 rng = rng_stream(57, "test.report");
    const auto emb = oracles::random_embeddings(rng, 40, 3);
    const auto scores = oracles::random_scores(rng, 40);

    Coreset coreset;
    coreset.source_n = 40;
    for (index_t i = 0; i < 40; ++i) coreset.indices.push_back(i);

    const auto report = evaluate_coreset(emb, coreset, nullptr, &scores, 8);
    CHECK(report.auc_pr == 0.0);
    CHECK(report.covering_radius == 0.0);
    CHECK(report.auc_pr_mode == "self-coverage");
    CHECK(report.coreset_size == 40);
    std::size_t mass = 0;
    for (std::size_t c : report.histogram.counts) mass += c;
    CHECK(mass == 40);
    CHECK(report.auc_pr <= report.covering_radius);

    Coreset empty;
    CHECK_THROWS_AS(evaluate_coreset(emb, empty, nullptr, nullptr, 8), ValidationError);
}
