#include "coregraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coregraph/knn.hpp"
#include "coregraph/parallel.hpp"
#include "coregraph/rng.hpp"

namespace coregraph {

namespace {

// Nearest-coreset distance for every row of `points`. Parallel map; any
// reduction over the result must run serially in index order so the value
// is independent of the thread count.
std::vector<double> nearest_distances(const EmbeddingMatrix& coreset, const EmbeddingMatrix& points) {
    if (coreset.n == 0) throw ValidationError("empty-coreset: coverage metrics need at least one point");
    if (coreset.d != points.d)
        throw ValidationError("dimension-mismatch: coreset d=" + std::to_string(coreset.d) +
                              " vs evaluation d=" + std::to_string(points.d));

    std::vector<double> out(points.n);
    parallel_for(0, points.n, 256, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto p = points.row(i);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < coreset.n; ++c) {
                double s = 0.0;
                const auto q = coreset.row(c);
                for (std::size_t t = 0; t < points.d; ++t) {
                    const double diff = p[t] - q[t];
                    s += diff * diff;
                }
                best = std::min(best, s);
            }
            out[i] = std::sqrt(best);
        }
    });
    return out;
}

}  // namespace

double auc_pr(const EmbeddingMatrix& coreset, const EmbeddingMatrix& eval) {
    const auto dist = nearest_distances(coreset, eval);
    double sum = 0.0;
    for (double v : dist) sum += v;
    return sum / static_cast<double>(dist.size());
}

double covering_radius(const EmbeddingMatrix& coreset, const EmbeddingMatrix& full) {
    const auto dist = nearest_distances(coreset, full);
    double radius = 0.0;
    for (double v : dist) radius = std::max(radius, v);
    return radius;
}

ScoreHistogram score_distribution(const ScoreVector& scores, std::span<const index_t> coreset,
                                  std::size_t bins) {
    if (bins < 1) throw ValidationError("invalid-rate: bin count must be >= 1");
    if (scores.empty()) throw ValidationError("dimension-mismatch: empty score vector");

    ScoreHistogram h;
    h.range_lo = *std::min_element(scores.begin(), scores.end());
    h.range_hi = *std::max_element(scores.begin(), scores.end());
    h.counts.assign(bins, 0);

    for (index_t i : coreset) {
        std::size_t b = 0;
        if (h.range_hi > h.range_lo) {
            b = static_cast<std::size_t>((scores[i] - h.range_lo) / (h.range_hi - h.range_lo) *
                                         static_cast<double>(bins));
            if (b >= bins) b = bins - 1;
        }
        ++h.counts[b];
    }

    const double total = static_cast<double>(coreset.size());
    double entropy = 0.0;
    if (total > 0) {
        for (std::size_t c : h.counts) {
            if (c == 0) continue;
            const double p = static_cast<double>(c) / total;
            entropy -= p * std::log(p);
        }
    }
    h.entropy_nats = entropy;
    return h;
}

namespace {

// x <- Cov * v without forming the covariance: X_c^T (X_c v) / (n - 1).
std::vector<double> cov_times(const std::vector<double>& centered, std::size_t n, std::size_t d,
                              const std::vector<double>& v) {
    std::vector<double> proj(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = centered.data() + i * d;
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += row[t] * v[t];
        proj[i] = s;
    }
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = centered.data() + i * d;
        for (std::size_t t = 0; t < d; ++t) out[t] += row[t] * proj[i];
    }
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (auto& x : out) x /= denom;
    return out;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
    std::size_t arg = 0;
    for (std::size_t t = 1; t < v.size(); ++t)
        if (std::abs(v[t]) > std::abs(v[arg])) arg = t;
    if (v[arg] < 0)
        for (auto& x : v) x = -x;
}

constexpr std::size_t kPowerIters = 5000;
constexpr double kPowerTol = 1e-13;

// Leading eigenvector of the covariance, orthogonalized against `against`
// when given. Returns false when the operator is (numerically) zero along
// the searched subspace.
bool power_iterate(const std::vector<double>& centered, std::size_t n, std::size_t d,
                   const std::vector<double>* against, std::uint64_t seed,
                   std::vector<double>& v) {
    SplitMix64 rng = rng_stream(seed, "metrics.pca", against == nullptr ? 0 : 1);
    v.assign(d, 0.0);
    for (auto& x : v) x = rng.next_double() - 0.5;
    if (against != nullptr) {
        double dot = 0.0;
        for (std::size_t t = 0; t < d; ++t) dot += v[t] * (*against)[t];
        for (std::size_t t = 0; t < d; ++t) v[t] -= dot * (*against)[t];
    }
    double len = norm2(v);
    if (len == 0.0) return false;
    for (auto& x : v) x /= len;

    for (std::size_t iter = 0; iter < kPowerIters; ++iter) {
        std::vector<double> next = cov_times(centered, n, d, v);
        if (against != nullptr) {
            double dot = 0.0;
            for (std::size_t t = 0; t < d; ++t) dot += next[t] * (*against)[t];
            for (std::size_t t = 0; t < d; ++t) next[t] -= dot * (*against)[t];
        }
        len = norm2(next);
        if (len < 1e-300) return false;
        for (auto& x : next) x /= len;

        double delta = 0.0;
        for (std::size_t t = 0; t < d; ++t) delta = std::max(delta, std::abs(next[t] - v[t]));
        // Sign flips between iterations mean the dominant eigenvalue is seen
        // through an odd cycle; compare against -next as well.
        double delta_neg = 0.0;
        for (std::size_t t = 0; t < d; ++t) delta_neg = std::max(delta_neg, std::abs(next[t] + v[t]));
        v = std::move(next);
        if (std::min(delta, delta_neg) < kPowerTol) break;
    }
    return true;
}

}  // namespace

EmbeddingMatrix project_2d(const EmbeddingMatrix& emb, std::uint64_t seed) {
    if (emb.d < 2) throw ValidationError("dimension-mismatch: 2-D projection needs d >= 2");
    const std::size_t n = emb.n, d = emb.d;

    std::vector<double> centered = emb.values;
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < d; ++t) mean[t] += centered[i * d + t];
    for (auto& x : mean) x /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < d; ++t) centered[i * d + t] -= mean[t];

    EmbeddingMatrix out;
    out.n = n;
    out.d = 2;
    out.values.assign(n * 2, 0.0);

    std::vector<double> v1, v2;
    if (!power_iterate(centered, n, d, nullptr, seed, v1)) return out;  // zero variance
    fix_sign(v1);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = centered.data() + i * d;
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += row[t] * v1[t];
        out.values[i * 2] = s;
    }

    if (power_iterate(centered, n, d, &v1, seed, v2)) {
        fix_sign(v2);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = centered.data() + i * d;
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) s += row[t] * v2[t];
            out.values[i * 2 + 1] = s;
        }
    }
    return out;
}

CoresetReport evaluate_coreset(const EmbeddingMatrix& emb, const Coreset& coreset,
                               const EmbeddingMatrix* eval_set, const ScoreVector* scores,
                               std::size_t bins) {
    if (coreset.indices.empty()) throw ValidationError("empty-coreset: nothing to evaluate");
    for (index_t i : coreset.indices)
        if (i >= emb.n)
            throw ValidationError("dimension-mismatch: coreset index " + std::to_string(i) +
                                  " out of range for n=" + std::to_string(emb.n));

    const EmbeddingMatrix picked = select_rows(emb, coreset.indices);

    CoresetReport report;
    report.coreset_size = coreset.indices.size();
    report.auc_pr = auc_pr(picked, eval_set != nullptr ? *eval_set : emb);
    report.auc_pr_mode = eval_set != nullptr ? "eval-set" : "self-coverage";
    report.covering_radius = covering_radius(picked, emb);
    if (scores != nullptr) {
        if (scores->size() != emb.n)
            throw ValidationError("dimension-mismatch: " + std::to_string(scores->size()) +
                                  " scores for " + std::to_string(emb.n) + " samples");
        report.has_scores = true;
        report.histogram = score_distribution(*scores, coreset.indices, bins);
    }
    return report;
}

}  // namespace coregraph
