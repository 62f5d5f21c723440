#include "coregraph/types.hpp"

#include <cmath>
#include <limits>

namespace coregraph {

ValidatedBundle validate_pair(const EmbeddingMatrix& emb, const ScoreVector& scores,
                              const LabelVector* labels) {
    if (emb.n < 1 || emb.d < 1)
        throw ValidationError("dimension-mismatch: embedding matrix must have n >= 1 and d >= 1 (got n=" +
                              std::to_string(emb.n) + ", d=" + std::to_string(emb.d) + ")");
    if (emb.values.size() != emb.n * emb.d)
        throw ValidationError("dimension-mismatch: embedding buffer holds " +
                              std::to_string(emb.values.size()) + " values, expected n*d = " +
                              std::to_string(emb.n * emb.d));
    if (emb.n > std::numeric_limits<index_t>::max())
        throw ValidationError("dimension-mismatch: sample count exceeds index range");

    for (std::size_t i = 0; i < emb.values.size(); ++i) {
        if (!std::isfinite(emb.values[i]))
            throw ValidationError("non-finite-value: embedding row " + std::to_string(i / emb.d) +
                                  ", column " + std::to_string(i % emb.d));
    }

    if (scores.size() != emb.n)
        throw ValidationError("dimension-mismatch: " + std::to_string(scores.size()) +
                              " scores for " + std::to_string(emb.n) + " samples");
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!std::isfinite(scores[i]))
            throw ValidationError("non-finite-value: score at index " + std::to_string(i));
    }

    if (labels != nullptr && labels->size() != emb.n)
        throw ValidationError("dimension-mismatch: " + std::to_string(labels->size()) +
                              " labels for " + std::to_string(emb.n) + " samples");

    return ValidatedBundle{&emb, &scores, labels};
}

std::size_t budget_from_rate(std::size_t n, double alpha) {
    if (!(alpha >= 0.0) || alpha >= 1.0 || !std::isfinite(alpha))
        throw ValidationError("invalid-rate: prune rate must lie in [0, 1), got " + std::to_string(alpha));
    if (n < 1) throw ValidationError("invalid-rate: n must be >= 1");

    const double kept = static_cast<double>(n) * (1.0 - alpha);
    auto m = static_cast<std::size_t>(std::llround(kept));  // half away from zero
    if (m < 1) m = 1;
    if (m > n) m = n;
    return m;
}

ScoreVector normalize_scores(const ScoreVector& scores) {
    if (scores.empty()) throw ValidationError("dimension-mismatch: empty score vector");

    double lo = scores[0], hi = scores[0];
    for (double s : scores) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    ScoreVector out(scores.size());
    if (hi == lo) {
        for (auto& v : out) v = 0.5;
        return out;
    }
    const double range = hi - lo;
    for (std::size_t i = 0; i < scores.size(); ++i) out[i] = (scores[i] - lo) / range;
    return out;
}

EmbeddingMatrix select_rows(const EmbeddingMatrix& emb, std::span<const index_t> indices) {
    EmbeddingMatrix out;
    out.n = indices.size();
    out.d = emb.d;
    out.values.resize(out.n * out.d);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = emb.row(indices[r]);
        std::copy(src.begin(), src.end(), out.values.begin() + r * emb.d);
    }
    return out;
}

}  // namespace coregraph
