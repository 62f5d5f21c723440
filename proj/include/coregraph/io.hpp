#pragma once

#include <cstdint>
#include <string>

#include "coregraph/metrics.hpp"
#include "coregraph/synth.hpp"
#include "coregraph/types.hpp"

namespace coregraph {

// Embedding files: 8 ASCII bytes "COREGRF1", then n and d as unsigned 64-bit
// little-endian, then n*d IEEE-754 float32 little-endian values, row-major.
// File size is exactly 24 + 4*n*d bytes. Values are widened to double on
// read; distances and scores are always computed in double.
EmbeddingMatrix read_embeddings(const std::string& path);
void write_embeddings(const EmbeddingMatrix& emb, const std::string& path);

// Scores and labels: one value per line, optional "score" / "label" header.
ScoreVector read_scores(const std::string& path);
ScoreVector read_scores(const std::string& path, std::size_t expected_n);
LabelVector read_labels(const std::string& path);
LabelVector read_labels(const std::string& path, std::size_t expected_n);
void write_scores(const ScoreVector& scores, const std::string& path);
void write_labels(const LabelVector& labels, const std::string& path);

// Coresets: JSON document carrying the format version, method, full config
// echo, the ordered index list, and summary stats. Round-trips exactly.
void write_coreset(const Coreset& coreset, const std::string& path);
Coreset read_coreset(const std::string& path);
// Additionally validates indices against a paired dataset size.
Coreset read_coreset(const std::string& path, std::size_t expected_n);

void write_report(const CoresetReport& report, const std::string& path);

// Mixture spec for the synthetic generator, as a JSON document.
MixtureSpec read_mixture_spec(const std::string& path);

// 2-D projection as CSV (x,y[,selected][,score]) for external plotting.
void write_projection_csv(const EmbeddingMatrix& projected, const std::vector<char>* selected,
                          const ScoreVector* scores, const std::string& path);

// FNV-1a 64 digest of a file's bytes, as 16 lowercase hex characters.
std::string file_digest_hex(const std::string& path);

}  // namespace coregraph
