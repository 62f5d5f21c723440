#include "coregraph/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <unordered_set>

#include <json.hpp>

#include "coregraph/rng.hpp"

namespace coregraph {

namespace {

constexpr char kMagic[8] = {'C', 'O', 'R', 'E', 'G', 'R', 'F', '1'};
constexpr const char* kCoresetVersion = "coreset/1";
constexpr const char* kReportVersion = "report/1";

void put_u64le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("file-error: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("file-error: failed reading " + path);
    return bytes;
}

void write_file_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("file-error: cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("file-error: failed writing " + path);
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

// Shortest round-trip decimal form.
std::string format_double(double v) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

EmbeddingMatrix read_embeddings(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() < 24) throw IoError("truncated-file: " + path + " is smaller than the 24-byte header");
    if (std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw IoError("bad-magic: " + path + " is not an embedding file");

    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint64_t n = get_u64le(p + 8);
    const std::uint64_t d = get_u64le(p + 16);
    if (n == 0 || d == 0) throw IoError("size-mismatch: header declares an empty matrix");

    // Bounds-check the declared shape against the real file length before
    // allocating anything.
    const std::uint64_t payload = bytes.size() - 24;
    if (d > payload / 4 || n > payload / 4 / d) {
        if (payload % 4 == 0 && n * d * 4 > payload)
            throw IoError("truncated-file: " + path + " declares " + std::to_string(n) + "x" +
                          std::to_string(d) + " values but holds only " + std::to_string(payload / 4));
        throw IoError("truncated-file: " + path + " payload is shorter than the declared shape");
    }
    if (payload != n * d * 4)
        throw IoError("size-mismatch: " + path + " holds " + std::to_string(payload) +
                      " payload bytes, expected " + std::to_string(n * d * 4));

    EmbeddingMatrix emb;
    emb.n = n;
    emb.d = d;
    emb.values.resize(n * d);
    const unsigned char* q = p + 24;
    for (std::size_t i = 0; i < emb.values.size(); ++i) {
        std::uint32_t raw = static_cast<std::uint32_t>(q[0]) | (static_cast<std::uint32_t>(q[1]) << 8) |
                            (static_cast<std::uint32_t>(q[2]) << 16) | (static_cast<std::uint32_t>(q[3]) << 24);
        emb.values[i] = static_cast<double>(std::bit_cast<float>(raw));
        q += 4;
    }
    return emb;
}

void write_embeddings(const EmbeddingMatrix& emb, const std::string& path) {
    if (emb.values.size() != emb.n * emb.d)
        throw ValidationError("dimension-mismatch: embedding buffer does not match n*d");
    std::string bytes;
    bytes.reserve(24 + emb.values.size() * 4);
    bytes.append(kMagic, 8);
    put_u64le(bytes, emb.n);
    put_u64le(bytes, emb.d);
    for (double v : emb.values) {
        const auto raw = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((raw >> (8 * i)) & 0xff));
    }
    write_file_bytes(path, bytes);
}

namespace {

template <typename Parse>
auto read_column(const std::string& path, const char* header, Parse parse) {
    using Value = decltype(parse(std::string_view{}, std::size_t{}));
    std::ifstream in(path);
    if (!in) throw IoError("file-error: cannot open " + path);

    std::vector<Value> out;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view tok = trimmed(line);
        if (first) {
            first = false;
            if (tok == header) continue;
        }
        out.push_back(parse(tok, lineno));
    }
    if (in.bad()) throw IoError("file-error: failed reading " + path);
    return out;
}

}  // namespace

ScoreVector read_scores(const std::string& path) {
    return read_column(path, "score", [&](std::string_view tok, std::size_t lineno) {
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw IoError("parse-error: line " + std::to_string(lineno) + " of " + path +
                          " is not a number: '" + std::string(tok) + "'");
        return v;
    });
}

ScoreVector read_scores(const std::string& path, std::size_t expected_n) {
    auto scores = read_scores(path);
    if (scores.size() != expected_n)
        throw IoError("length-mismatch: " + path + " holds " + std::to_string(scores.size()) +
                      " scores, expected " + std::to_string(expected_n));
    return scores;
}

LabelVector read_labels(const std::string& path) {
    return read_column(path, "label", [&](std::string_view tok, std::size_t lineno) {
        std::uint64_t v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() ||
            v > std::numeric_limits<index_t>::max())
            throw IoError("parse-error: line " + std::to_string(lineno) + " of " + path +
                          " is not a non-negative label: '" + std::string(tok) + "'");
        return static_cast<index_t>(v);
    });
}

LabelVector read_labels(const std::string& path, std::size_t expected_n) {
    auto labels = read_labels(path);
    if (labels.size() != expected_n)
        throw IoError("length-mismatch: " + path + " holds " + std::to_string(labels.size()) +
                      " labels, expected " + std::to_string(expected_n));
    return labels;
}

void write_scores(const ScoreVector& scores, const std::string& path) {
    std::string bytes = "score\n";
    for (double v : scores) {
        bytes += format_double(v);
        bytes += '\n';
    }
    write_file_bytes(path, bytes);
}

void write_labels(const LabelVector& labels, const std::string& path) {
    std::string bytes = "label\n";
    for (index_t v : labels) {
        bytes += std::to_string(v);
        bytes += '\n';
    }
    write_file_bytes(path, bytes);
}

namespace {

nlohmann::ordered_json config_to_json(const SelectionConfig& cfg) {
    return nlohmann::ordered_json{
        {"prune_rate", cfg.prune_rate},
        {"budget", cfg.budget},
        {"k", cfg.k},
        {"gamma_f", cfg.gamma_f},
        {"gamma_r", cfg.gamma_r},
        {"method", cfg.method},
        {"seed", cfg.seed},
        {"stratify_by_label", cfg.stratify_by_label},
        {"normalize_scores", cfg.normalize_scores},
        {"symmetrize_graph", cfg.symmetrize_graph},
    };
}

SelectionConfig config_from_json(const nlohmann::json& j) {
    SelectionConfig cfg;
    cfg.prune_rate = j.at("prune_rate").get<double>();
    cfg.budget = j.at("budget").get<std::size_t>();
    cfg.k = j.at("k").get<std::size_t>();
    cfg.gamma_f = j.at("gamma_f").get<double>();
    cfg.gamma_r = j.at("gamma_r").get<double>();
    cfg.method = j.at("method").get<std::string>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.stratify_by_label = j.at("stratify_by_label").get<bool>();
    cfg.normalize_scores = j.at("normalize_scores").get<bool>();
    cfg.symmetrize_graph = j.at("symmetrize_graph").get<bool>();
    return cfg;
}

}  // namespace

void write_coreset(const Coreset& coreset, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["format_version"] = kCoresetVersion;
    doc["method"] = coreset.method;
    doc["seed"] = coreset.seed;
    doc["config"] = config_to_json(coreset.config);
    doc["stats"] = {{"n", coreset.source_n}, {"selected", coreset.indices.size()}};
    doc["indices"] = coreset.indices;
    write_file_bytes(path, doc.dump(2) + "\n");
}

Coreset read_coreset(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file_bytes(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("parse-error: " + path + ": " + e.what());
    }
    try {
        if (doc.at("format_version").get<std::string>() != kCoresetVersion)
            throw IoError("version-error: " + path + " has format_version '" +
                          doc.at("format_version").get<std::string>() + "', expected '" +
                          kCoresetVersion + "'");
        Coreset out;
        out.method = doc.at("method").get<std::string>();
        out.seed = doc.at("seed").get<std::uint64_t>();
        out.config = config_from_json(doc.at("config"));
        out.source_n = doc.at("stats").at("n").get<std::size_t>();
        out.indices = doc.at("indices").get<std::vector<index_t>>();

        std::unordered_set<index_t> seen;
        for (index_t i : out.indices) {
            if (i >= out.source_n)
                throw ValidationError("validation-error: coreset index " + std::to_string(i) +
                                      " out of range for n=" + std::to_string(out.source_n));
            if (!seen.insert(i).second)
                throw ValidationError("validation-error: duplicate coreset index " + std::to_string(i));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("parse-error: " + path + ": " + e.what());
    }
}

Coreset read_coreset(const std::string& path, std::size_t expected_n) {
    Coreset out = read_coreset(path);
    if (out.source_n != expected_n)
        throw ValidationError("validation-error: coreset was selected from n=" +
                              std::to_string(out.source_n) + " but the paired dataset has n=" +
                              std::to_string(expected_n));
    return out;
}

void write_report(const CoresetReport& report, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["format_version"] = kReportVersion;
    doc["coreset_size"] = report.coreset_size;
    doc["auc_pr"] = report.auc_pr;
    doc["auc_pr_mode"] = report.auc_pr_mode;
    doc["covering_radius"] = report.covering_radius;
    if (report.has_scores) {
        doc["score_histogram"] = {
            {"bins", report.histogram.counts.size()},
            {"range", {report.histogram.range_lo, report.histogram.range_hi}},
            {"counts", report.histogram.counts},
        };
        doc["score_entropy_nats"] = report.histogram.entropy_nats;
    }
    write_file_bytes(path, doc.dump(2) + "\n");
}

MixtureSpec read_mixture_spec(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file_bytes(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("invalid-spec: " + path + ": " + e.what());
    }
    try {
        MixtureSpec spec;
        spec.dimension = doc.at("dimension").get<std::size_t>();
        spec.seed = doc.value("seed", std::uint64_t{0});
        const std::string rule = doc.value("score_rule", std::string("inverse-density"));
        if (rule == "inverse-density") {
            spec.score_rule = ScoreRule::InverseDensity;
        } else if (rule == "uniform") {
            spec.score_rule = ScoreRule::Uniform;
        } else if (rule == "custom-file") {
            spec.score_rule = ScoreRule::CustomFile;
            spec.custom_score_path = doc.at("score_file").get<std::string>();
        } else {
            throw IoError("invalid-spec: unknown score_rule '" + rule + "'");
        }
        for (const auto& c : doc.at("components")) {
            MixtureComponent comp;
            comp.mean = c.at("mean").get<std::vector<double>>();
            comp.stddev = c.at("std").get<double>();
            comp.count = c.at("count").get<std::size_t>();
            spec.components.push_back(std::move(comp));
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("invalid-spec: " + path + ": " + e.what());
    }
}

void write_projection_csv(const EmbeddingMatrix& projected, const std::vector<char>* selected,
                          const ScoreVector* scores, const std::string& path) {
    std::string bytes = "x,y";
    if (selected != nullptr) bytes += ",selected";
    if (scores != nullptr) bytes += ",score";
    bytes += '\n';
    for (std::size_t i = 0; i < projected.n; ++i) {
        bytes += format_double(projected.values[i * 2]);
        bytes += ',';
        bytes += format_double(projected.values[i * 2 + 1]);
        if (selected != nullptr) {
            bytes += ',';
            bytes += (*selected)[i] ? '1' : '0';
        }
        if (scores != nullptr) {
            bytes += ',';
            bytes += format_double((*scores)[i]);
        }
        bytes += '\n';
    }
    write_file_bytes(path, bytes);
}

std::string file_digest_hex(const std::string& path) {
    const std::string bytes = read_file_bytes(path);
    const std::uint64_t h = fnv1a64(bytes.data(), bytes.size());
    std::string hex(16, '0');
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) hex[15 - i] = digits[(h >> (4 * i)) & 0xf];
    return hex;
}

}  // namespace coregraph
