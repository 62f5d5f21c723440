// coregraph: coreset selection over embedding matrices and difficulty
// scores. Subcommands cover selection (prune), coverage evaluation
// (evaluate), synthetic dataset generation (synth), distance-threshold
// sub-population extraction (subpop), and k-means difficulty scoring
// (prototype-scores). Every run writes a manifest with input/output digests
// and per-stage wall-clock durations so results can be re-verified.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coregraph/baselines.hpp"
#include "coregraph/io.hpp"
#include "coregraph/metrics.hpp"
#include "coregraph/parallel.hpp"
#include "coregraph/select_d2.hpp"
#include "coregraph/synth.hpp"

namespace cg = coregraph;

namespace {

// Files created by the current run; removed when the run fails so a nonzero
// exit never leaves partial outputs behind.
class OutputTracker {
public:
    void created(const std::string& path) { paths_.push_back(path); }
    void discard_all() {
        for (const auto& p : paths_) std::remove(p.c_str());
        paths_.clear();
    }
    const std::vector<std::string>& paths() const { return paths_; }

private:
    std::vector<std::string> paths_;
};

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) out += ' ';
        out += argv[i];
    }
    return out;
}

nlohmann::ordered_json config_echo(const cg::SelectionConfig& cfg) {
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

void write_manifest(const std::string& command_line, const std::string& subcommand,
                    const nlohmann::ordered_json& config,
                    const std::vector<std::string>& input_paths,
                    const std::vector<std::string>& output_paths,
                    const nlohmann::ordered_json& durations_ms, const std::string& manifest_path,
                    OutputTracker& tracker) {
    nlohmann::ordered_json doc;
    doc["format_version"] = "manifest/1";
    doc["command"] = command_line;
    doc["subcommand"] = subcommand;
    doc["threads"] = cg::max_threads();
    doc["config"] = config;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& p : input_paths) inputs[p] = cg::file_digest_hex(p);
    doc["inputs"] = inputs;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const auto& p : output_paths) outputs[p] = cg::file_digest_hex(p);
    doc["outputs"] = outputs;
    doc["durations_ms"] = durations_ms;

    std::ofstream out(manifest_path, std::ios::trunc);
    if (!out) throw cg::IoError("file-error: cannot write " + manifest_path);
    tracker.created(manifest_path);
    out << doc.dump(2) << "\n";
    if (!out.flush()) throw cg::IoError("file-error: failed writing " + manifest_path);
}

std::string sweep_output_path(const std::string& base, std::size_t k, double gamma_r) {
    std::ostringstream gamma;
    gamma << gamma_r;
    const auto dot = base.rfind('.');
    const auto slash = base.find_last_of("/\\");
    const std::string suffix = ".k" + std::to_string(k) + ".gr" + gamma.str();
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return base + suffix;
    return base.substr(0, dot) + suffix + base.substr(dot);
}

// ---------------------------------------------------------------- prune ---

struct PruneOptions {
    std::string embeddings_path, scores_path, labels_path, output_path, dump_graph_path;
    double prune_rate = -1.0;
    std::int64_t budget = -1;
    std::string method = "d2";
    cg::SelectionConfig cfg;
    std::size_t bins = 50;
    double beta = 0.0;
    bool stratify = false, normalize = false, unit_scores = false, symmetrize = false;
    std::vector<std::size_t> sweep_k;
    std::vector<double> sweep_gamma_r;
};

cg::Coreset run_selector(const PruneOptions& opt, const cg::SelectionConfig& cfg,
                         const cg::EmbeddingMatrix& emb, const cg::ScoreVector& scores,
                         const cg::LabelVector* labels, std::size_t m, cg::StageTimes& times) {
    Stopwatch watch;
    cg::Coreset coreset;
    if (cfg.method == "d2") {
        return cg::d2_prune(emb, scores, labels, cfg, &times);
    } else if (cfg.method == "random") {
        coreset = cg::random_select(emb.n, m, cfg.seed);
    } else if (cfg.method == "topk") {
        coreset = cg::topk_select(scores, m);
    } else if (cfg.method == "kcenter") {
        coreset = cg::kcenter_select(emb, m);
    } else if (cfg.method == "ccs") {
        coreset = cg::ccs_select(scores, m, cg::CcsConfig{opt.bins, opt.beta}, cfg.seed);
    } else if (cfg.method == "ccs-kcenter") {
        coreset = cg::ccs_kcenter_select(emb, scores, m, cg::CcsConfig{opt.bins, opt.beta});
    } else if (cfg.method == "moderate") {
        coreset = cg::moderate_select(emb, *labels, m);
    } else {
        throw cg::ValidationError("unknown-method: " + cfg.method);
    }
    times.selection_s += watch.ms() / 1000.0;
    return coreset;
}

int cmd_prune(const PruneOptions& opt, const std::string& command_line, OutputTracker& tracker) {
    if (opt.prune_rate < 0 && opt.budget < 0)
        throw cg::ValidationError("missing-input: provide --prune-rate or --budget");
    const bool needs_scores =
        !opt.unit_scores && (opt.method == "d2" || opt.method == "topk" || opt.method == "ccs" ||
                             opt.method == "ccs-kcenter");
    if (opt.unit_scores && opt.method != "d2")
        throw cg::ValidationError("flag-conflict: --unit-scores applies to --method d2 only");
    if (opt.unit_scores && !opt.scores_path.empty())
        throw cg::ValidationError("flag-conflict: --unit-scores and --scores are mutually exclusive");
    if (needs_scores && opt.scores_path.empty())
        throw cg::ValidationError("missing-input: --method " + opt.method + " requires --scores");
    if (opt.method == "moderate" && opt.labels_path.empty())
        throw cg::ValidationError("missing-labels: --method moderate requires --labels");
    if (opt.stratify && opt.labels_path.empty())
        throw cg::ValidationError("missing-labels: --stratify requires --labels");
    if (opt.stratify && opt.method != "d2" && opt.method != "moderate")
        throw cg::ValidationError("flag-conflict: --stratify is supported for --method d2");
    if ((!opt.sweep_k.empty() || !opt.sweep_gamma_r.empty()) && opt.method != "d2")
        throw cg::ValidationError("flag-conflict: sweeps apply to --method d2 only");

    const cg::EmbeddingMatrix emb = cg::read_embeddings(opt.embeddings_path);
    cg::ScoreVector scores = opt.unit_scores || opt.scores_path.empty()
                                 ? cg::ScoreVector(emb.n, 1.0)
                                 : cg::read_scores(opt.scores_path, emb.n);
    std::optional<cg::LabelVector> labels;
    if (!opt.labels_path.empty()) labels = cg::read_labels(opt.labels_path, emb.n);
    cg::validate_pair(emb, scores, labels ? &*labels : nullptr);
    if (opt.normalize) scores = cg::normalize_scores(scores);

    std::size_t m = 0;
    if (opt.budget >= 0) {
        m = static_cast<std::size_t>(opt.budget);
        if (m < 1 || m > emb.n)
            throw cg::ValidationError("budget-exceeds-n: budget must lie in [1, " +
                                      std::to_string(emb.n) + "]");
    } else {
        m = cg::budget_from_rate(emb.n, opt.prune_rate);
    }

    cg::SelectionConfig base_cfg;
    base_cfg.prune_rate = opt.budget >= 0
                              ? 1.0 - static_cast<double>(m) / static_cast<double>(emb.n)
                              : opt.prune_rate;
    base_cfg.budget = m;
    base_cfg.k = opt.cfg.k;
    base_cfg.gamma_f = opt.cfg.gamma_f;
    base_cfg.gamma_r = opt.cfg.gamma_r;
    base_cfg.method = opt.method;
    base_cfg.seed = opt.cfg.seed;
    base_cfg.stratify_by_label = opt.stratify;
    base_cfg.normalize_scores = opt.normalize;
    base_cfg.symmetrize_graph = opt.symmetrize;

    std::vector<std::string> inputs{opt.embeddings_path};
    if (!opt.unit_scores && !opt.scores_path.empty()) inputs.push_back(opt.scores_path);
    if (!opt.labels_path.empty()) inputs.push_back(opt.labels_path);

    // Sweep grid (a single run is a 1x1 grid).
    std::vector<std::size_t> ks = opt.sweep_k.empty() ? std::vector<std::size_t>{base_cfg.k} : opt.sweep_k;
    std::vector<double> gammas =
        opt.sweep_gamma_r.empty() ? std::vector<double>{base_cfg.gamma_r} : opt.sweep_gamma_r;
    const bool sweeping = ks.size() * gammas.size() > 1;

    for (std::size_t k : ks) {
        for (double gamma_r : gammas) {
            cg::SelectionConfig cfg = base_cfg;
            cfg.k = k;
            cfg.gamma_r = gamma_r;
            const std::string out_path =
                sweeping ? sweep_output_path(opt.output_path, k, gamma_r) : opt.output_path;

            Stopwatch total;
            cg::StageTimes times;
            cg::Coreset coreset =
                run_selector(opt, cfg, emb, scores, labels ? &*labels : nullptr, m, times);
            coreset.config = cfg;
            coreset.seed = cfg.seed;
            coreset.source_n = emb.n;

            tracker.created(out_path);
            cg::write_coreset(coreset, out_path);
            std::vector<std::string> outputs{out_path};

            if (!opt.dump_graph_path.empty()) {
                const auto neighbors = cg::build_knn(emb, cfg.k);
                const auto graph = cg::build_graph(scores, neighbors, cfg.gamma_f, cfg.symmetrize_graph);
                std::ofstream dump(opt.dump_graph_path, std::ios::trunc);
                if (!dump) throw cg::IoError("file-error: cannot write " + opt.dump_graph_path);
                tracker.created(opt.dump_graph_path);
                cg::dump_graph(graph, dump);
                if (!dump.flush()) throw cg::IoError("file-error: failed writing " + opt.dump_graph_path);
                outputs.push_back(opt.dump_graph_path);
            }

            const nlohmann::ordered_json durations{
                {"graph_build", times.graph_build_s * 1000.0},
                {"forward_pass", times.forward_pass_s * 1000.0},
                {"selection", times.selection_s * 1000.0},
                {"total", total.ms()},
            };
            write_manifest(command_line, "prune", config_echo(cfg), inputs, outputs, durations,
                           out_path + ".manifest.json", tracker);
            std::cout << "wrote " << out_path << " (" << coreset.indices.size() << " of " << emb.n
                      << " samples, method " << cfg.method << ")\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------- evaluate ---

struct EvaluateOptions {
    std::string coreset_path, embeddings_path, eval_path, scores_path, output_path, projection_path;
    std::size_t bins = 50;
};

int cmd_evaluate(const EvaluateOptions& opt, const std::string& command_line,
                 OutputTracker& tracker) {
    const cg::EmbeddingMatrix emb = cg::read_embeddings(opt.embeddings_path);
    const cg::Coreset coreset = cg::read_coreset(opt.coreset_path, emb.n);

    std::optional<cg::EmbeddingMatrix> eval_set;
    if (!opt.eval_path.empty()) eval_set = cg::read_embeddings(opt.eval_path);
    std::optional<cg::ScoreVector> scores;
    if (!opt.scores_path.empty()) scores = cg::read_scores(opt.scores_path, emb.n);

    Stopwatch total;
    const auto report = cg::evaluate_coreset(emb, coreset, eval_set ? &*eval_set : nullptr,
                                             scores ? &*scores : nullptr, opt.bins);
    tracker.created(opt.output_path);
    cg::write_report(report, opt.output_path);
    std::vector<std::string> outputs{opt.output_path};

    if (!opt.projection_path.empty()) {
        const auto projected = cg::project_2d(emb);
        std::vector<char> selected(emb.n, 0);
        for (cg::index_t i : coreset.indices) selected[i] = 1;
        tracker.created(opt.projection_path);
        cg::write_projection_csv(projected, &selected, scores ? &*scores : nullptr,
                                 opt.projection_path);
        outputs.push_back(opt.projection_path);
    }

    std::vector<std::string> inputs{opt.coreset_path, opt.embeddings_path};
    if (!opt.eval_path.empty()) inputs.push_back(opt.eval_path);
    if (!opt.scores_path.empty()) inputs.push_back(opt.scores_path);

    const nlohmann::ordered_json config{{"bins", opt.bins},
                                        {"auc_pr_mode", report.auc_pr_mode}};
    write_manifest(command_line, "evaluate", config, inputs, outputs,
                   nlohmann::ordered_json{{"evaluation", total.ms()}, {"total", total.ms()}},
                   opt.output_path + ".manifest.json", tracker);

    std::cout << "auc_pr=" << report.auc_pr << " (" << report.auc_pr_mode << ")"
              << " covering_radius=" << report.covering_radius;
    if (report.has_scores) std::cout << " score_entropy_nats=" << report.histogram.entropy_nats;
    std::cout << "\n";
    return 0;
}

// ----------------------------------------------------------------- synth ---

struct SynthOptions {
    std::string spec_path, output_dir;
};

int cmd_synth(const SynthOptions& opt, const std::string& command_line, OutputTracker& tracker) {
    const cg::MixtureSpec spec = cg::read_mixture_spec(opt.spec_path);
    Stopwatch total;
    const cg::SynthDataset data = cg::generate(spec);

    std::filesystem::create_directories(opt.output_dir);
    const std::string emb_path = opt.output_dir + "/embeddings.bin";
    const std::string scores_path = opt.output_dir + "/scores.csv";
    const std::string labels_path = opt.output_dir + "/labels.csv";
    tracker.created(emb_path);
    cg::write_embeddings(data.embeddings, emb_path);
    tracker.created(scores_path);
    cg::write_scores(data.scores, scores_path);
    tracker.created(labels_path);
    cg::write_labels(data.labels, labels_path);

    const nlohmann::ordered_json config{{"spec", opt.spec_path},
                                        {"n", data.embeddings.n},
                                        {"d", data.embeddings.d},
                                        {"components", spec.components.size()},
                                        {"seed", spec.seed}};
    write_manifest(command_line, "synth", config, {opt.spec_path},
                   {emb_path, scores_path, labels_path},
                   nlohmann::ordered_json{{"generation", total.ms()}, {"total", total.ms()}},
                   opt.output_dir + "/manifest.json", tracker);
    std::cout << "wrote " << data.embeddings.n << " samples to " << opt.output_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------- subpop ---

struct SubpopOptions {
    std::string embeddings_path, output_path;
    std::size_t k = 10;
    double threshold = 0.0;
    std::size_t min_size = 1;
};

int cmd_subpop(const SubpopOptions& opt, const std::string& command_line, OutputTracker& tracker) {
    const cg::EmbeddingMatrix emb = cg::read_embeddings(opt.embeddings_path);
    Stopwatch total;
    const auto neighbors = cg::build_knn(emb, opt.k);
    const auto pops = cg::extract_subpopulations(neighbors, opt.threshold);

    std::size_t listed = 0;
    std::ofstream out(opt.output_path, std::ios::trunc);
    if (!out) throw cg::IoError("file-error: cannot write " + opt.output_path);
    tracker.created(opt.output_path);
    std::ostringstream header;
    for (const auto& pop : pops)
        if (pop.members.size() >= opt.min_size) ++listed;
    out << "# components=" << pops.size() << " listed=" << listed << " threshold=" << opt.threshold
        << " k=" << opt.k << " min_size=" << opt.min_size << "\n";
    std::size_t rank = 0;
    for (const auto& pop : pops) {
        if (pop.members.size() < opt.min_size) continue;
        out << rank++ << ' ' << pop.members.size();
        for (cg::index_t mbr : pop.members) out << ' ' << mbr;
        out << '\n';
    }
    if (!out.flush()) throw cg::IoError("file-error: failed writing " + opt.output_path);

    const nlohmann::ordered_json config{{"k", opt.k},
                                        {"threshold", opt.threshold},
                                        {"min_size", opt.min_size}};
    write_manifest(command_line, "subpop", config, {opt.embeddings_path}, {opt.output_path},
                   nlohmann::ordered_json{{"extraction", total.ms()}, {"total", total.ms()}},
                   opt.output_path + ".manifest.json", tracker);
    std::cout << "components=" << pops.size() << " listed=" << listed << "\n";
    return 0;
}

// ------------------------------------------------------- prototype-scores ---

struct ProtoOptions {
    std::string embeddings_path, output_path;
    std::size_t clusters = 0;
    std::uint64_t seed = 0;
    std::size_t max_iters = 100;
    double tol = 1e-6;
};

int cmd_prototype_scores(const ProtoOptions& opt, const std::string& command_line,
                         OutputTracker& tracker) {
    const cg::EmbeddingMatrix emb = cg::read_embeddings(opt.embeddings_path);
    Stopwatch total;
    cg::KMeansResult result;
    const auto scores =
        cg::prototypicality_scores(emb, opt.clusters, opt.seed, opt.max_iters, opt.tol, &result);
    tracker.created(opt.output_path);
    cg::write_scores(scores, opt.output_path);

    const nlohmann::ordered_json config{{"clusters", opt.clusters},
                                        {"seed", opt.seed},
                                        {"max_iters", opt.max_iters},
                                        {"tol", opt.tol},
                                        {"iterations_run", result.iterations},
                                        {"empty_reseeds", result.empty_reseeds}};
    write_manifest(command_line, "prototype-scores", config, {opt.embeddings_path},
                   {opt.output_path},
                   nlohmann::ordered_json{{"kmeans", total.ms()}, {"total", total.ms()}},
                   opt.output_path + ".manifest.json", tracker);
    std::cout << "wrote " << scores.size() << " scores after " << result.iterations
              << " iterations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coregraph: graph-based coreset selection over embedding matrices"};
    app.require_subcommand(1);
    const std::string command_line = join_args(argc, argv);

    unsigned threads = 0;

    PruneOptions prune;
    auto* prune_cmd = app.add_subcommand("prune", "Select a coreset from embeddings and scores");
    prune_cmd->add_option("--embeddings", prune.embeddings_path, "Embedding matrix file")
        ->required()
        ->check(CLI::ExistingFile);
    prune_cmd->add_option("--scores", prune.scores_path, "Difficulty scores CSV")
        ->check(CLI::ExistingFile);
    prune_cmd->add_option("--labels", prune.labels_path, "Class labels CSV")->check(CLI::ExistingFile);
    auto* rate_opt = prune_cmd->add_option("--prune-rate", prune.prune_rate,
                                           "Fraction of the dataset to remove, in [0,1)");
    auto* budget_opt =
        prune_cmd->add_option("--budget", prune.budget, "Subset size to keep (alternative to rate)");
    rate_opt->excludes(budget_opt);
    budget_opt->excludes(rate_opt);
    prune_cmd->add_option("--method", prune.method, "Selector")
        ->default_val("d2")
        ->check(CLI::IsMember({"d2", "random", "topk", "kcenter", "ccs", "moderate", "ccs-kcenter"}));
    prune_cmd->add_option("--k", prune.cfg.k, "Neighbors per node")->default_val(10);
    prune_cmd->add_option("--gamma-f", prune.cfg.gamma_f, "Forward kernel sharpness")->default_val(1.0);
    prune_cmd->add_option("--gamma-r", prune.cfg.gamma_r, "Reverse kernel sharpness")->default_val(0.3);
    prune_cmd->add_option("--bins", prune.bins, "CCS strata count")->default_val(50);
    prune_cmd->add_option("--beta", prune.beta, "CCS hard cutoff fraction")->default_val(0.0);
    prune_cmd->add_flag("--stratify", prune.stratify, "Select per class using proportional budgets");
    prune_cmd->add_flag("--normalize-scores", prune.normalize, "Min-max normalize scores first");
    prune_cmd->add_flag("--unit-scores", prune.unit_scores, "Initialize node features to 1.0");
    prune_cmd->add_flag("--symmetrize", prune.symmetrize, "Union each graph edge with its reverse");
    prune_cmd->add_option("--seed", prune.cfg.seed, "RNG seed")->default_val(0);
    prune_cmd->add_option("--output", prune.output_path, "Coreset output file")->required();
    prune_cmd->add_option("--dump-graph", prune.dump_graph_path,
                          "Write the dataset graph as 'i j dist weight' lines");
    prune_cmd->add_option("--sweep-k", prune.sweep_k, "Grid of k values (one run per point)")
        ->delimiter(',');
    prune_cmd->add_option("--sweep-gamma-r", prune.sweep_gamma_r, "Grid of gamma_r values")
        ->delimiter(',');
    prune_cmd->add_option("--threads", threads, "Worker thread cap (0 = hardware)")
        ->envname("COREGRAPH_THREADS");

    EvaluateOptions eval;
    auto* eval_cmd = app.add_subcommand("evaluate", "Coverage and difficulty metrics for a coreset");
    eval_cmd->add_option("--coreset", eval.coreset_path, "Coreset file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--embeddings", eval.embeddings_path, "Embedding matrix the coreset indexes")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--eval-embeddings", eval.eval_path, "Held-out evaluation embeddings")
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--scores", eval.scores_path, "Difficulty scores CSV")->check(CLI::ExistingFile);
    eval_cmd->add_option("--bins", eval.bins, "Histogram bins")->default_val(50);
    eval_cmd->add_option("--output", eval.output_path, "Report output file")->required();
    eval_cmd->add_option("--projection", eval.projection_path, "Write a 2-D PCA CSV for plotting");
    eval_cmd->add_option("--threads", threads, "Worker thread cap (0 = hardware)")
        ->envname("COREGRAPH_THREADS");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a Gaussian-mixture dataset");
    synth_cmd->add_option("--spec", synth.spec_path, "Mixture spec JSON")->required()->check(CLI::ExistingFile);
    synth_cmd->add_option("--output-dir", synth.output_dir, "Directory for the dataset files")
        ->required();
    synth_cmd->add_option("--threads", threads, "Worker thread cap (0 = hardware)")
        ->envname("COREGRAPH_THREADS");

    SubpopOptions subpop;
    auto* subpop_cmd =
        app.add_subcommand("subpop", "List connected components under a distance threshold");
    subpop_cmd->add_option("--embeddings", subpop.embeddings_path, "Embedding matrix file")
        ->required()
        ->check(CLI::ExistingFile);
    subpop_cmd->add_option("--k", subpop.k, "Neighbors per node")->default_val(10);
    subpop_cmd->add_option("--threshold", subpop.threshold, "Distance cutoff (> 0)")->required();
    subpop_cmd->add_option("--min-size", subpop.min_size, "Smallest component to list")->default_val(1);
    subpop_cmd->add_option("--output", subpop.output_path, "Listing output file")->required();
    subpop_cmd->add_option("--threads", threads, "Worker thread cap (0 = hardware)")
        ->envname("COREGRAPH_THREADS");

    ProtoOptions proto;
    auto* proto_cmd =
        app.add_subcommand("prototype-scores", "k-means distance scores for unsupervised selection");
    proto_cmd->add_option("--embeddings", proto.embeddings_path, "Embedding matrix file")
        ->required()
        ->check(CLI::ExistingFile);
    proto_cmd->add_option("--clusters", proto.clusters, "Cluster count")->required();
    proto_cmd->add_option("--seed", proto.seed, "RNG seed")->default_val(0);
    proto_cmd->add_option("--max-iters", proto.max_iters, "Iteration cap")->default_val(100);
    proto_cmd->add_option("--tol", proto.tol, "Centroid shift tolerance")->default_val(1e-6);
    proto_cmd->add_option("--output", proto.output_path, "Scores CSV output")->required();
    proto_cmd->add_option("--threads", threads, "Worker thread cap (0 = hardware)")
        ->envname("COREGRAPH_THREADS");

    CLI11_PARSE(app, argc, argv);
    cg::set_max_threads(threads);

    OutputTracker tracker;
    try {
        if (prune_cmd->parsed()) return cmd_prune(prune, command_line, tracker);
        if (eval_cmd->parsed()) return cmd_evaluate(eval, command_line, tracker);
        if (synth_cmd->parsed()) return cmd_synth(synth, command_line, tracker);
        if (subpop_cmd->parsed()) return cmd_subpop(subpop, command_line, tracker);
        if (proto_cmd->parsed()) return cmd_prototype_scores(proto, command_line, tracker);
    } catch (const std::exception& e) {
        tracker.discard_all();
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
