#include "cli_app.hpp"

#include "wgtk/attributes.hpp"
#include "wgtk/fairness.hpp"
#include "wgtk/interventions.hpp"
#include "wgtk/io_util.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/largescale.hpp"
#include "wgtk/linkscheme.hpp"
#include "wgtk/manifest.hpp"
#include "wgtk/multiplicity.hpp"
#include "wgtk/planted.hpp"
#include "wgtk/ranking.hpp"
#include "wgtk/regression.hpp"
#include "wgtk/tuning.hpp"
#include "wgtk/webgraph.hpp"
#include "wgtk/weighted_network.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <set>
#include <sstream>

namespace wgtk::cli {

namespace {

struct Context {
    std::vector<std::string> argv; // as invoked, for the manifest
    int threads = 0;
    bool quiet = false;
};

void log(const Context& ctx, const std::string& message) {
    if (!ctx.quiet) std::cerr << message << '\n';
}

/// Collects inputs/outputs/params during a handler and writes the manifest
/// next to the primary output.
struct ManifestSink {
    RunManifest manifest;
    std::string manifest_path;

    ManifestSink(const Context& ctx, std::string command) {
        manifest.version = version_string();
        manifest.command = std::move(command);
        manifest.argv = ctx.argv;
    }
    void input(const std::string& path) {
        if (!path.empty()) manifest.inputs[path] = sha256_file(path);
    }
    void output(const std::string& path, bool primary = false) {
        if (path.empty()) return;
        manifest.outputs.push_back(path);
        if (primary && manifest_path.empty()) manifest_path = path + ".manifest.json";
    }
    void param(const std::string& key, const std::string& value) {
        manifest.params[key] = value;
    }
    void param(const std::string& key, double value) { manifest.params[key] = format_double(value); }
    void param(const std::string& key, std::uint64_t value) {
        manifest.params[key] = std::to_string(value);
    }
    void write(const std::string& explicit_path = "") {
        const std::string path = explicit_path.empty() ? manifest_path : explicit_path;
        if (!path.empty()) manifest.save(path);
    }
};

RankingParams make_params(double damping, double tol, std::uint32_t max_iter, const Context& ctx) {
    RankingParams p;
    p.damping = damping;
    p.tolerance = tol;
    p.max_iterations = max_iter;
    p.threads = ctx.threads;
    return p;
}

struct GraphInputs {
    VertexTable vertices;
    WebGraph graph;
};

GraphInputs load_graph(const Context& ctx, const std::string& vertices_path,
                       const std::string& edges_path) {
    GraphInputs in;
    in.vertices = VertexTable::load(vertices_path);
    log(ctx, "loaded " + std::to_string(in.vertices.size()) + " vertices");
    in.graph = WebGraph::load(edges_path, in.vertices);
    log(ctx, "loaded " + std::to_string(in.graph.edge_count()) + " edges");
    return in;
}

/// Strict seed resolution: unknown domains are an error unless allow_missing.
DomainSet resolve_seed_file(const Context& ctx, const std::string& path,
                            const VertexTable& vertices, bool allow_missing) {
    auto resolved = resolve_domains(read_domain_list(path), vertices);
    if (!resolved.unresolved.empty()) {
        if (!allow_missing)
            throw ValidationError(path + ": " + std::to_string(resolved.unresolved.size()) +
                                  " domain(s) not in the vertex table, first: '" +
                                  resolved.unresolved.front() + "'");
        log(ctx, path + ": " + std::to_string(resolved.unresolved.size()) +
                     " unresolved domain(s) skipped");
    }
    return resolved.ids;
}

void write_score_outputs(const Context& ctx, ManifestSink& sink, const VertexTable& vertices,
                         const ScoreVector& scores, const std::string& out,
                         const std::string& binary_out) {
    log(ctx, (scores.converged ? "converged" : "stopped") + std::string(" after ") +
                 std::to_string(scores.iterations_used) +
                 " iterations, residual " + format_double(scores.residual));
    write_scores_csv(out, vertices, scores);
    sink.output(out, true);
    if (!binary_out.empty()) {
        write_scores_binary(binary_out, scores);
        sink.output(binary_out);
    }
}

/// Loads a pre/post score CSV pair and aligns the post vector to the pre
/// file's domain order. The two files must cover the same domain set.
struct AlignedScores {
    VertexTable vertices;
    ScoreVector pre;
    ScoreVector post;
};

AlignedScores load_score_pair(const std::string& pre_path, const std::string& post_path) {
    AlignedScores out;
    auto pre_rows = read_scores_csv(pre_path);
    auto post_rows = read_scores_csv(post_path);
    if (pre_rows.size() != post_rows.size())
        throw ValidationError("pre/post score files cover different domain counts");
    out.pre.scores.reserve(pre_rows.size());
    for (auto& [domain, score] : pre_rows) {
        out.vertices.add(domain);
        out.pre.scores.push_back(score);
    }
    out.post.scores.assign(post_rows.size(), 0.0);
    for (auto& [domain, score] : post_rows) {
        auto id = out.vertices.find(domain);
        if (!id)
            throw ValidationError("domain '" + domain + "' present in post but not pre scores");
        out.post.scores[*id] = score;
    }
    return out;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        std::string_view t = trim(item);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

std::vector<std::string> names_of(const DomainSet& ids, const VertexTable& vertices) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (NodeId id : ids) out.push_back(vertices.name(id));
    return out;
}

/// Tokenizes one pipeline line: whitespace-separated, double quotes group.
std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string token;
    bool in_token = false, quoted = false;
    for (char c : line) {
        if (quoted) {
            if (c == '"')
                quoted = false;
            else
                token += c;
        } else if (c == '"') {
            quoted = true;
            in_token = true;
        } else if (c == ' ' || c == '\t') {
            if (in_token) {
                out.push_back(token);
                token.clear();
                in_token = false;
            }
        } else {
            token += c;
            in_token = true;
        }
    }
    if (quoted) throw ValidationError("unterminated quote in pipeline line: " + line);
    if (in_token) out.push_back(token);
    return out;
}

int dispatch(Context& ctx, CLI::App& app);

// ---------------------------------------------------------------- subcommands

void add_stats(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("stats", "Structural statistics of a webgraph");
    auto opts = std::make_shared<std::tuple<std::string, std::string, std::string>>();
    cmd->add_option("--vertices", std::get<0>(*opts), "vertices file")->required();
    cmd->add_option("--edges", std::get<1>(*opts), "edges file")->required();
    cmd->add_option("--out", std::get<2>(*opts), "output JSON")->required();
    cmd->callback([&ctx, opts] {
        auto& [vertices_path, edges_path, out] = *opts;
        ManifestSink sink(ctx, "stats");
        sink.input(vertices_path);
        sink.input(edges_path);
        auto in = load_graph(ctx, vertices_path, edges_path);
        const GraphStats s = in.graph.stats();
        nlohmann::json j;
        j["nodes"] = s.nodes;
        j["edges"] = s.edges;
        j["mean_degree"] = s.mean_degree;
        j["dangling_count"] = s.dangling_count;
        j["dangling_fraction"] = s.dangling_fraction;
        write_text_file(out, j.dump(2) + "\n");
        sink.output(out, true);
        sink.write();
    });
}

struct KernelOpts {
    std::string vertices, edges, seeds, out, binary_out;
    double damping = 0.85, tol = 1e-9;
    std::uint32_t max_iter = 200;
    bool allow_missing = false;
};

void add_kernel_flags(CLI::App* cmd, KernelOpts& o, bool with_seeds, const char* seeds_name) {
    cmd->add_option("--vertices", o.vertices, "vertices file")->required();
    cmd->add_option("--edges", o.edges, "edges file")->required();
    if (with_seeds)
        cmd->add_option(seeds_name, o.seeds, "newline-delimited domain list")->required();
    cmd->add_option("--damping", o.damping, "damping factor (default 0.85)");
    cmd->add_option("--tol", o.tol, "L1 convergence tolerance (default 1e-9)");
    cmd->add_option("--max-iter", o.max_iter, "iteration cap (default 200)");
    cmd->add_option("--out", o.out, "scores CSV output")->required();
    cmd->add_option("--binary-out", o.binary_out, "optional WGSCORE1 snapshot");
    cmd->add_flag("--allow-unresolved", o.allow_missing,
                  "skip seed domains missing from the vertex table instead of failing");
}

void run_kernel(Context& ctx, const char* name, const KernelOpts& o) {
    ManifestSink sink(ctx, name);
    sink.input(o.vertices);
    sink.input(o.edges);
    if (!o.seeds.empty()) sink.input(o.seeds);
    sink.param("damping", o.damping);
    sink.param("tol", o.tol);
    sink.param("max_iter", static_cast<std::uint64_t>(o.max_iter));
    auto in = load_graph(ctx, o.vertices, o.edges);
    const RankingParams params = make_params(o.damping, o.tol, o.max_iter, ctx);

    ScoreVector scores;
    const std::string kernel(name);
    if (kernel == "pagerank") {
        scores = pagerank(in.graph, params);
    } else {
        DomainSet ids = resolve_seed_file(ctx, o.seeds, in.vertices, o.allow_missing);
        if (kernel == "ppr")
            scores = personalized_pagerank(in.graph, ids, params);
        else if (kernel == "atr")
            scores = anti_trustrank(in.graph, ids, params);
        else
            scores = inverse_ppr(in.graph, ids, params);
    }
    write_score_outputs(ctx, sink, in.vertices, scores, o.out, o.binary_out);
    sink.write();
}

void add_kernels(CLI::App& app, Context& ctx) {
    static const struct {
        const char* name;
        const char* help;
        bool seeds;
        const char* seeds_flag;
    } kernels[] = {
        {"pagerank", "PageRank with uniform teleport", false, ""},
        {"ppr", "Personalized PageRank over a seed list", true, "--seeds"},
        {"atr", "Anti-TrustRank (PPR on the reversed graph)", true, "--seeds"},
        {"inv-ppr", "PageRank with teleport zeroed on an excluded list", true, "--excluded"},
    };
    for (const auto& k : kernels) {
        auto* cmd = app.add_subcommand(k.name, k.help);
        auto opts = std::make_shared<KernelOpts>();
        add_kernel_flags(cmd, *opts, k.seeds, k.seeds_flag);
        const char* name = k.name;
        cmd->callback([&ctx, opts, name] { run_kernel(ctx, name, *opts); });
    }
}

void add_rank(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("rank", "Ordinal positions from a scores CSV");
    auto opts = std::make_shared<std::pair<std::string, std::string>>();
    cmd->add_option("--scores", opts->first, "scores CSV")->required();
    cmd->add_option("--out", opts->second, "ranks CSV output")->required();
    cmd->callback([&ctx, opts] {
        ManifestSink sink(ctx, "rank");
        sink.input(opts->first);
        auto rows = read_scores_csv(opts->first);
        VertexTable vertices;
        ScoreVector scores;
        for (auto& [domain, score] : rows) {
            vertices.add(domain);
            scores.scores.push_back(score);
        }
        auto positions = rank_positions(scores);
        write_ranks_csv(opts->second, vertices, positions);
        sink.output(opts->second, true);
        sink.write();
    });
}

void add_identify(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("identify", "Identify link-scheme domains");
    cmd->require_subcommand(1);

    struct WeightedOpts {
        std::string network, unreliable, out, meta;
        std::uint64_t min_backlinks = 100000, min_targets = 2;
        bool exclude_unreliable = false;
    };
    auto* weighted = cmd->add_subcommand("weighted", "volume + breadth rule on a weighted network");
    auto wo = std::make_shared<WeightedOpts>();
    weighted->add_option("--network", wo->network, "weighted network CSV")->required();
    weighted->add_option("--unreliable", wo->unreliable, "unreliable domain list")->required();
    weighted->add_option("--min-backlinks", wo->min_backlinks,
                         "volume threshold into unreliable targets (default 100000)");
    weighted->add_option("--min-targets", wo->min_targets,
                         "distinct unreliable target threshold (default 2)");
    weighted->add_flag("--exclude-unreliable-sources", wo->exclude_unreliable,
                       "drop sources that are themselves unreliable");
    weighted->add_option("--out", wo->out, "identified domain list")->required();
    weighted->add_option("--meta", wo->meta, "sidecar JSON metadata");
    weighted->callback([&ctx, wo] {
        ManifestSink sink(ctx, "identify weighted");
        sink.input(wo->network);
        sink.input(wo->unreliable);
        sink.param("min_backlinks", wo->min_backlinks);
        sink.param("min_targets", wo->min_targets);
        const auto net = WeightedNetwork::load(wo->network);
        const auto names = read_domain_list(wo->unreliable);
        std::set<std::string> unreliable(names.begin(), names.end());
        const auto schemes = identify_link_schemes(
            net, unreliable, {wo->min_backlinks, wo->min_targets}, wo->exclude_unreliable);
        log(ctx, "identified " + std::to_string(schemes.size()) + " link-scheme domain(s)");
        write_domain_list(wo->out, schemes);
        sink.output(wo->out, true);
        if (!wo->meta.empty()) {
            nlohmann::json j;
            j["mode"] = "weighted";
            j["min_backlinks"] = wo->min_backlinks;
            j["min_targets"] = wo->min_targets;
            j["exclude_unreliable_sources"] = wo->exclude_unreliable;
            j["unreliable_domains"] = unreliable.size();
            j["identified"] = schemes.size();
            write_text_file(wo->meta, j.dump(2) + "\n");
            sink.output(wo->meta);
        }
        sink.write();
    });

    struct BinaryOpts {
        std::string vertices, edges, unreliable, out, meta;
        std::uint32_t beta_min = 200;
    };
    auto* binary = cmd->add_subcommand("binary", "distinct-target rule on a binarized graph");
    auto bo = std::make_shared<BinaryOpts>();
    binary->add_option("--vertices", bo->vertices, "vertices file")->required();
    binary->add_option("--edges", bo->edges, "edges file")->required();
    binary->add_option("--unreliable", bo->unreliable, "unreliable domain list")->required();
    binary->add_option("--beta-min", bo->beta_min,
                       "distinct unreliable target threshold (default 200)");
    binary->add_option("--out", bo->out, "identified domain list")->required();
    binary->add_option("--meta", bo->meta, "sidecar JSON metadata");
    binary->callback([&ctx, bo] {
        ManifestSink sink(ctx, "identify binary");
        sink.input(bo->vertices);
        sink.input(bo->edges);
        sink.input(bo->unreliable);
        sink.param("beta_min", static_cast<std::uint64_t>(bo->beta_min));
        auto in = load_graph(ctx, bo->vertices, bo->edges);
        auto resolved = resolve_domains(read_domain_list(bo->unreliable), in.vertices);
        if (!resolved.unresolved.empty())
            log(ctx, std::to_string(resolved.unresolved.size()) + " unreliable domain(s) not in graph");
        const DomainSet schemes =
            identify_link_schemes_binary(in.graph, resolved.ids, bo->beta_min);
        log(ctx, "identified " + std::to_string(schemes.size()) + " link-scheme domain(s)");
        write_domain_list(bo->out, names_of(schemes, in.vertices));
        sink.output(bo->out, true);
        if (!bo->meta.empty()) {
            nlohmann::json j;
            j["mode"] = "binary";
            j["beta_min"] = bo->beta_min;
            j["unreliable_resolved"] = resolved.ids.size();
            j["unreliable_unresolved"] = resolved.unresolved;
            j["identified"] = schemes.size();
            write_text_file(bo->meta, j.dump(2) + "\n");
            sink.output(bo->meta);
        }
        sink.write();
    });
}

void add_atr_extend(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("atr-extend", "Extend a seed list by Anti-TrustRank score");
    struct Opts {
        KernelOpts kernel;
        std::uint64_t top_k = 0;
        double threshold = 0.0;
        bool has_top_k = false, has_threshold = false;
    };
    auto o = std::make_shared<Opts>();
    add_kernel_flags(cmd, o->kernel, true, "--seeds");
    cmd->add_option("--top-k", o->top_k, "select the k highest-ATR domains")
        ->each([o](const std::string&) { o->has_top_k = true; });
    cmd->add_option("--threshold", o->threshold,
                    "select domains with ATR score above this (default 1e-4)")
        ->each([o](const std::string&) { o->has_threshold = true; });
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "atr-extend");
        sink.input(o->kernel.vertices);
        sink.input(o->kernel.edges);
        sink.input(o->kernel.seeds);
        if (o->has_top_k && o->has_threshold)
            throw ValidationError("--top-k and --threshold are mutually exclusive");
        AtrSelection selection;
        if (o->has_top_k) {
            selection.top_k = o->top_k;
            sink.param("top_k", o->top_k);
        } else {
            selection.score_threshold = o->has_threshold ? o->threshold : 1e-4;
            sink.param("threshold", *selection.score_threshold);
        }
        sink.param("damping", o->kernel.damping);
        sink.param("tol", o->kernel.tol);
        auto in = load_graph(ctx, o->kernel.vertices, o->kernel.edges);
        DomainSet seeds =
            resolve_seed_file(ctx, o->kernel.seeds, in.vertices, o->kernel.allow_missing);
        const RankingParams params =
            make_params(o->kernel.damping, o->kernel.tol, o->kernel.max_iter, ctx);
        const DomainSet extended = atr_extend(in.graph, seeds, params, selection);
        log(ctx, "extended " + std::to_string(seeds.size()) + " seeds to " +
                     std::to_string(extended.size()) + " domains");
        write_domain_list(o->kernel.out, names_of(extended, in.vertices));
        sink.output(o->kernel.out, true);
        sink.write();
    });
}

void add_multi_category(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand(
        "multi-category", "Domains scoring above tau in two ATR score files");
    struct Opts {
        std::string scores_a, scores_b, out;
        double tau = 1e-4;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--scores-a", o->scores_a, "first scores CSV")->required();
    cmd->add_option("--scores-b", o->scores_b, "second scores CSV")->required();
    cmd->add_option("--tau", o->tau, "score threshold (default 1e-4)");
    cmd->add_option("--out", o->out, "domain list output")->required();
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "multi-category");
        sink.input(o->scores_a);
        sink.input(o->scores_b);
        sink.param("tau", o->tau);
        auto aligned = load_score_pair(o->scores_a, o->scores_b);
        const DomainSet ids = multi_category_intersect(aligned.pre, aligned.post, o->tau);
        std::vector<std::string> names = names_of(ids, aligned.vertices);
        std::sort(names.begin(), names.end());
        log(ctx, std::to_string(names.size()) + " multi-category domain(s)");
        write_domain_list(o->out, names);
        sink.output(o->out, true);
        sink.write();
    });
}

void add_intervene(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("intervene", "Apply an intervention");
    cmd->require_subcommand(1);

    struct EdgeOpts {
        std::string vertices, edges, sources, out_edges;
    };
    auto* er = cmd->add_subcommand("edge-removal", "remove all outlinks of the listed domains");
    auto eo = std::make_shared<EdgeOpts>();
    er->add_option("--vertices", eo->vertices, "vertices file")->required();
    er->add_option("--edges", eo->edges, "edges file")->required();
    er->add_option("--sources", eo->sources, "domain list whose outlinks are removed")->required();
    er->add_option("--out-edges", eo->out_edges, "modified edge file")->required();
    er->callback([&ctx, eo] {
        ManifestSink sink(ctx, "intervene edge-removal");
        sink.input(eo->vertices);
        sink.input(eo->edges);
        sink.input(eo->sources);
        auto in = load_graph(ctx, eo->vertices, eo->edges);
        auto resolved = resolve_domains(read_domain_list(eo->sources), in.vertices);
        if (!resolved.unresolved.empty())
            log(ctx, std::to_string(resolved.unresolved.size()) + " source domain(s) not in graph");
        const WebGraph modified = in.graph.without_outlinks_from(resolved.ids);
        log(ctx, "removed " + std::to_string(in.graph.edge_count() - modified.edge_count()) +
                     " edge(s)");
        modified.save_edges(eo->out_edges);
        sink.output(eo->out_edges, true);
        sink.write();
    });

    struct ControlOpts {
        std::string attrs, out;
        double delta = 0.0;
    };
    auto* control = cmd->add_subcommand("control", "uniform backlink penalty");
    auto co = std::make_shared<ControlOpts>();
    control->add_option("--attrs", co->attrs, "attribute CSV")->required();
    control->add_option("--delta", co->delta, "penalty in [0,1]")->required();
    control->add_option("--out", co->out, "mutated attribute CSV")->required();
    control->callback([&ctx, co] {
        ManifestSink sink(ctx, "intervene control");
        sink.input(co->attrs);
        sink.param("delta", co->delta);
        const auto attrs = AttributeTable::load(co->attrs);
        const auto result = apply_control(attrs, co->delta);
        log(ctx, "clamped " + std::to_string(result.clamp_events) + " row(s)");
        result.attrs.save(co->out);
        sink.output(co->out, true);
        sink.write();
    });

    struct MultOpts {
        std::string attrs, network, scores, out;
    };
    auto* mult = cmd->add_subcommand("multiplicity", "reweight backlinks by edge scores");
    auto mo = std::make_shared<MultOpts>();
    mult->add_option("--attrs", mo->attrs, "attribute CSV")->required();
    mult->add_option("--network", mo->network, "weighted network CSV")->required();
    mult->add_option("--scores", mo->scores, "edge score CSV")->required();
    mult->add_option("--out", mo->out, "mutated attribute CSV")->required();
    mult->callback([&ctx, mo] {
        ManifestSink sink(ctx, "intervene multiplicity");
        sink.input(mo->attrs);
        sink.input(mo->network);
        sink.input(mo->scores);
        const auto attrs = AttributeTable::load(mo->attrs);
        const auto net = WeightedNetwork::load(mo->network);
        const auto scores = EdgeScoreTable::load(mo->scores);
        const auto result = apply_multiplicity_reweight(attrs, net, scores);
        log(ctx, "clamped " + std::to_string(result.clamp_events) + " row(s)");
        result.attrs.save(mo->out);
        sink.output(mo->out, true);
        sink.write();
    });

    struct CombinedOpts {
        std::string attrs, network, schemes, scores, out;
    };
    auto* combined =
        cmd->add_subcommand("combined", "link-scheme removal then multiplicity reweighting");
    auto xo = std::make_shared<CombinedOpts>();
    combined->add_option("--attrs", xo->attrs, "attribute CSV")->required();
    combined->add_option("--network", xo->network, "weighted network CSV")->required();
    combined->add_option("--schemes", xo->schemes, "link-scheme domain list")->required();
    combined->add_option("--scores", xo->scores, "edge score CSV")->required();
    combined->add_option("--out", xo->out, "mutated attribute CSV")->required();
    combined->callback([&ctx, xo] {
        ManifestSink sink(ctx, "intervene combined");
        sink.input(xo->attrs);
        sink.input(xo->network);
        sink.input(xo->schemes);
        sink.input(xo->scores);
        const auto attrs = AttributeTable::load(xo->attrs);
        const auto net = WeightedNetwork::load(xo->network);
        const auto names = read_domain_list(xo->schemes);
        std::vector<InterventionStep> steps(2);
        steps[0].kind = InterventionStep::Kind::edge_removal;
        steps[0].schemes = std::set<std::string>(names.begin(), names.end());
        steps[1].kind = InterventionStep::Kind::multiplicity;
        steps[1].scores = EdgeScoreTable::load(xo->scores);
        const auto result = compose_interventions(attrs, net, steps);
        log(ctx, "clamped " + std::to_string(result.clamp_events) + " row(s)");
        result.attrs.save(xo->out);
        sink.output(xo->out, true);
        sink.write();
    });
}

void add_multiplicity_score(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("multiplicity-score",
                                   "URL pair multiplicity -> per-edge [lower,upper] scores");
    struct Opts {
        std::string pairs, out, pair_scores_out;
        double lower = 0.0, upper = 2.0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--pairs", o->pairs, "URL pair CSV")->required();
    cmd->add_option("--lower", o->lower, "minmax lower bound (default 0)");
    cmd->add_option("--upper", o->upper, "minmax upper bound (default 2)");
    cmd->add_option("--out", o->out, "edge score CSV output")->required();
    cmd->add_option("--pair-scores-out", o->pair_scores_out, "optional per-pair score CSV");
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "multiplicity-score");
        sink.input(o->pairs);
        sink.param("lower", o->lower);
        sink.param("upper", o->upper);
        const ScaleParams scale{o->lower, o->upper};
        const auto pairs = ingest_url_pairs(o->pairs);
        log(ctx, "kept " + std::to_string(pairs.rows.size()) + " URL pairs, dropped " +
                     std::to_string(pairs.dropped_filetype) + " by filetype");
        const auto mult = compute_multiplicity(pairs);
        const auto pair_scores = score_multiplicity(mult, scale);
        const auto edge_scores = aggregate_edge_scores(pair_scores, scale);
        edge_scores.save(o->out);
        sink.output(o->out, true);
        if (!o->pair_scores_out.empty()) {
            std::string csv = "source_domain,dest_url,multiplicity,score\n";
            for (const auto& p : pair_scores)
                csv += join_csv({p.source_domain, p.dest_url, std::to_string(p.multiplicity),
                                 format_double(p.score)}) +
                       "\n";
            write_text_file(o->pair_scores_out, csv);
            sink.output(o->pair_scores_out);
        }
        sink.write();
    });
}

void add_tune_scale(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand(
        "tune-scale", "Tune the multiplicity upper bound until RP(target) = 1");
    struct Opts {
        std::string pairs, network, attrs, model, labels, out, scores_out;
        std::string target = "reliable";
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--pairs", o->pairs, "URL pair CSV")->required();
    cmd->add_option("--network", o->network, "weighted network CSV")->required();
    cmd->add_option("--attrs", o->attrs, "attribute CSV")->required();
    cmd->add_option("--model", o->model, "fitted model JSON")->required();
    cmd->add_option("--labels", o->labels, "label CSV")->required();
    cmd->add_option("--target", o->target, "protected group (default reliable)");
    cmd->add_option("--out", o->out, "tuning report JSON")->required();
    cmd->add_option("--scores-out", o->scores_out, "edge scores at the tuned scale");
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "tune-scale");
        for (const auto& p : {o->pairs, o->network, o->attrs, o->model, o->labels}) sink.input(p);
        sink.param("target", o->target);
        const auto pairs = ingest_url_pairs(o->pairs);
        const auto mult = compute_multiplicity(pairs);
        const ScaleParams unit{0.0, 1.0};
        const auto unit_scores = aggregate_edge_scores(score_multiplicity(mult, unit), unit);
        const auto net = WeightedNetwork::load(o->network);
        const auto attrs = AttributeTable::load(o->attrs);
        const auto model = RegressionModel::from_json(read_text_file(o->model));
        const auto labels = LabelTable::load(o->labels);
        const auto result = tune_scale(unit_scores, net, attrs, model, labels,
                                       reliability_from_string(o->target));
        log(ctx, "tuned upper bound to " + format_double(result.scale.upper));
        write_text_file(o->out, result.to_json());
        sink.output(o->out, true);
        if (!o->scores_out.empty()) {
            unit_scores.scaled(result.scale.upper).save(o->scores_out);
            sink.output(o->scores_out);
        }
        sink.write();
    });
}

void add_fit(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("fit", "Fit the log-log regression model");
    struct Opts {
        std::string attrs, dependent, regressors, out;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--attrs", o->attrs, "attribute CSV")->required();
    cmd->add_option("--dependent", o->dependent, "dependent column (traffic or rank)")->required();
    cmd->add_option("--regressors", o->regressors,
                    "comma-separated regressor columns (default backlinks,external_links,html_pages)");
    cmd->add_option("--out", o->out, "model JSON output")->required();
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "fit");
        sink.input(o->attrs);
        sink.param("dependent", o->dependent);
        const auto attrs = AttributeTable::load(o->attrs);
        std::vector<std::string> regressors =
            o->regressors.empty()
                ? std::vector<std::string>{"backlinks", "external_links", "html_pages"}
                : split_list(o->regressors);
        const auto model = fit_loglog_regression(attrs, o->dependent, regressors);
        log(ctx, "fitted on " + std::to_string(model.n_used) + " rows, R^2 = " +
                     format_double(model.r_squared));
        write_text_file(o->out, model.to_json());
        sink.output(o->out, true);
        sink.write();
    });
}

void add_eval_small(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand(
        "eval-small", "Regression-predicted retention (RP) and RIS for an intervention");
    struct Opts {
        std::string model, pre, post, labels, out, per_domain;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--model", o->model, "fitted model JSON")->required();
    cmd->add_option("--pre", o->pre, "pre-intervention attribute CSV")->required();
    cmd->add_option("--post", o->post, "post-intervention attribute CSV")->required();
    cmd->add_option("--labels", o->labels, "label CSV")->required();
    cmd->add_option("--out", o->out, "report JSON")->required();
    cmd->add_option("--per-domain-out", o->per_domain, "per-domain RP CSV");
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "eval-small");
        for (const auto& p : {o->model, o->pre, o->post, o->labels}) sink.input(p);
        const auto model = RegressionModel::from_json(read_text_file(o->model));
        const auto pre = AttributeTable::load(o->pre);
        const auto post = AttributeTable::load(o->post);
        const auto labels = LabelTable::load(o->labels);
        const auto report = predict_retention(model, pre, post, labels);
        log(ctx, "RIS = " + format_double(report.ris));
        write_text_file(o->out, report.to_json());
        sink.output(o->out, true);
        if (!o->per_domain.empty()) {
            report.save_csv(o->per_domain);
            sink.output(o->per_domain);
        }
        sink.write();
    });
}

void add_eval_large(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand(
        "eval-large", "Grouped retention, RIS, change distribution over two score files");
    struct Opts {
        std::string pre, post, labels, out, per_domain, histogram, affected, categories,
            categories_out;
        std::string bins;
        double min_pre = 1e-7, min_drop = 0.5;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--pre", o->pre, "pre-intervention scores CSV")->required();
    cmd->add_option("--post", o->post, "post-intervention scores CSV")->required();
    cmd->add_option("--labels", o->labels, "label CSV")->required();
    cmd->add_option("--out", o->out, "report JSON")->required();
    cmd->add_option("--per-domain-out", o->per_domain, "per-domain retention CSV");
    cmd->add_option("--histogram-out", o->histogram, "relative-change histogram CSV");
    cmd->add_option("--bins", o->bins,
                    "comma-separated histogram bin edges (default -1..1 preset)");
    cmd->add_option("--affected-out", o->affected, "heavily affected domain list");
    cmd->add_option("--min-pre", o->min_pre, "affected-domain score floor (default 1e-7)");
    cmd->add_option("--min-drop", o->min_drop, "affected-domain drop fraction (default 0.5)");
    cmd->add_option("--categories", o->categories, "domain,category CSV for affected-domain analysis");
    cmd->add_option("--categories-out", o->categories_out, "category count JSON");
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "eval-large");
        sink.input(o->pre);
        sink.input(o->post);
        sink.input(o->labels);
        auto aligned = load_score_pair(o->pre, o->post);
        const auto labels = LabelTable::load(o->labels);
        const auto report = retention_report(aligned.pre, aligned.post, aligned.vertices, labels);
        log(ctx, "centrality RIS = " + format_double(report.centrality.ris) + ", rank RIS = " +
                     format_double(report.rank.ris));
        write_text_file(o->out, report.to_json());
        sink.output(o->out, true);
        if (!o->per_domain.empty()) {
            report.save_csv(o->per_domain);
            sink.output(o->per_domain);
        }
        if (!o->histogram.empty()) {
            std::vector<double> edges;
            if (o->bins.empty()) {
                edges = {-1.0, -0.5, -0.2, -0.1, -0.05, -0.01, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0};
            } else {
                for (const auto& token : split_list(o->bins))
                    edges.push_back(parse_double(token, "--bins"));
            }
            change_distribution(aligned.pre, aligned.post, edges).save_csv(o->histogram);
            sink.output(o->histogram);
        }
        if (!o->affected.empty()) {
            sink.param("min_pre", o->min_pre);
            sink.param("min_drop", o->min_drop);
            const DomainSet affected =
                affected_domains(aligned.pre, aligned.post, o->min_pre, o->min_drop);
            write_domain_list(o->affected, names_of(affected, aligned.vertices));
            sink.output(o->affected);
            if (!o->categories.empty()) {
                sink.input(o->categories);
                const auto cats = CategoryTable::load(o->categories);
                const auto counts = categorize(affected, cats, aligned.vertices);
                if (!o->categories_out.empty()) {
                    write_text_file(o->categories_out, counts.to_json());
                    sink.output(o->categories_out);
                }
            }
        }
        sink.write();
    });
}

void add_debias(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("debias", "Disparate impact remover over attribute columns");
    struct Opts {
        std::string attrs, labels, out, audit;
        std::string privileged = "extreme-left", unprivileged = "extreme-right";
        std::string columns = "backlinks,external_links,html_pages";
        double repair = 1.0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--attrs", o->attrs, "attribute CSV")->required();
    cmd->add_option("--labels", o->labels, "label CSV with bias column")->required();
    cmd->add_option("--privileged", o->privileged, "privileged bias label (default extreme-left)");
    cmd->add_option("--unprivileged", o->unprivileged,
                    "unprivileged bias label (default extreme-right)");
    cmd->add_option("--repair", o->repair, "repair level R in [0,1]")->required();
    cmd->add_option("--columns", o->columns,
                    "comma-separated columns (default backlinks,external_links,html_pages)");
    cmd->add_option("--out", o->out, "repaired attribute CSV")->required();
    cmd->add_option("--audit", o->audit, "repair audit JSON");
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "debias");
        sink.input(o->attrs);
        sink.input(o->labels);
        sink.param("repair", o->repair);
        sink.param("privileged", o->privileged);
        sink.param("unprivileged", o->unprivileged);
        const auto attrs = AttributeTable::load(o->attrs);
        const auto labels = LabelTable::load(o->labels);
        GroupSpec spec;
        spec.privileged = bias_from_string(o->privileged);
        spec.unprivileged = bias_from_string(o->unprivileged);
        const auto columns = split_list(o->columns);
        RepairAudit audit;
        const auto repaired = repair_attributes(attrs, spec, labels, o->repair, columns, &audit);
        log(ctx, "repaired " + std::to_string(audit.rows_repaired) + " row(s), passed through " +
                     std::to_string(audit.rows_passed_through));
        repaired.save(o->out);
        sink.output(o->out, true);
        if (!o->audit.empty()) {
            write_text_file(o->audit, audit.to_json());
            sink.output(o->audit);
        }
        sink.write();
    });
}

void add_gen_planted(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("gen-planted",
                                   "Generate a synthetic graph with a planted link-scheme farm");
    struct Opts {
        PlantedSpec spec;
        std::string out_vertices, out_edges, out_labels, out_schemes;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--reliable", o->spec.reliable_count, "reliable news nodes")->required();
    cmd->add_option("--mixed", o->spec.mixed_count, "mixed news nodes")->required();
    cmd->add_option("--unreliable", o->spec.unreliable_count, "unreliable news nodes")->required();
    cmd->add_option("--schemes", o->spec.scheme_count, "scheme nodes")->required();
    cmd->add_option("--background", o->spec.background_count, "background nodes")->required();
    cmd->add_option("--scheme-links", o->spec.scheme_links_per_target,
                    "outlink draws per scheme node")->required();
    cmd->add_option("--crosslinks", o->spec.scheme_crosslinks,
                    "scheme-to-scheme links per scheme node (default 0)");
    cmd->add_option("--background-links", o->spec.background_links_per_node,
                    "outlink draws per non-scheme node (default 10)");
    cmd->add_option("--skew", o->spec.skew, "fraction of scheme links into unreliable+mixed")
        ->required();
    cmd->add_option("--seed", o->spec.rng_seed, "RNG seed")->required();
    cmd->add_option("--out-vertices", o->out_vertices, "vertices output")->required();
    cmd->add_option("--out-edges", o->out_edges, "edges output")->required();
    cmd->add_option("--out-labels", o->out_labels, "labels output")->required();
    cmd->add_option("--out-schemes", o->out_schemes, "ground-truth scheme list output")->required();
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "gen-planted");
        sink.param("seed", o->spec.rng_seed);
        sink.param("skew", o->spec.skew);
        sink.param("scheme_links", static_cast<std::uint64_t>(o->spec.scheme_links_per_target));
        const PlantedGraph planted = generate_planted_graph(o->spec);
        log(ctx, "generated " + std::to_string(planted.vertices.size()) + " nodes, " +
                     std::to_string(planted.graph.edge_count()) + " edges");
        planted.vertices.save(o->out_vertices);
        planted.graph.save_edges(o->out_edges);
        planted.labels.save(o->out_labels);
        write_domain_list(o->out_schemes, names_of(planted.true_schemes, planted.vertices));
        sink.output(o->out_vertices, true);
        sink.output(o->out_edges);
        sink.output(o->out_labels);
        sink.output(o->out_schemes);
        sink.write();
    });
}

void add_sample_labels(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("sample-labels",
                                   "Deterministic random sample of one reliability class");
    struct Opts {
        std::string labels, reliability, out;
        double fraction = 0.2;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--labels", o->labels, "label CSV")->required();
    cmd->add_option("--reliability", o->reliability, "class to sample")->required();
    cmd->add_option("--fraction", o->fraction, "sample fraction in (0,1]")->required();
    cmd->add_option("--seed", o->seed, "RNG seed")->required();
    cmd->add_option("--out", o->out, "sampled label CSV")->required();
    cmd->callback([&ctx, o] {
        ManifestSink sink(ctx, "sample-labels");
        sink.input(o->labels);
        sink.param("fraction", o->fraction);
        sink.param("seed", o->seed);
        const auto labels = LabelTable::load(o->labels);
        const auto sampled =
            sample_labels(labels, reliability_from_string(o->reliability), o->fraction, o->seed);
        log(ctx, "sampled " + std::to_string(sampled.rows().size()) + " row(s)");
        sampled.save(o->out);
        sink.output(o->out, true);
        sink.write();
    });
}

void add_replay(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("replay", "Re-run the invocation stored in a manifest");
    auto path = std::make_shared<std::string>();
    cmd->add_option("--manifest", *path, "manifest JSON")->required();
    cmd->callback([&ctx, path] {
        const RunManifest manifest = RunManifest::from_json_file(*path);
        log(ctx, "replaying: " + manifest.command);
        int code = run(manifest.argv);
        if (code != 0) throw RuntimeError("replayed command failed with exit code " + std::to_string(code));
    });
}

void add_pipeline(CLI::App& app, Context& ctx) {
    auto* cmd = app.add_subcommand("pipeline", "Run subcommands listed in a file, one per line");
    auto path = std::make_shared<std::string>();
    cmd->add_option("--file", *path, "pipeline file; '#' starts a comment line")->required();
    cmd->callback([&ctx, path] {
        LineReader reader(*path);
        std::string line;
        while (reader.next(line)) {
            std::string_view v = trim(line);
            if (v.empty() || v.front() == '#') continue;
            const auto args = tokenize(std::string(v));
            log(ctx, "pipeline step: " + std::string(v));
            int code = run(args);
            if (code != 0)
                throw RuntimeError("pipeline step failed (exit " + std::to_string(code) +
                                   ") at " + *path + ":" + std::to_string(reader.line_number()));
        }
    });
}

int dispatch(Context& ctx, CLI::App& app) {
    add_stats(app, ctx);
    add_kernels(app, ctx);
    add_rank(app, ctx);
    add_identify(app, ctx);
    add_atr_extend(app, ctx);
    add_multi_category(app, ctx);
    add_intervene(app, ctx);
    add_multiplicity_score(app, ctx);
    add_tune_scale(app, ctx);
    add_fit(app, ctx);
    add_eval_small(app, ctx);
    add_eval_large(app, ctx);
    add_debias(app, ctx);
    add_gen_planted(app, ctx);
    add_sample_labels(app, ctx);
    add_replay(app, ctx);
    add_pipeline(app, ctx);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    Context ctx;
    ctx.argv = args;

    CLI::App app{"webgraph analysis toolkit: ranking kernels, link-scheme identification,\n"
                 "interventions, and retention evaluation",
                 "wgtk"};
    app.require_subcommand(1);
    app.add_option("--threads", ctx.threads,
                   "worker threads (0 = all available, 1 = serial, bit-deterministic)");
    app.add_flag("--quiet", ctx.quiet, "suppress progress logging on stderr");
    app.set_version_flag("--version", version_string());
    dispatch(ctx, app);

    // CLI11 wants mutable char pointers in argv order
    std::vector<std::string> argv_storage = args;
    std::vector<char*> argv;
    argv.reserve(argv_storage.size() + 1);
    std::string program = "wgtk";
    argv.push_back(program.data());
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        return 0;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << version_string() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace wgtk::cli
