#include "netdis/io.hpp"

#include "netdis/errors.hpp"
#include "netdis/rng.hpp"
#include "netdis/strategies.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace netdis {

namespace {

using ordered_json = nlohmann::ordered_json;

bool is_comment(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '%' || c == '#';
    }
    return false;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

} // namespace

Graph load_edge_list(std::istream& in, IngestReport* report) {
    IngestReport local;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;

    auto intern = [&](const std::string& label) {
        auto [it, inserted] = ids.emplace(label, labels.size());
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        if (is_comment(line)) {
            ++local.comment_lines;
            continue;
        }
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a >> b))
            throw ParseError("expected two node labels", lineno);
        ++local.data_lines;
        if (a == b) {
            ++local.dropped_self_loops;
            intern(a);
            continue;
        }
        // Intern in written order; argument evaluation order is unspecified.
        const NodeId u = intern(a);
        const NodeId v = intern(b);
        edges.emplace_back(u, v);
    }

    if (labels.empty()) throw EmptyGraph("edge list contains no nodes");

    Graph g(labels.size());
    for (auto [u, v] : edges) {
        if (g.has_edge(u, v)) {
            ++local.collapsed_duplicates;
            continue;
        }
        g.add_edge(u, v);
    }
    g.set_labels(std::move(labels));
    if (report) *report = local;
    return g;
}

Graph load_edge_list(const std::string& path, IngestReport* report) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list '" + path + "'", 0);
    return load_edge_list(in, report);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "% nodes=" << g.num_nodes() << " edges=" << g.num_edges() << "\n";
    const auto& labels = g.labels();
    auto name = [&](NodeId v) {
        return labels.empty() ? std::to_string(v) : labels[v];
    };
    for (const Edge& e : g.edges())
        out << name(e.u) << " " << name(e.v) << "\n";
}

void write_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw InvalidParam("cannot open '" + path + "' for writing");
    write_edge_list(out, g);
}

Graph extract_gcc(const Graph& g) {
    if (g.num_nodes() == 0) throw EmptyGraph("extract_gcc: empty graph");
    const ComponentReport comps = connected_components(g);
    std::vector<NodeId> keep;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (comps.component[v] == 0) keep.push_back(v);

    std::vector<NodeId> remap(g.num_nodes(), 0);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = i;

    Graph out(keep.size());
    for (NodeId v : keep)
        for (NodeId w : g.neighbors(v))
            if (v < w && comps.component[w] == 0)
                out.add_edge(remap[v], remap[w]);

    if (!g.labels().empty()) {
        std::vector<std::string> labels;
        labels.reserve(keep.size());
        for (NodeId v : keep) labels.push_back(g.labels()[v]);
        out.set_labels(std::move(labels));
    }
    return out;
}

GccCurve read_curve_csv(std::istream& in) {
    GccCurve curve;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line) || is_comment(line)) continue;
        if (!line.empty() && (std::isalpha(static_cast<unsigned char>(line[0]))))
            continue; // header row
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double x = 0.0, f = 0.0;
        if (!(ls >> x >> f)) throw ParseError("expected x,f columns", lineno);
        curve.points.push_back({x, f});
    }
    if (curve.points.empty()) throw ParseError("curve file has no points", 0);
    curve.check();
    return curve;
}

GccCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve '" + path + "'", 0);
    return read_curve_csv(in);
}

// ---------------------------------------------------------------------------
// Strategy registry
// ---------------------------------------------------------------------------

const std::vector<StrategyKind>& all_strategies() {
    static const std::vector<StrategyKind> kinds = {
        StrategyKind::Site,    StrategyKind::Bond,
        StrategyKind::HD,      StrategyKind::HDA,
        StrategyKind::CI,      StrategyKind::CoreHD,
        StrategyKind::Betweenness, StrategyKind::HpiNcut};
    return kinds;
}

std::string strategy_name(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::Site: return "site";
    case StrategyKind::Bond: return "bond";
    case StrategyKind::HD: return "hd";
    case StrategyKind::HDA: return "hda";
    case StrategyKind::CI: return "ci";
    case StrategyKind::CoreHD: return "corehd";
    case StrategyKind::Betweenness: return "betweenness";
    case StrategyKind::HpiNcut: return "hpi";
    }
    throw InvalidParam("unknown strategy kind");
}

std::optional<StrategyKind> strategy_from_name(const std::string& name) {
    for (StrategyKind kind : all_strategies())
        if (strategy_name(kind) == name) return kind;
    return std::nullopt;
}

namespace {

bool is_stochastic(StrategyKind kind) {
    return kind == StrategyKind::Site || kind == StrategyKind::Bond ||
           kind == StrategyKind::HpiNcut;
}

} // namespace

void RunConfig::validate() const {
    if (input_path.has_value() == gen.has_value())
        throw InvalidParam(
            "run config needs exactly one of an input path or a generator");
    if (gen) gen->validate();
    if (strategies.empty())
        throw InvalidParam("run config lists no strategies");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidParam("run config: threshold must be in (0,1)");
    if (budget && (*budget < 0.0 || *budget > 1.0))
        throw InvalidParam("run config: budget must be in [0,1]");
    for (const StrategyConfig& sc : strategies) {
        if (sc.ensemble == 0)
            throw InvalidParam("run config: ensemble must be positive");
        if (sc.kind == StrategyKind::CI && sc.ci_radius == 0)
            throw InvalidParam("run config: ci radius must be positive");
        if (sc.betweenness_interval && *sc.betweenness_interval == 0)
            throw InvalidParam("run config: betweenness interval must be positive");
        if (sc.kind == StrategyKind::HpiNcut) sc.spectral.validate();
    }
}

// ---------------------------------------------------------------------------
// Run-config JSON
// ---------------------------------------------------------------------------

namespace {

ordered_json gen_to_json(const GenSpec& spec) {
    ordered_json j;
    switch (spec.kind) {
    case GenKind::ER:
        j["kind"] = "er";
        j["n"] = spec.n;
        j["mean_degree"] = spec.mean_degree;
        break;
    case GenKind::WS:
        j["kind"] = "ws";
        j["n"] = spec.n;
        j["k"] = spec.ws_k;
        j["rewire"] = spec.ws_rewire;
        break;
    case GenKind::SF:
        j["kind"] = "sf";
        j["n"] = spec.n;
        j["gamma"] = spec.gamma;
        j["mean_degree"] = spec.mean_degree;
        break;
    case GenKind::SBM:
        j["kind"] = "sbm";
        j["n"] = spec.n;
        j["block_sizes"] = spec.block_sizes;
        j["p_in"] = spec.p_in;
        j["p_out"] = spec.p_out;
        break;
    }
    j["seed"] = spec.seed;
    return j;
}

GenSpec gen_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    GenSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    spec.seed = j.value("seed", std::uint64_t{0});
    if (kind == "er") {
        spec.kind = GenKind::ER;
        spec.mean_degree = j.at("mean_degree").get<double>();
    } else if (kind == "ws") {
        spec.kind = GenKind::WS;
        spec.ws_k = j.at("k").get<std::size_t>();
        spec.ws_rewire = j.at("rewire").get<double>();
    } else if (kind == "sf") {
        spec.kind = GenKind::SF;
        spec.gamma = j.at("gamma").get<double>();
        spec.mean_degree = j.at("mean_degree").get<double>();
    } else if (kind == "sbm") {
        if (j.contains("block_sizes")) {
            spec.kind = GenKind::SBM;
            spec.block_sizes =
                j.at("block_sizes").get<std::vector<std::size_t>>();
            spec.p_in = j.at("p_in").get<double>();
            spec.p_out = j.at("p_out").get<double>();
        } else {
            // Convenience form: equal blocks with a mixing ratio.
            spec = sbm_spec(spec.n, j.at("blocks").get<std::size_t>(),
                            j.at("mean_degree").get<double>(),
                            j.value("ratio", 30.0), spec.seed);
        }
    } else {
        throw InvalidParam("unknown generator kind '" + kind + "'");
    }
    spec.validate();
    return spec;
}

ordered_json strategy_to_json(const StrategyConfig& sc) {
    ordered_json j;
    j["name"] = strategy_name(sc.kind);
    j["ensemble"] = sc.ensemble;
    if (sc.kind == StrategyKind::CI) j["radius"] = sc.ci_radius;
    if (sc.kind == StrategyKind::Betweenness && sc.betweenness_interval)
        j["interval"] = *sc.betweenness_interval;
    if (sc.kind == StrategyKind::HpiNcut) {
        j["eta_exponent"] = sc.spectral.eta_exponent;
        if (sc.spectral.eta_override) j["eta"] = *sc.spectral.eta_override;
        j["k_per_level"] = sc.spectral.k_per_level;
        j["balanced"] = sc.spectral.balanced;
        j["deflation"] = sc.spectral.deflation == Deflation::Constant
                             ? "constant"
                             : "degree";
        if (sc.spectral.max_depth) j["max_depth"] = *sc.spectral.max_depth;
    }
    return j;
}

StrategyConfig strategy_from_json(const ordered_json& j) {
    StrategyConfig sc;
    std::string name;
    if (j.is_string()) {
        name = j.get<std::string>();
    } else {
        name = j.at("name").get<std::string>();
    }
    const auto kind = strategy_from_name(name);
    if (!kind) throw InvalidParam("unknown strategy '" + name + "'");
    sc.kind = *kind;
    if (j.is_object()) {
        sc.ensemble = j.value("ensemble", std::size_t{1});
        sc.ci_radius = j.value("radius", std::size_t{3});
        if (j.contains("interval"))
            sc.betweenness_interval = j.at("interval").get<std::size_t>();
        sc.spectral.eta_exponent = j.value("eta_exponent", 0.1);
        if (j.contains("eta"))
            sc.spectral.eta_override = j.at("eta").get<std::size_t>();
        sc.spectral.k_per_level = j.value("k_per_level", std::size_t{2});
        sc.spectral.balanced = j.value("balanced", false);
        if (j.value("deflation", std::string("degree")) == "constant")
            sc.spectral.deflation = Deflation::Constant;
        if (j.contains("max_depth"))
            sc.spectral.max_depth = j.at("max_depth").get<std::size_t>();
    }
    if (!is_stochastic(sc.kind)) sc.ensemble = 1;
    return sc;
}

} // namespace

std::string run_config_to_json(const RunConfig& config) {
    ordered_json j;
    if (!config.label.empty()) j["label"] = config.label;
    if (config.input_path) j["input"] = *config.input_path;
    if (config.gen) j["generator"] = gen_to_json(*config.gen);
    j["strategies"] = ordered_json::array();
    for (const StrategyConfig& sc : config.strategies)
        j["strategies"].push_back(strategy_to_json(sc));
    j["threshold"] = config.threshold;
    if (config.budget) j["budget"] = *config.budget;
    j["output_dir"] = config.output_dir;
    j["master_seed"] = config.master_seed;
    j["use_gcc"] = config.use_gcc;
    return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& err) {
        throw InvalidParam(std::string("run config is not valid JSON: ") +
                           err.what());
    }
    try {
        RunConfig config;
        config.label = j.value("label", std::string());
        if (j.contains("input"))
            config.input_path = j.at("input").get<std::string>();
        if (j.contains("generator"))
            config.gen = gen_from_json(j.at("generator"));
        for (const auto& s : j.value("strategies", ordered_json::array()))
            config.strategies.push_back(strategy_from_json(s));
        config.threshold = j.value("threshold", 0.01);
        if (j.contains("budget"))
            config.budget = j.at("budget").get<double>();
        config.output_dir = j.value("output_dir", std::string("."));
        config.master_seed = j.value("master_seed", std::uint64_t{0});
        config.use_gcc = j.value("use_gcc", true);
        config.validate();
        return config;
    } catch (const ordered_json::exception& err) {
        throw InvalidParam(std::string("bad run config: ") + err.what());
    }
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParam("cannot open run config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_config_from_json(buf.str());
}

// ---------------------------------------------------------------------------
// Benchmark driver
// ---------------------------------------------------------------------------

namespace {

// Cap a plan at a fraction of the source graph's edges. Whole batches are
// kept while the running total is still under the cap, so the last kept
// batch may overshoot; a zero budget keeps nothing.
void truncate_to_budget(RemovalPlan& plan, double budget) {
    const double cap = budget * static_cast<double>(plan.total_edges) - 1e-9;
    std::size_t removed = 0;
    std::size_t keep = 0;
    for (const Batch& batch : plan.batches) {
        if (static_cast<double>(removed) >= cap) break;
        removed += batch.edges.size();
        ++keep;
    }
    plan.batches.resize(keep);
}

std::vector<GccCurve> strategy_curves(const Graph& g, const StrategyConfig& sc,
                                      const RunConfig& rc) {
    std::vector<GccCurve> curves;
    const std::size_t runs = is_stochastic(sc.kind) ? sc.ensemble : 1;
    for (std::size_t r = 0; r < runs; ++r) {
        RemovalPlan plan;
        switch (sc.kind) {
        case StrategyKind::Site:
            plan = site_percolation_plan(
                g, derive_seed(rc.master_seed, "site", r));
            break;
        case StrategyKind::Bond:
            plan = bond_percolation_plan(
                g, derive_seed(rc.master_seed, "bond", r));
            break;
        case StrategyKind::HD: plan = hd_plan(g); break;
        case StrategyKind::HDA: plan = hda_plan(g); break;
        case StrategyKind::CI: plan = ci_plan(g, sc.ci_radius); break;
        case StrategyKind::CoreHD: plan = corehd_plan(g); break;
        case StrategyKind::Betweenness:
            plan = edge_betweenness_plan(g, sc.betweenness_interval);
            break;
        case StrategyKind::HpiNcut: {
            SpectralConfig cfg = sc.spectral;
            cfg.gcc_threshold = rc.threshold;
            cfg.budget = rc.budget;
            cfg.seed = derive_seed(rc.master_seed, "hpi", r);
            plan = hpi_ncut(g, cfg).second;
            break;
        }
        }
        if (rc.budget) truncate_to_budget(plan, *rc.budget);
        curves.push_back(execute_plan(g, plan, rc.threshold));
    }
    return curves;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

} // namespace

std::string CfeReport::to_json() const {
    ordered_json j;
    j["label"] = label;
    j["n"] = n;
    j["m"] = m;
    j["threshold"] = threshold;
    j["master_seed"] = master_seed;
    j["f_star"] = format_double(f_star);
    j["strategies"] = ordered_json::array();
    for (const StrategyResult& res : strategies) {
        ordered_json s;
        s["name"] = strategy_name(res.kind);
        s["ensemble"] = res.ensemble;
        s["f"] = format_double(res.f);
        s["improvement_rel"] = format_double(res.improvement_rel);
        s["improvement_abs"] = format_double(res.improvement_abs);
        j["strategies"].push_back(s);
    }
    return j.dump(2) + "\n";
}

std::string CfeReport::to_table() const {
    std::ostringstream out;
    if (!label.empty()) out << "# " << label << "\n";
    out << "# n=" << n << " m=" << m << " threshold=" << format_double(threshold)
        << " seed=" << master_seed << "\n";
    char row[160];
    std::snprintf(row, sizeof row, "%-12s %8s %10s %8s %10s\n", "strategy",
                  "runs", "F", "gain%", "gain_abs");
    out << row;
    for (const StrategyResult& res : strategies) {
        std::snprintf(row, sizeof row, "%-12s %8zu %10.4f %8.1f %10.4f\n",
                      strategy_name(res.kind).c_str(), res.ensemble, res.f,
                      100.0 * res.improvement_rel, res.improvement_abs);
        out << row;
    }
    return out.str();
}

CfeReport run_benchmark(const RunConfig& config) {
    config.validate();

    Graph g = config.input_path ? load_edge_list(*config.input_path)
                                : generate(*config.gen);
    if (config.use_gcc) g = extract_gcc(g);
    if (g.num_edges() == 0) throw EmptyGraph("benchmark graph has no edges");

    CfeReport report;
    report.label = config.label;
    report.n = g.num_nodes();
    report.m = g.num_edges();
    report.threshold = config.threshold;
    report.master_seed = config.master_seed;

    std::vector<CurveEnsemble> ensembles;
    for (const StrategyConfig& sc : config.strategies)
        ensembles.push_back(average_curves(strategy_curves(g, sc, config)));

    // Site-percolation baseline: reuse the configured entry if present,
    // otherwise run a default 100-run ensemble just for the baseline.
    std::optional<double> f_star;
    for (std::size_t i = 0; i < config.strategies.size(); ++i)
        if (config.strategies[i].kind == StrategyKind::Site)
            f_star = cfe(ensembles[i].mean);
    if (!f_star) {
        StrategyConfig site;
        site.kind = StrategyKind::Site;
        site.ensemble = 100;
        f_star = cfe(average_curves(strategy_curves(g, site, config)).mean);
    }
    report.f_star = *f_star;

    for (std::size_t i = 0; i < config.strategies.size(); ++i) {
        StrategyResult res;
        res.kind = config.strategies[i].kind;
        res.ensemble = ensembles[i].runs;
        res.f = cfe(ensembles[i].mean);
        res.improvement_rel = improvement(report.f_star, res.f);
        res.improvement_abs = report.f_star - res.f;
        res.mean_curve = ensembles[i].mean;
        res.stddev = ensembles[i].stddev;
        report.strategies.push_back(std::move(res));
    }

    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    for (const StrategyResult& res : report.strategies) {
        std::ofstream out(fs::path(config.output_dir) /
                          ("curve_" + strategy_name(res.kind) + ".csv"));
        write_curve_csv(out, res.mean_curve, &res.stddev);
    }
    std::ofstream(fs::path(config.output_dir) / "report.json")
        << report.to_json();
    std::ofstream(fs::path(config.output_dir) / "report.txt")
        << report.to_table();
    return report;
}

int exit_code_for(const std::exception& err) {
    if (dynamic_cast<const NumericalFailure*>(&err)) return 4;
    if (dynamic_cast<const DegreeZero*>(&err)) return 4;
    if (dynamic_cast<const ParseError*>(&err)) return 3;
    if (dynamic_cast<const EmptyGraph*>(&err)) return 3;
    if (dynamic_cast<const MissingEdge*>(&err)) return 3;
    if (dynamic_cast<const UnknownNode*>(&err)) return 3;
    if (dynamic_cast<const PlanMismatch*>(&err)) return 3;
    return 2; // configuration / parameter errors
}

} // namespace netdis
