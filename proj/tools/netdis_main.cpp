// netdis: attack-cost benchmarking for network dismantling strategies.
//
// Subcommands: generate, attack, curve, cfe, sir, report.
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 numerical failure.

#include "netdis/epidemics.hpp"
#include "netdis/errors.hpp"
#include "netdis/evaluation.hpp"
#include "netdis/generators.hpp"
#include "netdis/io.hpp"
#include "netdis/plan.hpp"
#include "netdis/rng.hpp"
#include "netdis/spectral.hpp"
#include "netdis/strategies.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace netdis;

Graph load_input(const std::string& path, bool use_gcc) {
    Graph g = load_edge_list(path);
    return use_gcc ? extract_gcc(g) : g;
}

void write_or_print(const std::optional<std::string>& path,
                    const std::string& text) {
    if (path) {
        std::ofstream out(*path);
        if (!out) throw InvalidParam("cannot open '" + *path + "' for writing");
        out << text;
    } else {
        std::cout << text;
    }
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string kind;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double mean_degree = 0.0;
    std::size_t ws_k = 0;
    double ws_rewire = 0.0;
    double gamma = 0.0;
    std::size_t blocks = 0;
    double ratio = 30.0;
    std::vector<std::size_t> block_sizes;
    double p_in = 0.0, p_out = 0.0;
    bool gcc = false;
    std::optional<std::string> out;
};

GenSpec make_spec(const GenerateArgs& a) {
    GenSpec spec;
    spec.n = a.n;
    spec.seed = a.seed;
    if (a.kind == "er") {
        spec.kind = GenKind::ER;
        spec.mean_degree = a.mean_degree;
    } else if (a.kind == "ws") {
        spec.kind = GenKind::WS;
        spec.ws_k = a.ws_k;
        spec.ws_rewire = a.ws_rewire;
    } else if (a.kind == "sf") {
        spec.kind = GenKind::SF;
        spec.gamma = a.gamma;
        spec.mean_degree = a.mean_degree;
    } else if (a.kind == "sbm") {
        if (!a.block_sizes.empty()) {
            spec.kind = GenKind::SBM;
            spec.block_sizes = a.block_sizes;
            spec.p_in = a.p_in;
            spec.p_out = a.p_out;
        } else {
            if (a.blocks == 0)
                throw InvalidParam("sbm needs --blocks or --block-sizes");
            spec = sbm_spec(a.n, a.blocks, a.mean_degree, a.ratio, a.seed);
        }
    } else {
        throw InvalidParam("unknown generator kind '" + a.kind + "'");
    }
    spec.validate();
    return spec;
}

void run_generate(const GenerateArgs& a) {
    Graph g = generate(make_spec(a));
    if (a.gcc) g = extract_gcc(g);
    std::ostringstream buf;
    write_edge_list(buf, g);
    write_or_print(a.out, buf.str());
    std::cerr << "generated " << a.kind << " graph: n=" << g.num_nodes()
              << " m=" << g.num_edges() << "\n";
}

// --- attack -----------------------------------------------------------------

struct AttackArgs {
    std::string input;
    std::string strategy = "hpi";
    std::uint64_t seed = 0;
    double threshold = 0.01;
    std::optional<double> budget;
    std::size_t radius = 3;
    std::optional<std::size_t> interval;
    double eta_exponent = 0.1;
    std::optional<std::size_t> eta;
    std::size_t k_per_level = 2;
    bool balanced = false;
    std::string deflation = "degree";
    std::optional<std::size_t> max_depth;
    bool no_gcc = false;
    std::optional<std::string> out;
};

RemovalPlan make_plan(const Graph& g, const AttackArgs& a) {
    const auto kind = strategy_from_name(a.strategy);
    if (!kind) throw InvalidParam("unknown strategy '" + a.strategy + "'");
    switch (*kind) {
    case StrategyKind::Site: return site_percolation_plan(g, a.seed);
    case StrategyKind::Bond: return bond_percolation_plan(g, a.seed);
    case StrategyKind::HD: return hd_plan(g);
    case StrategyKind::HDA: return hda_plan(g);
    case StrategyKind::CI: return ci_plan(g, a.radius);
    case StrategyKind::CoreHD: return corehd_plan(g);
    case StrategyKind::Betweenness: return edge_betweenness_plan(g, a.interval);
    case StrategyKind::HpiNcut: {
        SpectralConfig cfg;
        cfg.eta_exponent = a.eta_exponent;
        cfg.eta_override = a.eta;
        cfg.gcc_threshold = a.threshold;
        cfg.budget = a.budget;
        cfg.k_per_level = a.k_per_level;
        cfg.balanced = a.balanced;
        if (a.deflation == "constant")
            cfg.deflation = Deflation::Constant;
        else if (a.deflation != "degree")
            throw InvalidParam("deflation must be 'degree' or 'constant'");
        cfg.max_depth = a.max_depth;
        cfg.seed = a.seed;
        return hpi_ncut(g, cfg).second;
    }
    }
    throw InvalidParam("unknown strategy");
}

void run_attack(const AttackArgs& a) {
    Graph g = load_input(a.input, !a.no_gcc);
    RemovalPlan plan = make_plan(g, a);
    std::ostringstream buf;
    write_plan_csv(buf, plan);
    write_or_print(a.out, buf.str());
    std::cerr << a.strategy << " plan: " << plan.batches.size() << " batches, "
              << plan.removed_count() << "/" << plan.total_edges
              << " edges\n";
}

// --- curve / cfe ------------------------------------------------------------

struct CurveArgs {
    std::string input;
    std::string plan;
    double threshold = 0.01;
    bool no_gcc = false;
    std::optional<std::string> out;
};

void run_curve(const CurveArgs& a) {
    Graph g = load_input(a.input, !a.no_gcc);
    std::ifstream pin(a.plan);
    if (!pin) throw ParseError("cannot open plan '" + a.plan + "'", 0);
    RemovalPlan plan = read_plan_csv(pin);
    GccCurve curve = execute_plan(g, plan, a.threshold);
    std::ostringstream buf;
    write_curve_csv(buf, curve);
    write_or_print(a.out, buf.str());
    char line[64];
    std::snprintf(line, sizeof line, "F = %.6f\n", cfe(curve));
    std::cerr << line;
}

void run_cfe(const std::string& curve_path) {
    GccCurve curve = read_curve_csv(curve_path);
    char line[64];
    std::snprintf(line, sizeof line, "%.6f\n", cfe(curve));
    std::cout << line;
}

// --- sir --------------------------------------------------------------------

struct SirArgs {
    std::string input;
    double beta = 0.10;
    double gamma = 0.02;
    std::size_t runs = 100;
    std::size_t initial = 1;
    std::size_t max_steps = 1000000;
    std::uint64_t seed = 0;
    bool no_gcc = false;
    std::optional<std::string> out;
};

void run_sir(const SirArgs& a) {
    Graph g = load_input(a.input, !a.no_gcc);
    SirParams params;
    params.beta = a.beta;
    params.gamma = a.gamma;
    params.initial_infected = a.initial;
    params.max_steps = a.max_steps;
    params.seed = a.seed;
    SirMeanTrace trace = sir_ensemble(g, params, a.runs);

    std::ostringstream buf;
    buf << "t,s_mean,i_mean,r_mean,i_std,r_std\n";
    char row[160];
    for (std::size_t t = 0; t < trace.i.size(); ++t) {
        std::snprintf(row, sizeof row, "%zu,%.6f,%.6f,%.6f,%.6f,%.6f\n", t,
                      trace.s[t], trace.i[t], trace.r[t], trace.i_std[t],
                      trace.r_std[t]);
        buf << row;
    }
    write_or_print(a.out, buf.str());
    char line[128];
    std::snprintf(line, sizeof line,
                  "final_attack=%.4f peak_time=%zu steps=%zu\n",
                  trace.final_attack() / static_cast<double>(g.num_nodes()),
                  trace.peak_time(), trace.i.size() - 1);
    std::cerr << line;
}

// --- report -----------------------------------------------------------------

struct ReportArgs {
    std::optional<std::string> config;
    std::optional<std::string> input;
    GenerateArgs gen;
    std::string strategies = "site,bond,hd,hda,ci,corehd,betweenness,hpi";
    std::size_t ensemble = 100;
    std::size_t hpi_ensemble = 1;
    std::optional<std::size_t> eta;
    double threshold = 0.01;
    std::optional<double> budget;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string label;
};

RunConfig make_run_config(const ReportArgs& a) {
    if (a.config) return load_run_config(*a.config);
    RunConfig rc;
    rc.label = a.label;
    if (a.input) {
        rc.input_path = a.input;
    } else {
        if (a.gen.kind.empty())
            throw InvalidParam("report needs --config, --input or --kind");
        rc.gen = make_spec(a.gen);
    }
    std::stringstream names(a.strategies);
    std::string name;
    while (std::getline(names, name, ',')) {
        if (name.empty()) continue;
        const auto kind = strategy_from_name(name);
        if (!kind) throw InvalidParam("unknown strategy '" + name + "'");
        StrategyConfig sc;
        sc.kind = *kind;
        if (*kind == StrategyKind::Site || *kind == StrategyKind::Bond)
            sc.ensemble = a.ensemble;
        else if (*kind == StrategyKind::HpiNcut) {
            sc.ensemble = a.hpi_ensemble;
            sc.spectral.eta_override = a.eta;
        }
        rc.strategies.push_back(sc);
    }
    rc.threshold = a.threshold;
    rc.budget = a.budget;
    rc.master_seed = a.seed;
    rc.output_dir = a.out_dir;
    return rc;
}

void run_report(const ReportArgs& a) {
    CfeReport report = run_benchmark(make_run_config(a));
    std::cout << report.to_table();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"network dismantling benchmark toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate", "write a synthetic graph");
    gen->add_option("--kind", gen_args.kind, "er | ws | sf | sbm")->required();
    gen->add_option("--n", gen_args.n, "number of nodes")->required();
    gen->add_option("--seed", gen_args.seed, "rng seed");
    gen->add_option("--mean-degree", gen_args.mean_degree,
                    "target mean degree (er, sf, sbm)");
    gen->add_option("--k", gen_args.ws_k, "ws: lattice degree (even)");
    gen->add_option("--rewire", gen_args.ws_rewire, "ws: rewiring probability");
    gen->add_option("--gamma", gen_args.gamma, "sf: power-law exponent");
    gen->add_option("--blocks", gen_args.blocks, "sbm: number of equal blocks");
    gen->add_option("--ratio", gen_args.ratio, "sbm: p_in / p_out");
    gen->add_option("--block-sizes", gen_args.block_sizes,
                    "sbm: explicit block sizes");
    gen->add_option("--p-in", gen_args.p_in, "sbm: within-block probability");
    gen->add_option("--p-out", gen_args.p_out, "sbm: between-block probability");
    gen->add_flag("--gcc", gen_args.gcc, "keep only the largest component");
    gen->add_option("--out", gen_args.out, "output file (default stdout)");

    AttackArgs attack_args;
    CLI::App* attack = app.add_subcommand("attack", "compute a removal plan");
    attack->add_option("--input", attack_args.input, "edge-list file")
        ->required();
    attack->add_option("--strategy", attack_args.strategy,
                       "site|bond|hd|hda|ci|corehd|betweenness|hpi");
    attack->add_option("--seed", attack_args.seed, "rng seed");
    attack->add_option("--threshold", attack_args.threshold,
                       "gcc stop threshold");
    attack->add_option("--budget", attack_args.budget,
                       "hpi: max removed-edge fraction");
    attack->add_option("--radius", attack_args.radius, "ci: ball radius");
    attack->add_option("--interval", attack_args.interval,
                       "betweenness: recompute every k removals");
    attack->add_option("--eta-exponent", attack_args.eta_exponent,
                       "hpi: power-iteration exponent");
    attack->add_option("--eta", attack_args.eta,
                       "hpi: fixed power-iteration count");
    attack->add_option("--k-per-level", attack_args.k_per_level,
                       "hpi: clusters per hierarchy level");
    attack->add_flag("--balanced", attack_args.balanced,
                     "hpi: equal-size splits");
    attack->add_option("--deflation", attack_args.deflation,
                       "hpi: degree | constant");
    attack->add_option("--max-depth", attack_args.max_depth,
                       "hpi: hierarchy depth limit");
    attack->add_flag("--no-gcc", attack_args.no_gcc,
                     "attack the full graph, not its largest component");
    attack->add_option("--out", attack_args.out, "plan file (default stdout)");

    CurveArgs curve_args;
    CLI::App* curve = app.add_subcommand("curve", "execute a plan");
    curve->add_option("--input", curve_args.input, "edge-list file")
        ->required();
    curve->add_option("--plan", curve_args.plan, "plan csv")->required();
    curve->add_option("--threshold", curve_args.threshold,
                      "gcc stop threshold");
    curve->add_flag("--no-gcc", curve_args.no_gcc,
                    "use the full graph, not its largest component");
    curve->add_option("--out", curve_args.out, "curve file (default stdout)");

    std::string cfe_curve;
    CLI::App* cfe_cmd = app.add_subcommand("cfe", "area under an attack curve");
    cfe_cmd->add_option("--curve", cfe_curve, "curve csv")->required();

    SirArgs sir_args;
    CLI::App* sir = app.add_subcommand("sir", "run an SIR ensemble");
    sir->add_option("--input", sir_args.input, "edge-list file")->required();
    sir->add_option("--beta", sir_args.beta, "infection probability");
    sir->add_option("--gamma", sir_args.gamma, "recovery probability");
    sir->add_option("--runs", sir_args.runs, "ensemble size");
    sir->add_option("--initial", sir_args.initial, "initially infected count");
    sir->add_option("--max-steps", sir_args.max_steps, "step cap");
    sir->add_option("--seed", sir_args.seed, "rng seed");
    sir->add_flag("--no-gcc", sir_args.no_gcc,
                  "use the full graph, not its largest component");
    sir->add_option("--out", sir_args.out, "trace csv (default stdout)");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "full strategy comparison");
    report->add_option("--config", report_args.config, "run-config json");
    report->add_option("--input", report_args.input, "edge-list file");
    report->add_option("--kind", report_args.gen.kind,
                       "generator kind (er|ws|sf|sbm)");
    report->add_option("--n", report_args.gen.n, "generator: nodes");
    report->add_option("--mean-degree", report_args.gen.mean_degree,
                       "generator: mean degree");
    report->add_option("--k", report_args.gen.ws_k, "generator: ws degree");
    report->add_option("--rewire", report_args.gen.ws_rewire,
                       "generator: ws rewiring probability");
    report->add_option("--gamma", report_args.gen.gamma,
                       "generator: sf exponent");
    report->add_option("--blocks", report_args.gen.blocks,
                       "generator: sbm blocks");
    report->add_option("--ratio", report_args.gen.ratio,
                       "generator: sbm p_in/p_out");
    report->add_option("--gen-seed", report_args.gen.seed, "generator seed");
    report->add_option("--strategies", report_args.strategies,
                       "comma-separated strategy list");
    report->add_option("--ensemble", report_args.ensemble,
                       "runs for site/bond ensembles");
    report->add_option("--hpi-ensemble", report_args.hpi_ensemble,
                       "runs for the hpi ensemble");
    report->add_option("--eta", report_args.eta,
                       "hpi: power-iteration steps per split");
    report->add_option("--threshold", report_args.threshold,
                       "gcc stop threshold");
    report->add_option("--budget", report_args.budget,
                       "cap on the removed-edge fraction, all strategies");
    report->add_option("--seed", report_args.seed, "master seed");
    report->add_option("--out-dir", report_args.out_dir, "output directory");
    report->add_option("--label", report_args.label, "free-form description");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) run_generate(gen_args);
        if (attack->parsed()) run_attack(attack_args);
        if (curve->parsed()) run_curve(curve_args);
        if (cfe_cmd->parsed()) run_cfe(cfe_curve);
        if (sir->parsed()) run_sir(sir_args);
        if (report->parsed()) run_report(report_args);
        return 0;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return netdis::exit_code_for(err);
    }
}
