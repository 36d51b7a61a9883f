#pragma once

#include "netdis/evaluation.hpp"
#include "netdis/generators.hpp"
#include "netdis/graph.hpp"
#include "netdis/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace netdis {

// ---------------------------------------------------------------------------
// Edge-list files
// ---------------------------------------------------------------------------

struct IngestReport {
    std::size_t data_lines = 0;
    std::size_t comment_lines = 0;
    std::size_t dropped_self_loops = 0;
    std::size_t collapsed_duplicates = 0;
};

// Whitespace-separated node pairs, one per line; lines starting with '%' or
// '#' are comments and extra columns (weights, timestamps) are ignored.
// Node labels are remapped to dense 0-based ids in order of first
// appearance and kept on the graph. Self-loops are dropped and parallel
// edges collapsed, both counted in the report. Throws ParseError with the
// offending line number, or EmptyGraph when no nodes survive.
Graph load_edge_list(std::istream& in, IngestReport* report = nullptr);
Graph load_edge_list(const std::string& path, IngestReport* report = nullptr);

// One "u v" line per edge using the stored labels (plain ids otherwise).
// Reloading the output reproduces the same graph and label assignment.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::string& path, const Graph& g);

// Induced subgraph on the largest connected component, reindexed to dense
// ids; labels follow the surviving nodes.
Graph extract_gcc(const Graph& g);

// ---------------------------------------------------------------------------
// Curve files
// ---------------------------------------------------------------------------

GccCurve read_curve_csv(std::istream& in);
GccCurve read_curve_csv(const std::string& path);

// ---------------------------------------------------------------------------
// Benchmark configuration
// ---------------------------------------------------------------------------

enum class StrategyKind { Site, Bond, HD, HDA, CI, CoreHD, Betweenness, HpiNcut };

const std::vector<StrategyKind>& all_strategies();
std::string strategy_name(StrategyKind kind);
std::optional<StrategyKind> strategy_from_name(const std::string& name);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::Site;
    std::size_t ensemble = 1;   // forced to 1 for deterministic strategies
    std::size_t ci_radius = 3;
    std::optional<std::size_t> betweenness_interval;
    SpectralConfig spectral;    // HpiNcut settings; seed is derived per run
};

struct RunConfig {
    std::optional<std::string> input_path; // mutually exclusive with gen
    std::optional<GenSpec> gen;
    std::vector<StrategyConfig> strategies;
    double threshold = 0.01;
    std::optional<double> budget;          // edge-fraction cap, all strategies
    std::string output_dir = ".";
    std::uint64_t master_seed = 0;
    bool use_gcc = true;                   // attack the largest component
    std::string label;                     // free-form description

    void validate() const;
};

RunConfig run_config_from_json(const std::string& text);
std::string run_config_to_json(const RunConfig& config);
RunConfig load_run_config(const std::string& path);

// ---------------------------------------------------------------------------
// Benchmark results
// ---------------------------------------------------------------------------

struct StrategyResult {
    StrategyKind kind = StrategyKind::Site;
    std::size_t ensemble = 1;
    double f = 0.0;               // area under the mean attack curve
    double improvement_rel = 0.0; // (f_star - f) / f_star
    double improvement_abs = 0.0; // f_star - f
    GccCurve mean_curve;
    std::vector<double> stddev;   // per curve point; zeros when ensemble == 1
};

struct CfeReport {
    std::string label;
    std::size_t n = 0;
    std::size_t m = 0;
    double threshold = 0.01;
    std::uint64_t master_seed = 0;
    double f_star = 0.0;          // site-percolation baseline
    std::vector<StrategyResult> strategies;

    // Both renderings are deterministic byte-for-byte for a given config:
    // no timestamps, no pointers, fixed field order and formatting.
    std::string to_json() const;
    std::string to_table() const;
};

// Runs every configured strategy on the input (loaded or generated) graph,
// writes one curve CSV per strategy plus report.json and report.txt into
// output_dir, and returns the report. The site-percolation baseline f_star
// is taken from the configured Site entry, or computed with a default
// 100-run ensemble when none is listed.
CfeReport run_benchmark(const RunConfig& config);

// Maps library exceptions onto process exit codes: 2 for configuration
// errors, 3 for data errors, 4 for numerical failures.
int exit_code_for(const std::exception& err);

} // namespace netdis
