#pragma once

#include "netdis/graph.hpp"
#include "netdis/plan.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace netdis {

// Vector the iteration is kept orthogonal to. DegreeSqrt is the true null
// direction of the normalized Laplacian; Constant reproduces the plain
// all-ones deflation, exact only on regular graphs.
enum class Deflation { DegreeSqrt, Constant };

struct SpectralConfig {
    double eta_exponent = 0.1;              // iterations = ceil((ln n)^(1+e))
    std::optional<std::size_t> eta_override;
    double gcc_threshold = 0.01;            // stop once GCC fraction drops below
    std::optional<double> budget;           // max removed-edge fraction
    std::size_t k_per_level = 2;            // clusters per hierarchical step
    bool balanced = false;                  // equal-size split instead of sign
    Deflation deflation = Deflation::DegreeSqrt;
    std::optional<std::size_t> max_depth;   // never split below this depth
    std::uint64_t seed = 0;

    void validate() const;        // throws InvalidParam
    std::size_t eta(std::size_t n) const;
};

struct SpectralVector {
    std::vector<double> values;           // unit vector, one entry per node
    double rayleigh = 0.0;                // v' L_w v for the returned v
    std::vector<double> rayleigh_history; // quotient before each iteration
    std::size_t restarts = 0;
};

struct BisectionResult {
    std::vector<NodeId> side_a;  // sorted; the positive-sign (or top-half) side
    std::vector<Edge> separator; // edges crossing the split
    bool used_fallback = false;  // median split kicked in after an empty side
    SpectralVector vec;
};

// Node of the hierarchical record. Children of a split node are the
// connected components left on both sides after the separator is removed.
struct PartitionNode {
    std::vector<NodeId> nodes;   // original ids, sorted
    std::vector<Edge> separator; // empty for leaves
    std::size_t depth = 0;
    std::vector<std::size_t> children; // arena indices
    std::optional<std::size_t> parent;
};

struct PartitionTree {
    std::vector<PartitionNode> nodes;     // arena in creation order
    std::vector<std::size_t> roots;
    std::vector<std::size_t> split_order; // split nodes in batch order
    std::size_t fallback_splits = 0;

    // One line per tree node: depth, component size, separator size, then
    // the separator edges as u-v pairs.
    void serialize(std::ostream& out) const;
};

// Matrix-free product (2I - L_w) v: out_i = v_i + sum_{j~i} v_j/sqrt(d_i d_j).
// The parallel version and the serial reference are bitwise identical.
std::vector<double> laplacian_complement_apply(const Graph& g,
                                               const std::vector<double>& v);
std::vector<double> laplacian_complement_apply_serial(
    const Graph& g, const std::vector<double>& v);

// Power iteration on 2I - L_w with per-step re-deflation; returns an
// approximate second eigenvector of L_w. Requires g connected, n >= 2.
SpectralVector power_iteration(const Graph& g, const SpectralConfig& cfg);

// Sign split of the power-iteration vector (balanced: top half by entry).
BisectionResult spectral_bisection(const Graph& g, const SpectralConfig& cfg);

// cut(A, ~A) * (1/assoc(A) + 1/assoc(~A)) with assoc(S) = sum of degrees.
double ncut_value(const Graph& g, const std::vector<NodeId>& side_a);

// Hierarchical bisection: repeatedly split the largest pending component
// (level by level) until every component is below gcc_threshold * n or the
// edge budget is spent; each split's separator becomes one plan batch.
std::pair<PartitionTree, RemovalPlan> hpi_ncut(const Graph& g,
                                               const SpectralConfig& cfg);

} // namespace netdis
