#pragma once

#include "netdis/graph.hpp"
#include "netdis/plan.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace netdis {

// Random node order; each batch holds the edges still incident to the
// drawn node at its turn. One batch per node, empty once neighbors ran out.
RemovalPlan site_percolation_plan(const Graph& g, std::uint64_t seed);

// Random edge order, one edge per batch.
RemovalPlan bond_percolation_plan(const Graph& g, std::uint64_t seed);

// Nodes by initial degree, descending (ties: smaller id).
RemovalPlan hd_plan(const Graph& g);

// Like hd_plan but degrees are recomputed on the residual graph before
// every pick.
RemovalPlan hda_plan(const Graph& g);

// Collective influence (k_i-1) * sum of (k_j-1) over the radius-l ball
// frontier, recomputed adaptively; falls back to the adaptive high-degree
// order once every remaining CI value is zero.
RemovalPlan ci_plan(const Graph& g, std::size_t radius = 3);

// Current CI value of every node (zero for degree <= 1); for testing.
std::vector<std::int64_t> ci_values(const Graph& g, std::size_t radius);

// Highest-degree node inside the residual 2-core until the core is gone,
// then adaptive high-degree on the remaining forest. By default picks by
// full residual degree; the flag switches to core-internal degree.
RemovalPlan corehd_plan(const Graph& g, bool core_internal_degree = false);

// Exact edge betweenness (sum over unordered node pairs of the fraction of
// shortest paths through the edge), aligned with g.edges() order. The
// parallel kernel accumulates fixed source chunks so its output does not
// depend on the thread count; the serial variant is the plain reference.
std::vector<double> edge_betweenness(const Graph& g);
std::vector<double> edge_betweenness_serial(const Graph& g);

// Edges by betweenness, descending (ties: lexicographic), one per batch.
// Static ranking by default; with recompute_interval = r the ranking is
// recomputed on the residual graph every r removals.
RemovalPlan edge_betweenness_plan(
    const Graph& g, std::optional<std::size_t> recompute_interval = {});

} // namespace netdis
