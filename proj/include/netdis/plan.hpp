#pragma once

#include "netdis/graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace netdis {

// Where a batch came from: a node whose incident edges were charged, a
// ranked edge, or a random edge draw.
struct Provenance {
    enum class Kind { Node, Edge, Random };
    Kind kind = Kind::Edge;
    NodeId node = 0; // meaningful only for Kind::Node

    static Provenance for_node(NodeId v) { return {Kind::Node, v}; }
    static Provenance for_edge() { return {Kind::Edge, 0}; }
    static Provenance for_random() { return {Kind::Random, 0}; }

    std::string tag() const; // node id as decimal, or "edge" / "random"
    bool operator==(const Provenance&) const = default;
};

struct Batch {
    Provenance prov;
    std::vector<Edge> edges;
};

// Ordered sequence of removal events. Cost of a prefix is the number of
// edges removed so far divided by total_edges (the m of the source graph).
struct RemovalPlan {
    std::vector<Batch> batches;
    std::size_t total_edges = 0;

    std::size_t removed_count() const;

    // Checks batches are pairwise disjoint and every edge exists in g;
    // throws PlanMismatch otherwise.
    void validate_against(const Graph& g) const;
};

// CSV with one row per edge: batch_index,provenance,edge_u,edge_v.
// A leading '# total_edges=M' comment carries the source edge count.
void write_plan_csv(std::ostream& out, const RemovalPlan& plan);
RemovalPlan read_plan_csv(std::istream& in);

} // namespace netdis
