#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netdis {

using NodeId = std::uint32_t;

// Undirected edge, stored canonically with u < v.
struct Edge {
    NodeId u;
    NodeId v;

    Edge() = default;
    Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on nodes 0..n-1 with sorted adjacency lists.
// No self-loops, no parallel edges. Nodes may carry external labels
// (used when an edge list file has arbitrary ids).
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}
    Graph(std::size_t n, const std::vector<Edge>& edges);

    std::size_t num_nodes() const { return adj_.size(); }
    std::size_t num_edges() const { return m_; }

    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const { return neighbors(v).size(); }
    bool has_edge(NodeId u, NodeId v) const;

    // All edges, sorted by (u, v).
    std::vector<Edge> edges() const;

    // Throws InvalidParam on self-loop or out-of-range endpoint;
    // duplicate insertions are ignored.
    void add_edge(NodeId u, NodeId v);

    // Throws MissingEdge / UnknownNode respectively.
    void remove_edge_inplace(NodeId u, NodeId v);
    void remove_node_inplace(NodeId v); // node stays, becomes isolated

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

    // Debug-style structural check: adjacency sorted, symmetric, no
    // self-loops, edge count consistent. Throws InvalidParam on violation.
    void check_invariants() const;

private:
    std::vector<std::vector<NodeId>> adj_;
    std::size_t m_ = 0;
    std::vector<std::string> labels_; // empty or size n

    void require_node(NodeId v) const;
};

// Connected-component summary: sizes sorted descending (ties broken by
// smallest contained node id first), per-node component index, and the
// giant-component fraction.
struct ComponentReport {
    std::vector<std::size_t> sizes;       // descending
    std::vector<std::uint32_t> component; // node -> index into sizes
    double gcc_fraction = 0.0;            // sizes[0] / n, 0 for empty graph
};

ComponentReport connected_components(const Graph& g);

// Functional variants: return a modified copy.
Graph remove_edges(const Graph& g, const std::vector<Edge>& edges);
Graph remove_node(const Graph& g, NodeId v);

// Maximal subgraph with all degrees >= 2; returns its node ids, sorted.
std::vector<NodeId> two_core(const Graph& g);

} // namespace netdis
