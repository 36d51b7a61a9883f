#include "netdis/graph.hpp"

#include "netdis/errors.hpp"

#include <algorithm>
#include <numeric>

namespace netdis {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : adj_(n) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
}

void Graph::require_node(NodeId v) const {
    if (v >= adj_.size())
        throw UnknownNode("node " + std::to_string(v) + " out of range (n=" +
                          std::to_string(adj_.size()) + ")");
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    require_node(v);
    return {adj_[v].data(), adj_[v].size()};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    require_node(u);
    require_node(v);
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (NodeId u = 0; u < adj_.size(); ++u)
        for (NodeId v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::add_edge(NodeId u, NodeId v) {
    require_node(u);
    require_node(v);
    if (u == v)
        throw InvalidParam("self-loop at node " + std::to_string(u));
    if (has_edge(u, v)) return;
    auto insert_sorted = [](std::vector<NodeId>& a, NodeId x) {
        a.insert(std::lower_bound(a.begin(), a.end(), x), x);
    };
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    ++m_;
}

void Graph::remove_edge_inplace(NodeId u, NodeId v) {
    require_node(u);
    require_node(v);
    auto erase_sorted = [](std::vector<NodeId>& a, NodeId x) {
        auto it = std::lower_bound(a.begin(), a.end(), x);
        if (it == a.end() || *it != x) return false;
        a.erase(it);
        return true;
    };
    if (!erase_sorted(adj_[u], v))
        throw MissingEdge("edge (" + std::to_string(u) + "," +
                          std::to_string(v) + ") not present");
    erase_sorted(adj_[v], u);
    --m_;
}

void Graph::remove_node_inplace(NodeId v) {
    require_node(v);
    for (NodeId w : std::vector<NodeId>(adj_[v].begin(), adj_[v].end()))
        remove_edge_inplace(v, w);
}

void Graph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != adj_.size())
        throw InvalidParam("label count " + std::to_string(labels.size()) +
                           " does not match node count " +
                           std::to_string(adj_.size()));
    labels_ = std::move(labels);
}

void Graph::check_invariants() const {
    std::size_t half_edges = 0;
    for (NodeId u = 0; u < adj_.size(); ++u) {
        const auto& a = adj_[u];
        if (!std::is_sorted(a.begin(), a.end()))
            throw InvalidParam("adjacency of " + std::to_string(u) +
                               " not sorted");
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw InvalidParam("duplicate neighbor at " + std::to_string(u));
        for (NodeId v : a) {
            if (v == u)
                throw InvalidParam("self-loop at " + std::to_string(u));
            if (v >= adj_.size())
                throw InvalidParam("neighbor out of range at " +
                                   std::to_string(u));
            const auto& b = adj_[v];
            if (!std::binary_search(b.begin(), b.end(), u))
                throw InvalidParam("asymmetric edge (" + std::to_string(u) +
                                   "," + std::to_string(v) + ")");
        }
        half_edges += a.size();
    }
    if (half_edges != 2 * m_)
        throw InvalidParam("edge count mismatch: counted " +
                           std::to_string(half_edges / 2) + ", stored " +
                           std::to_string(m_));
}

ComponentReport connected_components(const Graph& g) {
    const std::size_t n = g.num_nodes();
    ComponentReport rep;
    rep.component.assign(n, UINT32_MAX);
    if (n == 0) return rep;

    std::vector<std::size_t> raw_sizes;
    std::vector<NodeId> raw_min_id;
    std::vector<NodeId> stack;
    std::uint32_t next = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (rep.component[s] != UINT32_MAX) continue;
        std::size_t size = 0;
        stack.push_back(s);
        rep.component[s] = next;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            ++size;
            for (NodeId w : g.neighbors(v)) {
                if (rep.component[w] == UINT32_MAX) {
                    rep.component[w] = next;
                    stack.push_back(w);
                }
            }
        }
        raw_sizes.push_back(size);
        raw_min_id.push_back(s); // first unvisited seed is the min id
        ++next;
    }

    // Order components by (size desc, min node id asc) and remap indices.
    std::vector<std::uint32_t> order(raw_sizes.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (raw_sizes[a] != raw_sizes[b]) return raw_sizes[a] > raw_sizes[b];
        return raw_min_id[a] < raw_min_id[b];
    });
    std::vector<std::uint32_t> remap(order.size());
    rep.sizes.resize(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        remap[order[i]] = i;
        rep.sizes[i] = raw_sizes[order[i]];
    }
    for (auto& c : rep.component) c = remap[c];
    rep.gcc_fraction = static_cast<double>(rep.sizes[0]) / static_cast<double>(n);
    return rep;
}

Graph remove_edges(const Graph& g, const std::vector<Edge>& edges) {
    Graph out = g;
    for (const Edge& e : edges) out.remove_edge_inplace(e.u, e.v);
    return out;
}

Graph remove_node(const Graph& g, NodeId v) {
    Graph out = g;
    out.remove_node_inplace(v);
    return out;
}

std::vector<NodeId> two_core(const Graph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<std::size_t> deg(n);
    for (NodeId v = 0; v < n; ++v) deg[v] = g.degree(v);

    // Iteratively peel nodes of degree <= 1.
    std::vector<NodeId> queue;
    std::vector<char> removed(n, 0);
    for (NodeId v = 0; v < n; ++v)
        if (deg[v] <= 1) queue.push_back(v);
    while (!queue.empty()) {
        NodeId v = queue.back();
        queue.pop_back();
        if (removed[v]) continue;
        removed[v] = 1;
        for (NodeId w : g.neighbors(v)) {
            if (removed[w]) continue;
            if (--deg[w] == 1) queue.push_back(w);
        }
    }

    std::vector<NodeId> core;
    for (NodeId v = 0; v < n; ++v)
        if (!removed[v]) core.push_back(v);
    return core;
}

} // namespace netdis
