#include "netdis/strategies.hpp"

#include "netdis/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace netdis {
namespace {

// Shared bookkeeping for node-removal strategies: which nodes are gone and
// the residual degree of the survivors.
struct Residual {
    const Graph& g;
    std::vector<char> removed;
    std::vector<std::size_t> deg;

    explicit Residual(const Graph& graph)
        : g(graph), removed(graph.num_nodes(), 0), deg(graph.num_nodes()) {
        for (NodeId v = 0; v < g.num_nodes(); ++v) deg[v] = g.degree(v);
    }

    // Deletes v, returning its surviving incident edges.
    std::vector<Edge> take(NodeId v) {
        std::vector<Edge> batch;
        for (NodeId w : g.neighbors(v)) {
            if (removed[w]) continue;
            batch.emplace_back(v, w);
            --deg[w];
        }
        removed[v] = 1;
        deg[v] = 0;
        return batch;
    }
};

// Adaptive high-degree sweep over whatever is left in res; appends one
// batch per remaining node. Ties go to the smallest id (std::set begin).
void hda_append(Residual& res, RemovalPlan& plan) {
    const std::size_t n = res.g.num_nodes();
    std::size_t max_deg = 0;
    for (NodeId v = 0; v < n; ++v)
        if (!res.removed[v]) max_deg = std::max(max_deg, res.deg[v]);
    std::vector<std::set<NodeId>> bucket(max_deg + 1);
    std::size_t remaining = 0;
    for (NodeId v = 0; v < n; ++v)
        if (!res.removed[v]) {
            bucket[res.deg[v]].insert(v);
            ++remaining;
        }
    std::size_t top = max_deg;
    while (remaining-- > 0) {
        while (top > 0 && bucket[top].empty()) --top;
        const NodeId v = *bucket[top].begin();
        bucket[top].erase(bucket[top].begin());
        std::vector<Edge> batch;
        for (NodeId w : res.g.neighbors(v)) {
            if (res.removed[w]) continue;
            batch.emplace_back(v, w);
            bucket[res.deg[w]].erase(w);
            --res.deg[w];
            bucket[res.deg[w]].insert(w);
        }
        res.removed[v] = 1;
        res.deg[v] = 0;
        plan.batches.push_back({Provenance::for_node(v), std::move(batch)});
    }
}

} // namespace

RemovalPlan site_percolation_plan(const Graph& g, std::uint64_t seed) {
    RemovalPlan plan;
    plan.total_edges = g.num_edges();
    std::vector<NodeId> order(g.num_nodes());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    Residual res(g);
    for (NodeId v : order)
        plan.batches.push_back({Provenance::for_node(v), res.take(v)});
    return plan;
}

RemovalPlan bond_percolation_plan(const Graph& g, std::uint64_t seed) {
    RemovalPlan plan;
    plan.total_edges = g.num_edges();
    std::vector<Edge> order = g.edges();
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (const Edge& e : order)
        plan.batches.push_back({Provenance::for_random(), {e}});
    return plan;
}

RemovalPlan hd_plan(const Graph& g) {
    RemovalPlan plan;
    plan.total_edges = g.num_edges();
    std::vector<NodeId> order(g.num_nodes());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    Residual res(g);
    for (NodeId v : order)
        plan.batches.push_back({Provenance::for_node(v), res.take(v)});
    return plan;
}

RemovalPlan hda_plan(const Graph& g) {
    RemovalPlan plan;
    plan.total_edges = g.num_edges();
    Residual res(g);
    hda_append(res, plan);
    return plan;
}

namespace {

// Scratch for repeated BFS balls without clearing arrays between calls.
struct BallScratch {
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> queue;
    std::uint32_t current = 0;

    explicit BallScratch(std::size_t n) : stamp(n, 0), dist(n, 0) {}

    // Visits the residual ball around v up to depth radius; calls
    // visit(node, distance) for every reached node including v itself.
    template <typename F>
    void ball(const Residual& res, NodeId v, std::size_t radius, F&& visit) {
        ++current;
        queue.clear();
        queue.push_back(v);
        stamp[v] = current;
        dist[v] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId x = queue[head];
            visit(x, dist[x]);
            if (dist[x] == radius) continue;
            for (NodeId y : res.g.neighbors(x)) {
                if (res.removed[y] || stamp[y] == current) continue;
                stamp[y] = current;
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
};

std::int64_t ci_of(const Residual& res, BallScratch& scratch, NodeId v,
                   std::size_t radius) {
    if (res.removed[v] || res.deg[v] <= 1) return 0;
    std::int64_t frontier = 0;
    scratch.ball(res, v, radius, [&](NodeId x, std::uint32_t d) {
        if (d == radius && res.deg[x] >= 1)
            frontier += static_cast<std::int64_t>(res.deg[x]) - 1;
    });
    return (static_cast<std::int64_t>(res.deg[v]) - 1) * frontier;
}

} // namespace

std::vector<std::int64_t> ci_values(const Graph& g, std::size_t radius) {
    if (radius < 1) throw InvalidParam("ci_values: radius must be >= 1");
    Residual res(g);
    BallScratch scratch(g.num_nodes());
    std::vector<std::int64_t> ci(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        ci[v] = ci_of(res, scratch, v, radius);
    return ci;
}

RemovalPlan ci_plan(const Graph& g, std::size_t radius) {
    if (radius < 1) throw InvalidParam("ci_plan: radius must be >= 1");
    RemovalPlan plan;
    plan.total_edges = g.num_edges();
    const std::size_t n = g.num_nodes();
    Residual res(g);
    BallScratch scratch(n);

    std::vector<std::int64_t> ci(n);
    for (NodeId v = 0; v < n; ++v) ci[v] = ci_of(res, scratch, v, radius);

    std::vector<NodeId> dirty;
    for (;;) {
        std::int64_t best = 0;
        NodeId pick = 0;
        bool found = false;
        for (NodeId v = 0; v < n; ++v) {
            if (res.removed[v]) continue;
            if (ci[v] > best) {
                best = ci[v];
                pick = v;
                found = true;
            }
        }
        if (!found) break; // every remaining CI is zero

        // Only nodes within radius+1 of the pick (measured before the
        // removal) can see their CI change.
        dirty.clear();
        scratch.ball(res, pick, radius + 1,
                     [&](NodeId x, std::uint32_t) { dirty.push_back(x); });
        plan.batches.push_back({Provenance::for_node(pick), res.take(pick)});
        ci[pick] = 0;
        for (NodeId d : dirty)
            if (!res.removed[d]) ci[d] = ci_of(res, scratch, d, radius);
    }

    hda_append(res, plan);
    return plan;
}

RemovalPlan corehd_plan(const Graph& g, bool core_internal_degree) {
    RemovalPlan plan;
    plan.total_edges = g.num_edges();
    const std::size_t n = g.num_nodes();
    Residual res(g);

    // peel_deg counts non-peeled residual neighbors; peeling every node
    // that drops to <= 1 leaves exactly the residual 2-core.
    std::vector<char> peeled(n, 0);
    std::vector<std::size_t> peel_deg = res.deg;
    std::vector<NodeId> cascade;
    std::size_t core_size = 0;

    auto run_cascade = [&]() {
        while (!cascade.empty()) {
            const NodeId v = cascade.back();
            cascade.pop_back();
            if (peeled[v] || res.removed[v]) continue;
            if (peel_deg[v] > 1) continue; // got repaired? cannot happen, guard
            peeled[v] = 1;
            --core_size;
            for (NodeId w : g.neighbors(v)) {
                if (res.removed[w] || peeled[w]) continue;
                if (--peel_deg[w] <= 1) cascade.push_back(w);
            }
        }
    };

    core_size = n;
    for (NodeId v = 0; v < n; ++v)
        if (peel_deg[v] <= 1) cascade.push_back(v);
    run_cascade();

    while (core_size > 0) {
        NodeId pick = 0;
        std::size_t best = 0;
        bool found = false;
        for (NodeId v = 0; v < n; ++v) {
            if (res.removed[v] || peeled[v]) continue;
            const std::size_t score =
                core_internal_degree ? peel_deg[v] : res.deg[v];
            if (!found || score > best) {
                best = score;
                pick = v;
                found = true;
            }
        }
        std::vector<Edge> batch;
        for (NodeId w : g.neighbors(pick)) {
            if (res.removed[w]) continue;
            batch.emplace_back(pick, w);
            --res.deg[w];
            if (!peeled[w] && --peel_deg[w] <= 1) cascade.push_back(w);
        }
        res.removed[pick] = 1;
        res.deg[pick] = 0;
        peeled[pick] = 1;
        --core_size;
        run_cascade();
        plan.batches.push_back({Provenance::for_node(pick), std::move(batch)});
    }

    hda_append(res, plan);
    return plan;
}

namespace {

// Per-arc edge ids aligned with each node's neighbor list, so the Brandes
// accumulation can find the edge slot in O(1).
struct ArcIndex {
    std::vector<std::size_t> offset; // node -> start in ids
    std::vector<std::size_t> ids;    // parallel to concatenated adjacency

    explicit ArcIndex(const Graph& g) {
        const std::size_t n = g.num_nodes();
        offset.assign(n + 1, 0);
        for (NodeId v = 0; v < n; ++v)
            offset[v + 1] = offset[v] + g.degree(v);
        ids.assign(offset[n], 0);
        const std::vector<Edge> edges = g.edges(); // sorted (u,v)
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const Edge& e = edges[k];
            const auto place = [&](NodeId a, NodeId b) {
                const auto nb = g.neighbors(a);
                const auto it = std::lower_bound(nb.begin(), nb.end(), b);
                ids[offset[a] + static_cast<std::size_t>(it - nb.begin())] = k;
            };
            place(e.u, e.v);
            place(e.v, e.u);
        }
    }

    std::size_t id_at(NodeId v, std::size_t nbr_pos) const {
        return ids[offset[v] + nbr_pos];
    }
};

// Single-source shortest-path counting plus dependency accumulation.
void brandes_source(const Graph& g, const ArcIndex& idx, NodeId s,
                    std::vector<std::int32_t>& dist,
                    std::vector<double>& sigma, std::vector<double>& delta,
                    std::vector<NodeId>& order, std::vector<double>& acc) {
    const std::size_t n = g.num_nodes();
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId v = order[head];
        for (NodeId w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
            if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
        const NodeId w = order[i];
        const auto nb = g.neighbors(w);
        for (std::size_t p = 0; p < nb.size(); ++p) {
            const NodeId v = nb[p];
            if (dist[v] + 1 != dist[w]) continue;
            const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
            acc[idx.id_at(w, p)] += c;
            delta[v] += c;
        }
    }
}

std::vector<double> betweenness_impl(const Graph& g, bool parallel) {
    const std::size_t n = g.num_nodes();
    const std::size_t m = g.num_edges();
    const ArcIndex idx(g);
    if (m == 0) return {};

    if (!parallel) {
        std::vector<std::int32_t> dist(n);
        std::vector<double> sigma(n), delta(n), acc(m, 0.0);
        std::vector<NodeId> order;
        for (NodeId s = 0; s < n; ++s)
            brandes_source(g, idx, s, dist, sigma, delta, order, acc);
        for (double& b : acc) b *= 0.5; // unordered pairs
        return acc;
    }

    // Fixed source chunks; each chunk accumulates serially and the chunk
    // partials are reduced in chunk order, so the result is independent of
    // the number of threads.
    const std::size_t chunks = std::min<std::size_t>(64, n);
    const std::size_t width = (n + chunks - 1) / chunks;
    std::vector<std::vector<double>> partial(chunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t c = 0; c < chunks; ++c) {
        std::vector<std::int32_t> dist(n);
        std::vector<double> sigma(n), delta(n);
        std::vector<NodeId> order;
        partial[c].assign(m, 0.0);
        const std::size_t lo = c * width;
        const std::size_t hi = std::min(n, lo + width);
        for (std::size_t s = lo; s < hi; ++s)
            brandes_source(g, idx, static_cast<NodeId>(s), dist, sigma, delta,
                           order, partial[c]);
    }
    std::vector<double> acc(m, 0.0);
    for (std::size_t c = 0; c < chunks; ++c)
        for (std::size_t k = 0; k < m; ++k) acc[k] += partial[c][k];
    for (double& b : acc) b *= 0.5;
    return acc;
}

} // namespace

std::vector<double> edge_betweenness(const Graph& g) {
    return betweenness_impl(g, true);
}

std::vector<double> edge_betweenness_serial(const Graph& g) {
    return betweenness_impl(g, false);
}

RemovalPlan edge_betweenness_plan(
    const Graph& g, std::optional<std::size_t> recompute_interval) {
    if (recompute_interval && *recompute_interval == 0)
        throw InvalidParam("edge_betweenness_plan: interval must be positive");
    RemovalPlan plan;
    plan.total_edges = g.num_edges();

    auto ranked = [](const Graph& h) {
        const std::vector<Edge> edges = h.edges();
        const std::vector<double> betw = edge_betweenness(h);
        std::vector<std::size_t> order(edges.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) {
                      if (betw[a] != betw[b]) return betw[a] > betw[b];
                      return edges[a] < edges[b];
                  });
        std::vector<Edge> out(edges.size());
        for (std::size_t i = 0; i < order.size(); ++i) out[i] = edges[order[i]];
        return out;
    };

    if (!recompute_interval) {
        for (const Edge& e : ranked(g))
            plan.batches.push_back({Provenance::for_edge(), {e}});
        return plan;
    }

    Graph work = g;
    while (work.num_edges() > 0) {
        const std::vector<Edge> order = ranked(work);
        const std::size_t take =
            std::min<std::size_t>(*recompute_interval, order.size());
        for (std::size_t i = 0; i < take; ++i) {
            work.remove_edge_inplace(order[i].u, order[i].v);
            plan.batches.push_back({Provenance::for_edge(), {order[i]}});
        }
    }
    return plan;
}

} // namespace netdis
