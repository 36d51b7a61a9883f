#include "netdis/spectral.hpp"

#include "netdis/errors.hpp"
#include "netdis/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <queue>

namespace netdis {

void SpectralConfig::validate() const {
    if (!(eta_exponent > 0.0))
        throw InvalidParam("SpectralConfig: eta_exponent must be > 0");
    if (eta_override && *eta_override == 0)
        throw InvalidParam("SpectralConfig: eta_override must be positive");
    if (!(gcc_threshold > 0.0) || gcc_threshold > 1.0)
        throw InvalidParam("SpectralConfig: gcc_threshold must be in (0,1]");
    if (budget && (*budget < 0.0 || *budget > 1.0))
        throw InvalidParam("SpectralConfig: budget must be in [0,1]");
    if (k_per_level < 2)
        throw InvalidParam("SpectralConfig: k_per_level must be >= 2");
}

std::size_t SpectralConfig::eta(std::size_t n) const {
    if (eta_override) return *eta_override;
    if (n < 3) return 1;
    const double it =
        std::pow(std::log(static_cast<double>(n)), 1.0 + eta_exponent);
    return static_cast<std::size_t>(std::max(1.0, std::ceil(it)));
}

namespace {

// 1/sqrt(degree) per node; the shared scaling of the normalized Laplacian.
std::vector<double> degree_scale(const Graph& g, const char* who) {
    const std::size_t n = g.num_nodes();
    std::vector<double> scale(n);
    for (NodeId i = 0; i < n; ++i) {
        const std::size_t d = g.degree(i);
        if (d == 0)
            throw DegreeZero(std::string(who) + ": isolated node " +
                             std::to_string(i));
        scale[i] = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return scale;
}

// out_i = v_i + scale_i * sum_{j~i} scale_j v_j. The i-loop is parallel;
// each element is computed by exactly one thread with the same operation
// order as the serial loop, so results are bitwise identical.
void apply_core(const Graph& g, const std::vector<double>& scale,
                const std::vector<double>& v, std::vector<double>& out,
                bool parallel) {
    const std::size_t n = g.num_nodes();
    out.resize(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && n >= 4096)
#endif
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (NodeId j : g.neighbors(static_cast<NodeId>(i)))
            acc += scale[j] * v[j];
        out[i] = v[i] + scale[i] * acc;
    }
    (void)parallel;
}

double dot_serial(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void deflate(std::vector<double>& v, const std::vector<double>& u) {
    const double proj = dot_serial(v, u);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * u[i];
}

} // namespace

std::vector<double> laplacian_complement_apply(const Graph& g,
                                               const std::vector<double>& v) {
    if (v.size() != g.num_nodes())
        throw InvalidParam("laplacian_complement_apply: length mismatch");
    const auto scale = degree_scale(g, "laplacian_complement_apply");
    std::vector<double> out;
    apply_core(g, scale, v, out, true);
    return out;
}

std::vector<double> laplacian_complement_apply_serial(
    const Graph& g, const std::vector<double>& v) {
    if (v.size() != g.num_nodes())
        throw InvalidParam("laplacian_complement_apply: length mismatch");
    const auto scale = degree_scale(g, "laplacian_complement_apply");
    std::vector<double> out;
    apply_core(g, scale, v, out, false);
    return out;
}

SpectralVector power_iteration(const Graph& g, const SpectralConfig& cfg) {
    cfg.validate();
    const std::size_t n = g.num_nodes();
    if (n < 2) throw InvalidParam("power_iteration: need at least 2 nodes");
    const auto scale = degree_scale(g, "power_iteration");
    if (connected_components(g).sizes.size() != 1)
        throw InvalidParam("power_iteration: graph must be connected");

    // Null direction of L_w (or the all-ones compatibility variant).
    std::vector<double> u(n);
    if (cfg.deflation == Deflation::DegreeSqrt) {
        for (NodeId i = 0; i < n; ++i)
            u[i] = std::sqrt(static_cast<double>(g.degree(i)));
        const double nu = std::sqrt(dot_serial(u, u));
        for (auto& x : u) x /= nu;
    } else {
        const double c = 1.0 / std::sqrt(static_cast<double>(n));
        for (auto& x : u) x = c;
    }

    SpectralVector out;
    std::vector<double> w;

    if (n == 2) {
        // The deflated subspace is one-dimensional; the answer is exact and
        // iterating (the operator is zero there) would only break down.
        out.values = {u[1], -u[0]};
        apply_core(g, scale, out.values, w, true);
        out.rayleigh = 2.0 - dot_serial(out.values, w);
        out.rayleigh_history = {out.rayleigh};
        return out;
    }

    std::mt19937_64 rng(cfg.seed);
    const std::size_t iters = cfg.eta(n);
    std::vector<double> v;
    for (;;) {
        v = random_unit_vector(n, rng);
        deflate(v, u);
        double nv = std::sqrt(dot_serial(v, v));
        if (!(nv > 1e-12)) {
            if (++out.restarts > 5)
                throw NumericalFailure("power_iteration: degenerate start");
            continue;
        }
        for (auto& x : v) x /= nv;

        out.rayleigh_history.clear();
        bool broke = false;
        for (std::size_t t = 0; t < iters; ++t) {
            apply_core(g, scale, v, w, true);
            out.rayleigh_history.push_back(2.0 - dot_serial(v, w));
            deflate(w, u);
            const double nw = std::sqrt(dot_serial(w, w));
            if (!std::isfinite(nw) || !(nw > 1e-300)) {
                broke = true;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
        }
        if (!broke) break;
        if (++out.restarts > 5)
            throw NumericalFailure(
                "power_iteration: repeated breakdown after 5 restarts");
    }

    apply_core(g, scale, v, w, true);
    out.rayleigh = 2.0 - dot_serial(v, w);
    out.rayleigh_history.push_back(out.rayleigh);
    out.values = std::move(v);
    return out;
}

BisectionResult spectral_bisection(const Graph& g, const SpectralConfig& cfg) {
    const std::size_t n = g.num_nodes();
    if (n < 2) throw InvalidParam("spectral_bisection: need at least 2 nodes");
    BisectionResult res;
    res.vec = power_iteration(g, cfg); // also checks connectivity
    const auto& v = res.vec.values;

    std::vector<char> in_a(n, 0);
    auto median_split = [&]() {
        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), NodeId{0});
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            if (v[a] != v[b]) return v[a] > v[b];
            return a < b;
        });
        std::fill(in_a.begin(), in_a.end(), 0);
        for (std::size_t i = 0; i < (n + 1) / 2; ++i) in_a[order[i]] = 1;
    };

    if (cfg.balanced) {
        median_split();
    } else {
        std::size_t count_a = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] > 0.0) {
                in_a[i] = 1;
                ++count_a;
            }
        if (count_a == 0 || count_a == n) {
            res.used_fallback = true;
            median_split();
        }
    }

    for (NodeId i = 0; i < n; ++i)
        if (in_a[i]) res.side_a.push_back(i);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j : g.neighbors(i))
            if (i < j && in_a[i] != in_a[j]) res.separator.emplace_back(i, j);
    return res;
}

double ncut_value(const Graph& g, const std::vector<NodeId>& side_a) {
    const std::size_t n = g.num_nodes();
    if (side_a.empty() || side_a.size() >= n)
        throw EmptySide("ncut_value: side must be a non-empty proper subset");
    std::vector<char> in_a(n, 0);
    for (NodeId i : side_a) {
        if (i >= n) throw UnknownNode("ncut_value: node out of range");
        in_a[i] = 1;
    }
    std::size_t cut = 0, assoc_a = 0, assoc_b = 0;
    for (NodeId i = 0; i < n; ++i) {
        (in_a[i] ? assoc_a : assoc_b) += g.degree(i);
        if (in_a[i])
            for (NodeId j : g.neighbors(i))
                if (!in_a[j]) ++cut;
    }
    if (assoc_a == 0 || assoc_b == 0)
        throw ZeroAssoc("ncut_value: a side has zero total degree");
    return static_cast<double>(cut) * (1.0 / static_cast<double>(assoc_a) +
                                       1.0 / static_cast<double>(assoc_b));
}

namespace {

std::uint64_t component_seed(std::uint64_t master, std::size_t depth,
                             NodeId min_id, std::size_t size) {
    std::uint64_t s = mix64(master ^ 0x068b6f362c4e2f1dULL);
    s = mix64(s ^ (static_cast<std::uint64_t>(depth) << 40) ^ size);
    return mix64(s ^ min_id);
}

struct InducedView {
    Graph local;
    std::vector<NodeId> to_orig; // local id -> original id, ascending
};

// local_of is caller-owned scratch of size n, filled with -1; restored
// before returning.
InducedView induce(const Graph& g, const std::vector<NodeId>& nodes,
                   std::vector<std::int32_t>& local_of) {
    InducedView view;
    view.to_orig = nodes;
    view.local = Graph(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        local_of[nodes[i]] = static_cast<std::int32_t>(i);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeId orig = nodes[i];
        for (NodeId w : g.neighbors(orig)) {
            if (orig < w && local_of[w] >= 0)
                view.local.add_edge(static_cast<NodeId>(i),
                                    static_cast<NodeId>(local_of[w]));
        }
    }
    for (NodeId v : nodes) local_of[v] = -1;
    return view;
}

} // namespace

void PartitionTree::serialize(std::ostream& out) const {
    for (const PartitionNode& pn : nodes) {
        out << pn.depth << "," << pn.nodes.size() << ","
            << pn.separator.size() << ",";
        for (std::size_t i = 0; i < pn.separator.size(); ++i) {
            if (i) out << ' ';
            out << pn.separator[i].u << '-' << pn.separator[i].v;
        }
        out << "\n";
    }
}

std::pair<PartitionTree, RemovalPlan> hpi_ncut(const Graph& g,
                                               const SpectralConfig& cfg) {
    cfg.validate();
    const std::size_t n0 = g.num_nodes();
    if (n0 == 0) throw InvalidParam("hpi_ncut: empty graph");
    const std::size_t m0 = g.num_edges();

    PartitionTree tree;
    RemovalPlan plan;
    plan.total_edges = m0;

    struct QEntry {
        std::size_t depth;
        std::size_t size;
        NodeId min_id;
        std::size_t idx;
    };
    // Pop order: depth ascending, then size descending, then smallest id.
    auto later = [](const QEntry& a, const QEntry& b) {
        if (a.depth != b.depth) return a.depth > b.depth;
        if (a.size != b.size) return a.size < b.size;
        return a.min_id > b.min_id;
    };
    std::priority_queue<QEntry, std::vector<QEntry>, decltype(later)> pending(
        later);

    auto splittable = [&](const PartitionNode& node) {
        if (node.nodes.size() < 2) return false;
        if (static_cast<double>(node.nodes.size()) <
            cfg.gcc_threshold * static_cast<double>(n0))
            return false;
        if (cfg.max_depth && node.depth >= *cfg.max_depth) return false;
        return true;
    };

    auto add_node = [&](std::vector<NodeId> nodes, std::size_t depth,
                        std::optional<std::size_t> parent) {
        PartitionNode pn;
        pn.nodes = std::move(nodes);
        pn.depth = depth;
        pn.parent = parent;
        const std::size_t idx = tree.nodes.size();
        tree.nodes.push_back(std::move(pn));
        if (parent)
            tree.nodes[*parent].children.push_back(idx);
        else
            tree.roots.push_back(idx);
        const PartitionNode& stored = tree.nodes[idx];
        if (splittable(stored))
            pending.push(
                {stored.depth, stored.nodes.size(), stored.nodes.front(), idx});
    };

    {
        const ComponentReport rep = connected_components(g);
        std::vector<std::vector<NodeId>> comps(rep.sizes.size());
        for (NodeId v = 0; v < n0; ++v) comps[rep.component[v]].push_back(v);
        for (auto& c : comps) add_node(std::move(c), 0, std::nullopt);
    }

    std::vector<std::int32_t> local_of(n0, -1);
    std::size_t removed = 0;
    constexpr std::size_t npos = static_cast<std::size_t>(-1);

    while (!pending.empty()) {
        if (cfg.budget &&
            static_cast<double>(removed) >=
                *cfg.budget * static_cast<double>(m0) - 1e-9)
            break;
        const QEntry top = pending.top();
        pending.pop();
        const std::size_t depth = tree.nodes[top.idx].depth;

        // One hierarchical step: k_per_level-1 bisections, always of the
        // currently largest connected part, separators pooled in one batch.
        std::vector<Edge> batch;
        std::vector<std::vector<NodeId>> parts;
        parts.push_back(tree.nodes[top.idx].nodes);
        for (std::size_t cut = 0; cut + 1 < cfg.k_per_level; ++cut) {
            std::size_t pick = npos;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (parts[i].size() < 2) continue;
                if (pick == npos || parts[i].size() > parts[pick].size() ||
                    (parts[i].size() == parts[pick].size() &&
                     parts[i].front() < parts[pick].front()))
                    pick = i;
            }
            if (pick == npos) break;
            std::vector<NodeId> part = std::move(parts[pick]);
            parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(pick));

            InducedView view = induce(g, part, local_of);
            SpectralConfig sub = cfg;
            sub.seed =
                component_seed(cfg.seed, depth, part.front(), part.size());
            const BisectionResult bis = spectral_bisection(view.local, sub);
            if (bis.used_fallback) ++tree.fallback_splits;
            for (const Edge& e : bis.separator)
                batch.emplace_back(view.to_orig[e.u], view.to_orig[e.v]);

            // Connected pieces on each side become new parts.
            const std::size_t ln = view.local.num_nodes();
            std::vector<char> in_a(ln, 0), seen(ln, 0);
            for (NodeId a : bis.side_a) in_a[a] = 1;
            std::vector<NodeId> stack, members;
            for (NodeId s = 0; s < ln; ++s) {
                if (seen[s]) continue;
                seen[s] = 1;
                stack.assign(1, s);
                members.clear();
                while (!stack.empty()) {
                    const NodeId x = stack.back();
                    stack.pop_back();
                    members.push_back(x);
                    for (NodeId y : view.local.neighbors(x)) {
                        if (!seen[y] && in_a[y] == in_a[x]) {
                            seen[y] = 1;
                            stack.push_back(y);
                        }
                    }
                }
                std::sort(members.begin(), members.end());
                std::vector<NodeId> orig_ids(members.size());
                for (std::size_t i = 0; i < members.size(); ++i)
                    orig_ids[i] = view.to_orig[members[i]];
                parts.push_back(std::move(orig_ids));
            }
        }

        tree.nodes[top.idx].separator = batch;
        tree.split_order.push_back(top.idx);
        removed += batch.size();
        plan.batches.push_back(Batch{Provenance::for_edge(), std::move(batch)});
        for (auto& part : parts) add_node(std::move(part), depth + 1, top.idx);
    }

    return {std::move(tree), std::move(plan)};
}

} // namespace netdis
