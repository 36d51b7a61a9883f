#include "netdis/generators.hpp"

#include "netdis/errors.hpp"
#include "netdis/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace netdis {
namespace {

// Geometric gap between successive successes of a Bernoulli(p) sequence.
std::uint64_t geometric_skip(double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double r = unit(rng);
    return static_cast<std::uint64_t>(std::floor(std::log1p(-r) / std::log1p(-p)));
}

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (NodeId u = 0; u + 1 < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

} // namespace

void GenSpec::validate() const {
    if (n < 2) throw InvalidParam("GenSpec: n must be >= 2");
    switch (kind) {
    case GenKind::ER:
        if (!(mean_degree > 0.0) || mean_degree > static_cast<double>(n - 1))
            throw InvalidParam("GenSpec: ER mean_degree must be in (0, n-1]");
        break;
    case GenKind::WS:
        if (ws_k < 2 || ws_k % 2 != 0 || ws_k >= n)
            throw InvalidParam("GenSpec: WS k must be even, >= 2, < n");
        if (ws_rewire < 0.0 || ws_rewire > 1.0)
            throw InvalidParam("GenSpec: WS rewire probability must be in [0,1]");
        break;
    case GenKind::SF:
        if (!(gamma > 2.0))
            throw InvalidParam("GenSpec: SF gamma must be > 2");
        if (!(mean_degree > 0.0))
            throw InvalidParam("GenSpec: SF mean_degree must be positive");
        break;
    case GenKind::SBM: {
        if (block_sizes.empty())
            throw InvalidParam("GenSpec: SBM needs block sizes");
        std::size_t total = std::accumulate(block_sizes.begin(),
                                            block_sizes.end(), std::size_t{0});
        if (total != n)
            throw InvalidParam("GenSpec: SBM block sizes sum to " +
                               std::to_string(total) + ", expected " +
                               std::to_string(n));
        if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
            throw InvalidParam("GenSpec: SBM probabilities must be in [0,1]");
        break;
    }
    }
}

Graph gen_er(std::size_t n, double mean_degree, std::uint64_t seed) {
    if (n < 2) throw InvalidParam("gen_er: n must be >= 2");
    if (!(mean_degree > 0.0) || mean_degree > static_cast<double>(n - 1))
        throw InvalidParam("gen_er: mean_degree must be in (0, n-1]");
    const double p = mean_degree / static_cast<double>(n - 1);
    if (p >= 1.0) return complete_graph(n);

    std::mt19937_64 rng(seed);
    Graph g(n);
    // Walk the strictly-lower-triangular pair space (v,w), w < v, jumping
    // geometric gaps between kept pairs.
    std::uint64_t v = 1;
    std::int64_t w = -1;
    while (v < n) {
        w += 1 + static_cast<std::int64_t>(geometric_skip(p, rng));
        while (w >= static_cast<std::int64_t>(v) && v < n) {
            w -= static_cast<std::int64_t>(v);
            ++v;
        }
        if (v < n)
            g.add_edge(static_cast<NodeId>(w), static_cast<NodeId>(v));
    }
    return g;
}

Graph gen_ws(std::size_t n, std::size_t k, double rewire_p, std::uint64_t seed) {
    if (n < 3) throw InvalidParam("gen_ws: n must be >= 3");
    if (k < 2 || k % 2 != 0 || k >= n)
        throw InvalidParam("gen_ws: k must be even, >= 2, < n");
    if (rewire_p < 0.0 || rewire_p > 1.0)
        throw InvalidParam("gen_ws: rewire probability must be in [0,1]");

    Graph g(n);
    const std::size_t half = k / 2;
    for (std::size_t j = 1; j <= half; ++j)
        for (std::size_t i = 0; i < n; ++i)
            g.add_edge(static_cast<NodeId>(i),
                       static_cast<NodeId>((i + j) % n));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    // Classic rewiring sweep: ring distance 1 first, then 2, ...; each
    // clockwise lattice edge (i, i+j) moves its far endpoint to a uniform
    // node with probability rewire_p. Degree sum (and m) stay fixed.
    for (std::size_t j = 1; j <= half; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (unit(rng) >= rewire_p) continue;
            const NodeId u = static_cast<NodeId>(i);
            const NodeId old_v = static_cast<NodeId>((i + j) % n);
            if (!g.has_edge(u, old_v)) continue; // already rewired away
            if (g.degree(u) == n - 1) continue;  // no free endpoint exists
            NodeId nv;
            do {
                nv = static_cast<NodeId>(pick(rng));
            } while (nv == u || g.has_edge(u, nv));
            g.remove_edge_inplace(u, old_v);
            g.add_edge(u, nv);
        }
    }
    return g;
}

namespace {

// Power-law weights w_k = k^(-gamma) on [k_min, k_max] with the k_min mass
// scaled by alpha in (0,1] so the mean hits the target. Raises k_min while
// even alpha -> 0 cannot reach the target.
struct SfDistribution {
    std::size_t k_min;
    double alpha;
    std::vector<double> weights; // index 0 -> degree k_min
};

SfDistribution solve_sf_distribution(double gamma, double mean_degree,
                                     std::size_t k_max) {
    auto sums_from = [&](std::size_t k_lo) {
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t k = k_lo; k <= k_max; ++k) {
            const double w = std::pow(static_cast<double>(k), -gamma);
            s0 += w;
            s1 += w * static_cast<double>(k);
        }
        return std::pair<double, double>(s0, s1);
    };

    for (std::size_t k_min = 1; k_min < k_max; ++k_min) {
        const double a0 = std::pow(static_cast<double>(k_min), -gamma);
        const double a1 = a0 * static_cast<double>(k_min);
        auto [s0_rest, s1_rest] = sums_from(k_min + 1);
        const double mean_full = (a1 + s1_rest) / (a0 + s0_rest);
        const double mean_zero = s1_rest / s0_rest; // alpha -> 0 limit
        if (mean_degree < mean_full) {
            if (k_min == 1)
                throw GenerationFailure(
                    "gen_sf: target mean " + std::to_string(mean_degree) +
                    " below the distribution minimum " +
                    std::to_string(mean_full));
            break; // cannot happen: previous k_min already covered this mean
        }
        if (mean_degree >= mean_zero) continue; // need a larger k_min
        const double alpha = (s1_rest - mean_degree * s0_rest) /
                             (mean_degree * a0 - a1);
        SfDistribution dist;
        dist.k_min = k_min;
        dist.alpha = std::clamp(alpha, 0.0, 1.0);
        dist.weights.resize(k_max - k_min + 1);
        dist.weights[0] = dist.alpha * a0;
        for (std::size_t k = k_min + 1; k <= k_max; ++k)
            dist.weights[k - k_min] = std::pow(static_cast<double>(k), -gamma);
        return dist;
    }
    throw GenerationFailure("gen_sf: target mean " + std::to_string(mean_degree) +
                            " unreachable with cutoff " + std::to_string(k_max));
}

} // namespace

Graph gen_sf(std::size_t n, double gamma, double mean_degree,
             std::uint64_t seed, SfStats* stats) {
    if (n < 2) throw InvalidParam("gen_sf: n must be >= 2");
    if (!(gamma > 2.0)) throw InvalidParam("gen_sf: gamma must be > 2");
    if (!(mean_degree > 0.0))
        throw InvalidParam("gen_sf: mean_degree must be positive");

    const auto k_max = static_cast<std::size_t>(std::floor(std::sqrt(
        static_cast<double>(n))));
    const SfDistribution dist = solve_sf_distribution(gamma, mean_degree, k_max);

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> draw(dist.weights.begin(),
                                                 dist.weights.end());

    std::vector<std::size_t> degree(n);
    double mean = 0.0;
    std::size_t attempts = 0;
    for (;; ++attempts) {
        if (attempts == 200)
            throw GenerationFailure("gen_sf: sequence mean missed target by >5%"
                                    " in 200 resamples");
        std::size_t total = 0;
        for (auto& d : degree) {
            d = dist.k_min + draw(rng);
            total += d;
        }
        mean = static_cast<double>(total) / static_cast<double>(n);
        if (std::abs(mean - mean_degree) <= 0.05 * mean_degree) break;
    }

    std::vector<NodeId> stubs;
    for (NodeId v = 0; v < n; ++v)
        stubs.insert(stubs.end(), degree[v], v);
    std::shuffle(stubs.begin(), stubs.end(), rng);

    SfStats local;
    local.k_min = dist.k_min;
    local.k_max = k_max;
    local.alpha = dist.alpha;
    local.target_mean = mean_degree;
    local.sequence_mean = mean;
    local.resamples = attempts;
    local.odd_stub_dropped = stubs.size() % 2 != 0; // last stub stays unpaired

    Graph g(n);
    std::set<Edge> seen;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const NodeId a = stubs[i], b = stubs[i + 1];
        if (a == b) {
            ++local.dropped_self_loops;
            continue;
        }
        if (!seen.insert(Edge(a, b)).second) {
            ++local.dropped_multi_edges;
            continue;
        }
        g.add_edge(a, b);
    }
    if (stats) *stats = local;
    return g;
}

Graph gen_sbm(const GenSpec& spec) {
    if (spec.kind != GenKind::SBM)
        throw InvalidParam("gen_sbm: spec.kind must be SBM");
    spec.validate();

    std::vector<std::size_t> offset(spec.block_sizes.size() + 1, 0);
    for (std::size_t b = 0; b < spec.block_sizes.size(); ++b)
        offset[b + 1] = offset[b] + spec.block_sizes[b];

    std::mt19937_64 rng(spec.seed);
    Graph g(spec.n);

    // Within-block triangles, geometric skipping as in gen_er.
    auto fill_triangle = [&](std::size_t base, std::size_t s, double p) {
        if (p <= 0.0 || s < 2) return;
        if (p >= 1.0) {
            for (std::size_t v = 1; v < s; ++v)
                for (std::size_t w = 0; w < v; ++w)
                    g.add_edge(static_cast<NodeId>(base + w),
                               static_cast<NodeId>(base + v));
            return;
        }
        std::uint64_t v = 1;
        std::int64_t w = -1;
        while (v < s) {
            w += 1 + static_cast<std::int64_t>(geometric_skip(p, rng));
            while (w >= static_cast<std::int64_t>(v) && v < s) {
                w -= static_cast<std::int64_t>(v);
                ++v;
            }
            if (v < s)
                g.add_edge(static_cast<NodeId>(base + w),
                           static_cast<NodeId>(base + v));
        }
    };

    // Cross-block rectangles.
    auto fill_rect = [&](std::size_t base_a, std::size_t sa, std::size_t base_b,
                         std::size_t sb, double p) {
        if (p <= 0.0) return;
        if (p >= 1.0) {
            for (std::size_t i = 0; i < sa; ++i)
                for (std::size_t j = 0; j < sb; ++j)
                    g.add_edge(static_cast<NodeId>(base_a + i),
                               static_cast<NodeId>(base_b + j));
            return;
        }
        const std::uint64_t total = static_cast<std::uint64_t>(sa) * sb;
        std::uint64_t idx = geometric_skip(p, rng);
        while (idx < total) {
            g.add_edge(static_cast<NodeId>(base_a + idx / sb),
                       static_cast<NodeId>(base_b + idx % sb));
            idx += 1 + geometric_skip(p, rng);
        }
    };

    const std::size_t nb = spec.block_sizes.size();
    for (std::size_t a = 0; a < nb; ++a) {
        fill_triangle(offset[a], spec.block_sizes[a], spec.p_in);
        for (std::size_t b = a + 1; b < nb; ++b)
            fill_rect(offset[a], spec.block_sizes[a], offset[b],
                      spec.block_sizes[b], spec.p_out);
    }
    return g;
}

GenSpec sbm_spec(std::size_t n, std::size_t blocks, double mean_degree,
                 double ratio, std::uint64_t seed) {
    if (blocks == 0 || blocks > n)
        throw InvalidParam("sbm_spec: blocks must be in [1, n]");
    if (!(ratio >= 1.0))
        throw InvalidParam("sbm_spec: ratio p_in/p_out must be >= 1");
    GenSpec spec;
    spec.kind = GenKind::SBM;
    spec.n = n;
    spec.seed = seed;
    spec.mean_degree = mean_degree;
    spec.block_sizes.assign(blocks, n / blocks);
    for (std::size_t b = 0; b < n % blocks; ++b) ++spec.block_sizes[b];

    double pairs_in = 0.0;
    for (std::size_t s : spec.block_sizes)
        pairs_in += 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
    const double pairs_all =
        0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double pairs_out = pairs_all - pairs_in;
    const double target_m = 0.5 * mean_degree * static_cast<double>(n);

    // E[m] = p_out * (ratio*pairs_in + pairs_out)
    spec.p_out = target_m / (ratio * pairs_in + pairs_out);
    spec.p_in = ratio * spec.p_out;
    if (spec.p_in > 1.0)
        throw InvalidParam("sbm_spec: target density infeasible at this ratio");
    return spec;
}

Graph generate(const GenSpec& spec) {
    spec.validate();
    switch (spec.kind) {
    case GenKind::ER: return gen_er(spec.n, spec.mean_degree, spec.seed);
    case GenKind::WS: return gen_ws(spec.n, spec.ws_k, spec.ws_rewire, spec.seed);
    case GenKind::SF: return gen_sf(spec.n, spec.gamma, spec.mean_degree, spec.seed);
    case GenKind::SBM: return gen_sbm(spec);
    }
    throw InvalidParam("generate: unknown kind");
}

} // namespace netdis
