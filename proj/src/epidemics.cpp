#include "netdis/epidemics.hpp"

#include "netdis/errors.hpp"
#include "netdis/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace netdis {

void SirParams::validate(std::size_t n) const {
    if (beta < 0.0 || beta > 1.0)
        throw InvalidParam("SirParams: beta must be in [0,1]");
    if (gamma < 0.0 || gamma > 1.0)
        throw InvalidParam("SirParams: gamma must be in [0,1]");
    if (max_steps == 0)
        throw InvalidParam("SirParams: max_steps must be positive");
    if (initial_nodes.empty()) {
        if (initial_infected == 0 || initial_infected > n)
            throw InvalidParam("SirParams: initial_infected must be in [1,n]");
    } else {
        std::set<NodeId> uniq;
        for (NodeId v : initial_nodes) {
            if (v >= n)
                throw InvalidParam("SirParams: initial node " +
                                   std::to_string(v) + " out of range");
            if (!uniq.insert(v).second)
                throw InvalidParam("SirParams: duplicate initial node " +
                                   std::to_string(v));
        }
    }
}

std::size_t SirMeanTrace::peak_time() const {
    std::size_t best = 0;
    for (std::size_t t = 1; t < i.size(); ++t)
        if (i[t] > i[best]) best = t;
    return best;
}

namespace {

enum : char { kS = 0, kI = 1, kR = 2 };

std::vector<NodeId> pick_initial(const Graph& g, const SirParams& p,
                                 std::mt19937_64& rng) {
    if (!p.initial_nodes.empty()) return p.initial_nodes;
    const std::size_t n = g.num_nodes();
    std::vector<NodeId> chosen;
    std::set<NodeId> uniq;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (chosen.size() < p.initial_infected) {
        const NodeId v = static_cast<NodeId>(pick(rng));
        if (uniq.insert(v).second) chosen.push_back(v);
    }
    return chosen;
}

} // namespace

SirTrace sir_run(const Graph& g, const SirParams& params) {
    const std::size_t n = g.num_nodes();
    if (n == 0) throw InvalidParam("sir_run: empty graph");
    params.validate(n);

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<char> state(n, kS);
    std::vector<std::uint32_t> age(n, 0);
    std::vector<NodeId> infected = pick_initial(g, params, rng);
    for (NodeId v : infected) {
        state[v] = kI;
        age[v] = 1; // seeds may recover from the very first step
    }

    SirTrace trace;
    auto record = [&](std::size_t icount) {
        std::size_t rcount = 0;
        for (char st : state) rcount += st == kR;
        trace.i.push_back(icount);
        trace.r.push_back(rcount);
        trace.s.push_back(n - icount - rcount);
    };
    record(infected.size());

    std::vector<char> newly(n, 0);
    std::vector<NodeId> newly_list, survivors;
    for (std::size_t step = 0; step < params.max_steps && !infected.empty();
         ++step) {
        newly_list.clear();
        for (NodeId v : infected) {
            for (NodeId w : g.neighbors(v)) {
                if (state[w] != kS) continue;
                if (unit(rng) < params.beta && !newly[w]) {
                    newly[w] = 1;
                    newly_list.push_back(w);
                }
            }
        }
        survivors.clear();
        for (NodeId v : infected) {
            if (age[v] >= 1 && unit(rng) < params.gamma) {
                state[v] = kR;
            } else {
                ++age[v];
                survivors.push_back(v);
            }
        }
        std::sort(newly_list.begin(), newly_list.end());
        for (NodeId w : newly_list) {
            state[w] = kI;
            age[w] = 0;
            newly[w] = 0;
            survivors.push_back(w);
        }
        infected.swap(survivors);
        record(infected.size());
    }
    return trace;
}

SirMeanTrace sir_ensemble(const Graph& g, const SirParams& params,
                          std::size_t runs) {
    if (runs == 0) throw InvalidParam("sir_ensemble: runs must be positive");
    params.validate(g.num_nodes());

    std::vector<SirTrace> traces(runs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t r = 0; r < runs; ++r) {
        SirParams p = params;
        p.seed = derive_seed(params.seed, "sir-run", r);
        traces[r] = sir_run(g, p);
    }

    std::size_t len = 0;
    for (const SirTrace& t : traces) len = std::max(len, t.steps());

    SirMeanTrace mean;
    mean.runs = runs;
    mean.s.assign(len, 0.0);
    mean.i.assign(len, 0.0);
    mean.r.assign(len, 0.0);
    mean.i_std.assign(len, 0.0);
    mean.r_std.assign(len, 0.0);
    // Serial reduction in run order keeps the result independent of how
    // the runs were scheduled.
    for (const SirTrace& t : traces) {
        for (std::size_t k = 0; k < len; ++k) {
            const std::size_t idx = std::min(k, t.steps() - 1);
            mean.s[k] += static_cast<double>(t.s[idx]);
            mean.i[k] += static_cast<double>(t.i[idx]);
            mean.r[k] += static_cast<double>(t.r[idx]);
            mean.i_std[k] +=
                static_cast<double>(t.i[idx]) * static_cast<double>(t.i[idx]);
            mean.r_std[k] +=
                static_cast<double>(t.r[idx]) * static_cast<double>(t.r[idx]);
        }
    }
    const double dr = static_cast<double>(runs);
    for (std::size_t k = 0; k < len; ++k) {
        mean.s[k] /= dr;
        mean.i[k] /= dr;
        mean.r[k] /= dr;
        mean.i_std[k] =
            std::sqrt(std::max(0.0, mean.i_std[k] / dr - mean.i[k] * mean.i[k]));
        mean.r_std[k] =
            std::sqrt(std::max(0.0, mean.r_std[k] / dr - mean.r[k] * mean.r[k]));
    }
    return mean;
}

std::vector<char> sir_ever_infected_coupled(const Graph& g,
                                            const SirParams& params) {
    const std::size_t n = g.num_nodes();
    if (n == 0) throw InvalidParam("sir_ever_infected_coupled: empty graph");
    params.validate(n);

    auto to_unit = [](std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    };
    auto geometric = [&](double p, double u) -> double {
        // Trial index of the first success; +inf when p = 0.
        if (p <= 0.0) return std::numeric_limits<double>::infinity();
        if (p >= 1.0) return 1.0;
        return 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
    };

    std::mt19937_64 init_rng(derive_seed(params.seed, "sir-init"));
    const std::vector<NodeId> initial = pick_initial(g, params, init_rng);
    std::vector<char> is_initial(n, 0);
    for (NodeId v : initial) is_initial[v] = 1;

    // Infectious duration per node; keyed by node id only, so a subgraph
    // sees the same values.
    std::vector<double> tau(n);
    for (NodeId v = 0; v < n; ++v) {
        const double u = to_unit(derive_seed(params.seed, "sir-dur", v));
        const double recovery_rolls = geometric(params.gamma, u);
        tau[v] = is_initial[v] ? recovery_rolls : 1.0 + recovery_rolls;
    }

    std::vector<char> ever(n, 0);
    std::vector<NodeId> queue;
    for (NodeId v : initial) {
        ever[v] = 1;
        queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId v = queue[head];
        for (NodeId w : g.neighbors(v)) {
            if (ever[w]) continue;
            const std::uint64_t key =
                static_cast<std::uint64_t>(v) * n + w;
            const double u = to_unit(derive_seed(params.seed, "sir-arc", key));
            if (geometric(params.beta, u) <= tau[v]) {
                ever[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return ever;
}

} // namespace netdis
