#pragma once

#include "netdis/graph.hpp"

#include <cstdint>
#include <vector>

namespace netdis {

struct SirParams {
    double beta = 0.10;  // per-contact, per-step infection probability
    double gamma = 0.02; // per-step recovery probability
    std::size_t initial_infected = 1;    // drawn uniformly per run
    std::vector<NodeId> initial_nodes;   // overrides the random draw if set
    std::size_t max_steps = 1000000;
    std::uint64_t seed = 0;

    void validate(std::size_t n) const; // throws InvalidParam
    double r0() const { return gamma > 0.0 ? beta / gamma : 0.0; }
};

// Counts per step, index 0 = initial state.
struct SirTrace {
    std::vector<std::size_t> s, i, r;
    std::size_t steps() const { return s.size(); }
};

struct SirMeanTrace {
    std::vector<double> s, i, r;
    std::vector<double> i_std, r_std;
    std::size_t runs = 0;

    double final_attack() const { return r.empty() ? 0.0 : r.back(); }
    std::size_t peak_time() const; // first argmax of mean infected
};

// Synchronous dynamics: every infected node tries each susceptible
// neighbor with probability beta; infections take effect next step, and a
// node rolls for recovery only from the step after it became infectious
// (the initially infected are already past that point). Runs until no
// infected remain or max_steps.
SirTrace sir_run(const Graph& g, const SirParams& params);

// Mean trace over runs with per-run derived seeds; shorter runs are padded
// with their final state so the averages stay well-defined.
SirMeanTrace sir_ensemble(const Graph& g, const SirParams& params,
                          std::size_t runs = 100);

// Percolation view of the same process with randomness keyed to node and
// arc identities: node v stays infectious for tau_v steps and the arc
// v->w fires if its geometric delay is at most tau_v. Returns the
// ever-infected indicator. Because the key is (v,w), removing edges can
// only shrink the result — the comparison oracle for immunization tests.
std::vector<char> sir_ever_infected_coupled(const Graph& g,
                                            const SirParams& params);

} // namespace netdis
