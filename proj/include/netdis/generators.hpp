#pragma once

#include "netdis/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace netdis {

enum class GenKind { ER, WS, SF, SBM };

// Declarative description of a synthetic network; serialized into run
// configs and reports so every experiment is reproducible from these
// parameters alone.
struct GenSpec {
    GenKind kind = GenKind::ER;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    // ER
    double mean_degree = 0.0;

    // WS (ring lattice + rewiring)
    std::size_t ws_k = 0;      // even; k/2 neighbors on each side
    double ws_rewire = 0.0;

    // SF (configuration model)
    double gamma = 0.0;        // also uses mean_degree as the target mean

    // SBM
    std::vector<std::size_t> block_sizes; // sums to n
    double p_in = 0.0;
    double p_out = 0.0;

    void validate() const; // throws InvalidParam
};

// Diagnostics from the scale-free degree-sequence construction.
struct SfStats {
    std::size_t k_min = 1;        // smallest degree with nonzero mass
    std::size_t k_max = 0;        // floor(sqrt(n))
    double alpha = 1.0;           // mass multiplier applied at k_min
    double target_mean = 0.0;
    double sequence_mean = 0.0;   // realized mean of the sampled sequence
    std::size_t resamples = 0;
    std::size_t dropped_self_loops = 0;
    std::size_t dropped_multi_edges = 0;
    bool odd_stub_dropped = false;
};

// G(n,p) with p = mean_degree/(n-1), sampled by geometric skipping so the
// cost is proportional to the number of edges, not n^2.
Graph gen_er(std::size_t n, double mean_degree, std::uint64_t seed);

// Ring lattice where every node links to its k/2 nearest neighbors on each
// side, then each lattice edge is rewired to a uniform random endpoint with
// probability rewire_p. Edge count is exactly n*k/2.
Graph gen_ws(std::size_t n, std::size_t k, double rewire_p, std::uint64_t seed);

// Configuration model with P(k) proportional to k^(-gamma) on
// [k_min, floor(sqrt(n))]. The probability mass at the smallest degree is
// scaled (and the smallest degree raised when scaling alone cannot get
// there) so the distribution mean equals mean_degree; the sampled sequence
// is accepted once its mean is within 5% of target, resampling at most 200
// times. Stub pairs forming self-loops or duplicate edges are discarded.
Graph gen_sf(std::size_t n, double gamma, double mean_degree,
             std::uint64_t seed, SfStats* stats = nullptr);

// Stochastic block model: independent coin flips with probability p_in
// inside a block and p_out across blocks.
Graph gen_sbm(const GenSpec& spec);

// Convenience: equal blocks (remainder spread over the first few), with
// p_in = ratio * p_out solved so the expected mean degree hits the target.
GenSpec sbm_spec(std::size_t n, std::size_t blocks, double mean_degree,
                 double ratio, std::uint64_t seed);

// Dispatch on spec.kind.
Graph generate(const GenSpec& spec);

} // namespace netdis
