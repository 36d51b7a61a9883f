#pragma once

// Independent reference computations for the test suite: dense linear
// algebra via Eigen and exhaustive enumeration. They only scale to small
// graphs, which is the point — slow but obviously correct, with no code
// shared with the library paths they check.

#include "netdis/graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

using netdis::Graph;
using netdis::NodeId;

// Dense normalized Laplacian D^{-1/2} (D - W) D^{-1/2}. Requires min
// degree >= 1.
inline Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    const std::size_t n = g.num_nodes();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (NodeId v = 0; v < n; ++v) {
        lap(v, v) = 1.0;
        const double dv = static_cast<double>(g.degree(v));
        for (NodeId w : g.neighbors(v))
            lap(v, w) = -1.0 / std::sqrt(dv * static_cast<double>(g.degree(w)));
    }
    return lap;
}

// All eigenvalues, ascending.
inline std::vector<double> laplacian_spectrum(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        normalized_laplacian(g), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

inline double lambda2(const Graph& g) { return laplacian_spectrum(g)[1]; }

// The smallest eigenvalue strictly above lambda2; controls power-iteration
// convergence. Falls back to lambda2 itself when the upper spectrum is
// fully degenerate (e.g. complete graphs).
inline double lambda3_distinct(const Graph& g, double tol = 1e-9) {
    const std::vector<double> spectrum = laplacian_spectrum(g);
    const double l2 = spectrum[1];
    for (std::size_t i = 2; i < spectrum.size(); ++i)
        if (spectrum[i] > l2 + tol) return spectrum[i];
    return l2;
}

// Ncut of the bipartition encoded by a membership mask (bit v = 1 puts
// node v in A). Returns +inf for empty sides or zero-volume sides.
inline double ncut_of_mask(const Graph& g, std::uint64_t mask) {
    double cut = 0.0, vol_a = 0.0, vol_b = 0.0;
    const std::size_t n = g.num_nodes();
    for (NodeId v = 0; v < n; ++v) {
        const bool in_a = (mask >> v) & 1;
        (in_a ? vol_a : vol_b) += static_cast<double>(g.degree(v));
        for (NodeId w : g.neighbors(v))
            if (v < w && in_a != ((mask >> w) & 1)) cut += 1.0;
    }
    if (vol_a == 0.0 || vol_b == 0.0)
        return std::numeric_limits<double>::infinity();
    return cut * (1.0 / vol_a + 1.0 / vol_b);
}

struct BruteNcut {
    double value;
    std::uint64_t mask; // side A of the best bipartition
};

// Exhaustive minimum over all proper bipartitions; n <= 20 or so. Node 0
// is fixed to side B, halving the search space.
inline BruteNcut min_ncut_bruteforce(const Graph& g) {
    const std::size_t n = g.num_nodes();
    BruteNcut best{std::numeric_limits<double>::infinity(), 0};
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        const std::uint64_t shifted = mask << 1; // node 0 stays in B
        const double val = ncut_of_mask(g, shifted);
        if (val < best.value) {
            best.value = val;
            best.mask = shifted;
        }
    }
    return best;
}

// --- small graph builders ---------------------------------------------------

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    Graph g = path_graph(n);
    g.add_edge(0, static_cast<NodeId>(n - 1));
    return g;
}

inline Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId w = v + 1; w < n; ++w) g.add_edge(v, w);
    return g;
}

inline Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph barbell_graph() {
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    g.add_edge(4, 5);
    g.add_edge(2, 3);
    return g;
}

// Connected G(n,p) by rejection; deterministic in (n, p, seed).
inline Graph random_connected_graph(std::size_t n, double p,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Graph g(n);
        for (NodeId v = 0; v < n; ++v)
            for (NodeId w = v + 1; w < n; ++w)
                if (unit(rng) < p) g.add_edge(v, w);
        if (netdis::connected_components(g).sizes.size() == 1) return g;
    }
    throw std::runtime_error("random_connected_graph: rejection failed");
}

} // namespace oracles
