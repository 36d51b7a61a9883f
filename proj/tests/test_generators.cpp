#include "netdis/generators.hpp"

#include "netdis/errors.hpp"
#include "netdis/io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

using namespace netdis;

namespace {

double mean_degree_of(const Graph& g) {
    return 2.0 * static_cast<double>(g.num_edges()) /
           static_cast<double>(g.num_nodes());
}

bool same_edges(const Graph& a, const Graph& b) {
    return a.num_nodes() == b.num_nodes() && a.edges() == b.edges();
}

// Weighted least-squares slope of log(count) vs log(k) over degree bins
// with at least five observations, restricted to [k_lo, k_hi].
double histogram_slope(const Graph& g, std::size_t k_lo, std::size_t k_hi) {
    std::map<std::size_t, std::size_t> hist;
    for (NodeId v = 0; v < g.num_nodes(); ++v) ++hist[g.degree(v)];
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [k, count] : hist) {
        if (k < k_lo || k > k_hi || count < 5) continue;
        const double w = static_cast<double>(count);
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(static_cast<double>(count));
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    REQUIRE(sw > 0);
    return (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
}

} // namespace

TEST_CASE("er: mean degree lands on target across seeds") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const Graph g = gen_er(2500, 10.0, seed);
        g.check_invariants();
        CHECK(mean_degree_of(g) == doctest::Approx(10.0).epsilon(0.03));
    }
}

TEST_CASE("er: p = 1 gives the complete graph") {
    const Graph g = gen_er(10, 9.0, 4);
    CHECK(g.num_edges() == 45);
}

TEST_CASE("er: boundary parameters rejected") {
    CHECK_THROWS_AS(gen_er(100, 0.0, 1), InvalidParam);
    CHECK_THROWS_AS(gen_er(100, 100.0, 1), InvalidParam); // > n-1
    CHECK_THROWS_AS(gen_er(0, 1.0, 1), InvalidParam);
}

TEST_CASE("er: deterministic in the seed") {
    CHECK(same_edges(gen_er(300, 4.0, 9), gen_er(300, 4.0, 9)));
    CHECK(!same_edges(gen_er(300, 4.0, 9), gen_er(300, 4.0, 10)));
}

TEST_CASE("ws: exact edge count and determinism") {
    const Graph g = gen_ws(2500, 10, 0.01, 3);
    g.check_invariants();
    CHECK(g.num_edges() == 12500);
    CHECK(same_edges(g, gen_ws(2500, 10, 0.01, 3)));

    SUBCASE("rewire = 0 is the pure ring lattice") {
        const Graph ring = gen_ws(20, 4, 0.0, 1);
        CHECK(ring.num_edges() == 40);
        for (NodeId v = 0; v < 20; ++v) {
            CHECK(ring.degree(v) == 4);
            CHECK(ring.has_edge(v, (v + 1) % 20));
            CHECK(ring.has_edge(v, (v + 2) % 20));
        }
    }
    SUBCASE("bad parameters rejected") {
        CHECK_THROWS_AS(gen_ws(10, 3, 0.0, 1), InvalidParam);  // odd k
        CHECK_THROWS_AS(gen_ws(10, 10, 0.0, 1), InvalidParam); // k >= n
        CHECK_THROWS_AS(gen_ws(10, 4, 1.5, 1), InvalidParam);
    }
}

TEST_CASE("sf: gcc mean degree matches the gamma = 2.5 target") {
    SfStats stats;
    const Graph g = gen_sf(10000, 2.5, 4.68, 1, &stats);
    g.check_invariants();
    CHECK(stats.k_max == 100);
    CHECK(std::abs(stats.sequence_mean - 4.68) / 4.68 <= 0.05);
    const Graph gcc = extract_gcc(g);
    CHECK(mean_degree_of(gcc) == doctest::Approx(4.68).epsilon(0.5 / 4.68));
}

TEST_CASE("sf: gcc mean degree matches the gamma = 3.5 target") {
    SfStats stats;
    const Graph g = gen_sf(10000, 3.5, 2.35, 1, &stats);
    const Graph gcc = extract_gcc(g);
    CHECK(gcc.num_nodes() < g.num_nodes());
    CHECK(std::abs(mean_degree_of(gcc) - 2.35) <= 0.4);
}

TEST_CASE("sf: log-log degree histogram slope is near -gamma") {
    // The smallest degree carries rescaled probability mass (that is how
    // the target mean is hit), so the fit starts one degree above it
    // whenever the rescaling is active.
    for (double gamma : {2.5, 3.5}) {
        const double mean = gamma < 3.0 ? 4.68 : 2.35;
        SfStats stats;
        const Graph g = gen_sf(10000, gamma, mean, 5, &stats);
        const std::size_t k_lo =
            stats.alpha < 1.0 ? stats.k_min + 1 : stats.k_min;
        const double slope = histogram_slope(g, k_lo, stats.k_max / 4);
        CHECK(std::abs(slope - (-gamma)) <= 0.4);
    }
}

TEST_CASE("sf: deterministic in the seed") {
    CHECK(same_edges(gen_sf(2000, 2.5, 4.0, 3), gen_sf(2000, 2.5, 4.0, 3)));
}

TEST_CASE("sbm: ten equal blocks hit the target mean degree") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const GenSpec spec = sbm_spec(4232, 10, 2.60, 30.0, seed);
        const Graph g = gen_sbm(spec);
        g.check_invariants();
        CHECK(std::abs(mean_degree_of(g) - 2.60) <= 0.3);
    }
}

TEST_CASE("sbm: p_out = 0 keeps components inside blocks") {
    GenSpec spec;
    spec.kind = GenKind::SBM;
    spec.n = 300;
    spec.block_sizes = {100, 100, 100};
    spec.p_in = 0.08;
    spec.p_out = 0.0;
    spec.seed = 2;
    const Graph g = gen_sbm(spec);
    CHECK(g.num_edges() > 0);
    for (const Edge& e : g.edges()) CHECK(e.u / 100 == e.v / 100);
}

TEST_CASE("sbm: two-block instance matches its edge budget") {
    // 2078 nodes, target 3729 edges (mean degree 2 * 3729 / 2078).
    const double target_mean = 2.0 * 3729.0 / 2078.0;
    const GenSpec spec = sbm_spec(2078, 2, target_mean, 30.0, 7);
    const Graph g = gen_sbm(spec);
    CHECK(std::abs(static_cast<double>(g.num_edges()) - 3729.0) / 3729.0 <=
          0.05);
}

TEST_CASE("sbm: infeasible ratio rejected") {
    // Tiny blocks with an extreme ratio would need p_in > 1.
    CHECK_THROWS_AS(sbm_spec(40, 20, 10.0, 1000.0, 1), InvalidParam);
}

TEST_CASE("sbm with p_in = p_out is indistinguishable from er") {
    // Two-sample chi-square on degree histograms, alpha = 0.01. With 20
    // independent seeds, about 0.2 false rejections are expected; allow 2.
    const std::size_t n = 600;
    const double p = 0.02;
    int rejections = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GenSpec spec;
        spec.kind = GenKind::SBM;
        spec.n = n;
        spec.block_sizes = {n / 3, n / 3, n / 3};
        spec.p_in = p;
        spec.p_out = p;
        spec.seed = seed;
        const Graph a = gen_sbm(spec);
        const Graph b = gen_er(n, p * static_cast<double>(n - 1), seed + 500);

        std::map<std::size_t, std::pair<double, double>> hist;
        for (NodeId v = 0; v < n; ++v) {
            hist[a.degree(v)].first += 1.0;
            hist[b.degree(v)].second += 1.0;
        }
        // Pool sparse tails so each cell has a reasonable total.
        std::vector<std::pair<double, double>> cells;
        double ca = 0, cb = 0;
        for (auto [k, counts] : hist) {
            ca += counts.first;
            cb += counts.second;
            if (ca + cb >= 10.0) {
                cells.emplace_back(ca, cb);
                ca = cb = 0;
            }
        }
        if (ca + cb > 0) {
            if (cells.empty()) cells.emplace_back(0, 0);
            cells.back().first += ca;
            cells.back().second += cb;
        }
        double stat = 0.0;
        for (auto [xa, xb] : cells)
            if (xa + xb > 0) stat += (xa - xb) * (xa - xb) / (xa + xb);
        const double dof = static_cast<double>(cells.size()) - 1.0;
        // Wilson-Hilferty approximation of the chi-square 99th percentile.
        const double z = 2.3263478740408408;
        const double h = 2.0 / (9.0 * dof);
        const double crit = dof * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
        if (stat > crit) ++rejections;
    }
    CHECK(rejections <= 2);
}

TEST_CASE("generate dispatches on kind") {
    GenSpec spec;
    spec.kind = GenKind::WS;
    spec.n = 100;
    spec.ws_k = 4;
    spec.ws_rewire = 0.05;
    spec.seed = 8;
    CHECK(generate(spec).num_edges() == 200);
}
