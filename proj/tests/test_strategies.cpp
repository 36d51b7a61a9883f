#include "netdis/strategies.hpp"

#include "netdis/errors.hpp"
#include "netdis/generators.hpp"
#include "netdis/graph.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

using namespace netdis;

namespace {

// Every node-order strategy must charge each edge to exactly one batch and
// cover the whole edge set.
void check_full_coverage(const Graph& g, const RemovalPlan& plan) {
    plan.validate_against(g);
    CHECK(plan.total_edges == g.num_edges());
    CHECK(plan.removed_count() == g.num_edges());
    std::set<Edge> seen;
    for (const Batch& b : plan.batches)
        for (const Edge& e : b.edges) CHECK(seen.insert(e).second);
    CHECK(seen.size() == g.num_edges());
}

std::vector<NodeId> node_order(const RemovalPlan& plan) {
    std::vector<NodeId> order;
    for (const Batch& b : plan.batches) {
        REQUIRE(b.prov.kind == Provenance::Kind::Node);
        order.push_back(b.prov.node);
    }
    return order;
}

} // namespace

TEST_SUITE("hd and hda") {

TEST_CASE("hd sorts by initial degree with id tiebreak") {
    // Cycle a-b-c-d-e plus chord b-d: degrees b,d = 3, rest 2.
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 0);
    g.add_edge(1, 3);
    const RemovalPlan plan = hd_plan(g);
    const std::vector<NodeId> order = node_order(plan);
    CHECK(order == std::vector<NodeId>{1, 3, 0, 2, 4});
    check_full_coverage(g, plan);
}

TEST_CASE("hd on a regular graph is id order") {
    const Graph g = oracles::cycle_graph(5);
    const std::vector<NodeId> order = node_order(hd_plan(g));
    CHECK(order == std::vector<NodeId>{0, 1, 2, 3, 4});
}

TEST_CASE("hda on the path picks the middle nodes") {
    // Path 0-1-2-3: first pick is node 1 (degree 2, smallest id), taking
    // two edges; that leaves the single edge 2-3, charged to node 2.
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    const RemovalPlan plan = hda_plan(g);
    REQUIRE(plan.batches.size() == 4);
    CHECK(plan.batches[0].prov.node == 1);
    CHECK(plan.batches[0].edges.size() == 2);
    CHECK(plan.batches[1].prov.node == 2);
    CHECK(plan.batches[1].edges == std::vector<Edge>{Edge(2, 3)});
    CHECK(plan.batches[2].edges.empty());
    CHECK(plan.batches[3].edges.empty());
    check_full_coverage(g, plan);
}

TEST_CASE("hd and hda both open with the star center") {
    const Graph g = oracles::star_graph(4); // center 0, leaves 1..4
    for (const RemovalPlan& plan : {hd_plan(g), hda_plan(g)}) {
        REQUIRE(plan.batches.size() == 5);
        CHECK(plan.batches[0].prov.node == 0);
        CHECK(plan.batches[0].edges.size() == 4);
        for (std::size_t i = 1; i < 5; ++i)
            CHECK(plan.batches[i].edges.empty());
        check_full_coverage(g, plan);
    }
}

TEST_CASE("hda always removes a maximum-residual-degree node") {
    const Graph g = oracles::random_connected_graph(120, 0.06, 5);
    const RemovalPlan plan = hda_plan(g);
    check_full_coverage(g, plan);

    // Replay against an independent residual-degree oracle.
    Graph work = g;
    std::vector<char> gone(g.num_nodes(), 0);
    for (const Batch& b : plan.batches) {
        const NodeId v = b.prov.node;
        std::size_t best = 0;
        NodeId best_node = 0;
        bool found = false;
        for (NodeId u = 0; u < g.num_nodes(); ++u) {
            if (gone[u]) continue;
            if (!found || work.degree(u) > best) {
                best = work.degree(u);
                best_node = u;
                found = true;
            }
        }
        REQUIRE(found);
        CHECK(work.degree(v) == best);
        CHECK(v == best_node); // smallest id wins the tie
        CHECK(work.degree(v) == b.edges.size());
        work = remove_node(work, v);
        gone[v] = 1;
    }
}

} // TEST_SUITE

TEST_SUITE("collective influence") {

TEST_CASE("ci values on the path at radius 1") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    const std::vector<std::int64_t> ci = ci_values(g, 1);
    CHECK(ci == std::vector<std::int64_t>{0, 1, 1, 0});
    const RemovalPlan plan = ci_plan(g, 1);
    CHECK(plan.batches[0].prov.node == 1); // ties go to the first maximum
    check_full_coverage(g, plan);
}

TEST_CASE("ci of a star is zero everywhere, so hda takes over") {
    // Leaves have degree 1 (factor k-1 = 0) and the center's frontier
    // consists of degree-1 leaves, so every CI value vanishes.
    const Graph g = oracles::star_graph(5);
    const std::vector<std::int64_t> ci = ci_values(g, 1);
    CHECK(std::all_of(ci.begin(), ci.end(),
                      [](std::int64_t x) { return x == 0; }));
    const RemovalPlan plan = ci_plan(g, 1);
    CHECK(plan.batches[0].prov.node == 0);
    CHECK(plan.batches[0].edges.size() == 5);
    check_full_coverage(g, plan);
}

TEST_CASE("ci at radius 2 matches a direct ball sum") {
    const Graph g = oracles::random_connected_graph(60, 0.08, 9);
    const std::vector<std::int64_t> ci = ci_values(g, 2);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        // BFS to exact distance 2.
        std::vector<int> dist(g.num_nodes(), -1);
        std::vector<NodeId> queue{v};
        dist[v] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            const NodeId x = queue[h];
            if (dist[x] == 2) continue;
            for (NodeId y : g.neighbors(x))
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
        }
        std::int64_t frontier = 0;
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            if (dist[u] == 2)
                frontier += static_cast<std::int64_t>(g.degree(u)) - 1;
        const std::int64_t expect =
            g.degree(v) <= 1
                ? 0
                : (static_cast<std::int64_t>(g.degree(v)) - 1) * frontier;
        CHECK(ci[v] == expect);
    }
}

TEST_CASE("ci rejects radius zero") {
    const Graph g = oracles::path_graph(3);
    CHECK_THROWS_AS(ci_plan(g, 0), InvalidParam);
    CHECK_THROWS_AS(ci_values(g, 0), InvalidParam);
}

} // TEST_SUITE

TEST_SUITE("corehd") {

TEST_CASE("corehd attacks the 2-core before the leftovers") {
    // Triangle 0-1-2 with a pendant 3 hanging off node 0. The 2-core is
    // the triangle; node 0 has the highest residual degree inside it.
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(0, 3);
    const RemovalPlan plan = corehd_plan(g);
    CHECK(plan.batches[0].prov.node == 0);
    CHECK(plan.batches[0].edges.size() == 3);
    check_full_coverage(g, plan);
}

TEST_CASE("corehd on a tree degenerates to hda") {
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    g.add_edge(5, 6);
    const RemovalPlan core = corehd_plan(g);
    const RemovalPlan hda = hda_plan(g);
    REQUIRE(core.batches.size() == hda.batches.size());
    for (std::size_t i = 0; i < core.batches.size(); ++i) {
        CHECK(core.batches[i].prov == hda.batches[i].prov);
        CHECK(core.batches[i].edges == hda.batches[i].edges);
    }
}

TEST_CASE("corehd picks stay inside the residual 2-core") {
    // While the residual graph still has a 2-core, every pick must come
    // from it; only once the core is gone may leftover nodes be taken.
    const Graph g = oracles::random_connected_graph(80, 0.08, 13);
    const RemovalPlan plan = corehd_plan(g);
    check_full_coverage(g, plan);
    Graph work = g;
    for (const Batch& b : plan.batches) {
        const std::vector<NodeId> core = two_core(work);
        if (!core.empty())
            CHECK(std::binary_search(core.begin(), core.end(), b.prov.node));
        work = remove_node(work, b.prov.node);
    }
    CHECK(two_core(work).empty());
}

} // TEST_SUITE

TEST_SUITE("edge betweenness") {

TEST_CASE("path betweenness by hand") {
    const Graph g = oracles::path_graph(3);
    const std::vector<double> betw = edge_betweenness(g);
    REQUIRE(betw.size() == 2);
    CHECK(betw[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(betw[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("p4 betweenness by hand") {
    // Edges (0,1),(1,2),(2,3); pair counts 3, 4, 3.
    const Graph g = oracles::path_graph(4);
    const std::vector<double> betw = edge_betweenness(g);
    REQUIRE(betw.size() == 3);
    CHECK(betw[0] == doctest::Approx(3.0));
    CHECK(betw[1] == doctest::Approx(4.0));
    CHECK(betw[2] == doctest::Approx(3.0));
}

TEST_CASE("square splits shortest paths") {
    // Cycle 0-1-2-3: opposite corners have two shortest paths, each edge
    // carrying 1/2 from each of the two crossing pairs plus 1 adjacent pair.
    const Graph g = oracles::cycle_graph(4);
    for (double b : edge_betweenness(g)) CHECK(b == doctest::Approx(2.0));
}

TEST_CASE("sum over edges matches total pair distance") {
    // Summing edge betweenness over all edges counts each unordered pair
    // once per edge on its shortest paths, weighted by path fraction, so
    // the total equals the sum of pairwise distances.
    const Graph g = oracles::random_connected_graph(40, 0.15, 3);
    const std::vector<double> betw = edge_betweenness(g);
    double total = 0.0;
    for (double b : betw) total += b;

    double dist_sum = 0.0;
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
        std::vector<int> dist(g.num_nodes(), -1);
        std::vector<NodeId> queue{s};
        dist[s] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (NodeId y : g.neighbors(queue[h]))
                if (dist[y] < 0) {
                    dist[y] = dist[queue[h]] + 1;
                    queue.push_back(y);
                }
        for (NodeId t = s + 1; t < g.num_nodes(); ++t) dist_sum += dist[t];
    }
    CHECK(total == doctest::Approx(dist_sum).epsilon(1e-9));
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    const Graph g = gen_er(400, 8.0, 77);
    const std::vector<double> par = edge_betweenness(g);
    const std::vector<double> ser = edge_betweenness_serial(g);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k)
        CHECK(par[k] ==
              doctest::Approx(ser[k]).epsilon(1e-10).scale(1.0 + ser[k]));
    // And the chunked kernel itself is reproducible call to call.
    CHECK(edge_betweenness(g) == par);
}

TEST_CASE("betweenness plan removes the barbell bridge first") {
    const Graph g = oracles::barbell_graph();
    const RemovalPlan plan = edge_betweenness_plan(g);
    REQUIRE(!plan.batches.empty());
    CHECK(plan.batches[0].edges == std::vector<Edge>{Edge(2, 3)});
    check_full_coverage(g, plan);
}

TEST_CASE("complete-graph ties fall back to lexicographic order") {
    const Graph g = oracles::complete_graph(5);
    const RemovalPlan plan = edge_betweenness_plan(g);
    CHECK(plan.batches[0].edges == std::vector<Edge>{Edge(0, 1)});
    CHECK(plan.batches[1].edges == std::vector<Edge>{Edge(0, 2)});
}

TEST_CASE("adaptive recomputation still covers every edge") {
    // Static ranking scores everything up front, the interval variant
    // rescores the residual graph after each cut; both are full plans.
    const Graph g = oracles::random_connected_graph(30, 0.12, 21);
    const RemovalPlan fixed = edge_betweenness_plan(g);
    const RemovalPlan adaptive = edge_betweenness_plan(g, 1);
    check_full_coverage(g, fixed);
    check_full_coverage(g, adaptive);
    CHECK(fixed.batches.size() == adaptive.batches.size());
    CHECK_THROWS_AS(edge_betweenness_plan(g, 0), InvalidParam);
}

} // TEST_SUITE

TEST_SUITE("random baselines") {

TEST_CASE("site plan has one batch per node") {
    const Graph g = oracles::random_connected_graph(50, 0.1, 8);
    const RemovalPlan plan = site_percolation_plan(g, 123);
    CHECK(plan.batches.size() == g.num_nodes());
    check_full_coverage(g, plan);

    // The drawn order visits every node exactly once.
    std::set<NodeId> visited;
    for (const Batch& b : plan.batches)
        CHECK(visited.insert(b.prov.node).second);
    CHECK(visited.size() == g.num_nodes());
}

TEST_CASE("bond plan is one edge per batch") {
    const Graph g = oracles::random_connected_graph(30, 0.15, 4);
    const RemovalPlan plan = bond_percolation_plan(g, 5);
    CHECK(plan.batches.size() == g.num_edges());
    for (const Batch& b : plan.batches) {
        CHECK(b.edges.size() == 1);
        CHECK(b.prov.kind == Provenance::Kind::Random);
    }
    check_full_coverage(g, plan);
}

TEST_CASE("seeds reproduce and distinguish") {
    const Graph g = oracles::random_connected_graph(40, 0.12, 17);
    const RemovalPlan a = site_percolation_plan(g, 9);
    const RemovalPlan b = site_percolation_plan(g, 9);
    REQUIRE(a.batches.size() == b.batches.size());
    for (std::size_t i = 0; i < a.batches.size(); ++i) {
        CHECK(a.batches[i].prov == b.batches[i].prov);
        CHECK(a.batches[i].edges == b.batches[i].edges);
    }

    const RemovalPlan c = bond_percolation_plan(g, 1);
    const RemovalPlan d = bond_percolation_plan(g, 2);
    bool same = true;
    for (std::size_t i = 0; same && i < c.batches.size(); ++i)
        same = c.batches[i].edges == d.batches[i].edges;
    CHECK(!same);
}

} // TEST_SUITE

TEST_SUITE("plan bookkeeping") {

TEST_CASE("every strategy covers every edge exactly once") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const Graph g = oracles::random_connected_graph(
            40 + 7 * static_cast<std::size_t>(seed), 0.12, seed);
        check_full_coverage(g, site_percolation_plan(g, seed));
        check_full_coverage(g, bond_percolation_plan(g, seed));
        check_full_coverage(g, hd_plan(g));
        check_full_coverage(g, hda_plan(g));
        check_full_coverage(g, ci_plan(g, 2));
        check_full_coverage(g, corehd_plan(g));
        check_full_coverage(g, edge_betweenness_plan(g));
    }
}

TEST_CASE("plan csv round-trips") {
    const Graph g = oracles::barbell_graph();
    const RemovalPlan plan = hda_plan(g);
    std::ostringstream out;
    write_plan_csv(out, plan);
    std::istringstream in(out.str());
    const RemovalPlan back = read_plan_csv(in);
    CHECK(back.total_edges == plan.total_edges);
    REQUIRE(back.batches.size() == plan.batches.size());
    for (std::size_t i = 0; i < plan.batches.size(); ++i) {
        CHECK(back.batches[i].prov == plan.batches[i].prov);
        CHECK(back.batches[i].edges == plan.batches[i].edges);
    }
}

} // TEST_SUITE
