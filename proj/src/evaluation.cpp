#include "netdis/evaluation.hpp"

#include "netdis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

namespace netdis {

double GccCurve::value_at(double x) const {
    if (points.empty()) throw InvalidParam("GccCurve: empty curve");
    if (x < points.front().x) return points.front().f;
    // Last breakpoint with abscissa <= x.
    auto it = std::upper_bound(points.begin(), points.end(), x,
                               [](double t, const CurvePoint& p) {
                                   return t < p.x;
                               });
    return std::prev(it)->f;
}

void GccCurve::check() const {
    if (points.empty()) throw InvalidParam("GccCurve: empty curve");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CurvePoint& p = points[i];
        if (p.x < 0.0 || p.x > 1.0 + 1e-12)
            throw InvalidParam("GccCurve: x out of [0,1]");
        if (p.f < 0.0 || p.f > 1.0 + 1e-12)
            throw InvalidParam("GccCurve: f out of [0,1]");
        if (i > 0) {
            if (!(p.x > points[i - 1].x))
                throw InvalidParam("GccCurve: x not strictly increasing");
            if (p.f > points[i - 1].f + 1e-12)
                throw InvalidParam("GccCurve: f not non-increasing");
        }
    }
}

namespace {

// Union-find with union by size; tracks the current maximum component.
struct DisjointSets {
    std::vector<NodeId> parent;
    std::vector<std::uint32_t> size;
    std::uint32_t max_size = 1;

    explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), NodeId{0});
        if (n == 0) max_size = 0;
    }
    NodeId find(NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        max_size = std::max(max_size, size[a]);
    }
};

GccCurve truncate_below(GccCurve curve, double threshold) {
    // Keep breakpoints up to and including the first one below threshold.
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (curve.points[i].f < threshold) {
            curve.points.resize(i + 1);
            break;
        }
    }
    return curve;
}

} // namespace

GccCurve execute_plan(const Graph& g, const RemovalPlan& plan,
                      double threshold) {
    if (plan.total_edges != g.num_edges())
        throw PlanMismatch("plan total_edges " +
                           std::to_string(plan.total_edges) +
                           " does not match graph m " +
                           std::to_string(g.num_edges()));
    plan.validate_against(g);
    const std::size_t n = g.num_nodes();
    if (n == 0) throw InvalidParam("execute_plan: empty graph");
    const double dn = static_cast<double>(n);
    const double dm =
        plan.total_edges ? static_cast<double>(plan.total_edges) : 1.0;

    // Survivor edges = all edges minus everything the plan removes.
    std::set<Edge> removed_set;
    for (const Batch& b : plan.batches)
        removed_set.insert(b.edges.begin(), b.edges.end());

    DisjointSets dsu(n);
    for (const Edge& e : g.edges())
        if (!removed_set.count(e)) dsu.unite(e.u, e.v);

    // Replay batches backwards: before re-adding batch i we are looking at
    // the graph state right after batch i was applied.
    std::vector<std::uint32_t> gcc_after(plan.batches.size());
    for (std::size_t i = plan.batches.size(); i-- > 0;) {
        gcc_after[i] = dsu.max_size;
        for (const Edge& e : plan.batches[i].edges) dsu.unite(e.u, e.v);
    }

    GccCurve curve;
    curve.points.push_back({0.0, connected_components(g).gcc_fraction});
    std::size_t cum = 0;
    for (std::size_t i = 0; i < plan.batches.size(); ++i) {
        if (plan.batches[i].edges.empty()) continue;
        cum += plan.batches[i].edges.size();
        curve.points.push_back(
            {static_cast<double>(cum) / dm, gcc_after[i] / dn});
    }
    return truncate_below(std::move(curve), threshold);
}

GccCurve execute_plan_reference(const Graph& g, const RemovalPlan& plan,
                                double threshold) {
    if (plan.total_edges != g.num_edges())
        throw PlanMismatch("plan total_edges " +
                           std::to_string(plan.total_edges) +
                           " does not match graph m " +
                           std::to_string(g.num_edges()));
    const std::size_t n = g.num_nodes();
    if (n == 0) throw InvalidParam("execute_plan: empty graph");
    const double dn = static_cast<double>(n);
    const double dm =
        plan.total_edges ? static_cast<double>(plan.total_edges) : 1.0;

    Graph work = g;
    GccCurve curve;
    curve.points.push_back({0.0, connected_components(work).gcc_fraction});
    std::size_t cum = 0;
    for (const Batch& b : plan.batches) {
        if (b.edges.empty()) continue;
        for (const Edge& e : b.edges) {
            if (!work.has_edge(e.u, e.v))
                throw PlanMismatch("edge (" + std::to_string(e.u) + "," +
                                   std::to_string(e.v) +
                                   ") missing during execution");
            work.remove_edge_inplace(e.u, e.v);
        }
        cum += b.edges.size();
        const double f = connected_components(work).gcc_fraction;
        curve.points.push_back({static_cast<double>(cum) / dm, f});
        if (f < threshold) break;
    }
    return curve;
}

double cfe(const GccCurve& curve) {
    curve.check();
    double area = 0.0;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const double x0 = curve.points[i].x;
        const double x1 =
            i + 1 < curve.points.size() ? curve.points[i + 1].x : 1.0;
        area += (x1 - x0) * curve.points[i].f;
    }
    return area;
}

double improvement(double f_star, double f_d) {
    if (!(f_star > 0.0))
        throw ZeroBaseline("improvement: baseline CFE must be positive");
    return (f_star - f_d) / f_star;
}

CurveEnsemble average_curves(const std::vector<GccCurve>& curves) {
    if (curves.empty())
        throw InvalidParam("average_curves: need at least one curve");
    for (const GccCurve& c : curves) c.check();

    std::vector<double> xs;
    for (const GccCurve& c : curves)
        for (const CurvePoint& p : c.points) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    CurveEnsemble out;
    out.runs = curves.size();
    out.mean.points.reserve(xs.size());
    out.stddev.reserve(xs.size());
    // Walk all curves in lockstep over the merged abscissas.
    std::vector<std::size_t> pos(curves.size(), 0);
    for (double x : xs) {
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t c = 0; c < curves.size(); ++c) {
            const auto& pts = curves[c].points;
            while (pos[c] + 1 < pts.size() && pts[pos[c] + 1].x <= x)
                ++pos[c];
            const double f = pts[pos[c]].x <= x ? pts[pos[c]].f
                                                : pts.front().f;
            sum += f;
            sum2 += f * f;
        }
        const double mean = sum / static_cast<double>(curves.size());
        const double var =
            std::max(0.0, sum2 / static_cast<double>(curves.size()) -
                              mean * mean);
        out.mean.points.push_back({x, mean});
        out.stddev.push_back(std::sqrt(var));
    }
    return out;
}

void write_curve_csv(std::ostream& out, const GccCurve& mean,
                     const std::vector<double>* stddev) {
    out << "x,f_mean,f_std\n";
    for (std::size_t i = 0; i < mean.points.size(); ++i) {
        const double sd =
            stddev && i < stddev->size() ? (*stddev)[i] : 0.0;
        out << mean.points[i].x << "," << mean.points[i].f << "," << sd
            << "\n";
    }
}

} // namespace netdis
