#include "netdis/plan.hpp"

#include "netdis/errors.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace netdis {

std::string Provenance::tag() const {
    switch (kind) {
    case Kind::Node: return std::to_string(node);
    case Kind::Edge: return "edge";
    case Kind::Random: return "random";
    }
    return "?";
}

std::size_t RemovalPlan::removed_count() const {
    std::size_t c = 0;
    for (const Batch& b : batches) c += b.edges.size();
    return c;
}

void RemovalPlan::validate_against(const Graph& g) const {
    std::set<Edge> seen;
    for (std::size_t i = 0; i < batches.size(); ++i) {
        for (const Edge& e : batches[i].edges) {
            if (e.u >= g.num_nodes() || e.v >= g.num_nodes() ||
                !g.has_edge(e.u, e.v))
                throw PlanMismatch("batch " + std::to_string(i) + ": edge (" +
                                   std::to_string(e.u) + "," +
                                   std::to_string(e.v) +
                                   ") not in source graph");
            if (!seen.insert(e).second)
                throw PlanMismatch("batch " + std::to_string(i) + ": edge (" +
                                   std::to_string(e.u) + "," +
                                   std::to_string(e.v) +
                                   ") charged twice");
        }
    }
}

void write_plan_csv(std::ostream& out, const RemovalPlan& plan) {
    out << "# total_edges=" << plan.total_edges << "\n";
    out << "batch_index,provenance,edge_u,edge_v\n";
    for (std::size_t i = 0; i < plan.batches.size(); ++i) {
        const Batch& b = plan.batches[i];
        if (b.edges.empty()) {
            // Keep empty batches visible so indices survive a round trip.
            out << i << "," << b.prov.tag() << ",,\n";
            continue;
        }
        for (const Edge& e : b.edges)
            out << i << "," << b.prov.tag() << "," << e.u << "," << e.v << "\n";
    }
}

RemovalPlan read_plan_csv(std::istream& in) {
    RemovalPlan plan;
    std::string line;
    std::size_t lineno = 0;
    bool have_total = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#' || line[0] == '%') {
            auto pos = line.find("total_edges=");
            if (pos != std::string::npos) {
                plan.total_edges = std::stoull(line.substr(pos + 12));
                have_total = true;
            }
            continue;
        }
        if (line.rfind("batch_index", 0) == 0) continue; // header
        std::istringstream ss(line);
        std::string idx_s, prov_s, u_s, v_s;
        if (!std::getline(ss, idx_s, ',') || !std::getline(ss, prov_s, ',') ||
            !std::getline(ss, u_s, ','))
            throw ParseError("malformed plan row", lineno);
        std::getline(ss, v_s, ',');
        std::size_t idx;
        try {
            idx = std::stoull(idx_s);
        } catch (const std::exception&) {
            throw ParseError("bad batch index '" + idx_s + "'", lineno);
        }
        if (idx >= plan.batches.size()) {
            if (idx != plan.batches.size())
                throw ParseError("batch indices must be contiguous", lineno);
            Batch b;
            if (prov_s == "edge") b.prov = Provenance::for_edge();
            else if (prov_s == "random") b.prov = Provenance::for_random();
            else {
                try {
                    b.prov = Provenance::for_node(
                        static_cast<NodeId>(std::stoul(prov_s)));
                } catch (const std::exception&) {
                    throw ParseError("bad provenance '" + prov_s + "'", lineno);
                }
            }
            plan.batches.push_back(std::move(b));
        }
        if (u_s.empty()) continue; // placeholder row for an empty batch
        try {
            plan.batches[idx].edges.emplace_back(
                static_cast<NodeId>(std::stoul(u_s)),
                static_cast<NodeId>(std::stoul(v_s)));
        } catch (const std::exception&) {
            throw ParseError("bad edge endpoints", lineno);
        }
    }
    if (!have_total) plan.total_edges = plan.removed_count();
    return plan;
}

} // namespace netdis
