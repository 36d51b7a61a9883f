#pragma once

#include "netdis/graph.hpp"
#include "netdis/plan.hpp"

#include <iosfwd>
#include <vector>

namespace netdis {

struct CurvePoint {
    double x; // cumulative removed-edge fraction
    double f; // GCC node fraction (relative to the original node count)

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

// Right-continuous step function: f(t) equals the f of the last breakpoint
// with x <= t. Breakpoints start at x = 0.
struct GccCurve {
    std::vector<CurvePoint> points;

    double value_at(double x) const;
    void check() const; // throws InvalidParam if the invariants fail
};

struct CurveEnsemble {
    GccCurve mean;
    std::vector<double> stddev; // per breakpoint of mean
    std::size_t runs = 0;
};

// Applies batches in order on a working copy, recording one breakpoint per
// non-empty batch; stops once the GCC fraction drops below threshold.
// The union-find fast path replays the removal sequence backwards in
// near-linear time; the reference executes forward with a BFS per batch.
// Both produce identical curves.
GccCurve execute_plan(const Graph& g, const RemovalPlan& plan,
                      double threshold = 0.01);
GccCurve execute_plan_reference(const Graph& g, const RemovalPlan& plan,
                                double threshold = 0.01);

// Area under the step curve over [0,1], extending the last value to x = 1.
double cfe(const GccCurve& curve);

// Relative gain over the baseline: (f_star - f_d) / f_star.
double improvement(double f_star, double f_d);

// Pointwise mean (and standard deviation) over the union of breakpoints.
CurveEnsemble average_curves(const std::vector<GccCurve>& curves);

// CSV: x,f_mean,f_std (f_std all zero when no ensemble spread is known).
void write_curve_csv(std::ostream& out, const GccCurve& mean,
                     const std::vector<double>* stddev = nullptr);

} // namespace netdis
