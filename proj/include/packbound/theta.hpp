#pragma once

#include <string>

#include "packbound/geometry.hpp"
#include "packbound/graph.hpp"
#include "packbound/sdp.hpp"

namespace pb {

enum class ThetaVariant { ThetaPlus, Theta, ThetaPrime };

const char* to_string(ThetaVariant v);

struct ThetaSolve {
    double value = 0.0;
    Mat matrix; // primal M or dual kernel K, order n
    SdpStatus status = SdpStatus::NumericalFailure;
    double gap = 0.0;
};

// Trace-1 PSD relaxations over the edge structure of g: maximize sum of
// entries with the variant's edge/sign constraints. Entry-sign constraints
// for theta' are generated lazily on large graphs.
ThetaSolve theta_primal_solve(const Graph& g, ThetaVariant v);
double theta_primal(const Graph& g, ThetaVariant v);

// Kernel route: minimize t over PSD K with constant diagonal t-1 and the
// variant's conditions on non-edges (and edges for theta+).
ThetaSolve theta_dual_solve(const Graph& g, ThetaVariant v);
double theta_dual(const Graph& g, ThetaVariant v);

// Bound on a point configuration through its conflict structure; values are
// cached by conflict-graph hash since they depend only on the graph.
double theta_bound_on_points(const PointConfiguration& c, ThetaVariant v);

// Dual-feasible kernel for the disjoint union built from dual-feasible
// kernels of the parts. Diagonal of the result is t_G + t_H - 1.
Mat join_additivity_witness(const Graph& g, const Mat& gk, const Graph& h, const Mat& hk,
                            ThetaVariant v);

// Checks dual feasibility of a kernel for (g, v) within `tol`; returns the
// diagonal value t, throws InfeasibleInput on violation.
double check_dual_feasible(const Graph& g, const Mat& k, ThetaVariant v, double tol = 1e-8);

struct ThetaReport {
    ThetaVariant variant;
    int n = 0;
    double value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    SdpStatus status = SdpStatus::NumericalFailure;
    double wall_ms = 0.0;
};

ThetaReport theta_report(const Graph& g, ThetaVariant v);
std::string theta_report_json(const ThetaReport& r);

} // namespace pb
