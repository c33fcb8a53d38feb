#pragma once

#include <map>
#include <string>
#include <vector>

#include "packbound/geometry.hpp"
#include "packbound/graph.hpp"
#include "packbound/sdp.hpp"

namespace pb {

// All independent sets of size at most t, canonically ordered by
// (size, lexicographic); the empty set sits at index 0.
struct IndependentSetFamily {
    int t = 0;
    std::vector<std::vector<int>> sets;
    std::map<std::vector<int>, int> index;

    int size() const { return int(sets.size()); }
    int find(const std::vector<int>& s) const; // -1 when absent
};

IndependentSetFamily enumerate_independent_sets(const Graph& g, int t);

struct MomentVector {
    IndependentSetFamily family; // level 2t
    std::vector<double> values;  // values[0] = value at the empty set = 1
};

// A_t K (S) = sum over ordered pairs (J,J') in I_t x I_t with J u J' = S.
std::vector<double> at_operator(const IndependentSetFamily& fam_t, const IndependentSetFamily& fam_2t,
                                const Mat& k);

// adjoint: matrix on I_t with entry (J,J') = mv[J u J'] when the union is an
// independent set of size <= 2t, else 0
Mat at_adjoint_matrix(const Graph& g, const IndependentSetFamily& fam_t,
                      const IndependentSetFamily& fam_2t, const std::vector<double>& mv);
Mat at_adjoint_matrix_serial(const Graph& g, const IndependentSetFamily& fam_t,
                             const IndependentSetFamily& fam_2t, const std::vector<double>& mv);
// moment-vector form; level t is family.t / 2
Mat at_adjoint_matrix(const Graph& g, const MomentVector& mv);

struct LasSolve {
    double value = 0.0;
    SdpStatus status = SdpStatus::NumericalFailure;
    double gap = 0.0;
};

// Level-t moment relaxations of the independence number over the conflict
// structure of g. las_prime keeps the moment vector nonnegative; las_plain
// drops that; las_prime_schur solves the same program assembled through the
// empty-set-bordered lifting; las_prime_dual runs the kernel program.
LasSolve las_prime(const Graph& g, int t);
LasSolve las_plain(const Graph& g, int t);
LasSolve las_prime_schur(const Graph& g, int t);
LasSolve las_prime_dual(const Graph& g, int t);

double las_on_points(const PointConfiguration& c, int t);

struct LasReport {
    std::uint64_t graph_hash = 0;
    int t = 0;
    double las_prime_value = 0.0;
    double las_plain_value = 0.0;
    double dual_value = 0.0;
    std::vector<int> family_sizes; // |I_0| .. |I_2t|
    SdpStatus status = SdpStatus::NumericalFailure;
};

LasReport las_report(const Graph& g, int t);
std::string las_report_json(const LasReport& r);

// --- periodic packings -------------------------------------------------------

struct PeriodicPacking {
    int dim = 1;                       // 1 or 2
    std::vector<std::vector<double>> basis; // dim vectors of length dim
    std::vector<Point> translates;          // offsets within the cell
};

struct WindowBox {
    Point lo, hi;
};

struct CorrelationRecord {
    double center_density = 0.0;
    double cell_volume = 0.0;
    std::vector<Point> points; // packing points inside the window
    int window_points = 0;
    int interior_points = 0;
    std::vector<std::vector<int>> sets; // independent sets of size <= 2t in the window
    std::vector<double> weights;        // 1/cell_volume each; the empty set carries 1
    double min_moment_eigenvalue = 0.0; // over the interior-restricted bordered moment matrix
    bool psd_ok = false;
};

// Restriction of the translation-averaged correlation measure of a periodic
// packing to independent sets inside a window. Pair moments touching points
// within 4t of the window boundary are excluded from the PSD check.
CorrelationRecord periodic_correlation_restriction(const PeriodicPacking& p, int t,
                                                   const WindowBox& window);

} // namespace pb
