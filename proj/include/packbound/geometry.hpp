#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "packbound/common.hpp"
#include "packbound/graph.hpp"
#include "packbound/linalg.hpp"

namespace pb {

using Point = std::vector<double>;

double dist(const Point& a, const Point& b);

// Finite point set in R^d. Unitless coordinates; the packing radius is fixed
// at 1, so two points conflict when their distance is below 2.
class PointConfiguration {
public:
    PointConfiguration() = default;
    PointConfiguration(int dim, std::vector<Point> points, double tol = 1e-9);

    int dim() const { return dim_; }
    int size() const { return int(points_.size()); }
    const Point& operator[](int i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    double tol() const { return tol_; }

    PointConfiguration scaled(double factor) const;
    PointConfiguration translated(const Point& shift) const;
    PointConfiguration transformed(const Mat& orthogonal, const Point& shift) const;
    PointConfiguration united(const PointConfiguration& other) const;

    // text format: "d n" then n coordinate lines
    static PointConfiguration read(std::istream& in);
    static PointConfiguration read_file(const std::string& path);
    void write(std::ostream& out) const;

private:
    int dim_ = 0;
    std::vector<Point> points_;
    double tol_ = 1e-9;
};

// Conflict graph: edge (i,j) iff 0 < |x_i - x_j| < 2 - tol. Distances within
// tol of 2 count as non-conflicting so meshes whose spacing divides 2 behave
// deterministically.
Graph conflict_graph(const PointConfiguration& c);

// Largest subset with pairwise distances >= 2; alpha of the conflict graph,
// with a greedy sweep shortcut in dimension 1 (provably optimal there).
int pack(const PointConfiguration& c, int cap = -1);

struct Ball {
    Point center;
    double radius = 0.0;
};

// Exact smallest enclosing ball (Welzl move-to-front).
Ball min_enclosing_ball(const std::vector<Point>& points);

// Minimum number of open unit balls covering c. Equivalent to the minimum
// partition into clusters of enclosing radius < 1; greedy sweep in dimension
// 1, branch and bound with memoized cluster feasibility otherwise.
int cov(const PointConfiguration& c, int cap = -1);

// brute-force minimal partition count, for tests (n <= 8)
int cov_bruteforce(const PointConfiguration& c);

// Grid (h Z)^n intersected with [0,r]^n.
PointConfiguration cube_mesh(int n, double r, double h);

// --- axiom test-case generation -------------------------------------------

enum class AxiomId { SphereBound, Lipschitz, Union, Mesh };

struct AxiomCase {
    AxiomId id;
    // SphereBound: configs = {C}, assert A(C) == 1
    // Lipschitz:   configs = {C, C'}, assert A(C) <= A(C')
    // Union:       configs = {C, C', C u C'}, assert A(CuC') == A(C)+A(C')
    // Mesh:        configs = {C/(1+eps), C'}, assert A(first) <= A(second)
    std::vector<PointConfiguration> configs;
};

std::vector<AxiomCase> axiom_cases(AxiomId id, int count, std::uint64_t seed, int max_points = 12,
                                   int max_dim = 3);

// --- simplicial machinery ---------------------------------------------------

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    SimplicialComplex(PointConfiguration vertices, std::vector<std::vector<int>> top_simplices);

    const PointConfiguration& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& top_simplices() const { return simplices_; }
    int dim() const { return vertices_.dim(); }

    // checks non-degeneracy, pairwise face-intersection (combinatorially),
    // and that all simplex diameters are < eps
    bool validate(double eps, std::string* why = nullptr) const;

private:
    PointConfiguration vertices_;
    std::vector<std::vector<int>> simplices_;
};

// Kuhn triangulation of [0,r]^n into translated permutation simplices with
// diameters < eps. n <= 3.
SimplicialComplex triangulate_box(int n, double r, double eps);

struct BarycentricPoint {
    int simplex = -1;
    std::vector<double> weights; // nonnegative, sum 1, aligned with simplex vertices
};

BarycentricPoint barycentric_locate(const Point& y, const SimplicialComplex& sc);

// Bilinear barycentric lift of a PSD kernel on the complex vertices to the
// sample points xs: L(x,y) = sum_ij a_i b_j K(v_i, v_j).
Mat lift_kernel(const Mat& K, const SimplicialComplex& sc, const std::vector<Point>& xs);

} // namespace pb
