#include <doctest.h>

#include <cmath>

#include "packbound/geometry.hpp"

using namespace pb;

namespace {

PointConfiguration line(std::vector<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back({x});
    return PointConfiguration(1, std::move(pts));
}

PointConfiguration equilateral(double side) {
    return PointConfiguration(2, {{0.0, 0.0}, {side, 0.0}, {side / 2.0, side * std::sqrt(3.0) / 2.0}});
}

PointConfiguration random_config(Rng& rng, int dim, int count, double lo, double hi) {
    std::vector<Point> pts;
    while (int(pts.size()) < count) {
        Point p(dim);
        for (int k = 0; k < dim; ++k) p[k] = rng.uniform(lo, hi);
        bool ok = true;
        for (const auto& q : pts)
            if (dist(p, q) < 0.05) { ok = false; break; }
        if (ok) pts.push_back(std::move(p));
    }
    return PointConfiguration(dim, std::move(pts));
}

// exhaustive smallest enclosing ball over support subsets of size <= 3 (d=2)
Ball meb_bruteforce_2d(const std::vector<Point>& pts) {
    Ball best;
    best.radius = 1e300;
    auto covers = [&](const Ball& b) {
        for (const auto& p : pts)
            if (dist(b.center, p) > b.radius * (1.0 + 1e-10) + 1e-12) return false;
        return true;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Ball b{pts[i], 0.0};
        if (covers(b) && b.radius < best.radius) best = b;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Ball b2;
            b2.center = {(pts[i][0] + pts[j][0]) / 2, (pts[i][1] + pts[j][1]) / 2};
            b2.radius = dist(pts[i], pts[j]) / 2;
            if (covers(b2) && b2.radius < best.radius) best = b2;
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                // circumcenter of a nondegenerate triangle
                double ax = pts[i][0], ay = pts[i][1], bx = pts[j][0], by = pts[j][1],
                       cx = pts[k][0], cy = pts[k][1];
                double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
                if (std::fabs(d) < 1e-12) continue;
                double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
                             (cx * cx + cy * cy) * (ay - by)) /
                            d;
                double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
                             (cx * cx + cy * cy) * (bx - ax)) /
                            d;
                Ball b3{{ux, uy}, dist({ux, uy}, pts[i])};
                if (covers(b3) && b3.radius < best.radius) best = b3;
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("conflict graph thresholds") {
    Graph g = conflict_graph(line({0, 2, 4}));
    CHECK(g.edge_count() == 0);

    Graph h = conflict_graph(line({0, 1, 2}));
    CHECK(h.edge_count() == 2);
    CHECK(h.has_edge(0, 1));
    CHECK(h.has_edge(1, 2));
    CHECK_FALSE(h.has_edge(0, 2)); // distance exactly 2 is not a conflict

    CHECK(conflict_graph(equilateral(1.9)) == complete_graph(3));
}

TEST_CASE("pack on the named examples") {
    CHECK(pack(line({0, 2, 4})) == 3);
    CHECK(pack(cube_mesh(1, 10, 0.5)) == 6); // floor(10/2) + 1
    CHECK(pack(equilateral(1.9)) == 1);
}

TEST_CASE("pack equals alpha of the conflict graph") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 1 + int(rng.next_below(3));
        PointConfiguration c = random_config(rng, dim, 1 + int(rng.next_below(10)), 0.0, 5.0);
        CHECK(pack(c) == independence_number(conflict_graph(c)));
    }
}

TEST_CASE("min enclosing ball basics") {
    Ball b1 = min_enclosing_ball({{3.0, 4.0}});
    CHECK(b1.radius == 0.0);

    Ball b2 = min_enclosing_ball({{-1.0}, {1.0}});
    CHECK(std::fabs(b2.center[0]) < 1e-12);
    CHECK(std::fabs(b2.radius - 1.0) < 1e-12);

    // circumradius of an equilateral triangle is side/sqrt(3)
    PointConfiguration tri = equilateral(1.9);
    Ball b3 = min_enclosing_ball(tri.points());
    CHECK(std::fabs(b3.radius - 1.9 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("min enclosing ball matches 2-d brute force") {
    Rng rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        PointConfiguration c = random_config(rng, 2, 2 + int(rng.next_below(7)), -3.0, 3.0);
        Ball w = min_enclosing_ball(c.points());
        Ball bf = meb_bruteforce_2d(c.points());
        CHECK(std::fabs(w.radius - bf.radius) < 1e-9);
        for (const auto& p : c.points()) CHECK(dist(w.center, p) <= w.radius + 1e-9);
    }
}

TEST_CASE("cov on the named examples") {
    CHECK(cov(PointConfiguration(2, {{0.4, 0.7}})) == 1);
    CHECK(cov(equilateral(1.9)) == 2); // enclosing radius 1.097 > 1, any split works
    CHECK(cov(line({0, 2, 4})) == 3);
}

TEST_CASE("cov equals brute-force minimal partition count") {
    Rng rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        PointConfiguration c = random_config(rng, 2, 1 + int(rng.next_below(7)), 0.0, 3.5);
        CHECK(cov(c) == cov_bruteforce(c));
    }
    // 1-d greedy against the generic search
    for (int trial = 0; trial < 15; ++trial) {
        PointConfiguration c = random_config(rng, 1, 1 + int(rng.next_below(8)), 0.0, 6.0);
        CHECK(cov(c) == cov_bruteforce(c));
    }
}

TEST_CASE("pack <= cov always") {
    Rng rng(24);
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 1 + int(rng.next_below(2));
        PointConfiguration c = random_config(rng, dim, 1 + int(rng.next_below(8)), 0.0, 4.0);
        CHECK(pack(c) <= cov(c));
    }
}

TEST_CASE("cube mesh point counts") {
    CHECK(cube_mesh(1, 2, 1).size() == 3);
    CHECK(cube_mesh(2, 1, 1).size() == 4);
    Rng rng(25);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 1 + int(rng.next_below(3));
        double r = 1.0 + 2.0 * rng.next_double();
        double h = 0.3 + rng.next_double();
        int per_axis = int(std::floor(r / h + 1e-9)) + 1;
        CHECK(cube_mesh(n, r, h).size() == int(std::pow(per_axis, n) + 0.5));
    }
}

TEST_CASE("duplicate points rejected") {
    CHECK_THROWS(PointConfiguration(1, {{1.0}, {1.0}}));
}

TEST_CASE("isometry invariance of pack and cov") {
    Rng rng(26);
    for (int trial = 0; trial < 10; ++trial) {
        PointConfiguration c = random_config(rng, 2, 2 + int(rng.next_below(6)), 0.0, 4.0);
        // rotation by a random angle plus translation
        double a = rng.uniform(0.0, 6.28);
        Mat q(2, 2);
        q(0, 0) = std::cos(a);
        q(0, 1) = -std::sin(a);
        q(1, 0) = std::sin(a);
        q(1, 1) = std::cos(a);
        PointConfiguration moved = c.transformed(q, {rng.uniform(-5, 5), rng.uniform(-5, 5)});
        CHECK(pack(moved) == pack(c));
        CHECK(cov(moved) == cov(c));
    }
}

TEST_CASE("pack and cov pass the four axiom generators") {
    const int cases = 200;
    for (AxiomId id : {AxiomId::SphereBound, AxiomId::Lipschitz, AxiomId::Union, AxiomId::Mesh}) {
        auto pack_eval = [](const PointConfiguration& c) { return double(pack(c)); };
        auto cov_eval = [](const PointConfiguration& c) { return double(cov(c)); };
        for (auto eval : {+pack_eval, +cov_eval}) {
            auto cs = axiom_cases(id, cases, 99, 12, 3);
            REQUIRE(int(cs.size()) == cases);
            for (const auto& ac : cs) {
                switch (ac.id) {
                case AxiomId::SphereBound:
                    CHECK(eval(ac.configs[0]) == 1.0);
                    break;
                case AxiomId::Lipschitz:
                    CHECK(eval(ac.configs[0]) <= eval(ac.configs[1]));
                    break;
                case AxiomId::Union:
                    CHECK(eval(ac.configs[2]) == eval(ac.configs[0]) + eval(ac.configs[1]));
                    break;
                case AxiomId::Mesh:
                    CHECK(eval(ac.configs[0]) <= eval(ac.configs[1]));
                    break;
                }
            }
        }
    }
}

TEST_CASE("axiom cases are deterministic in the seed") {
    auto a = axiom_cases(AxiomId::Union, 5, 1234, 8, 2);
    auto b = axiom_cases(AxiomId::Union, 5, 1234, 8, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a[k].configs.size() == b[k].configs.size());
        for (std::size_t c = 0; c < a[k].configs.size(); ++c) {
            REQUIRE(a[k].configs[c].size() == b[k].configs[c].size());
            for (int i = 0; i < a[k].configs[c].size(); ++i)
                CHECK(a[k].configs[c][i] == b[k].configs[c][i]);
        }
    }
}

TEST_CASE("kuhn triangulation of boxes") {
    SimplicialComplex sc1 = triangulate_box(1, 1.0, 0.3);
    CHECK(int(sc1.top_simplices().size()) == 4); // ceil(1/0.3) = 4 segments
    CHECK(sc1.validate(0.3));

    SimplicialComplex sc2 = triangulate_box(2, 1.0, 1.6);
    // ceil(sqrt(2)/1.6) = 1 cube, 2! triangles
    CHECK(int(sc2.top_simplices().size()) == 2);
    CHECK(sc2.validate(1.6));

    double eps = 0.9;
    for (int n = 1; n <= 3; ++n) {
        SimplicialComplex sc = triangulate_box(n, 1.3, eps);
        int k = int(std::ceil(1.3 * std::sqrt(double(n)) / eps));
        int factorial = 1;
        for (int t = 2; t <= n; ++t) factorial *= t;
        CHECK(int(sc.top_simplices().size()) == int(std::pow(k, n) + 0.5) * factorial);
        CHECK(sc.validate(eps));
    }
}

TEST_CASE("barycentric location") {
    SimplicialComplex sc = triangulate_box(2, 1.0, 0.8);
    const auto& verts = sc.vertices();

    // a vertex carries weight one on itself
    BarycentricPoint bp = barycentric_locate(verts[0], sc);
    double w0 = 0.0;
    for (std::size_t t = 0; t < bp.weights.size(); ++t)
        if (sc.top_simplices()[bp.simplex][t] == 0) w0 = bp.weights[t];
    CHECK(std::fabs(w0 - 1.0) < 1e-12);

    // an edge midpoint splits evenly between the endpoints
    const auto& s0 = sc.top_simplices()[0];
    Point mid(2);
    for (int t = 0; t < 2; ++t) mid[t] = 0.5 * (verts[s0[0]][t] + verts[s0[1]][t]);
    BarycentricPoint mp = barycentric_locate(mid, sc);
    std::vector<double> nonzero;
    for (double w : mp.weights)
        if (w > 1e-9) nonzero.push_back(w);
    REQUIRE(nonzero.size() == 2);
    CHECK(std::fabs(nonzero[0] - 0.5) < 1e-10);
    CHECK(std::fabs(nonzero[1] - 0.5) < 1e-10);

    // random interior points reconstruct
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        Point y = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        BarycentricPoint b = barycentric_locate(y, sc);
        Point rec(2, 0.0);
        const auto& s = sc.top_simplices()[b.simplex];
        for (std::size_t t = 0; t < s.size(); ++t)
            for (int k = 0; k < 2; ++k) rec[k] += b.weights[t] * verts[s[t]][k];
        CHECK(dist(rec, y) < 1e-10);
    }

    CHECK_THROWS_AS(barycentric_locate({2.5, 0.5}, sc), OutsideComplex);
}

TEST_CASE("kernel lifting") {
    SimplicialComplex sc = triangulate_box(2, 1.0, 0.75);
    const int nv = sc.vertices().size();
    Rng rng(32);

    // restriction to the vertex set reproduces the kernel
    Mat base(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) {
            double v = rng.uniform(-0.5, 0.5);
            base(i, j) = v;
            base(j, i) = v;
        }
    Mat k = matmul(base, base.transposed()); // PSD by construction
    std::vector<Point> vertex_samples = sc.vertices().points();
    Mat restricted = lift_kernel(k, sc, vertex_samples);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) CHECK(std::fabs(restricted(i, j) - k(i, j)) < 1e-9);

    // rank-1 kernels lift to rank <= 1
    Mat v(nv, 1);
    for (int i = 0; i < nv; ++i) v(i, 0) = rng.uniform(-1.0, 1.0);
    Mat rank1 = matmul(v, v.transposed());
    std::vector<Point> xs;
    for (int trial = 0; trial < 12; ++trial) xs.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
    Mat lifted1 = lift_kernel(rank1, sc, xs);
    auto ev1 = sym_eigen(lifted1).values;
    for (std::size_t t = 0; t + 1 < ev1.size(); ++t) CHECK(std::fabs(ev1[t]) < 1e-8);

    // PSD-ness survives lifting on random samples
    std::vector<Point> many;
    for (int trial = 0; trial < 50; ++trial) many.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
    Mat lifted = lift_kernel(k, sc, many);
    CHECK(min_eigenvalue(lifted) >= -1e-8 * std::max(1.0, lifted.max_abs()));

    // non-PSD kernels are rejected
    Mat bad = Mat::identity(nv, 1.0);
    bad(0, 0) = -1.0;
    CHECK_THROWS_AS(lift_kernel(bad, sc, xs), NotPsd);
}

TEST_CASE("barycentric machinery in three dimensions") {
    SimplicialComplex sc = triangulate_box(3, 1.0, 1.2);
    CHECK(sc.validate(1.2));
    const auto& verts = sc.vertices();
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        Point y = {rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)};
        BarycentricPoint b = barycentric_locate(y, sc);
        Point rec(3, 0.0);
        double total = 0.0;
        const auto& s = sc.top_simplices()[b.simplex];
        for (std::size_t t = 0; t < s.size(); ++t) {
            total += b.weights[t];
            for (int k = 0; k < 3; ++k) rec[k] += b.weights[t] * verts[s[t]][k];
        }
        CHECK(std::fabs(total - 1.0) < 1e-12);
        CHECK(dist(rec, y) < 1e-10);
    }

    const int nv = verts.size();
    Mat base(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) {
            double v = rng.uniform(-0.5, 0.5);
            base(i, j) = v;
            base(j, i) = v;
        }
    Mat k = matmul(base, base.transposed());
    std::vector<Point> xs;
    for (int t = 0; t < 25; ++t) xs.push_back({rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
    Mat lifted = lift_kernel(k, sc, xs);
    CHECK(min_eigenvalue(lifted) >= -1e-8 * std::max(1.0, lifted.max_abs()));
}
