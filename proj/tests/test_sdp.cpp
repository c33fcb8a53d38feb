#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iterator>

#include "packbound/common.hpp"
#include "packbound/sdp.hpp"

using namespace pb;

namespace {

// order-2 problems with a trace constraint and one generic constraint reduce
// to a line search in x; this grid-refinement oracle is the independent
// check for the solver
struct Order2 {
    Mat c{2, 2};
    Mat a{2, 2};
    double rhs = 0.0;
};

double oracle_minimum(const Order2& p) {
    // X = [[x, z], [z, 1-x]], psd iff 0 <= x <= 1 and x(1-x) >= z^2;
    // constraint a11 x + a22 (1-x) + 2 a12 z = rhs pins z per x
    auto z_of = [&](double x) {
        return (p.rhs - p.a(0, 0) * x - p.a(1, 1) * (1.0 - x)) / (2.0 * p.a(0, 1));
    };
    auto feasible = [&](double x) {
        if (x < 0.0 || x > 1.0) return false;
        double z = z_of(x);
        return x * (1.0 - x) >= z * z - 1e-15;
    };
    auto objective = [&](double x) {
        double z = z_of(x);
        return p.c(0, 0) * x + p.c(1, 1) * (1.0 - x) + 2.0 * p.c(0, 1) * z;
    };
    double lo = 0.0, hi = 1.0;
    double best = 1e300, best_x = -1.0;
    for (int level = 0; level < 6; ++level) {
        double step = (hi - lo) / 4000.0;
        for (int k = 0; k <= 4000; ++k) {
            double x = lo + step * k;
            if (!feasible(x)) continue;
            double v = objective(x);
            if (v < best) {
                best = v;
                best_x = x;
            }
        }
        lo = std::max(0.0, best_x - 4.0 * step);
        hi = std::min(1.0, best_x + 4.0 * step);
    }
    return best;
}

Order2 random_order2(Rng& rng) {
    Order2 p;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            double v = rng.uniform(-1.0, 1.0);
            p.c(i, j) = v;
            p.c(j, i) = v;
            double w = rng.uniform(-1.0, 1.0);
            p.a(i, j) = w;
            p.a(j, i) = w;
        }
    if (std::fabs(p.a(0, 1)) < 0.1) p.a(0, 1) = p.a(1, 0) = 0.3;
    // rhs from a strictly feasible X0 so the problem has interior
    double x0 = rng.uniform(0.25, 0.75);
    double zmax = std::sqrt(x0 * (1.0 - x0));
    double z0 = rng.uniform(-0.8, 0.8) * zmax;
    p.rhs = p.a(0, 0) * x0 + p.a(1, 1) * (1.0 - x0) + 2.0 * p.a(0, 1) * z0;
    return p;
}

SdpProblem to_problem(const Order2& o) {
    SdpProblem p;
    p.add_dense_block(2);
    p.init_objective();
    p.C.mats[0] = o.c;
    p.add_constraint({{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, 1.0);
    p.add_constraint({{0, 0, 0, o.a(0, 0)}, {0, 0, 1, o.a(0, 1)}, {0, 1, 1, o.a(1, 1)}}, o.rhs);
    return p;
}

} // namespace

TEST_CASE("order-1 problem: min trace with X11 = 1") {
    SdpProblem p;
    p.add_dense_block(1);
    p.init_objective();
    p.C.mats[0](0, 0) = 1.0;
    p.add_constraint({{0, 0, 0, 1.0}}, 1.0);
    SdpSolution sol = solve(p);
    REQUIRE(sol.status == SdpStatus::Optimal);
    CHECK(std::fabs(sol.primal_objective - 1.0) < 1e-7);
    CertifyReport cr = certify(sol, p);
    CHECK(cr.ok);
}

TEST_CASE("certify rejects corrupted solutions") {
    SdpProblem p;
    p.add_dense_block(1);
    p.init_objective();
    p.C.mats[0](0, 0) = 1.0;
    p.add_constraint({{0, 0, 0, 1.0}}, 1.0);
    SdpSolution sol = solve(p);
    REQUIRE(sol.status == SdpStatus::Optimal);

    SdpSolution bad_eig = sol;
    bad_eig.X.mats[0](0, 0) = -1e-3;
    CHECK_FALSE(certify(bad_eig, p).ok);

    SdpProblem perturbed = p;
    perturbed.b[0] = 1.5;
    CHECK_FALSE(certify(sol, perturbed).ok);
}

TEST_CASE("100 random order-2 problems match the grid oracle") {
    Rng rng(42);
    int solved = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Order2 o = random_order2(rng);
        double expect = oracle_minimum(o);
        SdpProblem p = to_problem(o);
        SdpSolution sol = solve(p);
        REQUIRE(sol.status == SdpStatus::Optimal);
        CHECK(std::fabs(sol.primal_objective - expect) < 1e-6);
        CHECK(certify(sol, p).ok);
        ++solved;
    }
    CHECK(solved == 100);
}

TEST_CASE("weak duality on the returned pair") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Order2 o = random_order2(rng);
        SdpProblem p = to_problem(o);
        SdpSolution sol = solve(p);
        REQUIRE(sol.status == SdpStatus::Optimal);
        // min form: primal objective >= dual objective up to tolerance
        CHECK(sol.primal_objective >= sol.dual_objective - 1e-6);
    }
}

TEST_CASE("deterministic reruns") {
    Rng rng(11);
    Order2 o = random_order2(rng);
    SdpProblem p = to_problem(o);
    SdpSolution s1 = solve(p);
    SdpSolution s2 = solve(p);
    CHECK(s1.iterations == s2.iterations);
    CHECK(std::fabs(s1.primal_objective - s2.primal_objective) < 1e-12);
    CHECK(std::fabs(s1.dual_objective - s2.dual_objective) < 1e-12);
}

TEST_CASE("infeasible problem flagged") {
    // X11 = 1 and X11 = -1 cannot both hold; with X11 = -1 alone the psd
    // cone is already violated, and the dual diverges
    SdpProblem p;
    p.add_dense_block(1);
    p.init_objective();
    p.C.mats[0](0, 0) = 1.0;
    p.add_constraint({{0, 0, 0, 1.0}}, -1.0);
    SdpSolution sol = solve(p);
    CHECK(sol.status != SdpStatus::Optimal);
}

TEST_CASE("trace-one sum maximization has value n, certified both ways") {
    // maximize the total mass of a trace-one psd matrix with no entry
    // constraints: the flat rank-one matrix J/n attains n, and the kernel
    // n*I - J caps it at n
    for (int n : {2, 5, 9}) {
        Mat primal(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) primal(i, j) = 1.0 / n;
        double total = 0.0, trace = 0.0;
        for (int i = 0; i < n; ++i) {
            trace += primal(i, i);
            for (int j = 0; j < n; ++j) total += primal(i, j);
        }
        CHECK(std::fabs(trace - 1.0) < 1e-15);
        CHECK(std::fabs(total - n) < 1e-12);
        CHECK(min_eigenvalue(primal) >= -1e-15);

        Mat dual(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dual(i, j) = (i == j ? n : 0.0) - 1.0;
        CHECK(min_eigenvalue(dual) >= -1e-12); // certifies the cap at t = n

        SdpProblem p;
        p.add_dense_block(n);
        p.init_objective();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p.C.mats[0](i, j) = -1.0;
        std::vector<SdpProblem::Entry> tr;
        for (int i = 0; i < n; ++i) tr.push_back({0, i, i, 1.0});
        p.add_constraint(std::move(tr), 1.0);
        SdpSolution sol = solve(p);
        REQUIRE(sol.status == SdpStatus::Optimal);
        CHECK(std::fabs(-sol.primal_objective - n) < 1e-6);
    }
}

TEST_CASE("random feasible problems with larger blocks solve and certify") {
    Rng rng(29);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 3 + int(rng.next_below(8));
        SdpProblem p;
        p.add_dense_block(n);
        int diag = int(rng.next_below(4));
        for (int k = 0; k < diag; ++k) p.add_diag_entry();
        p.init_objective();
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double v = rng.uniform(-1.0, 1.0);
                p.C.mats[0](i, j) = v;
                p.C.mats[0](j, i) = v;
            }
        // rhs from a strictly feasible interior point
        BlockVec x0 = BlockVec::identity_like(p.blocks, p.diag_size, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double v = rng.uniform(-0.1, 0.1);
                x0.mats[0](i, j) = v;
                x0.mats[0](j, i) = v;
            }
        // a full trace constraint makes the psd feasible set compact
        {
            std::vector<SdpProblem::Entry> tr;
            for (int i = 0; i < n; ++i) tr.push_back({0, i, i, 1.0});
            for (int d = 0; d < diag; ++d) tr.push_back({-1, d, d, 1.0});
            SdpProblem probe;
            probe.blocks = p.blocks;
            probe.diag_size = p.diag_size;
            probe.C = p.C;
            probe.add_constraint(tr, 0.0);
            p.add_constraint(tr, probe.apply_constraint(0, x0));
        }
        int m = 2 + int(rng.next_below(6));
        for (int k = 0; k < m; ++k) {
            std::vector<SdpProblem::Entry> entries;
            int terms = 1 + int(rng.next_below(3));
            for (int t = 0; t < terms; ++t) {
                int i = int(rng.next_below(n)), j = int(rng.next_below(n));
                entries.push_back({0, std::min(i, j), std::max(i, j), rng.uniform(-1.0, 1.0)});
            }
            if (diag > 0 && rng.next_below(2)) {
                int d = int(rng.next_below(diag));
                entries.push_back({-1, d, d, rng.uniform(0.5, 1.5)});
            }
            SdpProblem probe;
            probe.blocks = p.blocks;
            probe.diag_size = p.diag_size;
            probe.C = p.C;
            probe.add_constraint(entries, 0.0);
            p.add_constraint(entries, probe.apply_constraint(0, x0));
        }
        SdpSolution sol = solve(p);
        REQUIRE(sol.status == SdpStatus::Optimal);
        CHECK(certify(sol, p).ok);
        CHECK(sol.primal_objective >= sol.dual_objective - 1e-6);
    }
}

TEST_CASE("presolve drops dependent constraint rows") {
    Rng rng(17);
    Order2 o = random_order2(rng);
    SdpProblem p = to_problem(o);
    // duplicate the generic constraint and add a scaled copy of the trace
    p.add_constraint(p.constraints[1], p.b[1]);
    p.add_constraint({{0, 0, 0, 2.0}, {0, 1, 1, 2.0}}, 2.0);
    SdpSolution sol = solve(p);
    REQUIRE(sol.status == SdpStatus::Optimal);
    CHECK(sol.dropped_constraints == 2);
    CHECK(std::fabs(sol.primal_objective - oracle_minimum(o)) < 1e-6);
    CHECK(sol.y.size() == 4);
}

TEST_CASE("sdpa dump is stable text") {
    SdpProblem p;
    p.add_dense_block(1);
    p.add_diag_entry();
    p.init_objective();
    p.C.mats[0](0, 0) = 1.0;
    p.add_constraint({{0, 0, 0, 1.0}, {-1, 0, 0, 0.125}}, 1.0);
    p.write_sdpa("sdpa_dump_test.dat-s");
    std::ifstream in("sdpa_dump_test.dat-s");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == "1\n2\n1 -1\n1\n0 1 1 1 -1\n1 1 1 1 1\n1 2 1 1 0.125\n");
}
