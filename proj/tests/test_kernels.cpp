#include <doctest.h>

#include <cmath>

#include "packbound/lasserre.hpp"
#include "packbound/sdp.hpp"
#include "packbound/theta.hpp"

using namespace pb;

namespace {

SdpProblem random_problem(Rng& rng) {
    // a theta-like problem shape: one dense block, a diagonal block, entry
    // constraints of one to three entries each
    SdpProblem p;
    int n = 6 + int(rng.next_below(20));
    p.add_dense_block(n);
    int diag = 4 + int(rng.next_below(10));
    for (int k = 0; k < diag; ++k) p.add_diag_entry();
    p.init_objective();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p.C.mats[0](i, j) = rng.uniform(-1.0, 1.0);
    p.C.mats[0].symmetrize();
    int m = 10 + int(rng.next_below(40));
    for (int k = 0; k < m; ++k) {
        std::vector<SdpProblem::Entry> entries;
        int terms = 1 + int(rng.next_below(3));
        for (int t = 0; t < terms; ++t) {
            int i = int(rng.next_below(n)), j = int(rng.next_below(n));
            entries.push_back({0, std::min(i, j), std::max(i, j), rng.uniform(-2.0, 2.0)});
        }
        if (rng.next_below(2)) entries.push_back({-1, int(rng.next_below(diag)), int(rng.next_below(diag)), 1.0});
        for (auto& e : entries)
            if (e.block < 0) e.j = e.i;
        p.add_constraint(std::move(entries), rng.uniform(-1.0, 1.0));
    }
    return p;
}

BlockVec random_spd_like(const SdpProblem& p, Rng& rng) {
    BlockVec v = BlockVec::zero_like(p.blocks, p.diag_size);
    for (auto& m : v.mats) {
        Mat base(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) base(i, j) = rng.uniform(-1.0, 1.0);
        m = matmul(base, base.transposed());
        for (int i = 0; i < m.rows(); ++i) m(i, i) += 0.5;
    }
    for (double& d : v.diag) d = 0.1 + rng.next_double();
    return v;
}

} // namespace

TEST_CASE("schur complement kernel: parallel equals serial bitwise") {
    Rng rng(91);
    for (int trial = 0; trial < 6; ++trial) {
        SdpProblem p = random_problem(rng);
        BlockVec w1 = random_spd_like(p, rng);
        BlockVec w2 = random_spd_like(p, rng);
        Mat a = schur_complement(p, w1, w2);
        Mat b = schur_complement_serial(p, w1, w2);
        REQUIRE(a.rows() == b.rows());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) CHECK(a(i, j) == b(i, j));
    }
}

TEST_CASE("adjoint assembly kernel: parallel equals serial bitwise") {
    Rng rng(92);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = random_graph(4 + int(rng.next_below(8)), 0.4, rng);
        int t = 1 + int(rng.next_below(2));
        auto fam_t = enumerate_independent_sets(g, t);
        auto fam_2t = enumerate_independent_sets(g, 2 * t);
        std::vector<double> mv(fam_2t.size());
        for (double& v : mv) v = rng.uniform(-1.0, 1.0);
        Mat a = at_adjoint_matrix(g, fam_t, fam_2t, mv);
        Mat b = at_adjoint_matrix_serial(g, fam_t, fam_2t, mv);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) CHECK(a(i, j) == b(i, j));
    }
}

TEST_CASE("solver results do not depend on the worker count") {
    Rng rng(93);
    Graph g = random_graph(10, 0.4, rng);
    set_workers(1);
    double v1 = theta_primal(g, ThetaVariant::Theta);
    set_workers(2);
    double v2 = theta_primal(g, ThetaVariant::Theta);
    set_workers(0);
    CHECK(v1 == v2);
}
