// Times the OpenMP kernels against their serial references: dense matmul,
// Schur complement assembly, and moment-matrix assembly.

#include <chrono>
#include <cstdio>

#include "packbound/lasserre.hpp"
#include "packbound/linalg.hpp"
#include "packbound/sdp.hpp"

using namespace pb;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
    fn(); // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    std::printf("workers: %d\n", workers());
    Rng rng(1);

    {
        const int n = 384;
        Mat a(n, n), b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a(i, j) = rng.uniform(-1, 1);
                b(i, j) = rng.uniform(-1, 1);
            }
        double s = time_ms([&] { matmul_serial(a, b); }, 3);
        double p = time_ms([&] { matmul(a, b); }, 3);
        report("matmul 384x384", s, p);
    }

    {
        // theta-like constraint structure on a mesh-sized block
        const int n = 120;
        SdpProblem prob;
        prob.add_dense_block(n);
        prob.init_objective();
        std::vector<SdpProblem::Entry> trace;
        for (int i = 0; i < n; ++i) trace.push_back({0, i, i, 1.0});
        prob.add_constraint(trace, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n && j < i + 9; ++j)
                prob.add_constraint({{0, i, j, 1.0}}, 0.0);
        BlockVec w1 = BlockVec::identity_like(prob.blocks, 0, 1.0);
        BlockVec w2 = BlockVec::identity_like(prob.blocks, 0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                w1.mats[0](i, j) += 0.01 * rng.uniform(-1, 1);
                w2.mats[0](i, j) += 0.01 * rng.uniform(-1, 1);
            }
        w1.mats[0].symmetrize();
        w2.mats[0].symmetrize();
        std::printf("schur size: %d constraints\n", prob.constraint_count());
        double s = time_ms([&] { schur_complement_serial(prob, w1, w2); }, 3);
        double p = time_ms([&] { schur_complement(prob, w1, w2); }, 3);
        report("schur assembly", s, p);
    }

    {
        Rng grng(7);
        Graph g = random_graph(24, 0.35, grng);
        auto fam_t = enumerate_independent_sets(g, 2);
        auto fam_2t = enumerate_independent_sets(g, 4);
        std::vector<double> mv(fam_2t.size());
        for (double& v : mv) v = rng.uniform(-1, 1);
        std::printf("moment size: %d x %d\n", fam_t.size(), fam_t.size());
        double s = time_ms([&] { at_adjoint_matrix_serial(g, fam_t, fam_2t, mv); }, 3);
        double p = time_ms([&] { at_adjoint_matrix(g, fam_t, fam_2t, mv); }, 3);
        report("moment-matrix assembly", s, p);
    }
    return 0;
}
