#pragma once

#include <string>
#include <vector>

#include "packbound/common.hpp"
#include "packbound/linalg.hpp"

namespace pb {

// Block-diagonal symmetric matrix: dense blocks plus one trailing diagonal
// block (used for scalar slack variables).
struct BlockVec {
    std::vector<Mat> mats;
    std::vector<double> diag;

    static BlockVec zero_like(const std::vector<int>& blocks, int diag_size);
    static BlockVec identity_like(const std::vector<int>& blocks, int diag_size, double scale);

    BlockVec& axpy(double a, const BlockVec& o); // this += a*o
    void scale(double a);
    void symmetrize();
    double max_abs() const;
    int total_order() const;
};

double dot(const BlockVec& a, const BlockVec& b);

// Standard-form SDP: minimize <C,X> subject to <A_i,X> = b_i and X psd.
// Maximization problems are encoded by negating C.
class SdpProblem {
public:
    struct Entry {
        int block; // dense block index, or -1 for the diagonal block
        int i, j;  // i <= j for dense, i == j for diagonal
        double v;
    };

    std::vector<int> blocks;
    int diag_size = 0;

    BlockVec C;
    std::vector<std::vector<Entry>> constraints;
    std::vector<double> b;

    void init_objective(); // size C to the declared structure, zero-filled
    int add_dense_block(int n);
    int add_diag_entry(); // returns index into the diagonal block

    int constraint_count() const { return int(b.size()); }
    int total_order() const;

    void add_constraint(std::vector<Entry> entries, double rhs);

    double apply_constraint(int k, const BlockVec& x) const; // <A_k, x>
    void add_scaled_constraint(int k, double w, BlockVec& into) const;

    // sparse SDPA text dump (write-only cross-check surface); F0 = -C so an
    // external solve of the dump reports the negated optimum of this problem
    void write_sdpa(const std::string& path) const;
};

enum class SdpStatus { Optimal, Infeasible, IterationLimit, NumericalFailure };

const char* to_string(SdpStatus s);

struct SdpOptions {
    double gap_tol = tols().sdp_gap;
    double res_tol = tols().sdp_res;
    int max_iterations = 200;
    double step_fraction = 0.98;
    double objective_bound = 1e9; // divergence beyond this flags infeasibility
};

struct SdpSolution {
    BlockVec X, S;
    std::vector<double> y;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    SdpStatus status = SdpStatus::NumericalFailure;
    int iterations = 0;
    int dropped_constraints = 0;
};

SdpSolution solve(const SdpProblem& p, const SdpOptions& opt = {});

struct CertifyReport {
    bool ok = false;
    double min_eig_x = 0.0;
    double min_eig_s = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    std::string failure;
};

// Independent validation of a solution: eigenvalue floors, residuals, and the
// duality gap are recomputed from scratch, without solver state.
CertifyReport certify(const SdpSolution& sol, const SdpProblem& p);

// solve + certify every Optimal solution; failed certification downgrades the
// status to NumericalFailure and is tallied
SdpSolution solve_certified(const SdpProblem& p, const SdpOptions& opt = {});

struct CertifyStats {
    long performed = 0;
    long failed = 0;
};
CertifyStats certify_stats();
void reset_certify_stats();

// Schur complement M_ab = tr(W1 A_a W2 A_b) summed over blocks. The OpenMP
// kernel parallelizes over rows; the serial variant is the test reference.
Mat schur_complement(const SdpProblem& p, const BlockVec& w1, const BlockVec& w2);
Mat schur_complement_serial(const SdpProblem& p, const BlockVec& w1, const BlockVec& w2);

} // namespace pb
