#include "packbound/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>

namespace pb {

BlockVec BlockVec::zero_like(const std::vector<int>& blocks, int diag_size) {
    BlockVec v;
    v.mats.reserve(blocks.size());
    for (int n : blocks) v.mats.emplace_back(n, n);
    v.diag.assign(diag_size, 0.0);
    return v;
}

BlockVec BlockVec::identity_like(const std::vector<int>& blocks, int diag_size, double scale) {
    BlockVec v = zero_like(blocks, diag_size);
    for (auto& m : v.mats)
        for (int i = 0; i < m.rows(); ++i) m(i, i) = scale;
    std::fill(v.diag.begin(), v.diag.end(), scale);
    return v;
}

BlockVec& BlockVec::axpy(double a, const BlockVec& o) {
    for (std::size_t k = 0; k < mats.size(); ++k) {
        double* p = mats[k].data();
        const double* q = o.mats[k].data();
        std::size_t nn = std::size_t(mats[k].rows()) * mats[k].cols();
        for (std::size_t t = 0; t < nn; ++t) p[t] += a * q[t];
    }
    for (std::size_t t = 0; t < diag.size(); ++t) diag[t] += a * o.diag[t];
    return *this;
}

void BlockVec::scale(double a) {
    for (auto& m : mats) m *= a;
    for (double& d : diag) d *= a;
}

void BlockVec::symmetrize() {
    for (auto& m : mats) m.symmetrize();
}

double BlockVec::max_abs() const {
    double v = 0.0;
    for (const auto& m : mats) v = std::max(v, m.max_abs());
    for (double d : diag) v = std::max(v, std::fabs(d));
    return v;
}

int BlockVec::total_order() const {
    int n = int(diag.size());
    for (const auto& m : mats) n += m.rows();
    return n;
}

double dot(const BlockVec& a, const BlockVec& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.mats.size(); ++k) s += dot(a.mats[k], b.mats[k]);
    for (std::size_t t = 0; t < a.diag.size(); ++t) s += a.diag[t] * b.diag[t];
    return s;
}

void SdpProblem::init_objective() { C = BlockVec::zero_like(blocks, diag_size); }

int SdpProblem::add_dense_block(int n) {
    blocks.push_back(n);
    return int(blocks.size()) - 1;
}

int SdpProblem::add_diag_entry() { return diag_size++; }

int SdpProblem::total_order() const {
    int n = diag_size;
    for (int b_ : blocks) n += b_;
    return n;
}

void SdpProblem::add_constraint(std::vector<Entry> entries, double rhs) {
    for (auto& e : entries) {
        if (e.block >= 0 && e.i > e.j) std::swap(e.i, e.j);
        if (e.block < 0 && e.i != e.j) throw std::invalid_argument("diag entry must be (i,i)");
    }
    constraints.push_back(std::move(entries));
    b.push_back(rhs);
}

double SdpProblem::apply_constraint(int k, const BlockVec& x) const {
    double s = 0.0;
    for (const auto& e : constraints[k]) {
        if (e.block < 0)
            s += e.v * x.diag[e.i];
        else if (e.i == e.j)
            s += e.v * x.mats[e.block](e.i, e.i);
        else
            s += 2.0 * e.v * x.mats[e.block](e.i, e.j);
    }
    return s;
}

void SdpProblem::add_scaled_constraint(int k, double w, BlockVec& into) const {
    for (const auto& e : constraints[k]) {
        if (e.block < 0) {
            into.diag[e.i] += w * e.v;
        } else if (e.i == e.j) {
            into.mats[e.block](e.i, e.i) += w * e.v;
        } else {
            into.mats[e.block](e.i, e.j) += w * e.v;
            into.mats[e.block](e.j, e.i) += w * e.v;
        }
    }
}

void SdpProblem::write_sdpa(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_sdpa: cannot open " + path);
    const int m = constraint_count();
    out << m << "\n";
    int nblocks = int(blocks.size()) + (diag_size > 0 ? 1 : 0);
    out << nblocks << "\n";
    for (std::size_t k = 0; k < blocks.size(); ++k) out << (k ? " " : "") << blocks[k];
    if (diag_size > 0) out << (blocks.empty() ? "" : " ") << -diag_size;
    out << "\n";
    char buf[64];
    for (int k = 0; k < m; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", b[k]);
        out << (k ? " " : "") << buf;
    }
    out << "\n";
    auto emit = [&](int mat_index, int blk, int i, int j, double v) {
        if (v == 0.0) return;
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << mat_index << ' ' << blk + 1 << ' ' << i + 1 << ' ' << j + 1 << ' ' << buf << "\n";
    };
    const int diag_block = int(blocks.size());
    // F0 = -C
    for (std::size_t blk = 0; blk < C.mats.size(); ++blk)
        for (int i = 0; i < C.mats[blk].rows(); ++i)
            for (int j = i; j < C.mats[blk].cols(); ++j) emit(0, int(blk), i, j, -C.mats[blk](i, j));
    for (int i = 0; i < diag_size; ++i) emit(0, diag_block, i, i, -C.diag[i]);
    for (int k = 0; k < m; ++k)
        for (const auto& e : constraints[k]) {
            if (e.block < 0)
                emit(k + 1, diag_block, e.i, e.i, e.v);
            else
                emit(k + 1, e.block, e.i, e.j, e.v);
        }
}

const char* to_string(SdpStatus s) {
    switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::IterationLimit: return "iteration_limit";
    case SdpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

// expanded entry: both (i,j) and (j,i) halves listed explicitly
struct XEntry {
    int block, i, j;
    double v;
};

struct Workspace {
    std::vector<std::vector<XEntry>> expanded;            // per constraint, dense entries
    std::vector<std::vector<std::pair<int, double>>> dents; // per constraint, diag entries
    std::vector<std::vector<std::pair<int, double>>> touch; // per diag index, (constraint, value)
};

Workspace build_workspace(const SdpProblem& p) {
    Workspace w;
    const int m = p.constraint_count();
    w.expanded.resize(m);
    w.dents.resize(m);
    w.touch.resize(p.diag_size);
    for (int k = 0; k < m; ++k) {
        for (const auto& e : p.constraints[k]) {
            if (e.block < 0) {
                w.dents[k].push_back({e.i, e.v});
                w.touch[e.i].push_back({k, e.v});
            } else if (e.i == e.j) {
                w.expanded[k].push_back({e.block, e.i, e.i, e.v});
            } else {
                w.expanded[k].push_back({e.block, e.i, e.j, e.v});
                w.expanded[k].push_back({e.block, e.j, e.i, e.v});
            }
        }
    }
    return w;
}

void schur_rows(const Workspace& w, const BlockVec& w1, const BlockVec& w2, Mat& m_out, int a) {
    const int m = m_out.rows();
    const auto& ea = w.expanded[a];
    for (int b = a; b < m; ++b) {
        double acc = 0.0;
        for (const auto& f : w.expanded[b]) {
            const Mat& m1 = w1.mats[f.block];
            const Mat& m2 = w2.mats[f.block];
            for (const auto& e : ea) {
                if (e.block != f.block) continue;
                acc += e.v * f.v * m1(f.j, e.i) * m2(e.j, f.i);
            }
        }
        m_out(a, b) = acc;
    }
    for (const auto& [i, va] : w.dents[a])
        for (const auto& [b, vb] : w.touch[i])
            if (b >= a) m_out(a, b) += va * vb * w1.diag[i] * w2.diag[i];
}

Mat schur_from_workspace(const Workspace& w, int m, const BlockVec& w1, const BlockVec& w2, bool parallel) {
    Mat out(m, m);
#pragma omp parallel for schedule(dynamic, 8) if (parallel && m >= 64)
    for (int a = 0; a < m; ++a) schur_rows(w, w1, w2, out, a);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) out(b, a) = out(a, b);
    return out;
}

BlockVec block_mul(const BlockVec& a, const BlockVec& b) {
    BlockVec r;
    r.mats.reserve(a.mats.size());
    for (std::size_t k = 0; k < a.mats.size(); ++k) r.mats.push_back(matmul(a.mats[k], b.mats[k]));
    r.diag.resize(a.diag.size());
    for (std::size_t t = 0; t < a.diag.size(); ++t) r.diag[t] = a.diag[t] * b.diag[t];
    return r;
}

// largest step alpha with X + alpha*dX still psd, via L^{-1} dX L^{-T};
// near-singular blocks (the normal state at convergence) fall back to a
// feasibility line search
double max_step(const BlockVec& x, const BlockVec& dx) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < x.mats.size(); ++k) {
        const int n = x.mats[k].rows();
        if (n == 0) continue;
        Mat l = x.mats[k];
        if (!cholesky(l, 0.0)) {
            double a = 1.0;
            while (a > 1e-13) {
                Mat t = x.mats[k];
                const double* dp = dx.mats[k].data();
                double* tp = t.data();
                for (std::size_t q = 0; q < std::size_t(n) * n; ++q) tp[q] += a * dp[q];
                if (cholesky(t, 0.0)) break;
                a *= 0.8;
            }
            alpha = std::min(alpha, a);
            continue;
        }
        // y = L^{-1} dX, b = y L^{-T}; work column by column
        Mat y(n, n);
        for (int c = 0; c < n; ++c) {
            for (int i = 0; i < n; ++i) {
                double s = dx.mats[k](i, c);
                for (int t = 0; t < i; ++t) s -= l(i, t) * y(t, c);
                y(i, c) = s / l(i, i);
            }
        }
        Mat bmat(n, n);
        for (int r = 0; r < n; ++r) {
            for (int i = 0; i < n; ++i) {
                double s = y(r, i);
                for (int t = 0; t < i; ++t) s -= l(i, t) * bmat(r, t);
                bmat(r, i) = s / l(i, i);
            }
        }
        bmat.symmetrize();
        double lam = sym_eigen(bmat).values.front();
        if (lam < 0.0) alpha = std::min(alpha, -1.0 / lam);
    }
    for (std::size_t t = 0; t < x.diag.size(); ++t)
        if (dx.diag[t] < 0.0) alpha = std::min(alpha, -x.diag[t] / dx.diag[t]);
    return alpha;
}

BlockVec inverse_psd(const BlockVec& s, bool& ok) {
    BlockVec inv;
    inv.mats.reserve(s.mats.size());
    ok = true;
    for (const auto& m : s.mats) {
        Mat l = m;
        if (!cholesky(l, 0.0)) {
            ok = false;
            inv.mats.push_back(Mat(m.rows(), m.cols()));
            continue;
        }
        inv.mats.push_back(cholesky_inverse(l));
    }
    inv.diag.resize(s.diag.size());
    for (std::size_t t = 0; t < s.diag.size(); ++t) {
        if (s.diag[t] <= 0.0) ok = false;
        inv.diag[t] = 1.0 / s.diag[t];
    }
    return inv;
}

} // namespace

Mat schur_complement(const SdpProblem& p, const BlockVec& w1, const BlockVec& w2) {
    Workspace w = build_workspace(p);
    return schur_from_workspace(w, p.constraint_count(), w1, w2, true);
}

Mat schur_complement_serial(const SdpProblem& p, const BlockVec& w1, const BlockVec& w2) {
    Workspace w = build_workspace(p);
    return schur_from_workspace(w, p.constraint_count(), w1, w2, false);
}

namespace {

// presolve: drop linearly dependent constraint rows, detected through a
// pivoted Cholesky of the constraint Gram matrix
std::vector<int> independent_rows(const SdpProblem& p) {
    const int m = p.constraint_count();
    BlockVec eye = BlockVec::identity_like(p.blocks, p.diag_size, 1.0);
    Mat gram = schur_complement(p, eye, eye); // tr(A_a A_b)
    double scale = 1e-300;
    for (int i = 0; i < m; ++i) scale = std::max(scale, gram(i, i));
    std::vector<int> keep;
    std::vector<char> dropped(m, 0);
    Mat l(m, m);
    for (int j = 0; j < m; ++j) {
        double d = gram(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= 1e-12 * scale) {
            dropped[j] = 1; // row in the span of earlier rows
            for (int k = 0; k < j; ++k) l(j, k) = 0.0;
            l(j, j) = 1.0; // inert pivot
            continue;
        }
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < m; ++i) {
            double s = gram(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = dropped[j] ? 0.0 : s / l(j, j);
        }
    }
    for (int j = 0; j < m; ++j)
        if (!dropped[j]) keep.push_back(j);
    return keep;
}

} // namespace

SdpSolution solve(const SdpProblem& p, const SdpOptions& opt) {
    {
        const int order0 = p.total_order();
        if (order0 > caps().sdp_order) throw SizeCapExceeded("sdp: order exceeds cap");
        if (p.constraint_count() > caps().sdp_constraints)
            throw SizeCapExceeded("sdp: constraint count exceeds cap");
    }

    std::vector<int> rows = independent_rows(p);
    if (int(rows.size()) != p.constraint_count()) {
        SdpProblem reduced;
        reduced.blocks = p.blocks;
        reduced.diag_size = p.diag_size;
        reduced.C = p.C;
        for (int k : rows) reduced.add_constraint(p.constraints[k], p.b[k]);
        SdpSolution sol = solve(reduced, opt);
        sol.dropped_constraints = p.constraint_count() - int(rows.size());
        std::vector<double> y(p.constraint_count(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) y[rows[i]] = sol.y[i];
        sol.y = std::move(y);
        return sol;
    }

    const int m = p.constraint_count();
    const int order = p.total_order();
    SdpSolution sol;
    double b_inf = 0.0;
    for (double v : p.b) b_inf = std::max(b_inf, std::fabs(v));
    const double c_inf = p.C.max_abs();

    const double tau = 1.0 + b_inf;
    const double rho = 1.0 + c_inf + b_inf;
    BlockVec X = BlockVec::identity_like(p.blocks, p.diag_size, tau);
    BlockVec S = BlockVec::identity_like(p.blocks, p.diag_size, rho);
    std::vector<double> y(m, 0.0);
    const double n_total = std::max(1, order);

    Workspace work = build_workspace(p);

    auto apply_all = [&](const BlockVec& v) {
        std::vector<double> out(m);
        for (int k = 0; k < m; ++k) out[k] = p.apply_constraint(k, v);
        return out;
    };

    sol.status = SdpStatus::IterationLimit;
    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        sol.iterations = iter;

        std::vector<double> ax = apply_all(X);
        std::vector<double> rp(m);
        double rp_inf = 0.0;
        for (int k = 0; k < m; ++k) {
            rp[k] = p.b[k] - ax[k];
            rp_inf = std::max(rp_inf, std::fabs(rp[k]));
        }
        BlockVec Rd = p.C;
        Rd.axpy(-1.0, S);
        for (int k = 0; k < m; ++k) p.add_scaled_constraint(k, -y[k], Rd);
        double rd_inf = Rd.max_abs();

        double pobj = dot(p.C, X);
        double dobj = 0.0;
        for (int k = 0; k < m; ++k) dobj += p.b[k] * y[k];
        double mu = dot(X, S) / n_total;
        double rel_gap = std::fabs(pobj - dobj) / (1.0 + std::max(std::fabs(pobj), std::fabs(dobj)));

        sol.primal_objective = pobj;
        sol.dual_objective = dobj;
        sol.gap = rel_gap;
        sol.primal_residual = rp_inf;
        sol.dual_residual = rd_inf;

        if (rel_gap <= opt.gap_tol && rp_inf <= opt.res_tol * (1.0 + b_inf) &&
            rd_inf <= opt.res_tol * (1.0 + c_inf)) {
            sol.status = SdpStatus::Optimal;
            break;
        }
        if (std::fabs(dobj) > opt.objective_bound || std::fabs(pobj) > opt.objective_bound) {
            sol.status = SdpStatus::Infeasible;
            break;
        }

        bool ok = true;
        BlockVec Sinv = inverse_psd(S, ok);
        if (!ok) {
            sol.status = SdpStatus::NumericalFailure;
            break;
        }

        Mat schur = schur_from_workspace(work, m, Sinv, X, true);
        Mat chol = schur;
        bool fact = cholesky(chol, 0.0);
        if (!fact) {
            // ridge retries; persistent failure on the first iteration points
            // at dependent constraint rows
            double ridge = 1e-14;
            for (int t = 0; t < 4 && !fact; ++t) {
                chol = schur;
                double dmax = 1.0;
                for (int i = 0; i < m; ++i) dmax = std::max(dmax, schur(i, i));
                for (int i = 0; i < m; ++i) chol(i, i) += ridge * dmax;
                fact = cholesky(chol, 0.0);
                ridge *= 1e3;
            }
            if (!fact) {
                sol.status = SdpStatus::NumericalFailure;
                break;
            }
        }

        BlockVec XRd = block_mul(X, Rd);

        auto direction = [&](const BlockVec& rc, std::vector<double>& dy_out, BlockVec& dx_out,
                             BlockVec& ds_out) {
            BlockVec g = rc;
            g.axpy(-1.0, XRd);
            BlockVec gs = block_mul(g, Sinv);
            gs.symmetrize(); // apply_constraint reads upper entries only
            std::vector<double> rhs = apply_all(gs);
            for (int k = 0; k < m; ++k) rhs[k] = rp[k] - rhs[k];
            dy_out = cholesky_solve(chol, rhs);
            ds_out = Rd;
            for (int k = 0; k < m; ++k) p.add_scaled_constraint(k, -dy_out[k], ds_out);
            BlockVec xds = block_mul(X, ds_out);
            BlockVec num = rc;
            num.axpy(-1.0, xds);
            dx_out = block_mul(num, Sinv);
            dx_out.symmetrize();
        };

        // predictor
        BlockVec xs = block_mul(X, S);
        xs.scale(-1.0); // -X S
        std::vector<double> dy_aff;
        BlockVec dx_aff, ds_aff;
        direction(xs, dy_aff, dx_aff, ds_aff);

        double ap_aff = std::min(1.0, max_step(X, dx_aff));
        double ad_aff = std::min(1.0, max_step(S, ds_aff));
        BlockVec x_try = X;
        x_try.axpy(ap_aff, dx_aff);
        BlockVec s_try = S;
        s_try.axpy(ad_aff, ds_aff);
        double mu_aff = dot(x_try, s_try) / n_total;
        double sigma = std::pow(std::clamp(mu_aff / std::max(mu, 1e-300), 0.0, 1.0), 3.0);

        // residuals must shrink in step with mu, or the Schur system turns
        // hopeless before feasibility is reached; keep centering until then
        const bool infeasible_phase = rp_inf > 0.1 * opt.res_tol * (1.0 + b_inf) ||
                                      rd_inf > 0.1 * opt.res_tol * (1.0 + c_inf);
        if (infeasible_phase) sigma = std::max(sigma, 0.2);

        // corrector
        BlockVec rc = xs;
        BlockVec cross = block_mul(dx_aff, ds_aff);
        rc.axpy(-1.0, cross);
        for (auto& mat : rc.mats)
            for (int i = 0; i < mat.rows(); ++i) mat(i, i) += sigma * mu;
        for (auto& dgl : rc.diag) dgl += sigma * mu;

        std::vector<double> dy;
        BlockVec dx, ds;
        direction(rc, dy, dx, ds);

        double ap = std::min(1.0, opt.step_fraction * max_step(X, dx));
        double ad = std::min(1.0, opt.step_fraction * max_step(S, ds));
        if (infeasible_phase) ap = ad = std::min(ap, ad);
#ifdef PB_SDP_TRACE
        std::fprintf(stderr, "it %3d mu=%9.2e gap=%9.2e rp=%9.2e sigma=%9.2e ap=%9.2e ad=%9.2e\n",
                     iter, mu, rel_gap, rp_inf, sigma, ap, ad);
#endif
        if (ap < 1e-10 && ad < 1e-10) {
            sol.status = SdpStatus::NumericalFailure;
            break;
        }

        X.axpy(ap, dx);
        S.axpy(ad, ds);
        for (int k = 0; k < m; ++k) y[k] += ad * dy[k];
    }

    sol.X = std::move(X);
    sol.S = std::move(S);
    sol.y = std::move(y);
    return sol;
}

namespace {
std::mutex g_stats_mu;
CertifyStats g_stats;
} // namespace

SdpSolution solve_certified(const SdpProblem& p, const SdpOptions& opt) {
    SdpSolution sol = solve(p, opt);
    if (sol.status == SdpStatus::Optimal) {
        CertifyReport cr = certify(sol, p);
        std::lock_guard<std::mutex> lock(g_stats_mu);
        ++g_stats.performed;
        if (!cr.ok) {
            ++g_stats.failed;
            sol.status = SdpStatus::NumericalFailure;
        }
    }
    return sol;
}

CertifyStats certify_stats() {
    std::lock_guard<std::mutex> lock(g_stats_mu);
    return g_stats;
}

void reset_certify_stats() {
    std::lock_guard<std::mutex> lock(g_stats_mu);
    g_stats = CertifyStats{};
}

CertifyReport certify(const SdpSolution& sol, const SdpProblem& p) {
    CertifyReport r;
    const double floor_tol = tols().psd_floor;

    double min_x = std::numeric_limits<double>::infinity();
    double max_x = 1.0;
    for (const auto& m : sol.X.mats) {
        if (m.rows() == 0) continue;
        auto ev = sym_eigen(m).values;
        min_x = std::min(min_x, ev.front());
        max_x = std::max(max_x, std::fabs(ev.back()));
    }
    for (double d : sol.X.diag) {
        min_x = std::min(min_x, d);
        max_x = std::max(max_x, std::fabs(d));
    }
    double min_s = std::numeric_limits<double>::infinity();
    double max_s = 1.0;
    for (const auto& m : sol.S.mats) {
        if (m.rows() == 0) continue;
        auto ev = sym_eigen(m).values;
        min_s = std::min(min_s, ev.front());
        max_s = std::max(max_s, std::fabs(ev.back()));
    }
    for (double d : sol.S.diag) {
        min_s = std::min(min_s, d);
        max_s = std::max(max_s, std::fabs(d));
    }
    if (sol.X.mats.empty() && sol.X.diag.empty()) min_x = 0.0;
    if (sol.S.mats.empty() && sol.S.diag.empty()) min_s = 0.0;
    r.min_eig_x = min_x;
    r.min_eig_s = min_s;

    double b_inf = 0.0;
    for (double v : p.b) b_inf = std::max(b_inf, std::fabs(v));
    for (int k = 0; k < p.constraint_count(); ++k)
        r.primal_residual = std::max(r.primal_residual, std::fabs(p.apply_constraint(k, sol.X) - p.b[k]));
    BlockVec rd = p.C;
    rd.axpy(-1.0, sol.S);
    for (int k = 0; k < p.constraint_count(); ++k) p.add_scaled_constraint(k, -sol.y[k], rd);
    r.dual_residual = rd.max_abs();

    double pobj = dot(p.C, sol.X);
    double dobj = 0.0;
    for (int k = 0; k < p.constraint_count(); ++k) dobj += p.b[k] * sol.y[k];
    r.gap = std::fabs(pobj - dobj);

    r.ok = true;
    if (min_x < -floor_tol * max_x) {
        r.ok = false;
        r.failure = "primal eigenvalue floor";
    } else if (min_s < -floor_tol * max_s) {
        r.ok = false;
        r.failure = "dual eigenvalue floor";
    } else if (r.primal_residual > 10.0 * tols().sdp_res * (1.0 + b_inf)) {
        r.ok = false;
        r.failure = "primal residual";
    } else if (r.dual_residual > 10.0 * tols().sdp_res * (1.0 + p.C.max_abs())) {
        r.ok = false;
        r.failure = "dual residual";
    } else if (r.gap > std::max(1e-6, 10.0 * tols().sdp_gap) * (1.0 + std::fabs(pobj) + std::fabs(dobj))) {
        r.ok = false;
        r.failure = "duality gap";
    }
    return r;
}

} // namespace pb
