#include "packbound/theta.hpp"

#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace pb {

const char* to_string(ThetaVariant v) {
    switch (v) {
    case ThetaVariant::ThetaPlus: return "theta+";
    case ThetaVariant::Theta: return "theta";
    case ThetaVariant::ThetaPrime: return "theta'";
    }
    return "?";
}

namespace {

int theta_cap(ThetaVariant v) {
    return v == ThetaVariant::ThetaPrime ? caps().theta_prime_vertices : caps().theta_vertices;
}

void check_cap(const Graph& g, ThetaVariant v) {
    if (g.vertex_count() > theta_cap(v))
        throw SizeCapExceeded("theta: n=" + std::to_string(g.vertex_count()) + " exceeds cap for " +
                              std::string(to_string(v)));
}

SdpSolution run(const SdpProblem& p) { return solve_certified(p); }

// primal program for a fixed set of sign-constrained non-edges (theta' only
// constrains the listed pairs; exactness comes from the lazy outer loop)
SdpProblem build_primal(const Graph& g, ThetaVariant v,
                        const std::vector<std::pair<int, int>>& nonneg_pairs) {
    const int n = g.vertex_count();
    SdpProblem p;
    p.add_dense_block(n);
    if (v == ThetaVariant::ThetaPlus) {
        for (std::size_t k = 0; k < g.edges().size(); ++k) p.add_diag_entry();
    } else if (v == ThetaVariant::ThetaPrime) {
        for (std::size_t k = 0; k < nonneg_pairs.size(); ++k) p.add_diag_entry();
    }
    p.init_objective();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p.C.mats[0](i, j) = -1.0; // maximize sum of entries

    std::vector<SdpProblem::Entry> trace;
    trace.reserve(n);
    for (int i = 0; i < n; ++i) trace.push_back({0, i, i, 1.0});
    p.add_constraint(std::move(trace), 1.0);

    int slack = 0;
    for (auto [i, j] : g.edges()) {
        if (v == ThetaVariant::ThetaPlus) {
            // X_ij <= 0
            p.add_constraint({{0, i, j, 1.0}, {-1, slack, slack, 2.0}}, 0.0);
            ++slack;
        } else {
            p.add_constraint({{0, i, j, 1.0}}, 0.0);
        }
    }
    if (v == ThetaVariant::ThetaPrime) {
        for (auto [i, j] : nonneg_pairs) {
            // X_ij >= 0
            p.add_constraint({{0, i, j, 1.0}, {-1, slack, slack, -2.0}}, 0.0);
            ++slack;
        }
    }
    return p;
}

} // namespace

ThetaSolve theta_primal_solve(const Graph& g, ThetaVariant v) {
    check_cap(g, v);
    const int n = g.vertex_count();
    ThetaSolve out;
    if (n == 0) {
        out.value = 0.0;
        out.status = SdpStatus::Optimal;
        return out;
    }

    std::vector<std::pair<int, int>> nonneg;
    if (v == ThetaVariant::ThetaPrime) {
        std::vector<std::pair<int, int>> all_nonedges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!g.has_edge(i, j)) all_nonedges.push_back({i, j});
        if (all_nonedges.size() <= 800) {
            nonneg = std::move(all_nonedges); // small: constrain everything up front
        }
    }

    const int max_rounds = 40;
    for (int round = 0; round < max_rounds; ++round) {
        SdpProblem p = build_primal(g, v, nonneg);
        SdpSolution sol = run(p);
        out.value = -sol.primal_objective;
        out.status = sol.status;
        out.gap = sol.gap;
        out.matrix = sol.X.mats[0];
        if (sol.status != SdpStatus::Optimal || v != ThetaVariant::ThetaPrime) return out;

        // collect entry-sign violations; re-solve with them constrained
        std::vector<std::pair<int, int>> violated;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (g.has_edge(i, j)) continue;
                bool constrained = false;
                for (auto [a, bb] : nonneg)
                    if (a == i && bb == j) { constrained = true; break; }
                if (!constrained && out.matrix(i, j) < -1e-7) violated.push_back({i, j});
            }
        if (violated.empty()) return out;
        nonneg.insert(nonneg.end(), violated.begin(), violated.end());
    }
    out.status = SdpStatus::IterationLimit;
    return out;
}

double theta_primal(const Graph& g, ThetaVariant v) {
    ThetaSolve s = theta_primal_solve(g, v);
    if (s.status != SdpStatus::Optimal)
        throw std::runtime_error(std::string("theta primal solve failed: ") + to_string(s.status));
    return s.value;
}

ThetaSolve theta_dual_solve(const Graph& g, ThetaVariant v) {
    check_cap(g, v);
    const int n = g.vertex_count();
    ThetaSolve out;
    if (n == 0) {
        out.value = 0.0;
        out.status = SdpStatus::Optimal;
        return out;
    }

    SdpProblem p;
    p.add_dense_block(n);
    std::vector<std::pair<int, int>> nonedges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) nonedges.push_back({i, j});
    int slack_count = 0;
    if (v == ThetaVariant::ThetaPrime) slack_count = int(nonedges.size());
    if (v == ThetaVariant::ThetaPlus) slack_count = g.edge_count();
    for (int k = 0; k < slack_count; ++k) p.add_diag_entry();
    p.init_objective();
    p.C.mats[0](0, 0) = 1.0; // minimize K(0,0); t = K(0,0) + 1

    for (int i = 1; i < n; ++i)
        p.add_constraint({{0, i, i, 1.0}, {0, 0, 0, -1.0}}, 0.0); // constant diagonal

    int slack = 0;
    for (auto [i, j] : nonedges) {
        if (v == ThetaVariant::ThetaPrime) {
            // K_ij <= -1
            p.add_constraint({{0, i, j, 1.0}, {-1, slack, slack, 2.0}}, -2.0);
            ++slack;
        } else {
            p.add_constraint({{0, i, j, 1.0}}, -2.0); // K_ij = -1
        }
    }
    if (v == ThetaVariant::ThetaPlus) {
        for (auto [i, j] : g.edges()) {
            // K_ij >= -1
            p.add_constraint({{0, i, j, 1.0}, {-1, slack, slack, -2.0}}, -2.0);
            ++slack;
        }
    }

    SdpSolution sol = run(p);
    out.value = sol.primal_objective + 1.0;
    out.status = sol.status;
    out.gap = sol.gap;
    out.matrix = sol.X.mats[0];
    return out;
}

double theta_dual(const Graph& g, ThetaVariant v) {
    ThetaSolve s = theta_dual_solve(g, v);
    if (s.status != SdpStatus::Optimal)
        throw std::runtime_error(std::string("theta dual solve failed: ") + to_string(s.status));
    return s.value;
}

namespace {

struct CacheKey {
    std::uint64_t hash;
    ThetaVariant v;
    bool operator==(const CacheKey& o) const { return hash == o.hash && v == o.v; }
};

struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const {
        return std::size_t(k.hash ^ (std::uint64_t(k.v) * 0x9e3779b97f4a7c15ull));
    }
};

} // namespace

double theta_bound_on_points(const PointConfiguration& c, ThetaVariant v) {
    static std::mutex mu;
    static std::unordered_map<CacheKey, double, CacheKeyHash> cache;
    Graph g = conflict_graph(c);
    CacheKey key{g.canonical_hash(), v};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double value = theta_primal(g, v);
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = value; // last writer wins on identical keys
    return value;
}

double check_dual_feasible(const Graph& g, const Mat& k, ThetaVariant v, double tol) {
    const int n = g.vertex_count();
    if (k.rows() != n || k.cols() != n) throw InfeasibleInput("kernel size mismatch");
    double t = k(0, 0) + 1.0;
    for (int i = 0; i < n; ++i)
        if (std::fabs(k(i, i) - (t - 1.0)) > tol) throw InfeasibleInput("kernel diagonal not constant");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool edge = g.has_edge(i, j);
            double val = k(i, j);
            if (!edge) {
                if (v == ThetaVariant::ThetaPrime) {
                    if (val > -1.0 + tol) throw InfeasibleInput("non-edge entry above -1");
                } else {
                    if (std::fabs(val + 1.0) > tol) throw InfeasibleInput("non-edge entry != -1");
                }
            } else if (v == ThetaVariant::ThetaPlus) {
                if (val < -1.0 - tol) throw InfeasibleInput("edge entry below -1");
            }
        }
    double scale = std::max(1.0, k.max_abs());
    if (min_eigenvalue(k) < -tol * scale) throw InfeasibleInput("kernel not PSD");
    return t;
}

Mat join_additivity_witness(const Graph& g, const Mat& gk, const Graph& h, const Mat& hk,
                            ThetaVariant v) {
    double tg = check_dual_feasible(g, gk, v);
    double th = check_dual_feasible(h, hk, v);
    if (tg <= 0.0 || th <= 0.0) throw InfeasibleInput("nonpositive kernel diagonal");
    const int ng = g.vertex_count(), nh = h.vertex_count();
    const double a2 = th / tg;      // alpha^2
    const double ai2 = 1.0 / a2;    // alpha^-2

    Mat k(ng + nh, ng + nh);
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j) k(i, j) = (a2 + 1.0) * gk(i, j) + a2;
    for (int i = 0; i < nh; ++i)
        for (int j = 0; j < nh; ++j) k(ng + i, ng + j) = (ai2 + 1.0) * hk(i, j) + ai2;
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < nh; ++j) {
            k(i, ng + j) = -1.0;
            k(ng + j, i) = -1.0;
        }
    return k;
}

ThetaReport theta_report(const Graph& g, ThetaVariant v) {
    auto t0 = std::chrono::steady_clock::now();
    ThetaSolve primal = theta_primal_solve(g, v);
    ThetaSolve dual = theta_dual_solve(g, v);
    auto t1 = std::chrono::steady_clock::now();
    ThetaReport r;
    r.variant = v;
    r.n = g.vertex_count();
    r.value = primal.value;
    r.dual_value = dual.value;
    r.gap = std::fabs(primal.value - dual.value);
    r.status = primal.status == SdpStatus::Optimal ? dual.status : primal.status;
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

std::string theta_report_json(const ThetaReport& r) {
    nlohmann::json j;
    j["variant"] = to_string(r.variant);
    j["n"] = r.n;
    j["value"] = r.value;
    j["dual_value"] = r.dual_value;
    j["gap"] = r.gap;
    j["status"] = to_string(r.status);
    j["wall_ms"] = r.wall_ms;
    return j.dump();
}

} // namespace pb
