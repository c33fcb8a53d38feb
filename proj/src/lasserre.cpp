#include "packbound/lasserre.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>

#include <json.hpp>

namespace pb {

int IndependentSetFamily::find(const std::vector<int>& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
}

namespace {

void gen_sets(const Graph& g, int k, int start, std::vector<int>& cur,
              std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v < g.vertex_count(); ++v) {
        bool ok = true;
        for (int u : cur)
            if (g.has_edge(u, v)) { ok = false; break; }
        if (!ok) continue;
        cur.push_back(v);
        gen_sets(g, k, v + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

IndependentSetFamily enumerate_independent_sets(const Graph& g, int t) {
    IndependentSetFamily fam;
    fam.t = t;
    std::vector<int> cur;
    for (int k = 0; k <= t; ++k) {
        gen_sets(g, k, 0, cur, fam.sets);
        if (fam.sets.size() > caps().iset_family)
            throw SizeCapExceeded("enumerate_independent_sets: family cap exceeded");
    }
    for (int i = 0; i < int(fam.sets.size()); ++i) fam.index[fam.sets[i]] = i;
    return fam;
}

std::vector<double> at_operator(const IndependentSetFamily& fam_t, const IndependentSetFamily& fam_2t,
                                const Mat& k) {
    std::vector<double> out(fam_2t.sets.size(), 0.0);
    for (std::size_t si = 0; si < fam_2t.sets.size(); ++si) {
        const auto& s = fam_2t.sets[si];
        const int n = int(s.size());
        const unsigned full = (n == 0) ? 0u : ((1u << n) - 1u);
        double acc = 0.0;
        for (unsigned a = 0;; ++a) {
            if (a > full) break;
            if (std::popcount(a) > fam_t.t) continue;
            std::vector<int> j;
            for (int bit = 0; bit < n; ++bit)
                if ((a >> bit) & 1) j.push_back(s[bit]);
            int ja = fam_t.find(j);
            if (ja < 0) continue;
            const unsigned required = full & ~a;
            // J' = required | (subset of a)
            for (unsigned c = a;; c = (c - 1) & a) {
                unsigned bmask = required | c;
                if (std::popcount(bmask) <= fam_t.t) {
                    std::vector<int> jb;
                    for (int bit = 0; bit < n; ++bit)
                        if ((bmask >> bit) & 1) jb.push_back(s[bit]);
                    int jbidx = fam_t.find(jb);
                    if (jbidx >= 0) acc += k(ja, jbidx);
                }
                if (c == 0) break;
            }
        }
        out[si] = acc;
    }
    return out;
}

namespace {

// union of two sorted vertex lists; empty result means "not a valid class"
bool union_class(const Graph& g, const std::vector<int>& a, const std::vector<int>& b, int two_t,
                 std::vector<int>& u) {
    u.clear();
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    if (int(u.size()) > two_t) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (g.has_edge(u[i], u[j])) return false;
    return true;
}

Mat adjoint_impl(const Graph& g, const IndependentSetFamily& fam_t, const IndependentSetFamily& fam_2t,
                 const std::vector<double>& mv, bool parallel) {
    const int n = fam_t.size();
    Mat m(n, n);
#pragma omp parallel for schedule(dynamic, 4) if (parallel && n >= 48)
    for (int a = 0; a < n; ++a) {
        std::vector<int> u;
        for (int b = a; b < n; ++b) {
            if (!union_class(g, fam_t.sets[a], fam_t.sets[b], fam_2t.t, u)) continue;
            int s = fam_2t.find(u);
            if (s < 0) continue;
            m(a, b) = mv[s];
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) m(b, a) = m(a, b);
    return m;
}

} // namespace

Mat at_adjoint_matrix(const Graph& g, const IndependentSetFamily& fam_t,
                      const IndependentSetFamily& fam_2t, const std::vector<double>& mv) {
    return adjoint_impl(g, fam_t, fam_2t, mv, true);
}

Mat at_adjoint_matrix_serial(const Graph& g, const IndependentSetFamily& fam_t,
                             const IndependentSetFamily& fam_2t, const std::vector<double>& mv) {
    return adjoint_impl(g, fam_t, fam_2t, mv, false);
}

Mat at_adjoint_matrix(const Graph& g, const MomentVector& mv) {
    if (mv.family.t % 2 != 0) throw std::invalid_argument("MomentVector family must sit at level 2t");
    if (mv.values.empty() || mv.values[0] != 1.0)
        throw std::invalid_argument("MomentVector: value at the empty set must be 1");
    IndependentSetFamily fam_t = enumerate_independent_sets(g, mv.family.t / 2);
    return adjoint_impl(g, fam_t, mv.family, mv.values, true);
}

namespace {

void check_level(const Graph& g, int t) {
    if (t < 1) throw std::invalid_argument("lasserre: t must be >= 1");
    if (t > caps().las_level)
        throw SizeCapExceeded("lasserre: t=" + std::to_string(t) + " exceeds cap");
    (void)g;
}

struct CellStructure {
    IndependentSetFamily fam_t, fam_2t;
    // per class (index into fam_2t.sets): unordered cells (a <= b) whose union is the class
    std::vector<std::vector<std::pair<int, int>>> classes;
    std::vector<std::pair<int, int>> zero_cells;
};

CellStructure build_cells(const Graph& g, int t) {
    CellStructure cs;
    cs.fam_t = enumerate_independent_sets(g, t);
    cs.fam_2t = enumerate_independent_sets(g, 2 * t);
    if (cs.fam_2t.sets.size() > caps().las_i2t)
        throw SizeCapExceeded("lasserre: |I_2t| exceeds assembly cap");
    cs.classes.resize(cs.fam_2t.sets.size());
    const int n = cs.fam_t.size();
    std::vector<int> u;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            if (!union_class(g, cs.fam_t.sets[a], cs.fam_t.sets[b], 2 * t, u)) {
                cs.zero_cells.push_back({a, b});
                continue;
            }
            int s = cs.fam_2t.find(u);
            cs.classes[s].push_back({a, b});
        }
    return cs;
}

double cell_weight(int a, int b) { return a == b ? 2.0 : 1.0; } // makes <entry,X> = 2 X_ab

SdpSolution run(const SdpProblem& p) { return solve_certified(p); }

LasSolve moment_program(const Graph& g, int t, bool nonneg) {
    check_level(g, t);
    CellStructure cs = build_cells(g, t);
    const int nt = cs.fam_t.size();

    SdpProblem p;
    p.add_dense_block(nt);
    if (nonneg)
        for (std::size_t s = 1; s < cs.classes.size(); ++s) p.add_diag_entry();
    p.init_objective();

    // objective: maximize sum over singleton classes of their representative
    for (std::size_t s = 0; s < cs.classes.size(); ++s) {
        if (cs.fam_2t.sets[s].size() != 1) continue;
        auto [a, b] = cs.classes[s].front();
        if (a == b) {
            p.C.mats[0](a, a) = -1.0;
        } else {
            p.C.mats[0](a, b) += -0.5;
            p.C.mats[0](b, a) += -0.5;
        }
    }

    p.add_constraint({{0, 0, 0, 1.0}}, 1.0); // lambda(empty) = 1
    for (auto [a, b] : cs.zero_cells) p.add_constraint({{0, a, b, 1.0}}, 0.0);
    int slack = 0;
    for (std::size_t s = 1; s < cs.classes.size(); ++s) {
        auto [ra, rb] = cs.classes[s].front();
        for (std::size_t c = 1; c < cs.classes[s].size(); ++c) {
            auto [a, b] = cs.classes[s][c];
            p.add_constraint({{0, ra, rb, cell_weight(ra, rb)}, {0, a, b, -cell_weight(a, b)}}, 0.0);
        }
        if (nonneg) {
            p.add_constraint({{0, ra, rb, cell_weight(ra, rb)}, {-1, slack, slack, -2.0}}, 0.0);
            ++slack;
        }
    }

    SdpSolution sol = run(p);
    LasSolve out;
    out.value = -sol.primal_objective;
    out.status = sol.status;
    out.gap = sol.gap;
    return out;
}

} // namespace

LasSolve las_prime(const Graph& g, int t) { return moment_program(g, t, true); }

LasSolve las_plain(const Graph& g, int t) { return moment_program(g, t, false); }

LasSolve las_prime_schur(const Graph& g, int t) {
    // same optimum as las_prime, assembled through the bordered lifting: the
    // measure lives on I_2t minus the empty set and the border row carries it
    check_level(g, t);
    IndependentSetFamily fam_t = enumerate_independent_sets(g, t);
    IndependentSetFamily fam_2t = enumerate_independent_sets(g, 2 * t);
    if (fam_2t.sets.size() > caps().las_i2t)
        throw SizeCapExceeded("lasserre: |I_2t| exceeds assembly cap");
    const int nt = fam_t.size();

    SdpProblem p;
    p.add_dense_block(nt);
    for (std::size_t s = 1; s < fam_2t.sets.size(); ++s) p.add_diag_entry();
    p.init_objective();

    p.add_constraint({{0, 0, 0, 1.0}}, 1.0);

    // cells generated from the class side, by splitting each S
    std::vector<std::vector<std::pair<int, int>>> cells(fam_2t.sets.size());
    for (std::size_t si = 1; si < fam_2t.sets.size(); ++si) {
        const auto& s = fam_2t.sets[si];
        const int k = int(s.size());
        const unsigned full = (1u << k) - 1u;
        for (unsigned a = 0; a <= full; ++a) {
            if (std::popcount(a) > t) continue;
            std::vector<int> j;
            for (int bit = 0; bit < k; ++bit)
                if ((a >> bit) & 1) j.push_back(s[bit]);
            int ja = fam_t.find(j);
            if (ja < 0) continue;
            const unsigned required = full & ~a;
            for (unsigned c = a;; c = (c - 1) & a) {
                unsigned bmask = required | c;
                if (std::popcount(bmask) <= t) {
                    std::vector<int> jb;
                    for (int bit = 0; bit < k; ++bit)
                        if ((bmask >> bit) & 1) jb.push_back(s[bit]);
                    int jbidx = fam_t.find(jb);
                    if (jbidx >= 0 && jbidx >= ja) cells[si].push_back({ja, jbidx});
                }
                if (c == 0) break;
            }
        }
        std::sort(cells[si].begin(), cells[si].end());
        cells[si].erase(std::unique(cells[si].begin(), cells[si].end()), cells[si].end());
    }

    // border representative for small classes, balanced split otherwise
    auto rep_of = [&](std::size_t si) -> std::pair<int, int> {
        const auto& s = fam_2t.sets[si];
        if (int(s.size()) <= t) return {0, fam_t.find(s)};
        std::vector<int> head(s.begin(), s.begin() + t);
        std::vector<int> tail(s.begin() + t, s.end());
        int a = fam_t.find(head), b = fam_t.find(tail);
        if (a > b) std::swap(a, b);
        return {a, b};
    };

    // objective from border entries of singletons
    for (std::size_t si = 1; si < fam_2t.sets.size(); ++si) {
        if (fam_2t.sets[si].size() != 1) continue;
        auto [a, b] = rep_of(si);
        p.C.mats[0](a, b) += -0.5;
        p.C.mats[0](b, a) += -0.5;
    }

    int slack = 0;
    for (std::size_t si = 1; si < fam_2t.sets.size(); ++si) {
        auto [ra, rb] = rep_of(si);
        for (auto [a, b] : cells[si]) {
            if (a == ra && b == rb) continue;
            p.add_constraint({{0, ra, rb, cell_weight(ra, rb)}, {0, a, b, -cell_weight(a, b)}}, 0.0);
        }
        p.add_constraint({{0, ra, rb, cell_weight(ra, rb)}, {-1, slack, slack, -2.0}}, 0.0);
        ++slack;
    }

    // structural zeros: unions that leave I_2t
    std::vector<int> u;
    for (int a = 0; a < nt; ++a)
        for (int b = a; b < nt; ++b)
            if (!union_class(g, fam_t.sets[a], fam_t.sets[b], 2 * t, u))
                p.add_constraint({{0, a, b, 1.0}}, 0.0);

    SdpSolution sol = run(p);
    LasSolve out;
    out.value = -sol.primal_objective;
    out.status = sol.status;
    out.gap = sol.gap;
    return out;
}

LasSolve las_prime_dual(const Graph& g, int t) {
    check_level(g, t);
    CellStructure cs = build_cells(g, t);
    const int nt = cs.fam_t.size();

    SdpProblem p;
    p.add_dense_block(nt);
    for (std::size_t s = 1; s < cs.classes.size(); ++s) p.add_diag_entry();
    p.init_objective();
    p.C.mats[0](0, 0) = 1.0; // minimize K(empty, empty)

    int slack = 0;
    for (std::size_t s = 1; s < cs.classes.size(); ++s) {
        // A_t K (S) + slack = -1 for singletons, 0 for |S| >= 2
        std::vector<SdpProblem::Entry> entries;
        for (auto [a, b] : cs.classes[s]) entries.push_back({0, a, b, 1.0});
        entries.push_back({-1, slack, slack, 1.0});
        ++slack;
        p.add_constraint(std::move(entries), cs.fam_2t.sets[s].size() == 1 ? -1.0 : 0.0);
    }

    SdpSolution sol = run(p);
    LasSolve out;
    out.value = sol.primal_objective;
    out.status = sol.status;
    out.gap = sol.gap;
    return out;
}

double las_on_points(const PointConfiguration& c, int t) {
    // keyed by conflict structure: the bound only sees the graph
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, double> cache;
    Graph g = conflict_graph(c);
    auto key = std::make_pair(g.canonical_hash(), t);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    LasSolve s = las_prime(g, t);
    if (s.status != SdpStatus::Optimal)
        throw std::runtime_error(std::string("lasserre solve failed: ") + to_string(s.status));
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = s.value;
    return s.value;
}

LasReport las_report(const Graph& g, int t) {
    LasReport r;
    r.graph_hash = g.canonical_hash();
    r.t = t;
    LasSolve lp = las_prime(g, t);
    LasSolve pl = las_plain(g, t);
    LasSolve du = las_prime_dual(g, t);
    r.las_prime_value = lp.value;
    r.las_plain_value = pl.value;
    r.dual_value = du.value;
    r.status = lp.status;
    IndependentSetFamily fam = enumerate_independent_sets(g, 2 * t);
    r.family_sizes.assign(2 * t + 1, 0);
    for (const auto& s : fam.sets)
        for (int k = int(s.size()); k <= 2 * t; ++k) ++r.family_sizes[k];
    return r;
}

std::string las_report_json(const LasReport& r) {
    nlohmann::json j;
    j["graph_hash"] = r.graph_hash;
    j["t"] = r.t;
    j["las_prime"] = r.las_prime_value;
    j["las_plain"] = r.las_plain_value;
    j["dual_value"] = r.dual_value;
    j["family_sizes"] = r.family_sizes;
    j["status"] = to_string(r.status);
    return j.dump();
}

CorrelationRecord periodic_correlation_restriction(const PeriodicPacking& pp, int t,
                                                   const WindowBox& window) {
    if (pp.dim < 1 || pp.dim > 2) throw InvalidLattice("dimension must be 1 or 2");
    if (int(pp.basis.size()) != pp.dim) throw InvalidLattice("basis vector count != dim");
    for (const auto& v : pp.basis)
        if (int(v.size()) != pp.dim) throw InvalidLattice("basis vector length != dim");
    if (pp.translates.empty()) throw InvalidLattice("no translates");
    if (int(window.lo.size()) != pp.dim || int(window.hi.size()) != pp.dim)
        throw InvalidLattice("window dimension mismatch");
    if (t < 1 || t > caps().las_level) throw SizeCapExceeded("correlation: t out of range");

    double vol;
    if (pp.dim == 1) {
        vol = std::fabs(pp.basis[0][0]);
    } else {
        vol = std::fabs(pp.basis[0][0] * pp.basis[1][1] - pp.basis[0][1] * pp.basis[1][0]);
    }
    if (vol < 1e-12) throw InvalidLattice("degenerate basis");

    // generate packing points in the window plus a margin for validation
    double margin = 4.0;
    double extent = margin;
    for (int k = 0; k < pp.dim; ++k) extent = std::max(extent, window.hi[k] - window.lo[k] + 2.0 * margin);
    double min_basis = 1e300;
    for (const auto& v : pp.basis) {
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        min_basis = std::min(min_basis, std::sqrt(nrm));
    }
    int reach = int(std::ceil(extent / std::max(min_basis, 1e-9))) + 2;
    if (reach > 2000) throw InvalidLattice("window too large for lattice enumeration");

    std::vector<Point> margin_pts;
    std::vector<Point> window_pts;
    auto consider = [&](const Point& p) {
        bool in_margin = true, in_window = true;
        for (int k = 0; k < pp.dim; ++k) {
            if (p[k] < window.lo[k] - margin || p[k] > window.hi[k] + margin) in_margin = false;
            if (p[k] < window.lo[k] - 1e-12 || p[k] > window.hi[k] + 1e-12) in_window = false;
        }
        if (in_margin) margin_pts.push_back(p);
        if (in_window) window_pts.push_back(p);
    };
    if (pp.dim == 1) {
        for (int k = -reach; k <= reach; ++k)
            for (const auto& tr : pp.translates) consider({k * pp.basis[0][0] + tr[0]});
    } else {
        for (int k1 = -reach; k1 <= reach; ++k1)
            for (int k2 = -reach; k2 <= reach; ++k2)
                for (const auto& tr : pp.translates)
                    consider({k1 * pp.basis[0][0] + k2 * pp.basis[1][0] + tr[0],
                              k1 * pp.basis[0][1] + k2 * pp.basis[1][1] + tr[1]});
    }
    for (std::size_t i = 0; i < margin_pts.size(); ++i)
        for (std::size_t j = i + 1; j < margin_pts.size(); ++j)
            if (dist(margin_pts[i], margin_pts[j]) < 2.0 - tols().geom)
                throw InvalidLattice("point set is not a packing");

    std::sort(window_pts.begin(), window_pts.end());

    CorrelationRecord rec;
    rec.cell_volume = vol;
    rec.center_density = double(pp.translates.size()) / vol;
    rec.points = window_pts;
    rec.window_points = int(window_pts.size());

    // every subset of a packing is independent; enumerate up to size 2t
    const int n = int(window_pts.size());
    std::vector<int> cur;
    std::vector<std::vector<int>> sets;
    sets.push_back({});
    std::function<void(int, int)> grow = [&](int start, int need) {
        if (need == 0) return;
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            sets.push_back(cur);
            if (sets.size() > caps().iset_family) throw SizeCapExceeded("correlation: subset cap");
            grow(v + 1, need - 1);
            cur.pop_back();
        }
    };
    grow(0, 2 * t);
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    rec.sets = sets;
    rec.weights.assign(sets.size(), 1.0 / vol);
    rec.weights[0] = 1.0;

    // PSD check over interior points only (boundary pairs are clipped)
    std::vector<int> interior;
    for (int i = 0; i < n; ++i) {
        bool ok = true;
        for (int k = 0; k < pp.dim; ++k)
            if (window_pts[i][k] - window.lo[k] < 4.0 * t || window.hi[k] - window_pts[i][k] < 4.0 * t)
                ok = false;
        if (ok) interior.push_back(i);
    }
    rec.interior_points = int(interior.size());

    std::vector<std::vector<int>> it_sets;
    it_sets.push_back({});
    std::vector<int> cur2;
    std::function<void(int, int)> grow2 = [&](int start, int need) {
        if (need == 0) return;
        for (std::size_t v = start; v < interior.size(); ++v) {
            cur2.push_back(interior[v]);
            it_sets.push_back(cur2);
            grow2(int(v) + 1, need - 1);
            cur2.pop_back();
        }
    };
    grow2(0, t);
    const int m = int(it_sets.size());
    Mat moment(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> u;
            std::set_union(it_sets[a].begin(), it_sets[a].end(), it_sets[b].begin(), it_sets[b].end(),
                           std::back_inserter(u));
            if (int(u.size()) > 2 * t) continue;
            moment(a, b) = u.empty() ? 1.0 : 1.0 / vol;
        }
    rec.min_moment_eigenvalue = m > 0 ? min_eigenvalue(moment) : 0.0;
    rec.psd_ok = rec.min_moment_eigenvalue >= -1e-6;
    return rec;
}

} // namespace pb
