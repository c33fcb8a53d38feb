#include "packbound/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pb {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64), adj_(n) {
    for (auto& row : adj_) row.assign(words_, 0);
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [i, j] : edges) add_edge(i, j);
}

void Graph::add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument("Graph: self-loop rejected");
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::invalid_argument("Graph: vertex out of range");
    if (i > j) std::swap(i, j);
    if (has_edge(i, j)) return;
    auto pos = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(i, j));
    edges_.insert(pos, {i, j});
    adj_[i][j / 64] |= std::uint64_t(1) << (j % 64);
    adj_[j][i / 64] |= std::uint64_t(1) << (i % 64);
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    return (adj_[i][j / 64] >> (j % 64)) & 1;
}

int Graph::degree(int v) const {
    int d = 0;
    for (auto w : adj_[v]) d += std::popcount(w);
    return d;
}

std::uint64_t Graph::canonical_hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ std::uint64_t(n_);
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
    };
    for (auto [i, j] : edges_) mix((std::uint64_t(i) << 32) | std::uint64_t(j));
    return h;
}

Graph Graph::read(std::istream& in) {
    int n, m;
    if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("graph header: expected \"n m\"");
    Graph g(n);
    for (int k = 0; k < m; ++k) {
        int i, j;
        if (!(in >> i >> j)) throw ParseError("graph edge list truncated");
        g.add_edge(i, j);
    }
    return g;
}

Graph Graph::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    return read(in);
}

void Graph::write(std::ostream& out) const {
    out << n_ << ' ' << edges_.size() << '\n';
    for (auto [i, j] : edges_) out << i << ' ' << j << '\n';
}

bool GraphHom::valid() const {
    if (int(map.size()) != source.vertex_count()) return false;
    for (int v : map)
        if (v < 0 || v >= target.vertex_count()) return false;
    for (auto [u, v] : source.edges())
        if (map[u] == map[v] || !target.has_edge(map[u], map[v])) return false;
    return true;
}

Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    Graph c(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) c.add_edge(i, j);
    return c;
}

Graph join(const Graph& g, const Graph& h) {
    const int ng = g.vertex_count(), nh = h.vertex_count();
    Graph j(ng + nh);
    for (auto [a, b] : g.edges()) j.add_edge(a, b);
    for (auto [a, b] : h.edges()) j.add_edge(ng + a, ng + b);
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < nh; ++b) j.add_edge(a, ng + b);
    return j;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
    const int ng = g.vertex_count();
    Graph u(ng + h.vertex_count());
    for (auto [a, b] : g.edges()) u.add_edge(a, b);
    for (auto [a, b] : h.edges()) u.add_edge(ng + a, ng + b);
    return u;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    Graph s(int(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            if (g.has_edge(keep[a], keep[b])) s.add_edge(int(a), int(b));
    return s;
}

namespace {

// Max clique by branch and bound with greedy-coloring upper bounds on
// word-packed candidate sets (Tomita-style ordering).
class CliqueSolver {
public:
    explicit CliqueSolver(const Graph& g) : g_(g), n_(g.vertex_count()), words_(g.words()) {}

    int solve() {
        if (n_ == 0) return 0;
        std::vector<std::uint64_t> cand(words_, 0);
        for (int v = 0; v < n_; ++v) cand[v / 64] |= std::uint64_t(1) << (v % 64);
        best_ = 0;
        expand(cand, 0);
        return best_;
    }

private:
    void expand(std::vector<std::uint64_t> cand, int depth) {
        std::vector<int> order;
        std::vector<int> color;
        color_sort(cand, order, color);
        for (int idx = int(order.size()) - 1; idx >= 0; --idx) {
            if (depth + color[idx] <= best_) return;
            int v = order[idx];
            std::vector<std::uint64_t> next(words_);
            bool any = false;
            const auto& row = g_.adjacency_row(v);
            for (int w = 0; w < words_; ++w) {
                next[w] = cand[w] & row[w];
                any |= next[w] != 0;
            }
            if (depth + 1 > best_) best_ = depth + 1;
            if (any) expand(next, depth + 1);
            cand[v / 64] &= ~(std::uint64_t(1) << (v % 64));
        }
    }

    // greedy sequential coloring of the candidate set; emits vertices in
    // nondecreasing color order so the bound is usable back to front
    void color_sort(const std::vector<std::uint64_t>& cand, std::vector<int>& order,
                    std::vector<int>& color) const {
        std::vector<std::uint64_t> rest = cand;
        int c = 0;
        while (true) {
            bool empty = true;
            for (auto w : rest)
                if (w) { empty = false; break; }
            if (empty) break;
            ++c;
            std::vector<std::uint64_t> avail = rest;
            while (true) {
                int v = -1;
                for (int w = 0; w < words_; ++w)
                    if (avail[w]) { v = w * 64 + std::countr_zero(avail[w]); break; }
                if (v < 0) break;
                order.push_back(v);
                color.push_back(c);
                rest[v / 64] &= ~(std::uint64_t(1) << (v % 64));
                const auto& row = g_.adjacency_row(v);
                for (int w = 0; w < words_; ++w) avail[w] &= ~row[w];
                avail[v / 64] &= ~(std::uint64_t(1) << (v % 64));
            }
        }
    }

    const Graph& g_;
    int n_, words_;
    int best_ = 0;
};

// DSATUR-ordered backtracking test for k-colorability.
class KColor {
public:
    KColor(const Graph& g, int k) : g_(g), n_(g.vertex_count()), k_(k), color_(n_, -1) {}

    bool run() { return place(0); }

private:
    bool place(int assigned) {
        if (assigned == n_) return true;
        // pick uncolored vertex with max saturation, tie-break max degree then index
        int pick = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[v] >= 0) continue;
            int sat = saturation(v);
            int deg = g_.degree(v);
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                pick = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        int max_used = 0;
        for (int v = 0; v < n_; ++v) max_used = std::max(max_used, color_[v] + 1);
        int limit = std::min(k_, max_used + 1); // color symmetry: at most one fresh color
        for (int c = 0; c < limit; ++c) {
            if (!feasible(pick, c)) continue;
            color_[pick] = c;
            if (place(assigned + 1)) return true;
            color_[pick] = -1;
        }
        return false;
    }

    int saturation(int v) const {
        std::uint64_t used = 0;
        const auto& row = g_.adjacency_row(v);
        for (int u = 0; u < n_; ++u)
            if (color_[u] >= 0 && ((row[u / 64] >> (u % 64)) & 1)) used |= std::uint64_t(1) << color_[u];
        return std::popcount(used);
    }

    bool feasible(int v, int c) const {
        const auto& row = g_.adjacency_row(v);
        for (int u = 0; u < n_; ++u)
            if (color_[u] == c && ((row[u / 64] >> (u % 64)) & 1)) return false;
        return true;
    }

    const Graph& g_;
    int n_, k_;
    std::vector<int> color_;
};

int greedy_coloring_count(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) > g.degree(b) || (g.degree(a) == g.degree(b) && a < b); });
    std::vector<int> color(n, -1);
    int used = 0;
    for (int v : order) {
        std::vector<char> taken(n + 1, 0);
        for (int u = 0; u < n; ++u)
            if (color[u] >= 0 && g.has_edge(u, v)) taken[color[u]] = 1;
        int c = 0;
        while (taken[c]) ++c;
        color[v] = c;
        used = std::max(used, c + 1);
    }
    return used;
}

} // namespace

int independence_number(const Graph& g, int cap) {
    if (cap < 0) cap = caps().alpha_vertices;
    if (g.vertex_count() > cap)
        throw SizeCapExceeded("independence_number: n=" + std::to_string(g.vertex_count()) +
                              " exceeds cap " + std::to_string(cap));
    if (g.vertex_count() == 0) return 0;
    Graph c = complement(g);
    return CliqueSolver(c).solve();
}

int clique_number(const Graph& g, int cap) {
    if (cap < 0) cap = caps().alpha_vertices;
    if (g.vertex_count() > cap)
        throw SizeCapExceeded("clique_number: n exceeds cap");
    return independence_number(complement(g), cap);
}

int chromatic_number(const Graph& g, int cap) {
    if (cap < 0) cap = caps().chi_vertices;
    const int n = g.vertex_count();
    if (n > cap) throw SizeCapExceeded("chromatic_number: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    if (n == 0) return 0;
    if (g.edge_count() == 0) return 1;
    int lo = clique_number(g, std::max(cap, caps().alpha_vertices));
    int hi = greedy_coloring_count(g);
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (KColor(g, mid).run())
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

namespace {

bool hom_extend(const Graph& g, const Graph& h, std::vector<int>& map, int v) {
    if (v == g.vertex_count()) return true;
    for (int t = 0; t < h.vertex_count(); ++t) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) {
            if (!g.has_edge(u, v)) continue;
            if (map[u] == t || !h.has_edge(map[u], t)) ok = false;
        }
        if (!ok) continue;
        map[v] = t;
        if (hom_extend(g, h, map, v + 1)) return true;
        map[v] = -1;
    }
    return false;
}

} // namespace

std::optional<GraphHom> find_homomorphism(const Graph& g, const Graph& h, int cap) {
    if (cap < 0) cap = caps().hom_vertices;
    if (g.vertex_count() > cap || h.vertex_count() > cap)
        throw SizeCapExceeded("find_homomorphism: vertex count exceeds cap");
    if (g.vertex_count() > 0 && h.vertex_count() == 0) return std::nullopt;
    std::vector<int> map(g.vertex_count(), -1);
    if (!hom_extend(g, h, map, 0)) return std::nullopt;
    GraphHom hom;
    hom.source = g;
    hom.target = h;
    hom.map = std::move(map);
    return hom;
}

int independence_number_bruteforce(const Graph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        bool ok = true;
        for (auto [i, j] : g.edges())
            if (((mask >> i) & 1) && ((mask >> j) & 1)) { ok = false; break; }
        if (ok) best = std::max(best, std::popcount(mask));
    }
    return best;
}

int chromatic_number_bruteforce(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) return 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> color(n, 0);
        while (true) {
            bool proper = true;
            for (auto [i, j] : g.edges())
                if (color[i] == color[j]) { proper = false; break; }
            if (proper) goto found;
            int p = n - 1;
            while (p >= 0 && color[p] == k - 1) color[p--] = 0;
            if (p < 0) break;
            ++color[p];
        }
        continue;
    found:
        return k;
    }
    return n;
}

Graph random_graph(int n, double edge_prob, Rng& rng) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < edge_prob) g.add_edge(i, j);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

} // namespace pb
