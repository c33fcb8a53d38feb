#include "packbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pb {

double dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

PointConfiguration::PointConfiguration(int dim, std::vector<Point> points, double tol)
    : dim_(dim), points_(std::move(points)), tol_(tol) {
    for (const auto& p : points_)
        if (int(p.size()) != dim_) throw std::invalid_argument("PointConfiguration: wrong coordinate count");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (dist(points_[i], points_[j]) <= tol_)
                throw std::invalid_argument("PointConfiguration: duplicate points");
}

PointConfiguration PointConfiguration::scaled(double factor) const {
    std::vector<Point> pts = points_;
    for (auto& p : pts)
        for (double& x : p) x *= factor;
    return PointConfiguration(dim_, std::move(pts), tol_);
}

PointConfiguration PointConfiguration::translated(const Point& shift) const {
    std::vector<Point> pts = points_;
    for (auto& p : pts)
        for (int k = 0; k < dim_; ++k) p[k] += shift[k];
    return PointConfiguration(dim_, std::move(pts), tol_);
}

PointConfiguration PointConfiguration::transformed(const Mat& q, const Point& shift) const {
    std::vector<Point> pts(points_.size(), Point(dim_, 0.0));
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (int r = 0; r < dim_; ++r) {
            double s = shift[r];
            for (int c = 0; c < dim_; ++c) s += q(r, c) * points_[i][c];
            pts[i][r] = s;
        }
    }
    return PointConfiguration(dim_, std::move(pts), tol_);
}

PointConfiguration PointConfiguration::united(const PointConfiguration& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("united: dimension mismatch");
    std::vector<Point> pts = points_;
    pts.insert(pts.end(), other.points_.begin(), other.points_.end());
    return PointConfiguration(dim_, std::move(pts), tol_);
}

PointConfiguration PointConfiguration::read(std::istream& in) {
    int d, n;
    if (!(in >> d >> n) || d <= 0 || n < 0) throw ParseError("point file header: expected \"d n\"");
    std::vector<Point> pts(n, Point(d, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k)
            if (!(in >> pts[i][k])) throw ParseError("point file truncated");
    try {
        return PointConfiguration(d, std::move(pts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

PointConfiguration PointConfiguration::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open point file: " + path);
    return read(in);
}

void PointConfiguration::write(std::ostream& out) const {
    out << dim_ << ' ' << points_.size() << '\n';
    out.precision(17);
    for (const auto& p : points_) {
        for (int k = 0; k < dim_; ++k) out << (k ? " " : "") << p[k];
        out << '\n';
    }
}

Graph conflict_graph(const PointConfiguration& c) {
    const int n = c.size();
    Graph g(n);
    const double thr = 2.0 - tols().geom;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(c[i], c[j]) < thr) g.add_edge(i, j);
    return g;
}

int pack(const PointConfiguration& c, int cap) {
    if (c.size() == 0) return 0;
    if (c.dim() == 1) {
        // greedy sweep is exact for interval conflict structure
        std::vector<double> xs(c.size());
        for (int i = 0; i < c.size(); ++i) xs[i] = c[i][0];
        std::sort(xs.begin(), xs.end());
        const double thr = 2.0 - tols().geom;
        int count = 1;
        double last = xs[0];
        for (double x : xs)
            if (x - last >= thr) {
                ++count;
                last = x;
            }
        return count;
    }
    return independence_number(conflict_graph(c), cap);
}

// --- smallest enclosing ball ------------------------------------------------

namespace {

// minimal ball with all support points on its boundary
Ball circumball(const std::vector<Point>& support) {
    const int k = int(support.size());
    Ball b;
    if (k == 0) return b;
    const int d = int(support[0].size());
    if (k == 1) {
        b.center = support[0];
        return b;
    }
    // center = s0 + sum lambda_i (s_i - s0); solve Gram system
    int m = k - 1;
    Mat g(m, m);
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int t = 0; t < d; ++t)
                s += (support[i + 1][t] - support[0][t]) * (support[j + 1][t] - support[0][t]);
            g(i, j) = 2.0 * s;
        }
        double n2 = 0.0;
        for (int t = 0; t < d; ++t) {
            double dd = support[i + 1][t] - support[0][t];
            n2 += dd * dd;
        }
        rhs[i] = n2;
    }
    // Gaussian elimination with partial pivoting (m <= d); affinely
    // dependent supports get a tiny ridge, which only arises on boundary ties
    double gscale = 1e-300;
    for (int i = 0; i < m; ++i) gscale = std::max(gscale, g(i, i));
    Mat gsave = g;
    std::vector<double> rhssave = rhs;
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool ok = true;
        for (int col = 0; col < m && ok; ++col) {
            int piv = col;
            for (int r = col + 1; r < m; ++r)
                if (std::fabs(g(r, col)) > std::fabs(g(piv, col))) piv = r;
            if (std::fabs(g(piv, col)) < 1e-13 * gscale) {
                ok = false;
                break;
            }
            if (piv != col) {
                for (int cc = 0; cc < m; ++cc) std::swap(g(piv, cc), g(col, cc));
                std::swap(rhs[piv], rhs[col]);
            }
            for (int r = col + 1; r < m; ++r) {
                double f = g(r, col) / g(col, col);
                for (int cc = col; cc < m; ++cc) g(r, cc) -= f * g(col, cc);
                rhs[r] -= f * rhs[col];
            }
        }
        if (ok) break;
        g = gsave;
        rhs = rhssave;
        for (int i = 0; i < m; ++i) g(i, i) += 1e-11 * gscale;
    }
    std::vector<double> lambda(m);
    for (int r = m - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int cc = r + 1; cc < m; ++cc) s -= g(r, cc) * lambda[cc];
        lambda[r] = s / g(r, r);
    }
    b.center = support[0];
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < d; ++t) b.center[t] += lambda[i] * (support[i + 1][t] - support[0][t]);
    b.radius = dist(b.center, support[0]);
    return b;
}

Ball welzl(const std::vector<Point>& pts, std::size_t limit, std::vector<Point>& support, int d) {
    if (limit == 0 || int(support.size()) == d + 1) return circumball(support);
    Ball b = welzl(pts, limit - 1, support, d);
    const Point& p = pts[limit - 1];
    bool contains = !b.center.empty() && dist(b.center, p) <= b.radius + 1e-12 * (1.0 + b.radius);
    if (contains) return b;
    support.push_back(p);
    Ball b2 = welzl(pts, limit - 1, support, d);
    support.pop_back();
    return b2;
}

} // namespace

Ball min_enclosing_ball(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("min_enclosing_ball: no points");
    const int d = int(points[0].size());
    std::vector<Point> pts = points;
    // deterministic shuffle keeps the recursion depth expected-linear
    Rng rng(0x5eb0dull ^ pts.size());
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[rng.next_below(i)]);
    std::vector<Point> support;
    return welzl(pts, pts.size(), support, d);
}

// --- covering ----------------------------------------------------------------

namespace {

class CovSearch {
public:
    explicit CovSearch(const PointConfiguration& c) : c_(c), n_(c.size()) {}

    int run() {
        if (n_ == 0) return 0;
        best_ = greedy_upper_bound();
        std::vector<char> assigned(n_, 0);
        descend(assigned, 0, 0);
        return best_;
    }

private:
    bool feasible(std::uint32_t mask) {
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;
        std::vector<Point> pts;
        for (int i = 0; i < n_; ++i)
            if ((mask >> i) & 1) pts.push_back(c_[i]);
        bool ok = min_enclosing_ball(pts).radius < 1.0 - tols().geom;
        memo_.emplace(mask, ok);
        return ok;
    }

    int greedy_upper_bound() {
        std::vector<char> used(n_, 0);
        int clusters = 0;
        for (int i = 0; i < n_; ++i) {
            if (used[i]) continue;
            std::uint32_t mask = std::uint32_t(1) << i;
            used[i] = 1;
            for (int j = i + 1; j < n_; ++j) {
                if (used[j]) continue;
                if (feasible(mask | (std::uint32_t(1) << j))) {
                    mask |= std::uint32_t(1) << j;
                    used[j] = 1;
                }
            }
            ++clusters;
        }
        return clusters;
    }

    void descend(std::vector<char>& assigned, int used_clusters, int covered) {
        if (used_clusters >= best_) return;
        int pivot = -1;
        for (int i = 0; i < n_; ++i)
            if (!assigned[i]) { pivot = i; break; }
        if (pivot < 0) {
            best_ = used_clusters;
            return;
        }
        std::vector<int> cands;
        for (int j = pivot + 1; j < n_; ++j)
            if (!assigned[j] && dist(c_[pivot], c_[j]) < 2.0 - 2.0 * tols().geom) cands.push_back(j);
        std::uint32_t base = std::uint32_t(1) << pivot;
        assigned[pivot] = 1;
        extend(base, cands, 0, assigned, used_clusters, covered + 1);
        assigned[pivot] = 0;
    }

    // enumerate feasible clusters containing the pivot; supersets of an
    // infeasible cluster stay infeasible since the enclosing ball grows
    void extend(std::uint32_t mask, const std::vector<int>& cands, std::size_t from,
                std::vector<char>& assigned, int used_clusters, int covered) {
        descend(assigned, used_clusters + 1, covered);
        for (std::size_t k = from; k < cands.size(); ++k) {
            int j = cands[k];
            if (assigned[j]) continue;
            std::uint32_t next = mask | (std::uint32_t(1) << j);
            if (!feasible(next)) continue;
            assigned[j] = 1;
            extend(next, cands, k + 1, assigned, used_clusters, covered + 1);
            assigned[j] = 0;
        }
    }

    const PointConfiguration& c_;
    int n_;
    int best_ = 0;
    std::unordered_map<std::uint32_t, bool> memo_;
};

} // namespace

int cov(const PointConfiguration& c, int cap) {
    if (cap < 0) cap = caps().cov_points;
    if (c.size() == 0) return 0;
    if (c.dim() == 1) {
        // greedy interval covering is exact in dimension 1
        std::vector<double> xs(c.size());
        for (int i = 0; i < c.size(); ++i) xs[i] = c[i][0];
        std::sort(xs.begin(), xs.end());
        const double span = 2.0 * (1.0 - tols().geom);
        int count = 0;
        std::size_t i = 0;
        while (i < xs.size()) {
            double start = xs[i];
            while (i < xs.size() && xs[i] - start < span) ++i;
            ++count;
        }
        return count;
    }
    if (c.size() > cap)
        throw SizeCapExceeded("cov: n=" + std::to_string(c.size()) + " exceeds cap " + std::to_string(cap));
    return CovSearch(c).run();
}

int cov_bruteforce(const PointConfiguration& c) {
    const int n = c.size();
    if (n == 0) return 0;
    // enumerate all partitions via restricted growth strings
    std::vector<int> part(n, 0);
    int best = n;
    auto feasible = [&](int k) {
        for (int cl = 0; cl < k; ++cl) {
            std::vector<Point> pts;
            for (int i = 0; i < n; ++i)
                if (part[i] == cl) pts.push_back(c[i]);
            if (pts.empty()) continue;
            if (!(min_enclosing_ball(pts).radius < 1.0 - tols().geom)) return false;
        }
        return true;
    };
    std::vector<int> maxval(n, 0);
    while (true) {
        int k = *std::max_element(part.begin(), part.end()) + 1;
        if (k < best && feasible(k)) best = k;
        // next restricted growth string
        int p = n - 1;
        while (p > 0) {
            int limit = 0;
            for (int i = 0; i < p; ++i) limit = std::max(limit, part[i]);
            if (part[p] <= limit) break;
            --p;
        }
        while (p > 0) {
            int limit = 0;
            for (int i = 0; i < p; ++i) limit = std::max(limit, part[i]);
            if (part[p] < limit + 1) break;
            --p;
        }
        if (p == 0) break;
        ++part[p];
        for (int i = p + 1; i < n; ++i) part[i] = 0;
    }
    return best;
}

PointConfiguration cube_mesh(int n, double r, double h) {
    if (n < 1 || h <= 0.0 || r < 0.0) throw std::invalid_argument("cube_mesh: bad parameters");
    const int per_axis = int(std::floor(r / h + 1e-9)) + 1;
    double total = std::pow(double(per_axis), n);
    if (total > 2e6) throw SizeCapExceeded("cube_mesh: too many points");
    std::vector<Point> pts;
    pts.reserve(std::size_t(total));
    std::vector<int> idx(n, 0);
    while (true) {
        Point p(n);
        for (int k = 0; k < n; ++k) p[k] = h * idx[k];
        pts.push_back(std::move(p));
        int k = n - 1;
        while (k >= 0 && idx[k] == per_axis - 1) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
    }
    return PointConfiguration(n, std::move(pts));
}

// --- axiom case generation ----------------------------------------------------

namespace {

// random points with a minimum separation, so configurations stay
// numerically honest
std::vector<Point> scatter(Rng& rng, int dim, int count, double lo, double hi, double min_sep) {
    std::vector<Point> pts;
    int tries = 0;
    while (int(pts.size()) < count && tries < 20000) {
        ++tries;
        Point p(dim);
        for (int k = 0; k < dim; ++k) p[k] = rng.uniform(lo, hi);
        bool ok = true;
        for (const auto& q : pts)
            if (dist(p, q) < min_sep) { ok = false; break; }
        if (ok) pts.push_back(std::move(p));
    }
    return pts;
}

Mat random_rotation(Rng& rng, int dim) {
    // Gram-Schmidt on a Gaussian-ish matrix
    Mat q(dim, dim);
    for (int c = 0; c < dim; ++c) {
        std::vector<double> v(dim);
        for (int r = 0; r < dim; ++r) {
            double u1 = std::max(rng.next_double(), 1e-12);
            double u2 = rng.next_double();
            v[r] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        }
        for (int prev = 0; prev < c; ++prev) {
            double proj = 0.0;
            for (int r = 0; r < dim; ++r) proj += v[r] * q(r, prev);
            for (int r = 0; r < dim; ++r) v[r] -= proj * q(r, prev);
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(std::max(norm, 1e-12));
        for (int r = 0; r < dim; ++r) q(r, c) = v[r] / norm;
    }
    return q;
}

} // namespace

std::vector<AxiomCase> axiom_cases(AxiomId id, int count, std::uint64_t seed, int max_points, int max_dim) {
    Rng rng(seed ^ (0x51caull + std::uint64_t(id) * 0x9e37ull));
    std::vector<AxiomCase> cases;
    cases.reserve(count);
    while (int(cases.size()) < count) {
        int dim = 1 + int(rng.next_below(max_dim));
        int k = 1 + int(rng.next_below(max_points));
        AxiomCase ac;
        ac.id = id;
        switch (id) {
        case AxiomId::SphereBound: {
            // nonempty set inside the open unit ball around a random center
            Point center(dim);
            for (int t = 0; t < dim; ++t) center[t] = rng.uniform(-3.0, 3.0);
            std::vector<Point> pts;
            while (int(pts.size()) < k) {
                Point p(dim);
                double norm2 = 0.0;
                for (int t = 0; t < dim; ++t) {
                    p[t] = rng.uniform(-0.65, 0.65);
                    norm2 += p[t] * p[t];
                }
                if (norm2 > 0.9 * 0.9) continue;
                for (int t = 0; t < dim; ++t) p[t] += center[t];
                bool ok = true;
                for (const auto& q : pts)
                    if (dist(p, q) < 1e-3) { ok = false; break; }
                if (ok) pts.push_back(std::move(p));
            }
            ac.configs.emplace_back(dim, std::move(pts));
            break;
        }
        case AxiomId::Lipschitz: {
            auto pts = scatter(rng, dim, k, 0.0, 4.0, 0.05);
            if (int(pts.size()) < k) continue;
            PointConfiguration c(dim, pts);
            if (rng.next_below(2) == 0) {
                Point shift(dim);
                for (int t = 0; t < dim; ++t) shift[t] = rng.uniform(-5.0, 5.0);
                ac.configs.push_back(c);
                ac.configs.push_back(c.transformed(random_rotation(rng, dim), shift));
            } else {
                // coordinate-wise dilation, each factor >= 1, is
                // distance-increasing
                Mat dil(dim, dim);
                for (int t = 0; t < dim; ++t) dil(t, t) = 1.0 + rng.uniform(0.0, 0.5);
                ac.configs.push_back(c);
                ac.configs.push_back(c.transformed(dil, Point(dim, 0.0)));
            }
            break;
        }
        case AxiomId::Union: {
            // the union is evaluated as one configuration; split the budget
            int half = std::max(1, max_points / 2);
            k = 1 + int(rng.next_below(half));
            int k2 = 1 + int(rng.next_below(half));
            auto pts1 = scatter(rng, dim, k, 0.0, 3.0, 0.05);
            auto pts2 = scatter(rng, dim, k2, 0.0, 3.0, 0.05);
            if (int(pts1.size()) < k || int(pts2.size()) < k2) continue;
            PointConfiguration c1(dim, pts1);
            Point shift(dim, 0.0);
            shift[0] = 5.0 + rng.uniform(0.1, 2.0); // gap >= 2 along the first axis
            PointConfiguration c2 = PointConfiguration(dim, pts2).translated(shift);
            ac.configs.push_back(c1);
            ac.configs.push_back(c2);
            ac.configs.push_back(c1.united(c2));
            break;
        }
        case AxiomId::Mesh: {
            double h = 0.25 * (1 + int(rng.next_below(4))); // 0.25 .. 1.0
            auto pts = scatter(rng, dim, k, 0.0, 3.0, 0.05);
            if (int(pts.size()) < k) continue;
            // the sub-mesh of (hZ)^dim nearest to C keeps cases small; every
            // point of C sits within eps of its snapped image
            std::vector<Point> snapped;
            for (const auto& p : pts) {
                Point q(dim);
                for (int t = 0; t < dim; ++t) q[t] = h * std::round(p[t] / h);
                bool dup = false;
                for (const auto& existing : snapped)
                    if (dist(existing, q) < 1e-12) { dup = true; break; }
                if (!dup) snapped.push_back(std::move(q));
            }
            double eps = 1.02 * h * std::sqrt(double(dim)) / 2.0;
            PointConfiguration c(dim, pts);
            ac.configs.push_back(c.scaled(1.0 / (1.0 + eps)));
            ac.configs.emplace_back(dim, std::move(snapped));
            break;
        }
        }
        cases.push_back(std::move(ac));
    }
    return cases;
}

// --- simplicial complex --------------------------------------------------------

SimplicialComplex::SimplicialComplex(PointConfiguration vertices, std::vector<std::vector<int>> top_simplices)
    : vertices_(std::move(vertices)), simplices_(std::move(top_simplices)) {}

bool SimplicialComplex::validate(double eps, std::string* why) const {
    const int d = vertices_.dim();
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const auto& s : simplices_) {
        if (int(s.size()) != d + 1) return fail("simplex arity != d+1");
        // affine independence via Gram determinant of edge vectors
        Mat g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int t = 0; t < d; ++t)
                    acc += (vertices_[s[i + 1]][t] - vertices_[s[0]][t]) *
                           (vertices_[s[j + 1]][t] - vertices_[s[0]][t]);
                g(i, j) = acc;
            }
        if (!cholesky(g)) return fail("degenerate simplex");
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                if (dist(vertices_[s[a]], vertices_[s[b]]) >= eps) return fail("simplex diameter >= eps");
    }
    // interiors must be disjoint: a centroid may lie in its own simplex only
    std::vector<Point> centroids(simplices_.size(), Point(d, 0.0));
    for (std::size_t a = 0; a < simplices_.size(); ++a) {
        for (int v : simplices_[a])
            for (int t = 0; t < d; ++t) centroids[a][t] += vertices_[v][t] / double(d + 1);
    }
    auto strictly_inside = [&](const Point& y, const std::vector<int>& s) {
        Mat m(d + 1, d + 1);
        std::vector<double> lam(d + 1);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c <= d; ++c) m(r, c) = vertices_[s[c]][r];
            lam[r] = y[r];
        }
        for (int c = 0; c <= d; ++c) m(d, c) = 1.0;
        lam[d] = 1.0;
        for (int col = 0; col <= d; ++col) {
            int piv = col;
            for (int rr = col + 1; rr <= d; ++rr)
                if (std::fabs(m(rr, col)) > std::fabs(m(piv, col))) piv = rr;
            if (std::fabs(m(piv, col)) < 1e-13) return false;
            if (piv != col) {
                for (int cc = 0; cc <= d; ++cc) std::swap(m(piv, cc), m(col, cc));
                std::swap(lam[piv], lam[col]);
            }
            for (int rr = col + 1; rr <= d; ++rr) {
                double f = m(rr, col) / m(col, col);
                for (int cc = col; cc <= d; ++cc) m(rr, cc) -= f * m(col, cc);
                lam[rr] -= f * lam[col];
            }
        }
        for (int rr = d; rr >= 0; --rr) {
            double sacc = lam[rr];
            for (int cc = rr + 1; cc <= d; ++cc) sacc -= m(rr, cc) * lam[cc];
            lam[rr] = sacc / m(rr, rr);
        }
        for (double w : lam)
            if (w <= 1e-9) return false;
        return true;
    };
    for (std::size_t a = 0; a < simplices_.size(); ++a)
        for (std::size_t b = 0; b < simplices_.size(); ++b)
            if (a != b && strictly_inside(centroids[a], simplices_[b]))
                return fail("overlapping simplex interiors");
    return true;
}

SimplicialComplex triangulate_box(int n, double r, double eps) {
    if (n < 1 || n > 3) throw SizeCapExceeded("triangulate_box: n must be 1..3");
    if (r <= 0.0 || eps <= 0.0) throw std::invalid_argument("triangulate_box: bad parameters");
    int k = std::max(1, int(std::ceil(r * std::sqrt(double(n)) / eps - 1e-12)));
    while (r / k * std::sqrt(double(n)) >= eps * (1.0 - 1e-13)) ++k;
    const double h = r / k;
    const int per_axis = k + 1;

    std::vector<Point> verts;
    std::vector<int> idx(n, 0);
    while (true) {
        Point p(n);
        for (int t = 0; t < n; ++t) p[t] = h * idx[t];
        verts.push_back(std::move(p));
        int t = n - 1;
        while (t >= 0 && idx[t] == per_axis - 1) idx[t--] = 0;
        if (t < 0) break;
        ++idx[t];
    }
    auto vid = [&](const std::vector<int>& coord) {
        int id = 0;
        for (int t = 0; t < n; ++t) id = id * per_axis + coord[t];
        return id;
    };

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> base_perms;
    do base_perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<int>> simplices;
    std::vector<int> cube(n, 0);
    while (true) {
        for (const auto& pi : base_perms) {
            std::vector<int> simplex;
            std::vector<int> corner = cube;
            simplex.push_back(vid(corner));
            for (int step = 0; step < n; ++step) {
                corner[pi[step]] += 1;
                simplex.push_back(vid(corner));
            }
            simplices.push_back(std::move(simplex));
        }
        int t = n - 1;
        while (t >= 0 && cube[t] == k - 1) cube[t--] = 0;
        if (t < 0) break;
        ++cube[t];
    }
    return SimplicialComplex(PointConfiguration(n, std::move(verts)), std::move(simplices));
}

BarycentricPoint barycentric_locate(const Point& y, const SimplicialComplex& sc) {
    const int d = sc.dim();
    const auto& verts = sc.vertices();
    for (std::size_t si = 0; si < sc.top_simplices().size(); ++si) {
        const auto& s = sc.top_simplices()[si];
        // solve [V; 1] lambda = [y; 1]
        Mat a(d + 1, d + 1);
        std::vector<double> rhs(d + 1);
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c <= d; ++c) a(r, c) = verts[s[c]][r];
            rhs[r] = y[r];
        }
        for (int c = 0; c <= d; ++c) a(d, c) = 1.0;
        rhs[d] = 1.0;
        // Gaussian elimination
        std::vector<double> lam(rhs);
        bool singular = false;
        for (int col = 0; col <= d; ++col) {
            int piv = col;
            for (int rr = col + 1; rr <= d; ++rr)
                if (std::fabs(a(rr, col)) > std::fabs(a(piv, col))) piv = rr;
            if (std::fabs(a(piv, col)) < 1e-13) { singular = true; break; }
            if (piv != col) {
                for (int cc = 0; cc <= d; ++cc) std::swap(a(piv, cc), a(col, cc));
                std::swap(lam[piv], lam[col]);
            }
            for (int rr = col + 1; rr <= d; ++rr) {
                double f = a(rr, col) / a(col, col);
                for (int cc = col; cc <= d; ++cc) a(rr, cc) -= f * a(col, cc);
                lam[rr] -= f * lam[col];
            }
        }
        if (singular) continue;
        for (int rr = d; rr >= 0; --rr) {
            double sacc = lam[rr];
            for (int cc = rr + 1; cc <= d; ++cc) sacc -= a(rr, cc) * lam[cc];
            lam[rr] = sacc / a(rr, rr);
        }
        bool inside = true;
        for (double w : lam)
            if (w < -1e-12) { inside = false; break; }
        if (!inside) continue;
        double total = 0.0;
        for (double& w : lam) {
            if (w < 1e-12) w = 0.0; // face weights snap to zero
            total += w;
        }
        for (double& w : lam) w /= total;
        BarycentricPoint bp;
        bp.simplex = int(si);
        bp.weights = std::move(lam);
        return bp;
    }
    throw OutsideComplex("barycentric_locate: point outside complex");
}

Mat lift_kernel(const Mat& K, const SimplicialComplex& sc, const std::vector<Point>& xs) {
    const int nv = sc.vertices().size();
    if (K.rows() != nv || K.cols() != nv) throw std::invalid_argument("lift_kernel: kernel size mismatch");
    double scale = std::max(1.0, K.max_abs());
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (std::fabs(K(i, j) - K(j, i)) > 1e-8 * scale) throw NotPsd("lift_kernel: kernel not symmetric");
    if (min_eigenvalue(K) < -1e-8 * scale) throw NotPsd("lift_kernel: kernel not PSD");

    const int m = int(xs.size());
    Mat w(m, nv);
    for (int i = 0; i < m; ++i) {
        BarycentricPoint bp = barycentric_locate(xs[i], sc);
        const auto& s = sc.top_simplices()[bp.simplex];
        for (std::size_t t = 0; t < s.size(); ++t) w(i, s[t]) += bp.weights[t];
    }
    Mat l = matmul(matmul(w, K), w.transposed());
    l.symmetrize();
    return l;
}

} // namespace pb
