#include "packbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pb {

namespace {
int g_workers = 0; // 0 = library default (max threads)
}

void set_workers(int n) {
    g_workers = n > 0 ? n : 0;
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int workers() {
#ifdef _OPENMP
    return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
    return 1;
#endif
}

Mat Mat::identity(int n, double scale) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scale;
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

void Mat::symmetrize() {
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j) {
            double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
            (*this)(i, j) = v;
            (*this)(j, i) = v;
        }
}

Mat& Mat::operator+=(const Mat& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

double Mat::frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(Mat a, double s) { return a *= s; }

double dot(const Mat& a, const Mat& b) {
    double s = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    std::size_t n = std::size_t(a.rows()) * a.cols();
    for (std::size_t k = 0; k < n; ++k) s += pa[k] * pb[k];
    return s;
}

Mat matmul_serial(const Mat& a, const Mat& b) {
    Mat c(a.rows(), b.cols());
    const int n = a.rows(), m = b.cols(), k = a.cols();
    for (int i = 0; i < n; ++i) {
        double* ci = c.data() + std::size_t(i) * m;
        const double* ai = a.data() + std::size_t(i) * k;
        for (int l = 0; l < k; ++l) {
            double av = ai[l];
            if (av == 0.0) continue;
            const double* bl = b.data() + std::size_t(l) * m;
            for (int j = 0; j < m; ++j) ci[j] += av * bl[j];
        }
    }
    return c;
}

Mat matmul(const Mat& a, const Mat& b) {
    Mat c(a.rows(), b.cols());
    const int n = a.rows(), m = b.cols(), k = a.cols();
#pragma omp parallel for schedule(static) if (n >= 32)
    for (int i = 0; i < n; ++i) {
        double* ci = c.data() + std::size_t(i) * m;
        const double* ai = a.data() + std::size_t(i) * k;
        for (int l = 0; l < k; ++l) {
            double av = ai[l];
            if (av == 0.0) continue;
            const double* bl = b.data() + std::size_t(l) * m;
            for (int j = 0; j < m; ++j) ci[j] += av * bl[j];
        }
    }
    return c;
}

bool cholesky(Mat& a, double eps) {
    const int n = a.rows();
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a(i, i)));
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (d <= eps * scale) return false;
        d = std::sqrt(d);
        a(j, j) = d;
        const double inv = 1.0 / d;
// column update dominates; parallel only when worthwhile
#pragma omp parallel for schedule(static) if (n - j > 256)
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            const double* ri = a.data() + std::size_t(i) * n;
            const double* rj = a.data() + std::size_t(j) * n;
            for (int k = 0; k < j; ++k) s -= ri[k] * rj[k];
            a(i, j) = s * inv;
        }
    }
    // zero strict upper triangle so the factor is self-contained
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = 0.0;
    return true;
}

std::vector<double> cholesky_solve(const Mat& chol, const std::vector<double>& b) {
    const int n = chol.rows();
    std::vector<double> x(b);
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= chol(i, k) * x[k];
        x[i] = s / chol(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= chol(k, i) * x[k];
        x[i] = s / chol(i, i);
    }
    return x;
}

Mat cholesky_inverse(const Mat& chol) {
    const int n = chol.rows();
    Mat inv(n, n);
    std::vector<double> e(n, 0.0);
#pragma omp parallel for schedule(static) firstprivate(e) if (n >= 64)
    for (int j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        std::vector<double> col = cholesky_solve(chol, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    inv.symmetrize();
    return inv;
}

// Cyclic Jacobi with eigenvector accumulation. Unconditionally convergent
// on symmetric input; cost is a small multiple of one matrix product per
// sweep, which the solver sizes here never notice.
EigResult sym_eigen(const Mat& a, bool want_vectors) {
    const int n = a.rows();
    EigResult r;
    r.values.assign(n, 0.0);
    if (n == 0) return r;

    Mat w = a;
    w.symmetrize();
    Mat v = Mat::identity(n, 1.0);

    double frob2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob2 += w(i, j) * w(i, j);
    const double stop = 1e-28 * (frob2 + 1e-300);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * w(i, j) * w(i, j);
        if (off <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = w(p, q);
                if (apq == 0.0) continue;
                double theta = 0.5 * (w(q, q) - w(p, p)) / apq;
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);
                double app = w(p, p), aqq = w(q, q);
                w(p, p) = app - t * apq;
                w(q, q) = aqq + t * apq;
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = w(k, p), akq = w(k, q);
                    w(k, p) = akp - s * (akq + tau * akp);
                    w(p, k) = w(k, p);
                    w(k, q) = akq + s * (akp - tau * akq);
                    w(q, k) = w(k, q);
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return w(x, x) < w(y, y); });
    for (int i = 0; i < n; ++i) r.values[i] = w(idx[i], idx[i]);
    if (want_vectors) {
        r.vectors = Mat(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, idx[j]);
    }
    return r;
}

double min_eigenvalue(const Mat& a) {
    if (a.rows() == 0) return 0.0;
    return sym_eigen(a).values.front();
}

} // namespace pb
