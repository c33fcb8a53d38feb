#pragma once

#include <cstddef>
#include <vector>

namespace pb {

// Dense symmetric-friendly matrix, row major.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0.0) {}

    static Mat identity(int n, double scale = 1.0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    Mat transposed() const;
    void symmetrize(); // (A + A^T)/2, square only

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

    double max_abs() const;
    double frobenius() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(Mat a, double s);

double dot(const Mat& a, const Mat& b); // <A,B> = sum_ij A_ij B_ij

// C = A*B. The OpenMP kernel parallelizes over rows of C; the serial
// reference is kept for the kernel-agreement tests and the benchmark.
Mat matmul(const Mat& a, const Mat& b);
Mat matmul_serial(const Mat& a, const Mat& b);

// In-place lower Cholesky A = L L^T; returns false if a pivot falls below
// eps * scale (matrix not positive definite to working precision).
bool cholesky(Mat& a, double eps = 1e-13);

// Solve A x = b given the Cholesky factor L (lower) in place of A.
std::vector<double> cholesky_solve(const Mat& chol, const std::vector<double>& b);

// Inverse of the original SPD matrix from its Cholesky factor.
Mat cholesky_inverse(const Mat& chol);

// Symmetric eigendecomposition (Householder tridiagonalization + implicit
// QL). eigenvalues ascending; eigenvectors in columns of `vectors` if asked.
struct EigResult {
    std::vector<double> values;
    Mat vectors;
};
EigResult sym_eigen(const Mat& a, bool want_vectors = false);

double min_eigenvalue(const Mat& a);

} // namespace pb
