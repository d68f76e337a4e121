#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clustersync {

// Dense row-major matrix of doubles. Everything in this project lives at
// desk scale (N up to a few hundred), so the kernels below are plain
// triple loops with no blocking.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

Matrix transpose(const Matrix& a);
Matrix symmetric_part(const Matrix& a);  // (A + A^T)/2
Matrix kronecker(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
double off_diagonal_frobenius(const Matrix& a);

// Symmetry check with a tolerance relative to the magnitude of the matrix:
// |a_ij - a_ji| <= tol * max(1, max|a|) for all i, j.
bool is_symmetric(const Matrix& a, double tol = 1e-12);

// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations, returned
// sorted ascending. A sweep visits every off-diagonal pair once; the
// iteration stops when the off-diagonal Frobenius norm drops below
// tol * max(1, ||A||_F). The cyclic pivot order makes the result
// deterministic. Throws std::invalid_argument on non-symmetric input and
// std::runtime_error if max_sweeps is exhausted well above the rounding
// floor.
struct JacobiSettings {
    double tol = 1e-12;
    int max_sweeps = 100;
};
std::vector<double> symmetric_eigenvalues(Matrix a, const JacobiSettings& settings = {});

// Solve A X = B by LU factorization with partial pivoting.
// Throws std::invalid_argument on shape mismatch or a singular pivot.
Matrix solve(Matrix a, Matrix b);

// Induced operator norms (used by the matrix-measure limit oracle).
double operator_norm_1(const Matrix& a);    // max absolute column sum
double operator_norm_inf(const Matrix& a);  // max absolute row sum
double operator_norm_2(const Matrix& a);    // largest singular value

}  // namespace clustersync
