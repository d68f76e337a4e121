#include "clustersync/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace clustersync {

WeightMatrix::WeightMatrix(Matrix p) : p_(std::move(p)) {
    if (!p_.square() || p_.rows() == 0)
        throw std::invalid_argument("WeightMatrix: P must be square and nonempty");
    if (!is_symmetric(p_))
        throw std::invalid_argument("WeightMatrix: P must be symmetric");
    const auto eig = symmetric_eigenvalues(p_);
    eig_min_ = eig.front();
    eig_max_ = eig.back();
    if (eig_min_ <= 0.0)
        throw std::invalid_argument("WeightMatrix: P must be positive definite");
    if (eig_max_ / eig_min_ > 1e12)
        throw std::invalid_argument("WeightMatrix: P is singular to tolerance (condition number above 1e12)");
    p2_ = p_ * p_;
}

WeightMatrix WeightMatrix::identity(std::size_t n) { return WeightMatrix(Matrix::identity(n)); }

WeightMatrix WeightMatrix::diagonal(std::span<const double> d) {
    return WeightMatrix(Matrix::diagonal(d));
}

Matrix WeightMatrix::similarity(const Matrix& a) const {
    if (!a.square() || a.rows() != p_.rows())
        throw std::invalid_argument("WeightMatrix::similarity: shape mismatch");
    // B = P A P^{-1} from P B^T = A^T P (P symmetric).
    const Matrix rhs = transpose(a) * p_;
    return transpose(solve(p_, rhs));
}

double WeightMatrix::block_norm_sq(std::span<const double> x) const {
    const auto y = matvec(p_, x);
    double s = 0.0;
    for (double v : y) s += v * v;
    return s;
}

double mu_1(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("mu_1: matrix must be square");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double col = a(j, j);
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != j) col += std::abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

double mu_inf(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("mu_inf: matrix must be square");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = a(i, i);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (j != i) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

double mu_2(const Matrix& a) {
    const auto eig = symmetric_eigenvalues(symmetric_part(a));
    return eig.back();
}

double mu_2_weighted(const Matrix& a, const WeightMatrix& p) {
    return mu_2(p.similarity(a));
}

}  // namespace clustersync
