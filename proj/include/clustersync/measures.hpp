#pragma once

#include "clustersync/matrix.hpp"

#include <vector>

namespace clustersync {

// Positive definite state-space weighting P. Validated once at
// construction: symmetric, smallest eigenvalue > 0, condition number
// (ratio of extreme eigenvalues) at most 1e12. The induced weighted
// L2 norm is ||x||_{2,P} = ||P x||_2.
class WeightMatrix {
public:
    explicit WeightMatrix(Matrix p);

    static WeightMatrix identity(std::size_t n);
    static WeightMatrix diagonal(std::span<const double> d);

    const Matrix& P() const { return p_; }
    const Matrix& P_squared() const { return p2_; }
    std::size_t dim() const { return p_.rows(); }

    double min_eigenvalue() const { return eig_min_; }
    double condition() const { return eig_max_ / eig_min_; }

    // Similarity transform P A P^{-1}; the inverse is applied by a direct
    // solve against P rather than formed explicitly.
    Matrix similarity(const Matrix& a) const;

    // Squared weighted block norm ||P x||_2^2 = x^T P^2 x.
    double block_norm_sq(std::span<const double> x) const;

private:
    Matrix p_, p2_;
    double eig_min_ = 0.0, eig_max_ = 0.0;
};

// Logarithmic norms (matrix measures) induced by the standard vector
// norms. mu_1 is the worst column, mu_inf the worst row, mu_2 the top
// eigenvalue of the symmetric part.
double mu_1(const Matrix& a);
double mu_inf(const Matrix& a);
double mu_2(const Matrix& a);

// Measure induced by the P-weighted L2 norm: mu_2[P A P^{-1}].
// With P = identity this reduces to plain mu_2.
double mu_2_weighted(const Matrix& a, const WeightMatrix& p);

}  // namespace clustersync
