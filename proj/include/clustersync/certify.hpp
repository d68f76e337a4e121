#pragma once

#include "clustersync/dynamics.hpp"
#include "clustersync/graph.hpp"
#include "clustersync/measures.hpp"

#include <optional>
#include <vector>

namespace clustersync {

struct ClusterCertificate {
    int cluster = 0;
    double lambda2_cluster = 0.0;
    double lambda_bar2 = 0.0;
    double Lambda = 0.0;  // lambda2_cluster + lambda_bar2
    double mu = 0.0;      // contraction rate of this cluster's block
    // Smallest coupling gain that certifies the cluster; absent when
    // Lambda <= 0 (the cluster's combined connectivity cannot certify it).
    std::optional<double> gamma_threshold;
    bool certified = false;
};

// The contraction certificate: a weight matrix P, the per-cluster rates
// mu_r = sup mu_{2,P}[J_r - Lambda_r D], and their maximum mu. A negative
// mu certifies exponential convergence to the cluster synchronization
// manifold in the P-weighted norm.
struct Certificate {
    WeightMatrix P;
    double gamma = 0.0;              // coupling gain the certificate was evaluated at
    std::vector<double> diffusion;   // diagonal of D
    std::vector<ClusterCertificate> per_cluster;
    double mu = 0.0;
    bool sampled = false;  // true when mu is a grid-sampled lower bound on the sup

    bool contractive() const { return mu < 0.0; }
};

// P = diag(1, p) with p = max_r 1/sqrt(epsilon_r). This choice makes
// P^2 D + D P^2 = diag(2*gamma, 0), which is positive semidefinite for
// the FN diffusion profile D = diag(gamma, 0).
double fn_weight_p(const std::vector<FNParams>& cluster_params);
WeightMatrix fn_weight_matrix(const std::vector<FNParams>& cluster_params);

// Smallest certifying coupling gain for one FN cluster:
//   (1 + alpha) / Lambda,  alpha = (epsilon*p - 1/p)^2 / (4*b*epsilon).
// With a shared epsilon across clusters alpha vanishes and the threshold
// reduces to 1 / Lambda. Throws CertificateUnavailable when Lambda <= 0.
double fn_gamma_threshold(const FNParams& params, double p, double Lambda);

// Analytic FN certificate. The only state-dependent Jacobian entry is
// 1 - y^2, maximized at y = 0, so the supremum over states is attained in
// closed form and the certificate is global:
//   mu_r = lambda_max [[1 - gamma*Lambda_r, (eps_r*p - 1/p)/2],
//                      [(eps_r*p - 1/p)/2,  -b_r*eps_r       ]].
// The gamma argument is the gain under evaluation; D := diag(gamma, 0).
Certificate fn_certificate_mu(const ClusteredNetwork& net, const LaplacianSplit& split,
                              double gamma);

// Grid-sampled certificate for arbitrary time-invariant node models:
// mu_r is maximized over a corner-inclusive regular grid on the given
// state box. The result is a lower bound on the true supremum, usable to
// falsify contractivity but not to certify it (the report is marked
// sampled). Throws on an empty grid or a time-varying model.
Certificate numeric_certificate_mu(const std::vector<NodeModel>& cluster_models,
                                   const LaplacianSplit& split,
                                   const std::vector<double>& diffusion, const WeightMatrix& P,
                                   const std::vector<std::pair<double, double>>& box,
                                   std::size_t grid_points_per_dim);

}  // namespace clustersync
