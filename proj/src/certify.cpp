#include "clustersync/certify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace clustersync {

namespace {

// Largest eigenvalue of [[a, c], [c, b]] in closed form; immune to
// eigensolver noise right at the certification threshold.
double lambda_max_sym2(double a, double b, double c) {
    const double mean = 0.5 * (a + b);
    const double disc = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
    return mean + disc;
}

void check_p2d_semidefinite(const WeightMatrix& P, const std::vector<double>& diffusion) {
    const Matrix d = Matrix::diagonal(diffusion);
    const Matrix m = P.P_squared() * d + d * P.P_squared();
    const auto eig = symmetric_eigenvalues(m);
    if (eig.front() < -1e-10)
        throw std::invalid_argument(
            "certificate: P^2 D + D P^2 is not positive semidefinite for this weight matrix");
}

}  // namespace

double fn_weight_p(const std::vector<FNParams>& cluster_params) {
    if (cluster_params.empty())
        throw std::invalid_argument("fn_weight_p: need at least one cluster");
    double p = 0.0;
    for (const auto& params : cluster_params) {
        if (!(params.epsilon > 0.0))
            throw std::invalid_argument("fn_weight_p: epsilon must be > 0");
        p = std::max(p, 1.0 / std::sqrt(params.epsilon));
    }
    return p;
}

WeightMatrix fn_weight_matrix(const std::vector<FNParams>& cluster_params) {
    const double d[2] = {1.0, fn_weight_p(cluster_params)};
    return WeightMatrix::diagonal(d);
}

double fn_gamma_threshold(const FNParams& params, double p, double Lambda) {
    if (!(Lambda > 0.0))
        throw CertificateUnavailable(
            "gamma threshold undefined: lambda2 of the cluster plus lambda_bar2 is not positive "
            "(the cluster subgraph together with the inter-cluster graph is insufficiently connected)");
    const double off = params.epsilon * p - 1.0 / p;
    const double alpha = off * off / (4.0 * params.b * params.epsilon);
    return (1.0 + alpha) / Lambda;
}

Certificate fn_certificate_mu(const ClusteredNetwork& net, const LaplacianSplit& split,
                              double gamma) {
    const auto& params = net.cluster_params();
    if (split.cluster_count() != params.size())
        throw std::invalid_argument("fn_certificate_mu: split does not match the network");
    if (net.state_dim() != 2)
        throw std::invalid_argument("fn_certificate_mu: FN networks have state dimension 2");

    const double p = fn_weight_p(params);
    Certificate cert{fn_weight_matrix(params), gamma, {gamma, 0.0}, {}, 0.0, false};
    check_p2d_semidefinite(cert.P, cert.diffusion);

    const double lb2 = split.lambda_bar2();
    double mu = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < params.size(); ++r) {
        ClusterCertificate cc;
        cc.cluster = static_cast<int>(r);
        cc.lambda2_cluster = split.cluster_lambda2(r);
        cc.lambda_bar2 = lb2;
        cc.Lambda = cc.lambda2_cluster + cc.lambda_bar2;
        const double off = 0.5 * (params[r].epsilon * p - 1.0 / p);
        cc.mu = lambda_max_sym2(1.0 - gamma * cc.Lambda, -params[r].b * params[r].epsilon, off);
        if (cc.Lambda > 0.0) {
            cc.gamma_threshold = fn_gamma_threshold(params[r], p, cc.Lambda);
            cc.certified = gamma > *cc.gamma_threshold;
        }
        mu = std::max(mu, cc.mu);
        cert.per_cluster.push_back(std::move(cc));
    }
    cert.mu = mu;
    return cert;
}

Certificate numeric_certificate_mu(const std::vector<NodeModel>& cluster_models,
                                   const LaplacianSplit& split,
                                   const std::vector<double>& diffusion, const WeightMatrix& P,
                                   const std::vector<std::pair<double, double>>& box,
                                   std::size_t grid_points_per_dim) {
    if (grid_points_per_dim == 0)
        throw std::invalid_argument("numeric_certificate_mu: grid size must be at least 1");
    if (cluster_models.size() != split.cluster_count())
        throw std::invalid_argument("numeric_certificate_mu: one model per cluster required");
    const std::size_t n = box.size();
    if (n == 0) throw std::invalid_argument("numeric_certificate_mu: state box is empty");
    for (const auto& m : cluster_models) {
        if (m.dim != n)
            throw std::invalid_argument("numeric_certificate_mu: model dimension does not match the box");
        if (!m.time_invariant)
            throw std::invalid_argument(
                "numeric_certificate_mu: only time-invariant models are supported (the supremum "
                "over t is not sampled)");
    }
    if (P.dim() != n || diffusion.size() != n)
        throw std::invalid_argument("numeric_certificate_mu: dimension mismatch");

    const Matrix d = Matrix::diagonal(diffusion);
    Certificate cert{P, std::numeric_limits<double>::quiet_NaN(), diffusion, {}, 0.0, true};
    check_p2d_semidefinite(P, diffusion);

    // Corner-inclusive regular grid, enumerated in mixed-radix order.
    const std::size_t g = grid_points_per_dim;
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    const double lb2 = split.lambda_bar2();
    double mu = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cluster_models.size(); ++r) {
        ClusterCertificate cc;
        cc.cluster = static_cast<int>(r);
        cc.lambda2_cluster = split.cluster_lambda2(r);
        cc.lambda_bar2 = lb2;
        cc.Lambda = cc.lambda2_cluster + cc.lambda_bar2;
        cc.mu = -std::numeric_limits<double>::infinity();

        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto [lo, hi] = box[k];
                x[k] = g == 1 ? lo : lo + (hi - lo) * static_cast<double>(idx[k]) /
                                              static_cast<double>(g - 1);
            }
            const Matrix j = cluster_models[r].jacobian(x, 0.0);
            cc.mu = std::max(cc.mu, mu_2_weighted(j - cc.Lambda * d, P));

            std::size_t k = 0;
            while (k < n && ++idx[k] == g) idx[k++] = 0;
            if (k == n) break;
        }
        mu = std::max(mu, cc.mu);
        cert.per_cluster.push_back(std::move(cc));
    }
    cert.mu = mu;
    return cert;
}

}  // namespace clustersync
