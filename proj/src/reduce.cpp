#include "clustersync/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace clustersync {

bool QuotientNetwork::eta_symmetric(double tol) const {
    for (std::size_t r = 0; r < eta.rows(); ++r)
        for (std::size_t s = r + 1; s < eta.cols(); ++s)
            if (std::abs(eta(r, s) - eta(s, r)) > tol) return false;
    return true;
}

QuotientNetwork build_quotient(const ClusteredNetwork& net, const CIEReport& cie) {
    if (!cie.passes) {
        std::string failing;
        for (const auto& pair : cie.pairs)
            if (!pair.passes)
                failing += " (" + std::to_string(pair.r) + "," + std::to_string(pair.s) + ")";
        throw std::invalid_argument(
            "build_quotient: cluster-input-equivalence fails for cluster pairs" + failing +
            "; the reduced dynamics would not describe the network");
    }
    const std::size_t k = net.cluster_count();
    if (cie.eta.rows() != k || cie.eta.cols() != k)
        throw std::invalid_argument("build_quotient: report does not match the network");

    QuotientNetwork q;
    q.eta = cie.eta;
    for (std::size_t r = 0; r < k; ++r) q.eta(r, r) = 0.0;
    q.cluster_params = net.cluster_params();
    q.diffusion = net.diffusion();
    return q;
}

QuotientRhs::QuotientRhs(const QuotientNetwork& q)
    : k_(q.cluster_count()), state_dim_(q.state_dim()), eta_(q.eta), diffusion_(q.diffusion) {
    models_.reserve(k_);
    for (const auto& p : q.cluster_params) models_.push_back(fn_node_model(p));
}

void QuotientRhs::operator()(std::span<const double> x, double t, std::span<double> dxdt) const {
    if (x.size() != dim() || dxdt.size() != dim())
        throw std::invalid_argument("QuotientRhs: state dimension mismatch");
    const std::size_t nd = state_dim_;
    std::vector<double> acc(nd);
    for (std::size_t r = 0; r < k_; ++r) {
        const auto xr = x.subspan(r * nd, nd);
        models_[r].f(xr, t, dxdt.subspan(r * nd, nd));
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t s = 0; s < k_; ++s) {
            if (s == r) continue;
            const double w = eta_(r, s);
            if (w == 0.0) continue;
            const auto xs = x.subspan(s * nd, nd);
            for (std::size_t d = 0; d < nd; ++d) acc[d] += w * (xs[d] - xr[d]);
        }
        for (std::size_t d = 0; d < nd; ++d) dxdt[r * nd + d] += diffusion_[d] * acc[d];
    }
}

Trajectory simulate_quotient(const QuotientNetwork& q, std::span<const double> ic, double t_end,
                             double dt, std::size_t record_every) {
    QuotientRhs rhs(q);
    return integrate_rk4(rhs, rhs.dim(), ic, t_end, dt, record_every, quotient_hash(q));
}

ClusteredNetwork quotient_as_network(const QuotientNetwork& q) {
    const std::size_t k = q.cluster_count();
    if (k < 2)
        throw std::invalid_argument("quotient_as_network: need at least 2 clusters to form a graph");
    if (!q.eta_symmetric())
        throw std::invalid_argument(
            "quotient_as_network: eta is asymmetric; the quotient has no undirected-graph form");
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = r + 1; s < k; ++s)
            if (q.eta(r, s) > 0.0)
                edges.push_back({static_cast<int>(r), static_cast<int>(s), q.eta(r, s)});
    std::vector<std::vector<int>> clusters(k);
    for (std::size_t r = 0; r < k; ++r) clusters[r] = {static_cast<int>(r)};
    return ClusteredNetwork(k, std::move(edges), std::move(clusters), q.cluster_params,
                            q.diffusion);
}

std::uint64_t quotient_hash(const QuotientNetwork& q) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
        char buf[32];
        const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
        for (int i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<double>(q.cluster_count()));
    for (const auto& v : q.eta.data()) mix(v);
    for (const auto& p : q.cluster_params) {
        mix(p.a);
        mix(p.b);
        mix(p.epsilon);
        mix(p.I);
    }
    for (double d : q.diffusion) mix(d);
    return h;
}

}  // namespace clustersync
