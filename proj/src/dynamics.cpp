#include "clustersync/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace clustersync {

NetworkRhs::NetworkRhs(const ClusteredNetwork& net) {
    std::vector<NodeModel> models;
    models.reserve(net.cluster_count());
    for (const auto& p : net.cluster_params()) models.push_back(fn_node_model(p));
    *this = NetworkRhs(net, std::move(models));
}

NetworkRhs::NetworkRhs(const ClusteredNetwork& net, std::vector<NodeModel> cluster_models)
    : n_nodes_(net.node_count()),
      state_dim_(net.state_dim()),
      diffusion_(net.diffusion()),
      models_(std::move(cluster_models)) {
    if (models_.size() != net.cluster_count())
        throw std::invalid_argument("NetworkRhs: one model per cluster required");
    for (const auto& m : models_)
        if (m.dim != state_dim_)
            throw std::invalid_argument("NetworkRhs: model dimension does not match the network state dim");

    cluster_of_.resize(n_nodes_);
    for (std::size_t v = 0; v < n_nodes_; ++v)
        cluster_of_[v] = net.cluster_of(static_cast<int>(v));

    adjacency_.resize(n_nodes_);
    for (const Edge& e : net.edges()) {
        adjacency_[e.i].push_back({e.j, e.weight});
        adjacency_[e.j].push_back({e.i, e.weight});
    }
    for (auto& nbrs : adjacency_)
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

void NetworkRhs::operator()(std::span<const double> x, double t, std::span<double> dxdt) const {
    if (x.size() != dim() || dxdt.size() != dim())
        throw std::invalid_argument("NetworkRhs: state dimension mismatch");
    const std::size_t nd = state_dim_;
    std::vector<double> acc(nd);
    for (std::size_t v = 0; v < n_nodes_; ++v) {
        const auto xi = x.subspan(v * nd, nd);
        models_[cluster_of_[v]].f(xi, t, dxdt.subspan(v * nd, nd));
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const Neighbor& nb : adjacency_[v]) {
            const auto xj = x.subspan(static_cast<std::size_t>(nb.node) * nd, nd);
            for (std::size_t d = 0; d < nd; ++d) acc[d] += nb.weight * (xj[d] - xi[d]);
        }
        for (std::size_t d = 0; d < nd; ++d) dxdt[v * nd + d] += diffusion_[d] * acc[d];
    }
}

std::vector<double> network_rhs(const ClusteredNetwork& net, const LaplacianSplit& /*split*/,
                                std::span<const double> x, double t) {
    NetworkRhs rhs(net);
    std::vector<double> dxdt(rhs.dim());
    rhs(x, t, dxdt);
    return dxdt;
}

std::vector<double> network_rhs_kron(const ClusteredNetwork& net, const LaplacianSplit& split,
                                     std::span<const double> x, double t) {
    const std::size_t nd = net.state_dim();
    if (x.size() != net.node_count() * nd)
        throw std::invalid_argument("network_rhs_kron: state dimension mismatch");
    const Matrix ld = kronecker(split.L, Matrix::diagonal(net.diffusion()));
    std::vector<double> coupling = matvec(ld, x);

    std::vector<double> dxdt(x.size());
    std::vector<NodeModel> models;
    models.reserve(net.cluster_count());
    for (const auto& p : net.cluster_params()) models.push_back(fn_node_model(p));
    std::span<double> out(dxdt);
    for (std::size_t v = 0; v < net.node_count(); ++v)
        models[net.cluster_of(static_cast<int>(v))].f(x.subspan(v * nd, nd), t, out.subspan(v * nd, nd));
    for (std::size_t k = 0; k < dxdt.size(); ++k) dxdt[k] -= coupling[k];
    return dxdt;
}

}  // namespace clustersync
