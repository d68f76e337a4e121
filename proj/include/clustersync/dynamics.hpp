#pragma once

#include "clustersync/fn_model.hpp"
#include "clustersync/graph.hpp"

#include <span>
#include <vector>

namespace clustersync {

// Right-hand side of the networked system
//
//   dX/dt = F(X, t) - (L (x) D) X
//
// evaluated by per-edge accumulation: each node gets its intrinsic
// dynamics plus D times the weighted sum of neighbor differences.
// Neighbor sums run in ascending canonical node order, so the output is
// deterministic regardless of how the edge list was supplied.
class NetworkRhs {
public:
    // FN models built from the network's per-cluster parameters.
    explicit NetworkRhs(const ClusteredNetwork& net);
    // Arbitrary per-cluster models (all must share the network state dim).
    NetworkRhs(const ClusteredNetwork& net, std::vector<NodeModel> cluster_models);

    std::size_t node_count() const { return n_nodes_; }
    std::size_t state_dim() const { return state_dim_; }
    std::size_t dim() const { return n_nodes_ * state_dim_; }

    void operator()(std::span<const double> x, double t, std::span<double> dxdt) const;

private:
    struct Neighbor {
        int node;
        double weight;
    };

    std::size_t n_nodes_ = 0, state_dim_ = 0;
    std::vector<double> diffusion_;
    std::vector<int> cluster_of_;
    std::vector<NodeModel> models_;
    std::vector<std::vector<Neighbor>> adjacency_;  // sorted by neighbor index
};

// Convenience single-shot evaluation.
std::vector<double> network_rhs(const ClusteredNetwork& net, const LaplacianSplit& split,
                                std::span<const double> x, double t);

// Same quantity assembled through the explicit Kronecker product
// (L (x) D); O(N^2 n^2), used to cross-check the edge accumulation.
std::vector<double> network_rhs_kron(const ClusteredNetwork& net, const LaplacianSplit& split,
                                     std::span<const double> x, double t);

}  // namespace clustersync
