#pragma once

#include "clustersync/graph.hpp"
#include "clustersync/simulate.hpp"

#include <vector>

namespace clustersync {

// K-node reduction of a cluster-input-equivalent network: one node per
// cluster, coupled through the common incoming weights eta. eta(r, s) is
// the weight each node of cluster r receives from cluster s, so eta need
// not be symmetric when cluster sizes differ.
struct QuotientNetwork {
    Matrix eta;  // K x K, diagonal unused
    std::vector<FNParams> cluster_params;
    std::vector<double> diffusion;

    std::size_t cluster_count() const { return eta.rows(); }
    std::size_t state_dim() const { return diffusion.size(); }
    bool eta_symmetric(double tol = 0.0) const;
};

// Builds the quotient from a passing cluster-input-equivalence report.
// Refuses (throws std::invalid_argument) when the report failed: without
// the condition the reduced dynamics do not describe the network.
QuotientNetwork build_quotient(const ClusteredNetwork& net, const CIEReport& cie);

class QuotientRhs {
public:
    explicit QuotientRhs(const QuotientNetwork& q);
    std::size_t dim() const { return k_ * state_dim_; }
    void operator()(std::span<const double> x, double t, std::span<double> dxdt) const;

private:
    std::size_t k_ = 0, state_dim_ = 0;
    Matrix eta_;
    std::vector<double> diffusion_;
    std::vector<NodeModel> models_;
};

Trajectory simulate_quotient(const QuotientNetwork& q, std::span<const double> ic, double t_end,
                             double dt, std::size_t record_every = 1);

// Views a quotient as an ordinary network of singleton clusters, which is
// possible exactly when eta is symmetric (undirected edges). Useful for
// re-quotienting and for serialization of symmetric quotients.
ClusteredNetwork quotient_as_network(const QuotientNetwork& q);

std::uint64_t quotient_hash(const QuotientNetwork& q);

}  // namespace clustersync
