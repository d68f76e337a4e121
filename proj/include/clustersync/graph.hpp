#pragma once

#include "clustersync/fn_model.hpp"
#include "clustersync/matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace clustersync {

// Raised when a quantity needed by the contraction certificate does not
// exist for the given network (e.g. a single-node cluster, or a cluster
// whose combined connectivity is zero).
struct CertificateUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    int i = 0;
    int j = 0;
    double weight = 0.0;
};

// A weighted undirected graph partitioned into K ordered clusters, with
// per-cluster oscillator parameters and a diagonal diffusion profile.
//
// Nodes are re-indexed on construction so each cluster occupies a
// contiguous index range, clusters in the order given, nodes inside a
// cluster in input order. All matrices, state vectors and edge lists
// produced by this library use that canonical ordering; the permutation
// is kept so reports can speak in the caller's original labels.
class ClusteredNetwork {
public:
    ClusteredNetwork(std::size_t n_nodes,
                     std::vector<Edge> edges,                 // original indices
                     std::vector<std::vector<int>> clusters,  // original indices
                     std::vector<FNParams> cluster_params,
                     std::vector<double> diffusion);

    std::size_t node_count() const { return n_nodes_; }
    std::size_t cluster_count() const { return clusters_.size(); }
    std::size_t state_dim() const { return diffusion_.size(); }

    // Canonical representation.
    const std::vector<Edge>& edges() const { return edges_; }  // i < j, sorted
    const std::vector<std::vector<int>>& clusters() const { return clusters_; }
    std::size_t cluster_size(std::size_t r) const { return clusters_[r].size(); }
    int cluster_of(int canonical_node) const { return cluster_of_[canonical_node]; }
    std::pair<int, int> cluster_range(std::size_t r) const;  // [begin, end)

    int to_canonical(int original_node) const { return orig_to_canon_[original_node]; }
    int to_original(int canonical_node) const { return canon_to_orig_[canonical_node]; }

    const std::vector<FNParams>& cluster_params() const { return cluster_params_; }
    const std::vector<double>& diffusion() const { return diffusion_; }

    bool has_singleton_cluster() const { return has_singleton_; }
    bool diffusion_is_zero() const { return diffusion_is_zero_; }

    // FNV-1a hash of the canonical form; identical networks (up to node
    // relabeling consistent with cluster order) hash identically.
    std::uint64_t hash() const;

private:
    std::size_t n_nodes_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> clusters_;
    std::vector<int> cluster_of_;
    std::vector<int> orig_to_canon_, canon_to_orig_;
    std::vector<FNParams> cluster_params_;
    std::vector<double> diffusion_;
    bool has_singleton_ = false;
    bool diffusion_is_zero_ = false;
};

// The Laplacian of the whole graph together with its decomposition into
// within-cluster and between-cluster parts, L = L_C + L_bar, and the full
// spectra of all three. L is assembled as the entrywise sum of the two
// parts, so the split identity holds exactly.
struct LaplacianSplit {
    Matrix L;
    Matrix L_C;
    Matrix L_bar;
    std::vector<double> spectrum_L;
    std::vector<std::vector<double>> spectrum_clusters;  // per cluster block
    std::vector<double> spectrum_L_bar;
    std::vector<std::size_t> cluster_sizes;

    // Algebraic connectivity of the whole graph.
    double lambda2() const;
    // Algebraic connectivity of cluster r's subgraph. Throws
    // CertificateUnavailable for a single-node cluster.
    double cluster_lambda2(std::size_t r) const;
    // Second smallest eigenvalue of L_bar; defined as 0 when K = 1.
    double lambda_bar2() const;

    std::size_t cluster_count() const { return cluster_sizes.size(); }
};

LaplacianSplit build_laplacian(const ClusteredNetwork& net);

// One ordered cluster pair of the cluster-input-equivalence check.
struct CIEPairResult {
    int r = 0;
    int s = 0;
    bool passes = true;
    double eta = 0.0;                  // common incoming weight when passing
    std::vector<int> offending_nodes;  // original indices, deviation above tolerance
};

struct CIEReport {
    bool passes = true;
    double tolerance = 0.0;
    Matrix eta;  // K x K, eta(r, s) = weight into each node of r from s; diagonal unused
    std::vector<CIEPairResult> pairs;
};

// For every ordered cluster pair (r, s), r != s, checks that each node of
// cluster r receives the same total edge weight from cluster s. The
// comparison is relative: the spread across nodes must not exceed
// rel_tol times the largest incoming sum for the pair. A failing check is
// a report, not an error.
CIEReport check_cluster_input_equivalence(const ClusteredNetwork& net, double rel_tol = 1e-9);

// Second smallest eigenvalue of a symmetric matrix (size >= 2).
double algebraic_connectivity(const Matrix& m);

}  // namespace clustersync
