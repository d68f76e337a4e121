#include "clustersync/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace clustersync {

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < n; ++k) {
        h ^= p[k];
        h *= 1099511628211ULL;
    }
}

void hash_double(std::uint64_t& h, double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    hash_bytes(h, buf, static_cast<std::size_t>(n));
}

void hash_int(std::uint64_t& h, long long v) {
    hash_bytes(h, &v, sizeof v);
}

}  // namespace

ClusteredNetwork::ClusteredNetwork(std::size_t n_nodes, std::vector<Edge> edges,
                                   std::vector<std::vector<int>> clusters,
                                   std::vector<FNParams> cluster_params,
                                   std::vector<double> diffusion)
    : n_nodes_(n_nodes),
      cluster_params_(std::move(cluster_params)),
      diffusion_(std::move(diffusion)) {
    if (n_nodes_ < 2) throw std::invalid_argument("ClusteredNetwork: need at least 2 nodes");
    if (clusters.empty()) throw std::invalid_argument("ClusteredNetwork: need at least one cluster");
    if (cluster_params_.size() != clusters.size())
        throw std::invalid_argument("ClusteredNetwork: one parameter record per cluster required");
    for (const auto& p : cluster_params_) validate(p);
    if (diffusion_.empty())
        throw std::invalid_argument("ClusteredNetwork: diffusion profile must be nonempty");
    diffusion_is_zero_ = true;
    for (double d : diffusion_) {
        if (d < 0.0 || !std::isfinite(d))
            throw std::invalid_argument("ClusteredNetwork: diffusion entries must be nonnegative");
        if (d > 0.0) diffusion_is_zero_ = false;
    }

    // Clusters must partition {0..N-1}; build the canonical ordering.
    orig_to_canon_.assign(n_nodes_, -1);
    canon_to_orig_.reserve(n_nodes_);
    cluster_of_.reserve(n_nodes_);
    clusters_.reserve(clusters.size());
    int next = 0;
    for (std::size_t r = 0; r < clusters.size(); ++r) {
        if (clusters[r].empty())
            throw std::invalid_argument("ClusteredNetwork: cluster " + std::to_string(r) + " is empty");
        if (clusters[r].size() == 1) has_singleton_ = true;
        std::vector<int> canon_members;
        canon_members.reserve(clusters[r].size());
        for (int v : clusters[r]) {
            if (v < 0 || static_cast<std::size_t>(v) >= n_nodes_)
                throw std::invalid_argument("ClusteredNetwork: node index out of range in cluster " +
                                            std::to_string(r));
            if (orig_to_canon_[v] != -1)
                throw std::invalid_argument("ClusteredNetwork: node " + std::to_string(v) +
                                            " appears in more than one cluster");
            orig_to_canon_[v] = next;
            canon_to_orig_.push_back(v);
            cluster_of_.push_back(static_cast<int>(r));
            canon_members.push_back(next);
            ++next;
        }
        clusters_.push_back(std::move(canon_members));
    }
    if (static_cast<std::size_t>(next) != n_nodes_)
        throw std::invalid_argument("ClusteredNetwork: clusters do not cover every node");

    // Canonicalize edges, reject self loops, nonpositive weights and
    // duplicates (duplicates are almost always a spec-file mistake, so
    // they are surfaced instead of being summed).
    edges_.reserve(edges.size());
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
        if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= n_nodes_ ||
            static_cast<std::size_t>(e.j) >= n_nodes_)
            throw std::invalid_argument("ClusteredNetwork: edge endpoint out of range");
        if (e.i == e.j)
            throw std::invalid_argument("ClusteredNetwork: self loop at node " + std::to_string(e.i));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("ClusteredNetwork: edge weights must be strictly positive");
        int a = orig_to_canon_[e.i];
        int b = orig_to_canon_[e.j];
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second)
            throw std::invalid_argument("ClusteredNetwork: duplicate edge between nodes " +
                                        std::to_string(e.i) + " and " + std::to_string(e.j));
        edges_.push_back({a, b, e.weight});
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::pair(x.i, x.j) < std::pair(y.i, y.j); });
}

std::pair<int, int> ClusteredNetwork::cluster_range(std::size_t r) const {
    const auto& members = clusters_[r];
    return {members.front(), members.back() + 1};
}

std::uint64_t ClusteredNetwork::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    hash_int(h, static_cast<long long>(n_nodes_));
    hash_int(h, static_cast<long long>(clusters_.size()));
    for (const auto& c : clusters_) hash_int(h, static_cast<long long>(c.size()));
    for (const auto& p : cluster_params_) {
        hash_double(h, p.a);
        hash_double(h, p.b);
        hash_double(h, p.epsilon);
        hash_double(h, p.I);
    }
    for (double d : diffusion_) hash_double(h, d);
    for (const Edge& e : edges_) {
        hash_int(h, e.i);
        hash_int(h, e.j);
        hash_double(h, e.weight);
    }
    return h;
}

namespace {

Matrix laplacian_from_edges(std::size_t n, const std::vector<Edge>& edges, bool within,
                            const ClusteredNetwork& net) {
    Matrix l(n, n);
    for (const Edge& e : edges) {
        const bool same = net.cluster_of(e.i) == net.cluster_of(e.j);
        if (same != within) continue;
        l(e.i, e.i) += e.weight;
        l(e.j, e.j) += e.weight;
        l(e.i, e.j) -= e.weight;
        l(e.j, e.i) -= e.weight;
    }
    return l;
}

}  // namespace

LaplacianSplit build_laplacian(const ClusteredNetwork& net) {
    const std::size_t n = net.node_count();
    LaplacianSplit split;
    split.L_C = laplacian_from_edges(n, net.edges(), true, net);
    split.L_bar = laplacian_from_edges(n, net.edges(), false, net);
    split.L = split.L_C + split.L_bar;

    split.spectrum_L = symmetric_eigenvalues(split.L);
    split.spectrum_L_bar = symmetric_eigenvalues(split.L_bar);

    split.cluster_sizes.reserve(net.cluster_count());
    split.spectrum_clusters.reserve(net.cluster_count());
    for (std::size_t r = 0; r < net.cluster_count(); ++r) {
        const auto [begin, end] = net.cluster_range(r);
        const std::size_t c = static_cast<std::size_t>(end - begin);
        split.cluster_sizes.push_back(c);
        Matrix block(c, c);
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j)
                block(i, j) = split.L_C(begin + i, begin + j);
        split.spectrum_clusters.push_back(symmetric_eigenvalues(block));
    }
    return split;
}

double LaplacianSplit::lambda2() const {
    if (spectrum_L.size() < 2)
        throw std::invalid_argument("LaplacianSplit: graph has fewer than 2 nodes");
    return spectrum_L[1];
}

double LaplacianSplit::cluster_lambda2(std::size_t r) const {
    const auto& spec = spectrum_clusters.at(r);
    if (spec.size() < 2)
        throw CertificateUnavailable("cluster " + std::to_string(r) +
                                     " has a single node; the certificate requires clusters of size >= 2");
    return spec[1];
}

double LaplacianSplit::lambda_bar2() const {
    if (cluster_count() == 1) return 0.0;
    return spectrum_L_bar.at(1);
}

CIEReport check_cluster_input_equivalence(const ClusteredNetwork& net, double rel_tol) {
    const std::size_t k = net.cluster_count();
    CIEReport report;
    report.tolerance = rel_tol;
    report.eta = Matrix(k, k);

    // incoming[r][s][i]: weight into the i-th node of cluster r from cluster s
    std::vector<std::vector<std::vector<double>>> incoming(
        k, std::vector<std::vector<double>>(k));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s)
            incoming[r][s].assign(net.cluster_size(r), 0.0);

    for (const Edge& e : net.edges()) {
        const int r = net.cluster_of(e.i);
        const int s = net.cluster_of(e.j);
        if (r == s) continue;
        const int ri = e.i - net.cluster_range(r).first;
        const int sj = e.j - net.cluster_range(s).first;
        incoming[r][s][ri] += e.weight;
        incoming[s][r][sj] += e.weight;
    }

    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t s = 0; s < k; ++s) {
            if (r == s) continue;
            const auto& sums = incoming[r][s];
            double lo = sums[0], hi = sums[0], mean = 0.0;
            for (double v : sums) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                mean += v;
            }
            mean /= static_cast<double>(sums.size());

            CIEPairResult pair;
            pair.r = static_cast<int>(r);
            pair.s = static_cast<int>(s);
            const double scale = std::max(std::abs(lo), std::abs(hi));
            pair.passes = (hi - lo) <= rel_tol * scale || scale == 0.0;
            pair.eta = mean;
            if (!pair.passes) {
                report.passes = false;
                const auto [begin, end] = net.cluster_range(r);
                (void)end;
                for (std::size_t i = 0; i < sums.size(); ++i)
                    if (std::abs(sums[i] - mean) > rel_tol * scale)
                        pair.offending_nodes.push_back(net.to_original(begin + static_cast<int>(i)));
            }
            report.eta(r, s) = mean;
            report.pairs.push_back(std::move(pair));
        }
    }
    return report;
}

double algebraic_connectivity(const Matrix& m) {
    if (!m.square() || m.rows() < 2)
        throw std::invalid_argument("algebraic_connectivity: need a square matrix of size >= 2");
    if (!is_symmetric(m))
        throw std::invalid_argument("algebraic_connectivity: matrix is not symmetric");
    const auto eig = symmetric_eigenvalues(m);
    return eig[1];
}

}  // namespace clustersync
