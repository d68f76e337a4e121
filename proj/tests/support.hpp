#pragma once

// Shared builders for the test suites: concrete networks mirroring the
// example gallery plus seeded random cluster-input-equivalent networks.

#include "clustersync/certify.hpp"
#include "clustersync/graph.hpp"

#include <random>
#include <vector>

namespace clustersync::testing {

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                            double hi = 1.0) {
    Matrix m(n, n);
    for (auto& v : m.data()) v = uniform_in(rng, lo, hi);
    return m;
}

inline Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    return symmetric_part(random_matrix(rng, n));
}

inline Matrix random_spd(std::mt19937_64& rng, std::size_t n) {
    const Matrix r = random_matrix(rng, n);
    return transpose(r) * r + 0.5 * Matrix::identity(n);
}

// ---- edge-list builders (original node indices) ----

inline void add_complete(std::vector<Edge>& edges, const std::vector<int>& nodes, double w) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            edges.push_back({nodes[i], nodes[j], w});
}

inline void add_star(std::vector<Edge>& edges, const std::vector<int>& nodes, double w) {
    for (std::size_t i = 1; i < nodes.size(); ++i) edges.push_back({nodes[0], nodes[i], w});
}

inline void add_ring(std::vector<Edge>& edges, const std::vector<int>& nodes, double w) {
    const std::size_t c = nodes.size();
    if (c == 2) {
        edges.push_back({nodes[0], nodes[1], w});
        return;
    }
    for (std::size_t i = 0; i < c; ++i) edges.push_back({nodes[i], nodes[(i + 1) % c], w});
}

inline void add_bipartite(std::vector<Edge>& edges, const std::vector<int>& a,
                          const std::vector<int>& b, double w) {
    for (int i : a)
        for (int j : b) edges.push_back({i, j, w});
}

inline std::vector<int> range_nodes(int begin, int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) v[i] = begin + i;
    return v;
}

// ---- concrete networks ----

// Path 1-2-3, unit weights, one cluster. Laplacian spectrum {0, 1, 3}.
inline ClusteredNetwork path3_network(double gamma = 0.5) {
    std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
    return ClusteredNetwork(3, edges, {{0, 1, 2}}, {FNParams{0.1, 0.5, 0.08, 0.5}},
                            {gamma, 0.0});
}

inline ClusteredNetwork complete_network(int m, double gamma, double w = 1.0,
                                         FNParams params = {0.1, 0.5, 0.08, 0.5}) {
    std::vector<Edge> edges;
    add_complete(edges, range_nodes(0, m), w);
    return ClusteredNetwork(m, edges, {range_nodes(0, m)}, {params}, {gamma, 0.0});
}

// Two-cluster network from the 200-oscillator example, at configurable
// size m per cluster: a complete graph coupled to a star through a
// perfect matching.
inline ClusteredNetwork two_cluster_complete_star(int m, double gamma, double complete_w = 1.0,
                                                  double star_w = 0.04, double match_w = 0.25) {
    const auto c1 = range_nodes(0, m);
    const auto c2 = range_nodes(m, m);
    std::vector<Edge> edges;
    add_complete(edges, c1, complete_w);
    add_star(edges, c2, star_w);
    for (int i = 0; i < m; ++i) edges.push_back({c1[i], c2[i], match_w});
    const FNParams p1{0.9, 0.5, 0.08, 2.0};
    const FNParams p2{0.7, 0.8, 0.08, 0.3};
    return ClusteredNetwork(2 * static_cast<std::size_t>(m), edges, {c1, c2}, {p1, p2},
                            {gamma, 0.0});
}

// 17-oscillator three-cluster network (sizes 6, 7, 4): rings inside each
// cluster, complete tripartite unit-weight coupling between clusters, so
// cluster-input-equivalence holds by construction. Setting
// drop_one_inter_edge removes one C1-C2 edge, which breaks it.
inline ClusteredNetwork three_cluster_surrogate(double gamma = 0.12,
                                                bool drop_one_inter_edge = false) {
    const auto c1 = range_nodes(0, 6);
    const auto c2 = range_nodes(6, 7);
    const auto c3 = range_nodes(13, 4);
    std::vector<Edge> edges;
    add_ring(edges, c1, 1.0);
    add_ring(edges, c2, 1.0);
    add_ring(edges, c3, 1.0);
    add_bipartite(edges, c1, c2, 1.0);
    add_bipartite(edges, c1, c3, 1.0);
    add_bipartite(edges, c2, c3, 1.0);
    if (drop_one_inter_edge)
        std::erase_if(edges, [](const Edge& e) { return e.i == 0 && e.j == 6; });
    const FNParams p1{0.1, 0.1, 0.08, 0.9};
    const FNParams p2{0.5, 0.7, 0.08, 3.0};
    const FNParams p3{0.9, 0.3, 0.08, 0.1};
    return ClusteredNetwork(17, edges, {c1, c2, c3}, {p1, p2, p3}, {gamma, 0.0});
}

// Clusters of sizes 2 and 4 where each C1 node receives total weight 2
// from C2 and each C2 node receives total weight 1 from C1, so the
// quotient weights are asymmetric: eta12 = 2, eta21 = 1.
inline ClusteredNetwork asymmetric_eta_network(double gamma = 0.3) {
    const std::vector<int> c1{0, 1};
    const std::vector<int> c2{2, 3, 4, 5};
    std::vector<Edge> edges{{0, 1, 1.0}};
    add_ring(edges, c2, 1.0);
    edges.push_back({0, 2, 1.0});
    edges.push_back({0, 3, 1.0});
    edges.push_back({1, 4, 1.0});
    edges.push_back({1, 5, 1.0});
    const FNParams p1{0.1, 0.5, 0.08, 0.8};
    const FNParams p2{0.6, 0.4, 0.08, 1.5};
    return ClusteredNetwork(6, edges, {c1, c2}, {p1, p2}, {gamma, 0.0});
}

// Seeded random CIE-passing FN network: ring-connected clusters joined by
// complete bipartite blocks of uniform weight. K in {1, 2, 3}, N <= 24.
// equal_epsilon selects the alpha = 0 regime of the threshold.
inline ClusteredNetwork random_cie_network(std::mt19937_64& rng, int K, bool equal_epsilon,
                                           double gamma_placeholder = 0.1) {
    std::vector<std::vector<int>> clusters;
    std::vector<Edge> edges;
    int next = 0;
    for (int r = 0; r < K; ++r) {
        const int size = 2 + static_cast<int>(rng() % 6);  // 2..7
        auto nodes = range_nodes(next, size);
        next += size;
        add_ring(edges, nodes, uniform_in(rng, 0.5, 2.0));
        clusters.push_back(std::move(nodes));
    }
    for (int r = 0; r < K; ++r)
        for (int s = r + 1; s < K; ++s)
            add_bipartite(edges, clusters[r], clusters[s], uniform_in(rng, 0.2, 1.5));

    std::vector<FNParams> params;
    const double shared_eps = 0.08;
    for (int r = 0; r < K; ++r) {
        FNParams p;
        p.a = uniform_in(rng, 0.0, 1.0);
        p.b = uniform_in(rng, 0.3, 1.0);
        p.epsilon = equal_epsilon ? shared_eps : uniform_in(rng, 0.05, 0.3);
        p.I = uniform_in(rng, 0.0, 2.5);
        params.push_back(p);
    }
    return ClusteredNetwork(static_cast<std::size_t>(next), edges, clusters, params,
                            {gamma_placeholder, 0.0});
}

// Rebuilds the same topology with gamma strictly above every cluster
// threshold (factor 1.1) and returns the pair (network, certificate).
inline std::pair<ClusteredNetwork, Certificate> certified_variant(const ClusteredNetwork& net) {
    const LaplacianSplit split = build_laplacian(net);
    const Certificate probe = fn_certificate_mu(net, split, 1.0);
    double worst = 0.0;
    for (const auto& cc : probe.per_cluster) worst = std::max(worst, cc.gamma_threshold.value());
    const double gamma = 1.1 * worst;
    ClusteredNetwork tuned(net.node_count(), net.edges(),
                           net.clusters(),  // already canonical; identity relabel
                           net.cluster_params(), {gamma, 0.0});
    Certificate cert = fn_certificate_mu(tuned, split, gamma);
    return {std::move(tuned), std::move(cert)};
}

}  // namespace clustersync::testing
