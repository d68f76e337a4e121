#include "clustersync/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace clustersync {

Trajectory integrate(const ClusteredNetwork& net, const LaplacianSplit& split,
                     std::span<const double> ic, double t_end, double dt,
                     std::size_t record_every) {
    (void)split;  // the edge-accumulation rhs does not need the assembled Laplacian
    NetworkRhs rhs(net);
    return integrate_rk4(rhs, rhs.dim(), ic, t_end, dt, record_every, net.hash());
}

ClusterErrorSeries cluster_errors(const Trajectory& traj, const ClusteredNetwork& net,
                                  const WeightMatrix& P) {
    const std::size_t nd = net.state_dim();
    if (traj.dim != net.node_count() * nd)
        throw std::invalid_argument("cluster_errors: trajectory does not match the network");
    if (P.dim() != nd)
        throw std::invalid_argument("cluster_errors: weight matrix does not match the state dim");

    const std::size_t k = net.cluster_count();
    ClusterErrorSeries series;
    series.times = traj.times;
    series.per_cluster = Matrix(traj.sample_count(), k);
    series.weighted_deviation.assign(traj.sample_count(), 0.0);

    std::vector<double> mean(nd), w(nd);
    for (std::size_t sample = 0; sample < traj.sample_count(); ++sample) {
        const auto x = traj.state(sample);
        double dev_sq = 0.0;
        for (std::size_t r = 0; r < k; ++r) {
            const auto [begin, end] = net.cluster_range(r);
            // max pairwise distance
            double worst = 0.0;
            for (int i = begin; i < end; ++i)
                for (int j = i + 1; j < end; ++j) {
                    double d2 = 0.0;
                    for (std::size_t d = 0; d < nd; ++d) {
                        const double diff = x[i * nd + d] - x[j * nd + d];
                        d2 += diff * diff;
                    }
                    worst = std::max(worst, d2);
                }
            series.per_cluster(sample, r) = std::sqrt(worst);

            // weighted deviation from the cluster mean
            std::fill(mean.begin(), mean.end(), 0.0);
            for (int i = begin; i < end; ++i)
                for (std::size_t d = 0; d < nd; ++d) mean[d] += x[i * nd + d];
            const double inv = 1.0 / static_cast<double>(end - begin);
            for (std::size_t d = 0; d < nd; ++d) mean[d] *= inv;
            for (int i = begin; i < end; ++i) {
                for (std::size_t d = 0; d < nd; ++d) w[d] = x[i * nd + d] - mean[d];
                dev_sq += P.block_norm_sq(w);
            }
        }
        series.weighted_deviation[sample] = std::sqrt(dev_sq);
    }
    return series;
}

EnvelopeReport check_envelope(const Trajectory& traj, const ClusteredNetwork& net,
                              const Certificate& cert, double slack_rel, double slack_abs) {
    const ClusterErrorSeries series = cluster_errors(traj, net, cert.P);

    EnvelopeReport report;
    report.mu = cert.mu;
    report.vacuous = cert.mu >= 0.0;
    report.slack_rel = slack_rel;
    report.slack_abs = slack_abs;
    report.initial = series.weighted_deviation.front();

    const double t0 = series.times.front();
    for (std::size_t s = 0; s < series.times.size(); ++s) {
        const double bound =
            std::exp(cert.mu * (series.times[s] - t0)) * report.initial * (1.0 + slack_rel) +
            slack_abs;
        const double ratio = series.weighted_deviation[s] / bound;
        if (ratio > report.max_ratio) report.max_ratio = ratio;
        if (ratio > 1.0 && std::isnan(report.first_violation_time))
            report.first_violation_time = series.times[s];
    }
    report.satisfied = report.max_ratio <= 1.0;
    return report;
}

}  // namespace clustersync
