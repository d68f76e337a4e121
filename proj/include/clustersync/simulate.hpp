#pragma once

#include "clustersync/certify.hpp"
#include "clustersync/dynamics.hpp"
#include "clustersync/graph.hpp"
#include "clustersync/measures.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace clustersync {

// Integration hit a non-finite state; `time` is where it happened.
struct IntegrationBlowup : std::runtime_error {
    explicit IntegrationBlowup(double t)
        : std::runtime_error("integration aborted: non-finite state at t = " + std::to_string(t)),
          time(t) {}
    double time;
};

struct Trajectory {
    std::vector<double> times;   // strictly increasing, starts at 0
    std::size_t dim = 0;         // stacked state length per sample
    std::vector<double> states;  // times.size() x dim, row-major

    std::uint64_t net_hash = 0;
    double dt = 0.0;
    std::size_t record_every = 1;

    std::size_t sample_count() const { return times.size(); }
    std::span<const double> state(std::size_t k) const {
        return {states.data() + k * dim, dim};
    }
};

// Classical fixed-step 4th-order Runge-Kutta. The horizon is rounded to a
// whole number of steps; samples are recorded every `record_every` steps
// plus the final state. Deterministic: identical inputs produce byte
// identical trajectories.
template <class Rhs>
Trajectory integrate_rk4(Rhs&& rhs, std::size_t dim, std::span<const double> ic, double t_end,
                         double dt, std::size_t record_every = 1, std::uint64_t net_hash = 0) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
    if (record_every == 0) throw std::invalid_argument("integrate: record_every must be >= 1");
    if (ic.size() != dim) throw std::invalid_argument("integrate: initial condition length mismatch");

    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    if (steps == 0) throw std::invalid_argument("integrate: horizon shorter than one step");

    Trajectory traj;
    traj.dim = dim;
    traj.dt = dt;
    traj.record_every = record_every;
    traj.net_hash = net_hash;
    traj.times.reserve(steps / record_every + 2);
    traj.states.reserve((steps / record_every + 2) * dim);

    std::vector<double> x(ic.begin(), ic.end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), stage(dim);

    auto record = [&](std::size_t step) {
        traj.times.push_back(static_cast<double>(step) * dt);
        traj.states.insert(traj.states.end(), x.begin(), x.end());
    };
    record(0);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        rhs(std::span<const double>(x), t, std::span<double>(k1));
        for (std::size_t i = 0; i < dim; ++i) stage[i] = x[i] + 0.5 * dt * k1[i];
        rhs(std::span<const double>(stage), t + 0.5 * dt, std::span<double>(k2));
        for (std::size_t i = 0; i < dim; ++i) stage[i] = x[i] + 0.5 * dt * k2[i];
        rhs(std::span<const double>(stage), t + 0.5 * dt, std::span<double>(k3));
        for (std::size_t i = 0; i < dim; ++i) stage[i] = x[i] + dt * k3[i];
        rhs(std::span<const double>(stage), t + dt, std::span<double>(k4));
        for (std::size_t i = 0; i < dim; ++i)
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        for (double v : x)
            if (!std::isfinite(v)) throw IntegrationBlowup(static_cast<double>(step + 1) * dt);

        const std::size_t done = step + 1;
        if (done % record_every == 0 || done == steps) record(done);
    }
    return traj;
}

// Integrate the full networked system.
Trajectory integrate(const ClusteredNetwork& net, const LaplacianSplit& split,
                     std::span<const double> ic, double t_end, double dt,
                     std::size_t record_every = 1);

// Per-sample cluster synchronization diagnostics:
//   per_cluster(k, r) = max pairwise 2-norm distance within cluster r,
//   weighted_deviation[k] = sqrt(sum_i (X^i - xbar)^T P^2 (X^i - xbar))
// with xbar the mean of node i's cluster. The deviation is the square
// root of the quadratic form w^T (I (x) P^2) w whose decay the
// contraction certificate controls, i.e. the per-block norm applies P
// once.
struct ClusterErrorSeries {
    std::vector<double> times;
    Matrix per_cluster;  // sample_count x K
    std::vector<double> weighted_deviation;
};

ClusterErrorSeries cluster_errors(const Trajectory& traj, const ClusteredNetwork& net,
                                  const WeightMatrix& P);

// Checks the certified envelope
//   ||X(t) - Xbar(t)||_{2,P} <= e^{mu t} * initial * (1 + slack_rel) + slack_abs
// at every recorded sample. Violations are reported, never thrown.
struct EnvelopeReport {
    double mu = 0.0;
    bool vacuous = false;     // mu >= 0: the bound certifies nothing at large t
    double initial = 0.0;     // deviation at the first sample
    double max_ratio = 0.0;   // max over samples of deviation / slacked envelope
    double first_violation_time = std::numeric_limits<double>::quiet_NaN();
    bool satisfied = true;    // max_ratio <= 1
    double slack_rel = 0.0, slack_abs = 0.0;
};

EnvelopeReport check_envelope(const Trajectory& traj, const ClusteredNetwork& net,
                              const Certificate& cert, double slack_rel = 1e-3,
                              double slack_abs = 1e-9);

}  // namespace clustersync
