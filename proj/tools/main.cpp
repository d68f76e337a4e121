// clustersync: certify and demonstrate cluster synchronization in networks
// of diffusively coupled oscillators.
//
// Subcommands:
//   analyze   spectra + cluster-input-equivalence + contraction certificate
//   simulate  integrate the network and write trajectory / error files
//   compare   full network on the cluster manifold vs. its quotient
//   quotient  emit the quotient network as a spec document
//
// Exit codes: 0 success (analyze: certified), 1 input error,
// 2 inconclusive / cluster-input-equivalence failure, 3 integration blow-up.

#include "clustersync/report.hpp"
#include "clustersync/simulate.hpp"
#include "clustersync/specdoc.hpp"
#include "clustersync/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace clustersync;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex_hash(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
    if (out_path)
        write_text(*out_path, text);
    else
        std::cout << text;
}

void print_parameter_warnings(const NetworkSpecDocument& doc) {
    for (const auto& cluster : doc.clusters)
        for (const auto& w : parameter_warnings(cluster.params))
            std::cerr << "warning: cluster " << cluster.id << ": " << w << "\n";
    if (doc.gamma == 0.0)
        std::cerr << "warning: gamma = 0 leaves the network uncoupled\n";
}

struct SimOverrides {
    std::optional<double> t_end, dt;
    std::optional<std::uint64_t> seed;
};

SimulationBlock resolve_simulation(const NetworkSpecDocument& doc, const SimOverrides& ov,
                                   bool require_block) {
    if (!doc.simulation && require_block)
        throw SpecError("spec error: this command needs a 'simulation' block (or --t-end/--dt/--seed)");
    SimulationBlock sim = doc.simulation.value_or(SimulationBlock{});
    if (ov.t_end) sim.t_end = *ov.t_end;
    if (ov.dt) sim.dt = *ov.dt;
    if (ov.seed) {
        if (sim.ic.mode == ICSpec::Mode::Explicit)
            throw SpecError("spec error: --seed does not apply to explicit initial conditions");
        sim.ic.seed = *ov.seed;
    }
    return sim;
}

json ic_metadata(const ICSpec& ic) {
    json v;
    switch (ic.mode) {
        case ICSpec::Mode::Uniform: v["mode"] = "uniform"; break;
        case ICSpec::Mode::ClusterUniform: v["mode"] = "cluster_uniform"; break;
        case ICSpec::Mode::Explicit: v["mode"] = "explicit"; break;
    }
    if (ic.mode != ICSpec::Mode::Explicit) {
        v["seed"] = ic.seed;
        v["box"] = {ic.box_lo, ic.box_hi};
    }
    return v;
}

// Trajectory table: t, y_1..y_N, z_1..z_N in the caller's original node
// numbering, 17 significant digits.
void write_trajectory_csv(const fs::path& path, const Trajectory& traj,
                          const std::vector<int>& canon_of_original, std::size_t state_dim) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    const std::size_t n = canon_of_original.size();
    out << "t";
    for (std::size_t i = 1; i <= n; ++i) out << ",y_" << i;
    if (state_dim > 1)
        for (std::size_t i = 1; i <= n; ++i) out << ",z_" << i;
    out << "\n";
    for (std::size_t s = 0; s < traj.sample_count(); ++s) {
        const auto x = traj.state(s);
        out << fmt17(traj.times[s]);
        for (std::size_t d = 0; d < state_dim; ++d)
            for (std::size_t i = 0; i < n; ++i)
                out << "," << fmt17(x[static_cast<std::size_t>(canon_of_original[i]) * state_dim + d]);
        out << "\n";
    }
}

void write_error_csv(const fs::path& path, const ClusterErrorSeries& series,
                     const std::vector<std::string>& cluster_ids) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "t";
    for (const auto& id : cluster_ids) out << ",e_" << id;
    out << ",weighted_deviation\n";
    for (std::size_t s = 0; s < series.times.size(); ++s) {
        out << fmt17(series.times[s]);
        for (std::size_t r = 0; r < cluster_ids.size(); ++r)
            out << "," << fmt17(series.per_cluster(s, r));
        out << "," << fmt17(series.weighted_deviation[s]) << "\n";
    }
}

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot the trajectory and cluster-error files written next to this script."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))

def read_csv(name):
    with open(os.path.join(here, name)) as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]
    return header, data

fig, axes = plt.subplots(2, 1, figsize=(9, 7), sharex=True)

header, data = read_csv("trajectory.csv")
t = [r[0] for r in data]
n_y = sum(1 for h in header if h.startswith("y_"))
for k in range(1, n_y + 1):
    axes[0].plot(t, [r[k] for r in data], lw=0.7)
axes[0].set_ylabel("membrane potential")

try:
    header, data = read_csv("cluster_errors.csv")
    t = [r[0] for r in data]
    for k, name in enumerate(header[1:], start=1):
        axes[1].semilogy(t, [max(r[k], 1e-18) for r in data], label=name)
    axes[1].legend(loc="best", fontsize=8)
except FileNotFoundError:
    pass
axes[1].set_xlabel("t")
axes[1].set_ylabel("cluster errors")

out = os.path.join(here, "run.png")
fig.tight_layout()
fig.savefig(out, dpi=150)
print(out)
)PY";

int cmd_analyze(const std::string& spec_path, const std::optional<std::string>& out_path) {
    const auto doc = load_spec(spec_path);
    if (doc.is_quotient())
        throw SpecError("spec error: analyze expects a full network document, not a quotient");
    print_parameter_warnings(doc);
    const auto net = doc.build_network();
    const auto report = analyze(net, doc.gamma, doc.name.empty() ? spec_path : doc.name);
    emit(out_path, report_to_json(report));
    return report.exit_code();
}

int cmd_simulate(const std::string& spec_path, const std::string& out_dir,
                 const SimOverrides& ov) {
    const auto doc = load_spec(spec_path);
    print_parameter_warnings(doc);
    const bool have_overrides = ov.t_end && ov.dt;
    const SimulationBlock sim = resolve_simulation(doc, ov, /*require_block=*/!have_overrides);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    json meta;
    meta["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    meta["input"] = {{"path", spec_path}, {"name", doc.name}};
    meta["settings"] = {{"t_end", sim.t_end},
                        {"dt", sim.dt},
                        {"record_every", sim.record_every},
                        {"ic", ic_metadata(sim.ic)}};

    try {
        if (doc.is_quotient()) {
            const auto q = doc.build_quotient_network();
            const auto ic =
                sim.ic.mode == ICSpec::Mode::Explicit
                    ? sim.ic.values
                    : cluster_representative_ic(sim.ic, q.cluster_count(), q.state_dim());
            if (ic.size() != q.cluster_count() * q.state_dim())
                throw SpecError("spec error: explicit initial condition length mismatch");
            const auto traj = simulate_quotient(q, ic, sim.t_end, sim.dt, sim.record_every);
            std::vector<int> identity(q.cluster_count());
            for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
            write_trajectory_csv(dir / "trajectory.csv", traj, identity, q.state_dim());
            meta["input"]["hash"] = hex_hash(quotient_hash(q));
            meta["outputs"] = {{"trajectory", "trajectory.csv"}};
        } else {
            const auto net = doc.build_network();
            const auto split = build_laplacian(net);
            const auto ic = make_initial_conditions(sim.ic, net);
            const auto traj = integrate(net, split, ic, sim.t_end, sim.dt, sim.record_every);
            const auto errors = cluster_errors(traj, net, fn_weight_matrix(net.cluster_params()));

            std::vector<int> canon_of_original(net.node_count());
            for (std::size_t i = 0; i < net.node_count(); ++i)
                canon_of_original[i] = net.to_canonical(static_cast<int>(i));
            write_trajectory_csv(dir / "trajectory.csv", traj, canon_of_original, net.state_dim());

            std::vector<std::string> ids;
            for (const auto& c : doc.clusters) ids.push_back(c.id);
            write_error_csv(dir / "cluster_errors.csv", errors, ids);

            meta["input"]["hash"] = hex_hash(net.hash());
            meta["outputs"] = {{"trajectory", "trajectory.csv"},
                               {"cluster_errors", "cluster_errors.csv"}};
        }
    } catch (const IntegrationBlowup& e) {
        meta["blowup_time"] = e.time;
        write_text(dir / "metadata.json", meta.dump(2) + "\n");
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    write_text(dir / "metadata.json", meta.dump(2) + "\n");
    write_text(dir / "plot_trajectory.py", kPlotScript);
    return 0;
}

int cmd_compare(const std::string& spec_path, const std::optional<std::string>& out_path,
                const SimOverrides& ov) {
    const auto doc = load_spec(spec_path);
    if (doc.is_quotient())
        throw SpecError("spec error: compare expects a full network document, not a quotient");
    print_parameter_warnings(doc);
    const auto net = doc.build_network();
    const auto cie = check_cluster_input_equivalence(net);
    if (!cie.passes) {
        AnalysisReport partial = analyze(net, doc.gamma, doc.name.empty() ? spec_path : doc.name);
        emit(out_path, report_to_json(partial));
        std::cerr << "error: cluster-input-equivalence fails; the quotient does not describe "
                     "this network\n";
        return 2;
    }

    SimulationBlock sim = resolve_simulation(doc, ov, /*require_block=*/false);
    if (!doc.simulation && !ov.t_end) sim.t_end = 100.0;
    if (!doc.simulation && !ov.dt) sim.dt = 0.01;
    if (!doc.simulation && !ov.seed)
        throw SpecError("spec error: compare needs a seed (simulation block or --seed)");

    const auto split = build_laplacian(net);
    const auto q = build_quotient(net, cie);

    ICSpec ic = sim.ic;
    ic.mode = ICSpec::Mode::ClusterUniform;  // the comparison starts on the manifold
    const auto full_ic = make_initial_conditions(ic, net);
    const auto reps = cluster_representative_ic(ic, net.cluster_count(), net.state_dim());

    const auto full = integrate(net, split, full_ic, sim.t_end, sim.dt, sim.record_every);
    const auto reduced = simulate_quotient(q, reps, sim.t_end, sim.dt, sim.record_every);

    const std::size_t nd = net.state_dim();
    double max_dev = 0.0;
    for (std::size_t s = 0; s < full.sample_count(); ++s) {
        const auto xf = full.state(s);
        const auto xq = reduced.state(s);
        for (std::size_t v = 0; v < net.node_count(); ++v) {
            const int r = net.cluster_of(static_cast<int>(v));
            for (std::size_t d = 0; d < nd; ++d)
                max_dev = std::max(max_dev,
                                   std::abs(xf[v * nd + d] - xq[static_cast<std::size_t>(r) * nd + d]));
        }
    }

    json root;
    root["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    root["input"] = {{"path", spec_path}, {"hash", hex_hash(net.hash())}};
    json eta = json::array();
    for (std::size_t r = 0; r < q.eta.rows(); ++r) {
        json row = json::array();
        for (std::size_t s = 0; s < q.eta.cols(); ++s) row.push_back(q.eta(r, s));
        eta.push_back(std::move(row));
    }
    root["quotient"] = {{"eta", eta}};
    root["comparison"] = {{"t_end", sim.t_end},
                          {"dt", sim.dt},
                          {"seed", ic.seed},
                          {"max_node_deviation", max_dev}};
    emit(out_path, root.dump(2) + "\n");
    return 0;
}

int cmd_quotient(const std::string& spec_path, const std::optional<std::string>& out_path) {
    const auto doc = load_spec(spec_path);
    if (doc.is_quotient())
        throw SpecError("spec error: the document already describes a quotient");
    const auto net = doc.build_network();
    const auto cie = check_cluster_input_equivalence(net);
    if (!cie.passes) {
        std::cerr << "error: cluster-input-equivalence fails; no quotient exists\n";
        return 2;
    }
    const auto q = build_quotient(net, cie);
    emit(out_path, serialize_spec(document_from_quotient(
                       q, doc.name.empty() ? "quotient" : doc.name + "-quotient")));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster synchronization certificates and simulations for coupled oscillator "
                 "networks"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::string spec_path;
    std::optional<std::string> out_path;
    std::string out_dir;
    SimOverrides ov;

    auto add_overrides = [&ov](CLI::App* cmd) {
        cmd->add_option("--t-end", ov.t_end, "override the simulation horizon");
        cmd->add_option("--dt", ov.dt, "override the integrator step");
        cmd->add_option("--seed", ov.seed, "override the initial-condition seed");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "spectra, input-equivalence, certificate");
    analyze_cmd->add_option("spec", spec_path, "network spec document")->required();
    analyze_cmd->add_option("--out", out_path, "write the report here instead of stdout");

    auto* simulate_cmd = app.add_subcommand("simulate", "integrate and write run files");
    simulate_cmd->add_option("spec", spec_path, "network spec document")->required();
    simulate_cmd->add_option("--out", out_dir, "output directory")->required();
    add_overrides(simulate_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "full network vs. quotient on the manifold");
    compare_cmd->add_option("spec", spec_path, "network spec document")->required();
    compare_cmd->add_option("--out", out_path, "write the report here instead of stdout");
    add_overrides(compare_cmd);

    auto* quotient_cmd = app.add_subcommand("quotient", "emit the quotient spec document");
    quotient_cmd->add_option("spec", spec_path, "network spec document")->required();
    quotient_cmd->add_option("--out", out_path, "write the document here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(spec_path, out_path);
        if (simulate_cmd->parsed()) return cmd_simulate(spec_path, out_dir, ov);
        if (compare_cmd->parsed()) return cmd_compare(spec_path, out_path, ov);
        if (quotient_cmd->parsed()) return cmd_quotient(spec_path, out_path);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
