#include "clustersync/report.hpp"

#include "clustersync/version.hpp"

#include <json.hpp>

#include <cstdio>

using nlohmann::json;

namespace clustersync {

int AnalysisReport::exit_code() const {
    return (cie.passes && certificate && certificate->contractive()) ? 0 : 2;
}

AnalysisReport analyze(const ClusteredNetwork& net, double gamma, const std::string& input_name) {
    AnalysisReport report;
    report.input_name = input_name;
    report.input_hash = net.hash();
    report.n_nodes = net.node_count();
    report.gamma = gamma;

    const LaplacianSplit split = build_laplacian(net);
    report.lambda2 = split.lambda2();
    report.lambda_bar2 = split.lambda_bar2();
    for (std::size_t r = 0; r < net.cluster_count(); ++r) {
        if (split.cluster_sizes[r] >= 2)
            report.cluster_lambda2.emplace_back(split.cluster_lambda2(r));
        else
            report.cluster_lambda2.emplace_back(std::nullopt);
    }

    report.cie = check_cluster_input_equivalence(net);
    try {
        report.certificate = fn_certificate_mu(net, split, gamma);
    } catch (const CertificateUnavailable& e) {
        report.certificate_unavailable_reason = e.what();
    }
    return report;
}

namespace {

std::string hex_hash(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json eta_to_json(const Matrix& eta) {
    json rows = json::array();
    for (std::size_t r = 0; r < eta.rows(); ++r) {
        json row = json::array();
        for (std::size_t s = 0; s < eta.cols(); ++s) row.push_back(eta(r, s));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
    json root;
    root["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    root["input"] = {{"name", report.input_name},
                     {"hash", hex_hash(report.input_hash)},
                     {"n_nodes", report.n_nodes}};

    json spectra;
    spectra["lambda2"] = report.lambda2;
    json cl = json::array();
    for (const auto& v : report.cluster_lambda2) {
        if (v)
            cl.push_back(*v);
        else
            cl.push_back(nullptr);
    }
    spectra["cluster_lambda2"] = std::move(cl);
    spectra["lambda_bar2"] = report.lambda_bar2;
    root["spectra"] = std::move(spectra);

    json cie;
    cie["passes"] = report.cie.passes;
    cie["tolerance"] = report.cie.tolerance;
    cie["eta"] = eta_to_json(report.cie.eta);
    json failures = json::array();
    for (const auto& pair : report.cie.pairs) {
        if (pair.passes) continue;
        failures.push_back(
            {{"pair", {pair.r, pair.s}}, {"offending_nodes", pair.offending_nodes}});
    }
    cie["failures"] = std::move(failures);
    root["cie"] = std::move(cie);

    json cert;
    cert["gamma"] = report.gamma;
    if (report.certificate) {
        const Certificate& c = *report.certificate;
        cert["available"] = true;
        cert["P_diag"] = {c.P.P()(0, 0), c.P.P()(1, 1)};
        cert["mu"] = c.mu;
        cert["verdict"] = c.contractive() ? "contractive" : "inconclusive";
        json clusters = json::array();
        for (const auto& cc : c.per_cluster) {
            json v;
            v["cluster"] = cc.cluster;
            v["lambda2"] = cc.lambda2_cluster;
            v["Lambda"] = cc.Lambda;
            v["mu"] = cc.mu;
            if (cc.gamma_threshold)
                v["gamma_threshold"] = *cc.gamma_threshold;
            else
                v["gamma_threshold"] = nullptr;
            v["certified"] = cc.certified;
            clusters.push_back(std::move(v));
        }
        cert["clusters"] = std::move(clusters);
    } else {
        cert["available"] = false;
        cert["reason"] = report.certificate_unavailable_reason;
    }
    root["certificate"] = std::move(cert);
    root["exit_code"] = report.exit_code();
    return root.dump(2) + "\n";
}

}  // namespace clustersync
