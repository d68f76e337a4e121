#pragma once

#include "clustersync/certify.hpp"
#include "clustersync/graph.hpp"

#include <optional>
#include <string>

namespace clustersync {

// Everything cmd_analyze derives from a network spec: spectra, the
// cluster-input-equivalence verdict and the contraction certificate.
// Fully reproducible from the spec document alone.
struct AnalysisReport {
    std::string input_name;
    std::uint64_t input_hash = 0;
    std::size_t n_nodes = 0;

    double lambda2 = 0.0;
    std::vector<std::optional<double>> cluster_lambda2;  // absent for singleton clusters
    double lambda_bar2 = 0.0;

    CIEReport cie;
    std::optional<Certificate> certificate;
    std::string certificate_unavailable_reason;
    double gamma = 0.0;

    // 0 when CIE passes and mu < 0; 2 otherwise.
    int exit_code() const;
};

AnalysisReport analyze(const ClusteredNetwork& net, double gamma, const std::string& input_name);

// JSON rendering (stable field order, reproducible numerics).
std::string report_to_json(const AnalysisReport& report);

}  // namespace clustersync
