#pragma once

#include "clustersync/graph.hpp"
#include "clustersync/reduce.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace clustersync {

// A problem with a network spec document: parse failure, unknown field,
// missing field, or a semantically invalid value. The message carries the
// source name and a field path.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClusterBlock {
    std::string id;
    std::size_t size = 0;             // used when explicit_nodes is empty
    std::vector<int> explicit_nodes;  // original node indices, optional
    std::string model = "fn";
    FNParams params;
};

struct GeneratorBlock {
    enum class Kind { Complete, Star, Matching };
    Kind kind = Kind::Complete;
    std::string cluster;   // complete/star
    std::string from, to;  // matching
    std::optional<std::size_t> m;  // optional size check against the cluster
    double weight = 1.0;
    std::optional<int> hub;  // star center, position within the cluster; default 0
};

struct ICSpec {
    enum class Mode { Uniform, ClusterUniform, Explicit };
    Mode mode = Mode::Uniform;
    std::uint64_t seed = 0;  // mandatory for the random modes
    double box_lo = -2.0, box_hi = 2.0;
    std::vector<double> values;  // Explicit mode, original node order
};

struct SimulationBlock {
    double t_end = 100.0;
    double dt = 0.01;
    std::size_t record_every = 1;
    ICSpec ic;
};

// The parsed form of the versioned network spec document (JSON,
// format_version 1). Parsing is strict: unknown fields are rejected so
// typos surface instead of silently changing the experiment. A document
// either describes a full network (clusters + edges/generators) or a
// quotient (singleton clusters + an eta matrix).
struct NetworkSpecDocument {
    int format_version = 1;
    std::string name;
    double gamma = 0.0;
    std::vector<ClusterBlock> clusters;
    std::vector<std::tuple<int, int, double>> edges;
    std::vector<GeneratorBlock> generators;
    std::optional<Matrix> eta;  // present only in quotient documents
    std::optional<SimulationBlock> simulation;

    bool is_quotient() const { return eta.has_value(); }

    // Expands generators and produces the network (diffusion diag(gamma, 0)
    // for the FN model). Throws SpecError on any inconsistency.
    ClusteredNetwork build_network() const;
    QuotientNetwork build_quotient_network() const;
};

NetworkSpecDocument parse_spec(const std::string& text, const std::string& source_name = "<string>");
NetworkSpecDocument load_spec(const std::string& path);

// Expanded (generator-free) document for a network, and its quotient
// counterpart. serialize -> parse -> build reproduces the same network
// hash.
NetworkSpecDocument document_from_network(const ClusteredNetwork& net, const std::string& name,
                                          double gamma,
                                          const std::optional<SimulationBlock>& sim = {});
NetworkSpecDocument document_from_quotient(const QuotientNetwork& q, const std::string& name);

std::string serialize_spec(const NetworkSpecDocument& doc);

// Seeded initial conditions in canonical node order. ClusterUniform draws
// one state per cluster and copies it to every member, which starts the
// run exactly on the cluster synchronization manifold.
std::vector<double> make_initial_conditions(const ICSpec& ic, const ClusteredNetwork& net);

// The per-cluster draw underlying ClusterUniform; a matching start for
// the quotient system.
std::vector<double> cluster_representative_ic(const ICSpec& ic, std::size_t clusters,
                                              std::size_t state_dim);

// Uniform draws built from the top 53 bits of mt19937_64 output. The
// engine is fully specified by the standard and no distribution object is
// involved, so sequences are reproducible across platforms.
class UniformSampler {
public:
    UniformSampler(std::uint64_t seed, double lo, double hi)
        : gen_(seed), lo_(lo), hi_(hi) {}
    double next() {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo_ + (hi_ - lo_) * u;
    }

private:
    std::mt19937_64 gen_;
    double lo_, hi_;
};

}  // namespace clustersync
