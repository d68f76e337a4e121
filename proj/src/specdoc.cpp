#include "clustersync/specdoc.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

using nlohmann::json;

namespace clustersync {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SpecError("spec error at " + where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(where, "unknown field '" + it.key() + "'");
}

const json& require_field(const json& obj, const std::string& where, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing required field '" + key + "'");
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

FNParams parse_fn_params(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    require_keys(v, where, {"a", "b", "epsilon", "I"});
    FNParams p;
    p.a = as_number(require_field(v, where, "a"), where + ".a");
    p.b = as_number(require_field(v, where, "b"), where + ".b");
    p.epsilon = as_number(require_field(v, where, "epsilon"), where + ".epsilon");
    p.I = as_number(require_field(v, where, "I"), where + ".I");
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    return p;
}

ClusterBlock parse_cluster(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    require_keys(v, where, {"id", "size", "nodes", "model", "params"});
    ClusterBlock c;
    c.id = as_string(require_field(v, where, "id"), where + ".id");
    const bool has_size = v.contains("size");
    const bool has_nodes = v.contains("nodes");
    if (has_size == has_nodes) fail(where, "exactly one of 'size' or 'nodes' is required");
    if (has_size) {
        const auto sz = as_integer(v["size"], where + ".size");
        if (sz < 1) fail(where + ".size", "cluster size must be >= 1");
        c.size = static_cast<std::size_t>(sz);
    } else {
        const json& nodes = v["nodes"];
        if (!nodes.is_array() || nodes.empty()) fail(where + ".nodes", "expected a nonempty array");
        for (std::size_t k = 0; k < nodes.size(); ++k)
            c.explicit_nodes.push_back(static_cast<int>(
                as_integer(nodes[k], where + ".nodes[" + std::to_string(k) + "]")));
        c.size = c.explicit_nodes.size();
    }
    c.model = as_string(require_field(v, where, "model"), where + ".model");
    if (c.model != "fn") fail(where + ".model", "unknown model '" + c.model + "' (supported: fn)");
    c.params = parse_fn_params(require_field(v, where, "params"), where + ".params");
    return c;
}

GeneratorBlock parse_generator(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    GeneratorBlock g;
    const std::string kind = as_string(require_field(v, where, "kind"), where + ".kind");
    if (kind == "complete") {
        require_keys(v, where, {"kind", "cluster", "m", "weight"});
        g.kind = GeneratorBlock::Kind::Complete;
        g.cluster = as_string(require_field(v, where, "cluster"), where + ".cluster");
    } else if (kind == "star") {
        require_keys(v, where, {"kind", "cluster", "m", "weight", "hub"});
        g.kind = GeneratorBlock::Kind::Star;
        g.cluster = as_string(require_field(v, where, "cluster"), where + ".cluster");
        if (v.contains("hub")) g.hub = static_cast<int>(as_integer(v["hub"], where + ".hub"));
    } else if (kind == "matching") {
        require_keys(v, where, {"kind", "from", "to", "weight"});
        g.kind = GeneratorBlock::Kind::Matching;
        g.from = as_string(require_field(v, where, "from"), where + ".from");
        g.to = as_string(require_field(v, where, "to"), where + ".to");
    } else {
        fail(where + ".kind", "unknown generator kind '" + kind + "'");
    }
    if (v.contains("m")) {
        const auto m = as_integer(v["m"], where + ".m");
        if (m < 1) fail(where + ".m", "size must be >= 1");
        g.m = static_cast<std::size_t>(m);
    }
    g.weight = as_number(require_field(v, where, "weight"), where + ".weight");
    if (!(g.weight > 0.0)) fail(where + ".weight", "weight must be strictly positive");
    return g;
}

ICSpec parse_ic(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    require_keys(v, where, {"mode", "seed", "box", "values"});
    ICSpec ic;
    const std::string mode = as_string(require_field(v, where, "mode"), where + ".mode");
    if (mode == "uniform")
        ic.mode = ICSpec::Mode::Uniform;
    else if (mode == "cluster_uniform")
        ic.mode = ICSpec::Mode::ClusterUniform;
    else if (mode == "explicit")
        ic.mode = ICSpec::Mode::Explicit;
    else
        fail(where + ".mode", "unknown ic mode '" + mode + "'");

    if (ic.mode == ICSpec::Mode::Explicit) {
        const json& values = require_field(v, where, "values");
        if (!values.is_array() || values.empty()) fail(where + ".values", "expected a nonempty array");
        for (std::size_t k = 0; k < values.size(); ++k)
            ic.values.push_back(as_number(values[k], where + ".values[" + std::to_string(k) + "]"));
        if (v.contains("seed") || v.contains("box"))
            fail(where, "'seed' and 'box' do not apply to explicit initial conditions");
    } else {
        if (!v.contains("seed")) fail(where, "random initial conditions require a 'seed'");
        ic.seed = static_cast<std::uint64_t>(as_integer(v["seed"], where + ".seed"));
        const json& box = require_field(v, where, "box");
        if (!box.is_array() || box.size() != 2) fail(where + ".box", "expected [lo, hi]");
        ic.box_lo = as_number(box[0], where + ".box[0]");
        ic.box_hi = as_number(box[1], where + ".box[1]");
        if (!(ic.box_lo < ic.box_hi)) fail(where + ".box", "box must satisfy lo < hi");
        if (v.contains("values")) fail(where, "'values' applies only to explicit initial conditions");
    }
    return ic;
}

SimulationBlock parse_simulation(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where, "expected an object");
    require_keys(v, where, {"t_end", "dt", "record_every", "ic"});
    SimulationBlock sim;
    sim.t_end = as_number(require_field(v, where, "t_end"), where + ".t_end");
    sim.dt = as_number(require_field(v, where, "dt"), where + ".dt");
    if (!(sim.t_end > 0.0)) fail(where + ".t_end", "t_end must be > 0");
    if (!(sim.dt > 0.0)) fail(where + ".dt", "dt must be > 0");
    if (v.contains("record_every")) {
        const auto re = as_integer(v["record_every"], where + ".record_every");
        if (re < 1) fail(where + ".record_every", "record_every must be >= 1");
        sim.record_every = static_cast<std::size_t>(re);
    }
    sim.ic = parse_ic(require_field(v, where, "ic"), where + ".ic");
    return sim;
}

}  // namespace

NetworkSpecDocument parse_spec(const std::string& text, const std::string& source_name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("spec error in " + source_name + ": " + e.what());
    }
    if (!root.is_object()) throw SpecError("spec error in " + source_name + ": top level must be an object");
    const std::string top = source_name;
    require_keys(root, top,
                 {"format_version", "name", "gamma", "clusters", "edges", "generators", "eta",
                  "simulation"});

    NetworkSpecDocument doc;
    doc.format_version =
        static_cast<int>(as_integer(require_field(root, top, "format_version"), top + ".format_version"));
    if (doc.format_version != 1)
        fail(top + ".format_version", "unsupported version " + std::to_string(doc.format_version));
    if (root.contains("name")) doc.name = as_string(root["name"], top + ".name");
    doc.gamma = as_number(require_field(root, top, "gamma"), top + ".gamma");
    if (doc.gamma < 0.0) fail(top + ".gamma", "gamma must be nonnegative");

    const json& clusters = require_field(root, top, "clusters");
    if (!clusters.is_array() || clusters.empty()) fail(top + ".clusters", "expected a nonempty array");
    std::set<std::string> ids;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        auto c = parse_cluster(clusters[k], top + ".clusters[" + std::to_string(k) + "]");
        if (!ids.insert(c.id).second)
            fail(top + ".clusters[" + std::to_string(k) + "]", "duplicate cluster id '" + c.id + "'");
        doc.clusters.push_back(std::move(c));
    }

    if (root.contains("edges")) {
        const json& edges = root["edges"];
        if (!edges.is_array()) fail(top + ".edges", "expected an array");
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const std::string where = top + ".edges[" + std::to_string(k) + "]";
            const json& e = edges[k];
            if (!e.is_array() || e.size() != 3) fail(where, "expected [i, j, weight]");
            doc.edges.emplace_back(static_cast<int>(as_integer(e[0], where + "[0]")),
                                   static_cast<int>(as_integer(e[1], where + "[1]")),
                                   as_number(e[2], where + "[2]"));
        }
    }
    if (root.contains("generators")) {
        const json& gens = root["generators"];
        if (!gens.is_array()) fail(top + ".generators", "expected an array");
        for (std::size_t k = 0; k < gens.size(); ++k)
            doc.generators.push_back(
                parse_generator(gens[k], top + ".generators[" + std::to_string(k) + "]"));
    }
    if (root.contains("eta")) {
        const json& eta = root["eta"];
        if (!eta.is_array()) fail(top + ".eta", "expected a square array of arrays");
        const std::size_t k = eta.size();
        if (k != doc.clusters.size()) fail(top + ".eta", "eta size must equal the cluster count");
        Matrix m(k, k);
        for (std::size_t r = 0; r < k; ++r) {
            if (!eta[r].is_array() || eta[r].size() != k)
                fail(top + ".eta[" + std::to_string(r) + "]", "expected a row of length " + std::to_string(k));
            for (std::size_t s = 0; s < k; ++s)
                m(r, s) = as_number(eta[r][s],
                                    top + ".eta[" + std::to_string(r) + "][" + std::to_string(s) + "]");
        }
        doc.eta = std::move(m);
        if (!doc.edges.empty() || !doc.generators.empty())
            fail(top, "a quotient document (eta present) cannot also list edges or generators");
        for (const auto& c : doc.clusters)
            if (c.size != 1) fail(top + ".eta", "quotient documents require singleton clusters");
    }
    if (root.contains("simulation"))
        doc.simulation = parse_simulation(root["simulation"], top + ".simulation");
    return doc;
}

NetworkSpecDocument load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("spec error: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path);
}

namespace {

std::size_t cluster_index(const NetworkSpecDocument& doc, const std::string& id,
                          const std::string& where) {
    for (std::size_t r = 0; r < doc.clusters.size(); ++r)
        if (doc.clusters[r].id == id) return r;
    fail(where, "unknown cluster id '" + id + "'");
}

}  // namespace

ClusteredNetwork NetworkSpecDocument::build_network() const {
    if (is_quotient())
        throw SpecError("spec error: this document describes a quotient network, not a full one");

    // Node numbering: explicit node lists are taken verbatim; sized
    // clusters get consecutive indices in cluster order. Mixing the two
    // styles is rejected.
    const bool any_explicit =
        std::any_of(clusters.begin(), clusters.end(),
                    [](const ClusterBlock& c) { return !c.explicit_nodes.empty(); });
    const bool all_explicit =
        std::all_of(clusters.begin(), clusters.end(),
                    [](const ClusterBlock& c) { return !c.explicit_nodes.empty(); });
    if (any_explicit && !all_explicit)
        throw SpecError("spec error: either every cluster lists nodes explicitly or none does");

    std::vector<std::vector<int>> members;
    std::size_t n = 0;
    if (all_explicit) {
        for (const auto& c : clusters) {
            members.push_back(c.explicit_nodes);
            n += c.explicit_nodes.size();
        }
    } else {
        int next = 0;
        for (const auto& c : clusters) {
            std::vector<int> ids(c.size);
            for (auto& v : ids) v = next++;
            members.push_back(std::move(ids));
        }
        n = static_cast<std::size_t>(next);
    }

    std::vector<Edge> all_edges;
    for (const auto& [i, j, w] : edges) all_edges.push_back({i, j, w});

    // Generator expansion is deterministic: blocks in document order,
    // edges in ascending index order within each block.
    for (std::size_t k = 0; k < generators.size(); ++k) {
        const auto& g = generators[k];
        const std::string where = "generators[" + std::to_string(k) + "]";
        switch (g.kind) {
            case GeneratorBlock::Kind::Complete: {
                const auto r = cluster_index(*this, g.cluster, where);
                const auto& nodes = members[r];
                if (g.m && *g.m != nodes.size())
                    fail(where, "declared size m does not match cluster '" + g.cluster + "'");
                for (std::size_t i = 0; i < nodes.size(); ++i)
                    for (std::size_t j = i + 1; j < nodes.size(); ++j)
                        all_edges.push_back({nodes[i], nodes[j], g.weight});
                break;
            }
            case GeneratorBlock::Kind::Star: {
                const auto r = cluster_index(*this, g.cluster, where);
                const auto& nodes = members[r];
                if (g.m && *g.m != nodes.size())
                    fail(where, "declared size m does not match cluster '" + g.cluster + "'");
                const int hub = g.hub.value_or(0);
                if (hub < 0 || static_cast<std::size_t>(hub) >= nodes.size())
                    fail(where, "hub position out of range");
                for (std::size_t i = 0; i < nodes.size(); ++i)
                    if (static_cast<int>(i) != hub)
                        all_edges.push_back({nodes[hub], nodes[i], g.weight});
                break;
            }
            case GeneratorBlock::Kind::Matching: {
                const auto r = cluster_index(*this, g.from, where);
                const auto s = cluster_index(*this, g.to, where);
                if (r == s) fail(where, "matching endpoints must be distinct clusters");
                if (members[r].size() != members[s].size())
                    fail(where, "matching requires equal cluster sizes");
                for (std::size_t i = 0; i < members[r].size(); ++i)
                    all_edges.push_back({members[r][i], members[s][i], g.weight});
                break;
            }
        }
    }

    std::vector<FNParams> params;
    for (const auto& c : clusters) params.push_back(c.params);
    try {
        return ClusteredNetwork(n, std::move(all_edges), std::move(members), std::move(params),
                                {gamma, 0.0});
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("spec error: ") + e.what());
    }
}

QuotientNetwork NetworkSpecDocument::build_quotient_network() const {
    if (!is_quotient())
        throw SpecError("spec error: this document has no eta matrix; it is not a quotient");
    QuotientNetwork q;
    q.eta = *eta;
    for (std::size_t r = 0; r < q.eta.rows(); ++r) {
        for (std::size_t s = 0; s < q.eta.cols(); ++s) {
            if (q.eta(r, s) < 0.0) throw SpecError("spec error: eta entries must be nonnegative");
            if (r == s && q.eta(r, s) != 0.0)
                throw SpecError("spec error: eta diagonal must be zero");
        }
    }
    for (const auto& c : clusters) q.cluster_params.push_back(c.params);
    q.diffusion = {gamma, 0.0};
    return q;
}

namespace {

json params_to_json(const FNParams& p) {
    return json{{"a", p.a}, {"b", p.b}, {"epsilon", p.epsilon}, {"I", p.I}};
}

json ic_to_json(const ICSpec& ic) {
    json v;
    switch (ic.mode) {
        case ICSpec::Mode::Uniform: v["mode"] = "uniform"; break;
        case ICSpec::Mode::ClusterUniform: v["mode"] = "cluster_uniform"; break;
        case ICSpec::Mode::Explicit: v["mode"] = "explicit"; break;
    }
    if (ic.mode == ICSpec::Mode::Explicit) {
        v["values"] = ic.values;
    } else {
        v["seed"] = ic.seed;
        v["box"] = {ic.box_lo, ic.box_hi};
    }
    return v;
}

}  // namespace

NetworkSpecDocument document_from_network(const ClusteredNetwork& net, const std::string& name,
                                          double gamma, const std::optional<SimulationBlock>& sim) {
    NetworkSpecDocument doc;
    doc.name = name;
    doc.gamma = gamma;
    for (std::size_t r = 0; r < net.cluster_count(); ++r) {
        ClusterBlock c;
        c.id = "C" + std::to_string(r + 1);
        c.size = net.cluster_size(r);
        c.model = "fn";
        c.params = net.cluster_params()[r];
        doc.clusters.push_back(std::move(c));
    }
    // Serialize in canonical indices; clusters are contiguous there, so a
    // sized-cluster document reproduces the network exactly.
    for (const Edge& e : net.edges()) doc.edges.emplace_back(e.i, e.j, e.weight);
    doc.simulation = sim;
    return doc;
}

NetworkSpecDocument document_from_quotient(const QuotientNetwork& q, const std::string& name) {
    NetworkSpecDocument doc;
    doc.name = name;
    doc.gamma = q.diffusion.empty() ? 0.0 : q.diffusion[0];
    for (std::size_t r = 0; r < q.cluster_count(); ++r) {
        ClusterBlock c;
        c.id = "C" + std::to_string(r + 1);
        c.size = 1;
        c.model = "fn";
        c.params = q.cluster_params[r];
        doc.clusters.push_back(std::move(c));
    }
    doc.eta = q.eta;
    return doc;
}

std::string serialize_spec(const NetworkSpecDocument& doc) {
    json root;
    root["format_version"] = doc.format_version;
    if (!doc.name.empty()) root["name"] = doc.name;
    root["gamma"] = doc.gamma;
    json clusters = json::array();
    for (const auto& c : doc.clusters) {
        json v;
        v["id"] = c.id;
        if (!c.explicit_nodes.empty())
            v["nodes"] = c.explicit_nodes;
        else
            v["size"] = c.size;
        v["model"] = c.model;
        v["params"] = params_to_json(c.params);
        clusters.push_back(std::move(v));
    }
    root["clusters"] = std::move(clusters);
    if (!doc.edges.empty()) {
        json edges = json::array();
        for (const auto& [i, j, w] : doc.edges) edges.push_back({i, j, w});
        root["edges"] = std::move(edges);
    }
    if (doc.eta) {
        json eta = json::array();
        for (std::size_t r = 0; r < doc.eta->rows(); ++r) {
            json row = json::array();
            for (std::size_t s = 0; s < doc.eta->cols(); ++s) row.push_back((*doc.eta)(r, s));
            eta.push_back(std::move(row));
        }
        root["eta"] = std::move(eta);
    }
    if (doc.simulation) {
        const auto& sim = *doc.simulation;
        json v;
        v["t_end"] = sim.t_end;
        v["dt"] = sim.dt;
        if (sim.record_every != 1) v["record_every"] = sim.record_every;
        v["ic"] = ic_to_json(sim.ic);
        root["simulation"] = std::move(v);
    }
    return root.dump(2) + "\n";
}

std::vector<double> make_initial_conditions(const ICSpec& ic, const ClusteredNetwork& net) {
    const std::size_t nd = net.state_dim();
    const std::size_t dim = net.node_count() * nd;
    switch (ic.mode) {
        case ICSpec::Mode::Explicit: {
            if (ic.values.size() != dim)
                throw SpecError("spec error: explicit initial condition needs " +
                                std::to_string(dim) + " values, got " +
                                std::to_string(ic.values.size()));
            // Values are given per original node; re-order canonically.
            std::vector<double> x(dim);
            for (std::size_t v = 0; v < net.node_count(); ++v) {
                const auto orig = static_cast<std::size_t>(net.to_original(static_cast<int>(v)));
                for (std::size_t d = 0; d < nd; ++d) x[v * nd + d] = ic.values[orig * nd + d];
            }
            return x;
        }
        case ICSpec::Mode::Uniform: {
            UniformSampler sampler(ic.seed, ic.box_lo, ic.box_hi);
            std::vector<double> x(dim);
            for (auto& v : x) v = sampler.next();
            return x;
        }
        case ICSpec::Mode::ClusterUniform: {
            const auto reps = cluster_representative_ic(ic, net.cluster_count(), nd);
            std::vector<double> x(dim);
            for (std::size_t v = 0; v < net.node_count(); ++v) {
                const auto r = static_cast<std::size_t>(net.cluster_of(static_cast<int>(v)));
                for (std::size_t d = 0; d < nd; ++d) x[v * nd + d] = reps[r * nd + d];
            }
            return x;
        }
    }
    throw SpecError("spec error: unknown ic mode");
}

std::vector<double> cluster_representative_ic(const ICSpec& ic, std::size_t clusters,
                                              std::size_t state_dim) {
    UniformSampler sampler(ic.seed, ic.box_lo, ic.box_hi);
    std::vector<double> reps(clusters * state_dim);
    for (auto& v : reps) v = sampler.next();
    return reps;
}

}  // namespace clustersync
