// config.hpp — experiment configuration: strict JSON schema, named time
// symbols, and the parsed structures the CLI runs from. Unknown fields are
// rejected so typos in physics parameters fail loudly.
#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinnet/dynamics.hpp"
#include "spinnet/topology.hpp"

namespace spinnet {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& reason)
        : std::runtime_error(field + ": " + reason), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// A time value: either a literal number of time units or a bounded named
// form built from t_star = pi/(2*alpha) and the revival period pi/alpha.
// Accepted strings: "t_star", "pi/alpha", "K*pi/alpha", "t_star+pi/alpha",
// "t_star+K*pi/alpha" with K a positive integer.
struct TimeSpec {
    double offset = 0.0;
    int t_star_terms = 0;
    long revival_terms = 0;

    double resolve(double alpha) const {
        return offset + static_cast<double>(t_star_terms) * std::numbers::pi / (2.0 * alpha) +
               static_cast<double>(revival_terms) * std::numbers::pi / alpha;
    }
};

struct TopologyConfig {
    enum class Family { Star, Tree, Chain } family = Family::Chain;
    std::size_t star_m = 0, star_p = 0, star_l = 0;
    BranchSpec tree_spec;
    std::size_t chain_length = 0;
};

struct PulseConfig {
    enum class Kind { Node, Leaf, Scheme } kind = Kind::Node;
    TimeSpec time;
    std::size_t index = 0;  // node id or leaf index
    double phase = 0.0;
    PhaseScheme scheme = PhaseScheme::RootsOfUnity;
};

struct MeasurementConfig {
    TimeSpec time;
    std::size_t node = 0;
    std::optional<int> force;
};

struct SampleGridConfig {
    TimeSpec start;
    TimeSpec end;
    std::size_t steps = 0;  // number of sample points; 0 = empty grid
};

enum class OutputKind {
    Populations,
    Amplitudes,
    FidelityW0,
    FidelityWPlus,
    FidelityWMinus,
    FidelityDistributed,
};

struct ExperimentConfig {
    TopologyConfig topology;
    double alpha = 1.0;
    std::vector<PulseConfig> schedule;
    std::vector<MeasurementConfig> measurements;
    SampleGridConfig samples;
    std::vector<OutputKind> outputs{OutputKind::Populations};
    std::uint64_t seed = 0;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& field, const std::string& reason) {
    throw ConfigError(field, reason);
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) known = true;
        if (!known) fail(path + "." + it.key(), "unknown field");
    }
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "required field is missing");
    return *it;
}

inline double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

inline std::size_t get_count(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
}

inline TimeSpec parse_time_string(const std::string& text, const std::string& path) {
    TimeSpec spec;
    std::string rest = text;
    if (rest.rfind("t_star", 0) == 0) {
        spec.t_star_terms = 1;
        rest = rest.substr(6);
        if (rest.empty()) return spec;
        if (rest.front() != '+')
            fail(path, "unrecognized named time '" + text + "'");
        rest = rest.substr(1);
    }
    std::size_t digits = 0;
    while (digits < rest.size() && std::isdigit(static_cast<unsigned char>(rest[digits])))
        ++digits;
    long multiple = 1;
    if (digits > 0) {
        if (digits >= rest.size() || rest[digits] != '*')
            fail(path, "unrecognized named time '" + text + "'");
        multiple = std::stol(rest.substr(0, digits));
        rest = rest.substr(digits + 1);
    }
    if (rest != "pi/alpha" || multiple < 1)
        fail(path, "unrecognized named time '" + text +
                       "' (expected t_star, pi/alpha, K*pi/alpha, or t_star+K*pi/alpha)");
    spec.revival_terms = multiple;
    return spec;
}

inline TimeSpec parse_time(const json& v, const std::string& path) {
    if (v.is_number()) {
        TimeSpec spec;
        spec.offset = v.get<double>();
        if (spec.offset < 0.0) fail(path, "times must be non-negative");
        return spec;
    }
    if (v.is_string()) return parse_time_string(v.get<std::string>(), path);
    fail(path, "expected a number or a named time string");
}

inline BranchSpec parse_branch_spec(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object {segment, children}");
    check_keys(v, path, {"segment", "children"});
    BranchSpec spec;
    spec.segment_length = get_count(require(v, "segment", path), path + ".segment");
    if (spec.segment_length < 1) fail(path + ".segment", "must be >= 1");
    if (auto it = v.find("children"); it != v.end()) {
        if (!it->is_array()) fail(path + ".children", "expected an array");
        std::size_t index = 0;
        for (const json& child : *it) {
            spec.children.push_back(
                parse_branch_spec(child, path + ".children[" + std::to_string(index) + "]"));
            ++index;
        }
        if (spec.children.size() == 1)
            fail(path + ".children",
                 "a branch with exactly one child is ambiguous; extend the segment instead");
    }
    return spec;
}

inline TopologyConfig parse_topology(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    const json& family = require(v, "family", path);
    if (!family.is_string()) fail(path + ".family", "expected \"star\", \"tree\", or \"chain\"");
    const std::string name = family.get<std::string>();
    TopologyConfig topology;
    if (name == "star") {
        topology.family = TopologyConfig::Family::Star;
        check_keys(v, path, {"family", "m", "p", "l"});
        topology.star_m = get_count(require(v, "m", path), path + ".m");
        topology.star_p = get_count(require(v, "p", path), path + ".p");
        topology.star_l = get_count(require(v, "l", path), path + ".l");
    } else if (name == "tree") {
        topology.family = TopologyConfig::Family::Tree;
        check_keys(v, path, {"family", "spec"});
        topology.tree_spec = parse_branch_spec(require(v, "spec", path), path + ".spec");
    } else if (name == "chain") {
        topology.family = TopologyConfig::Family::Chain;
        check_keys(v, path, {"family", "length"});
        topology.chain_length = get_count(require(v, "length", path), path + ".length");
        if (topology.chain_length < 1) fail(path + ".length", "must be >= 1");
    } else {
        fail(path + ".family", "unknown family '" + name + "'");
    }
    return topology;
}

inline PulseConfig parse_pulse(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    check_keys(v, path, {"time", "node", "leaf", "scheme", "phase"});
    PulseConfig pulse;
    pulse.time = parse_time(require(v, "time", path), path + ".time");

    const bool has_node = v.contains("node");
    const bool has_leaf = v.contains("leaf");
    const bool has_scheme = v.contains("scheme");
    if (has_node + has_leaf + has_scheme != 1)
        fail(path, "exactly one of 'node', 'leaf', or 'scheme' is required");

    if (has_scheme) {
        pulse.kind = PulseConfig::Kind::Scheme;
        if (v.contains("phase")) fail(path + ".phase", "not allowed with a named scheme");
        const json& scheme = v.at("scheme");
        if (!scheme.is_string()) fail(path + ".scheme", "expected \"roots\" or \"pi-half\"");
        const std::string name = scheme.get<std::string>();
        if (name == "roots")
            pulse.scheme = PhaseScheme::RootsOfUnity;
        else if (name == "pi-half")
            pulse.scheme = PhaseScheme::PiOnHalf;
        else
            fail(path + ".scheme", "unknown scheme '" + name + "'");
        return pulse;
    }

    pulse.kind = has_node ? PulseConfig::Kind::Node : PulseConfig::Kind::Leaf;
    pulse.index = get_count(v.at(has_node ? "node" : "leaf"),
                            path + (has_node ? ".node" : ".leaf"));
    pulse.phase = get_number(require(v, "phase", path), path + ".phase");
    return pulse;
}

inline MeasurementConfig parse_measurement(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    check_keys(v, path, {"time", "node", "force"});
    MeasurementConfig m;
    m.time = parse_time(require(v, "time", path), path + ".time");
    m.node = get_count(require(v, "node", path), path + ".node");
    if (auto it = v.find("force"); it != v.end()) {
        if (!it->is_number_unsigned() || it->get<std::uint64_t>() > 1)
            fail(path + ".force", "expected 0 or 1");
        m.force = static_cast<int>(it->get<std::uint64_t>());
    }
    return m;
}

inline OutputKind parse_output(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected an output name string");
    const std::string name = v.get<std::string>();
    if (name == "populations") return OutputKind::Populations;
    if (name == "amplitudes") return OutputKind::Amplitudes;
    if (name == "fidelity:w0") return OutputKind::FidelityW0;
    if (name == "fidelity:w_plus") return OutputKind::FidelityWPlus;
    if (name == "fidelity:w_minus") return OutputKind::FidelityWMinus;
    if (name == "fidelity:distributed") return OutputKind::FidelityDistributed;
    fail(path, "unknown output '" + name + "'");
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& root) {
    using detail::fail;
    if (!root.is_object()) fail("config", "expected a JSON object");
    detail::check_keys(root, "config",
                       {"topology", "alpha", "schedule", "measurements", "samples", "outputs",
                        "seed"});

    ExperimentConfig config;
    config.topology =
        detail::parse_topology(detail::require(root, "topology", "config"), "config.topology");

    if (auto it = root.find("alpha"); it != root.end()) {
        config.alpha = detail::get_number(*it, "config.alpha");
        if (config.alpha <= 0.0) fail("config.alpha", "must be > 0");
    }

    if (auto it = root.find("schedule"); it != root.end()) {
        if (!it->is_array()) fail("config.schedule", "expected an array");
        std::size_t index = 0;
        for (const auto& entry : *it) {
            config.schedule.push_back(detail::parse_pulse(
                entry, "config.schedule[" + std::to_string(index) + "]"));
            ++index;
        }
    }

    if (auto it = root.find("measurements"); it != root.end()) {
        if (!it->is_array()) fail("config.measurements", "expected an array");
        std::size_t index = 0;
        for (const auto& entry : *it) {
            config.measurements.push_back(detail::parse_measurement(
                entry, "config.measurements[" + std::to_string(index) + "]"));
            ++index;
        }
    }

    if (auto it = root.find("samples"); it != root.end()) {
        if (!it->is_object()) fail("config.samples", "expected an object {start, end, steps}");
        detail::check_keys(*it, "config.samples", {"start", "end", "steps"});
        config.samples.start =
            detail::parse_time(detail::require(*it, "start", "config.samples"),
                               "config.samples.start");
        config.samples.end = detail::parse_time(detail::require(*it, "end", "config.samples"),
                                                "config.samples.end");
        config.samples.steps =
            detail::get_count(detail::require(*it, "steps", "config.samples"),
                              "config.samples.steps");
    }

    if (auto it = root.find("outputs"); it != root.end()) {
        if (!it->is_array() || it->empty()) fail("config.outputs", "expected a non-empty array");
        config.outputs.clear();
        std::size_t index = 0;
        for (const auto& entry : *it) {
            const OutputKind kind =
                detail::parse_output(entry, "config.outputs[" + std::to_string(index) + "]");
            for (OutputKind existing : config.outputs)
                if (existing == kind)
                    fail("config.outputs[" + std::to_string(index) + "]", "duplicate output");
            config.outputs.push_back(kind);
            ++index;
        }
    }

    if (auto it = root.find("seed"); it != root.end()) {
        if (!it->is_number_unsigned()) fail("config.seed", "expected a non-negative integer");
        config.seed = it->get<std::uint64_t>();
    }
    return config;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(root);
}

}  // namespace spinnet
