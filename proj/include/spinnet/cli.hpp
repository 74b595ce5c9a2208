// cli.hpp — config-driven experiment runs behind the command-line front end:
// topology construction, schedule resolution, the evolve loop with
// measurements, CSV rendering, and the network description document.
#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinnet/analysis.hpp"
#include "spinnet/config.hpp"
#include "spinnet/couplings.hpp"
#include "spinnet/dynamics.hpp"
#include "spinnet/hamiltonian.hpp"
#include "spinnet/topology.hpp"

namespace spinnet {

struct ResolvedMeasurement {
    double time = 0.0;
    NodeId node = 0;
    std::optional<int> force;
};

struct ResolvedExperiment {
    SpinNetwork network;
    SpectralDecomposition decomp;
    std::vector<PulseEvent> pulses;
    std::vector<ResolvedMeasurement> measurements;
    std::vector<double> sample_times;
    std::vector<OutputKind> outputs;
    std::vector<TargetState> fidelity_targets;  // parallel to fidelity outputs
    std::uint64_t seed = 0;
    double alpha = 1.0;
};

namespace detail {

inline SpinNetwork build_topology(const TopologyConfig& topology) {
    try {
        switch (topology.family) {
            case TopologyConfig::Family::Star:
                return build_star(topology.star_m, topology.star_p, topology.star_l);
            case TopologyConfig::Family::Tree:
                return build_tree(topology.tree_spec);
            case TopologyConfig::Family::Chain:
                return build_tree(BranchSpec{topology.chain_length, {}});
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config.topology", e.what());
    }
    throw ConfigError("config.topology", "unknown family");
}

inline std::string format_float(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

}  // namespace detail

inline ResolvedExperiment build_experiment(const ExperimentConfig& config) {
    SpinNetwork network =
        assign_couplings(detail::build_topology(config.topology), CouplingRule{config.alpha});
    SpectralDecomposition decomp = spectral_decompose(build_block(network));

    std::vector<PulseEvent> pulses;
    for (std::size_t i = 0; i < config.schedule.size(); ++i) {
        const PulseConfig& pulse = config.schedule[i];
        const std::string path = "config.schedule[" + std::to_string(i) + "]";
        const double time = pulse.time.resolve(config.alpha);
        switch (pulse.kind) {
            case PulseConfig::Kind::Node:
                if (pulse.index >= network.node_count())
                    throw ConfigError(path + ".node", "node id out of range");
                pulses.push_back({time, pulse.index, pulse.phase});
                break;
            case PulseConfig::Kind::Leaf:
                if (pulse.index >= network.leaves().size())
                    throw ConfigError(path + ".leaf", "leaf index out of range");
                pulses.push_back({time, network.leaves()[pulse.index], pulse.phase});
                break;
            case PulseConfig::Kind::Scheme: {
                std::vector<double> phases;
                try {
                    phases = freeze_phases(network.leaves().size(), pulse.scheme);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(path + ".scheme", e.what());
                }
                for (std::size_t k = 0; k < phases.size(); ++k)
                    pulses.push_back({time, network.leaves()[k], phases[k]});
                break;
            }
        }
    }
    for (std::size_t i = 1; i < pulses.size(); ++i)
        if (pulses[i].time < pulses[i - 1].time)
            throw ConfigError("config.schedule", "events must be ordered by time");

    std::vector<ResolvedMeasurement> measurements;
    for (std::size_t i = 0; i < config.measurements.size(); ++i) {
        const MeasurementConfig& m = config.measurements[i];
        const std::string path = "config.measurements[" + std::to_string(i) + "]";
        if (m.node >= network.node_count())
            throw ConfigError(path + ".node", "node id out of range");
        measurements.push_back({m.time.resolve(config.alpha), m.node, m.force});
        if (i > 0 && measurements[i].time < measurements[i - 1].time)
            throw ConfigError("config.measurements", "measurements must be ordered by time");
    }

    std::vector<double> sample_times;
    if (config.samples.steps > 0) {
        const double start = config.samples.start.resolve(config.alpha);
        const double end = config.samples.end.resolve(config.alpha);
        if (end < start) throw ConfigError("config.samples", "end must not precede start");
        if (config.samples.steps == 1) {
            sample_times.push_back(start);
        } else {
            const double step =
                (end - start) / static_cast<double>(config.samples.steps - 1);
            for (std::size_t k = 0; k < config.samples.steps; ++k)
                sample_times.push_back(start + step * static_cast<double>(k));
        }
    }

    std::vector<TargetState> targets;
    for (OutputKind kind : config.outputs) {
        try {
            switch (kind) {
                case OutputKind::FidelityW0:
                    targets.push_back(w_target(network.leaves(), WVariant::Symmetric));
                    break;
                case OutputKind::FidelityWPlus:
                    targets.push_back(w_target(network.leaves(), WVariant::Plus));
                    break;
                case OutputKind::FidelityWMinus:
                    targets.push_back(w_target(network.leaves(), WVariant::Minus));
                    break;
                case OutputKind::FidelityDistributed:
                    targets.push_back(distributed_target(network));
                    break;
                default:
                    break;
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError("config.outputs", e.what());
        }
    }

    return ResolvedExperiment{std::move(network), std::move(decomp),   std::move(pulses),
                              std::move(measurements), std::move(sample_times),
                              config.outputs,          std::move(targets),
                              config.seed,             config.alpha};
}

struct ExperimentResult {
    TimeSeries series;
    std::vector<MeasurementRecord> measurement_records;
};

// Chronological walk: free evolution between instants; at one timestamp
// pulses apply first (in list order), then the state is sampled, then
// measurements collapse it. Once the excitation is consumed the remaining
// rows are vacuum.
inline ExperimentResult run_experiment(const ResolvedExperiment& experiment) {
    std::mt19937_64 rng(experiment.seed);
    ExperimentResult result;
    WaveFunction psi = basis_state(experiment.network, experiment.network.input());
    bool consumed = false;
    double now = 0.0;
    std::size_t next_pulse = 0;
    std::size_t next_measurement = 0;

    auto advance_to = [&](double t) { psi = evolve(experiment.decomp, psi, t - now); now = t; };
    auto pending_pulse = [&](double limit) {
        return next_pulse < experiment.pulses.size() &&
               experiment.pulses[next_pulse].time <= limit;
    };
    auto pending_measurement = [&](double limit) {
        return next_measurement < experiment.measurements.size() &&
               experiment.measurements[next_measurement].time <= limit;
    };
    auto apply_events_until = [&](double limit, bool include_measurements_at_limit) {
        for (;;) {
            const double pulse_time = next_pulse < experiment.pulses.size()
                                          ? experiment.pulses[next_pulse].time
                                          : std::numeric_limits<double>::infinity();
            const double meas_time =
                next_measurement < experiment.measurements.size()
                    ? experiment.measurements[next_measurement].time
                    : std::numeric_limits<double>::infinity();
            const bool take_pulse = pending_pulse(limit) && pulse_time <= meas_time;
            const bool take_measurement =
                !take_pulse && pending_measurement(limit) &&
                (include_measurements_at_limit || meas_time < limit);
            if (take_pulse) {
                advance_to(pulse_time);
                psi = apply_phase(psi, experiment.pulses[next_pulse].node,
                                  experiment.pulses[next_pulse].phase);
                ++next_pulse;
            } else if (take_measurement) {
                advance_to(meas_time);
                const ResolvedMeasurement& m = experiment.measurements[next_measurement];
                if (consumed) {
                    MeasurementRecord record;
                    record.node = m.node;
                    record.outcome = 0;
                    record.probability = 1.0;
                    record.excitation_consumed = true;
                    record.post_state = psi;
                    result.measurement_records.push_back(record);
                } else {
                    MeasurementRecord record = measure_site(psi, m.node, m.force, rng);
                    psi = record.post_state;
                    consumed = record.excitation_consumed;
                    result.measurement_records.push_back(std::move(record));
                }
                ++next_measurement;
            } else {
                break;
            }
        }
    };

    for (double t : experiment.sample_times) {
        // Pulses at t fire before the sample; measurements at t collapse after it.
        apply_events_until(t, false);
        advance_to(t);
        result.series.times.push_back(t);
        result.series.states.push_back(psi);
    }
    apply_events_until(std::numeric_limits<double>::infinity(), true);
    return result;
}

inline std::string render_csv(const ResolvedExperiment& experiment,
                              const ExperimentResult& result) {
    const std::size_t n = experiment.network.node_count();
    std::string out = "time";
    for (OutputKind kind : experiment.outputs) {
        switch (kind) {
            case OutputKind::Populations:
                for (std::size_t k = 0; k < n; ++k) out += ",pop_" + std::to_string(k);
                break;
            case OutputKind::Amplitudes:
                for (std::size_t k = 0; k < n; ++k)
                    out += ",re_" + std::to_string(k) + ",im_" + std::to_string(k);
                break;
            case OutputKind::FidelityW0:
                out += ",fid_w0";
                break;
            case OutputKind::FidelityWPlus:
                out += ",fid_w_plus";
                break;
            case OutputKind::FidelityWMinus:
                out += ",fid_w_minus";
                break;
            case OutputKind::FidelityDistributed:
                out += ",fid_distributed";
                break;
        }
    }
    out += "\n";

    for (std::size_t row = 0; row < result.series.times.size(); ++row) {
        const WaveFunction& psi = result.series.states[row];
        out += detail::format_float(result.series.times[row]);
        std::size_t fidelity_seen = 0;  // fidelity_targets parallel the fidelity outputs
        for (OutputKind kind : experiment.outputs) {
            switch (kind) {
                case OutputKind::Populations:
                    for (std::size_t k = 0; k < n; ++k)
                        out += "," + detail::format_float(std::norm(psi[k]));
                    break;
                case OutputKind::Amplitudes:
                    for (std::size_t k = 0; k < n; ++k) {
                        out += "," + detail::format_float(psi[k].real());
                        out += "," + detail::format_float(psi[k].imag());
                    }
                    break;
                default:
                    out += "," + detail::format_float(
                                     fidelity(psi, experiment.fidelity_targets[fidelity_seen++]));
                    break;
            }
        }
        out += "\n";
    }
    return out;
}

inline std::string evolve_csv(const ExperimentConfig& config) {
    const ResolvedExperiment experiment = build_experiment(config);
    const ExperimentResult result = run_experiment(experiment);
    return render_csv(experiment, result);
}

// Network description document: nodes, columns, edges with couplings, and
// leaf weights, in construction order.
inline nlohmann::ordered_json generate_document(const ExperimentConfig& config) {
    const SpinNetwork network =
        assign_couplings(detail::build_topology(config.topology), CouplingRule{config.alpha});

    nlohmann::ordered_json doc;
    switch (config.topology.family) {
        case TopologyConfig::Family::Star:
            doc["family"] = "star";
            break;
        case TopologyConfig::Family::Tree:
            doc["family"] = "tree";
            break;
        case TopologyConfig::Family::Chain:
            doc["family"] = "chain";
            break;
    }
    doc["alpha"] = config.alpha;
    doc["node_count"] = network.node_count();
    doc["input"] = network.input();
    doc["equivalent_chain_length"] = network.equivalent_chain_length();
    doc["transfer_time"] = transfer_time(CouplingRule{config.alpha});
    doc["columns"] = network.columns();
    doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : network.edges()) {
        nlohmann::ordered_json edge;
        edge["parent"] = e.parent;
        edge["child"] = e.child;
        edge["coupling"] = *e.coupling;
        doc["edges"].push_back(edge);
    }
    doc["leaves"] = network.leaves();
    doc["leaf_weights"] = leaf_weights(network);
    return doc;
}

}  // namespace spinnet
