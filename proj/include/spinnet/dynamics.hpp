// dynamics.hpp — site-basis state preparation, instantaneous phase pulses,
// projective site measurements, experiment schedules, and the two protocols
// built from them: entanglement freezing and singlet preparation.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "spinnet/analysis.hpp"
#include "spinnet/couplings.hpp"
#include "spinnet/hamiltonian.hpp"
#include "spinnet/topology.hpp"
#include "spinnet/wavefunction.hpp"

namespace spinnet {

// An instantaneous single-site phase rotation. "Instantaneous" idealizes a
// rotation fast compared with pi/alpha.
struct PulseEvent {
    double time = 0.0;
    NodeId node = 0;
    double phase = 0.0;  // radians
};

enum class PhaseScheme { RootsOfUnity, PiOnHalf };

struct MeasurementRecord {
    NodeId node = 0;
    int outcome = 0;
    double probability = 0.0;       // probability of the realized outcome
    bool excitation_consumed = false;
    WaveFunction post_state;        // all-zero vacuum when consumed
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<WaveFunction> states;
};

inline WaveFunction basis_state(const SpinNetwork& network, NodeId node) {
    if (node >= network.node_count())
        throw std::invalid_argument("basis_state: node index out of range");
    WaveFunction psi(network.node_count());
    psi[node] = Complex{1.0, 0.0};
    return psi;
}

inline WaveFunction apply_phase(const WaveFunction& psi, NodeId node, double theta) {
    if (node >= psi.size())
        throw std::invalid_argument("apply_phase: node index out of range");
    WaveFunction out = psi;
    out[node] *= std::polar(1.0, theta);
    return out;
}

// Phases for freezing a p-way symmetric state: any set with
// sum_k e^{i theta_k} = 0 turns the arrived state dark.
inline std::vector<double> freeze_phases(std::size_t p, PhaseScheme scheme) {
    if (p < 2)
        throw std::invalid_argument("freeze_phases: need at least 2 outputs");
    std::vector<double> phases(p, 0.0);
    switch (scheme) {
        case PhaseScheme::RootsOfUnity:
            for (std::size_t k = 0; k < p; ++k)
                phases[k] = 2.0 * std::numbers::pi * static_cast<double>(k) /
                            static_cast<double>(p);
            break;
        case PhaseScheme::PiOnHalf:
            if (p % 2 != 0)
                throw std::invalid_argument(
                    "freeze_phases: the pi-on-half scheme needs an even number of outputs");
            for (std::size_t k = 0; k < p / 2; ++k) phases[k] = std::numbers::pi;
            break;
    }
    return phases;
}

namespace detail {

// 53-bit uniform draw in [0, 1); fixed construction keeps runs reproducible
// across standard library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Projective measurement of one site in the computational basis. Outcome 1
// consumes the excitation (the remaining network is vacuum and nothing
// further evolves); outcome 0 renormalizes the projected remainder.
inline MeasurementRecord measure_site(const WaveFunction& psi, NodeId node,
                                      std::optional<int> forced_outcome, std::mt19937_64& rng) {
    if (node >= psi.size())
        throw std::invalid_argument("measure_site: node index out of range");
    double p1 = std::norm(psi[node]);
    p1 = std::min(std::max(p1, 0.0), 1.0);
    const double p0 = 1.0 - p1;

    int outcome;
    if (forced_outcome) {
        if (*forced_outcome != 0 && *forced_outcome != 1)
            throw std::invalid_argument("measure_site: forced outcome must be 0 or 1");
        outcome = *forced_outcome;
        const double branch = outcome == 1 ? p1 : p0;
        if (branch < 1e-15)
            throw std::invalid_argument(
                "measure_site: forced outcome selects an impossible branch");
    } else {
        outcome = detail::uniform_unit(rng) < p1 ? 1 : 0;
    }

    MeasurementRecord record;
    record.node = node;
    record.outcome = outcome;
    if (outcome == 1) {
        record.probability = p1;
        record.excitation_consumed = true;
        record.post_state = WaveFunction(psi.size());
    } else {
        record.probability = p0;
        record.post_state = psi;
        record.post_state[node] = Complex{0.0, 0.0};
        const double remaining = std::sqrt(record.post_state.norm_squared());
        if (remaining < 1e-15)
            throw std::invalid_argument(
                "measure_site: outcome 0 leaves a zero-norm branch");
        for (auto& a : record.post_state.amplitudes) a /= remaining;
    }
    return record;
}

inline MeasurementRecord measure_site(const WaveFunction& psi, NodeId node,
                                      std::optional<int> forced_outcome, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return measure_site(psi, node, forced_outcome, rng);
}

// Piecewise evolution: free evolution between events, instantaneous pulses
// at event times. At equal timestamps pulses apply before sampling, and
// pulses sharing a timestamp compose in list order.
inline TimeSeries run_schedule(const SpinNetwork& network, const SpectralDecomposition& decomp,
                               const WaveFunction& psi0, const std::vector<PulseEvent>& events,
                               const std::vector<double>& sample_times) {
    if (decomp.dimension != network.node_count() || psi0.size() != network.node_count())
        throw std::invalid_argument("run_schedule: dimension mismatch");
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].time < 0.0)
            throw std::invalid_argument("run_schedule: event times must be non-negative");
        if (i > 0 && events[i].time < events[i - 1].time)
            throw std::invalid_argument("run_schedule: events must be sorted by time");
    }
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < 0.0)
            throw std::invalid_argument("run_schedule: sample times must be non-negative");
        if (i > 0 && sample_times[i] < sample_times[i - 1])
            throw std::invalid_argument("run_schedule: sample times must ascend");
    }

    TimeSeries series;
    series.times.reserve(sample_times.size());
    series.states.reserve(sample_times.size());
    WaveFunction psi = psi0;
    double now = 0.0;
    std::size_t next_event = 0;
    for (double t : sample_times) {
        while (next_event < events.size() && events[next_event].time <= t) {
            psi = evolve(decomp, psi, events[next_event].time - now);
            now = events[next_event].time;
            psi = apply_phase(psi, events[next_event].node, events[next_event].phase);
            ++next_event;
        }
        psi = evolve(decomp, psi, t - now);
        now = t;
        series.times.push_back(t);
        series.states.push_back(psi);
    }
    return series;
}

struct SingletReport {
    int outcome = 0;
    double probability = 0.0;
    bool excitation_consumed = false;
    WaveFunction post_state;
    double stationarity_drift = 0.0;
    double arrival_time = 0.0;
};

// The singlet preparation protocol on the five-node one-to-three star:
// evolve the input excitation to the arrival time, measure the last output.
// Outcome 1 (probability 1/3) consumes the excitation; outcome 0
// (probability 2/3) leaves (|01>+|10>)/sqrt(2) on the other two outputs, and
// a pi flip on one of them turns that into the singlet, which is dark and
// stays put. The report carries the realized branch and the post-pulse
// population drift over ten revival periods.
inline SingletReport singlet_protocol(double alpha, std::optional<int> forced_outcome,
                                      std::uint64_t seed) {
    const CouplingRule rule{alpha};
    const SpinNetwork network = assign_couplings(build_star(2, 3, 1), rule);
    const SpectralDecomposition decomp = spectral_decompose(build_block(network));
    const double t_star = transfer_time(rule);

    WaveFunction psi = evolve(decomp, basis_state(network, network.input()), t_star);
    const NodeId measured_leaf = network.leaves().back();
    const MeasurementRecord record = measure_site(psi, measured_leaf, forced_outcome, seed);

    SingletReport report;
    report.outcome = record.outcome;
    report.probability = record.probability;
    report.excitation_consumed = record.excitation_consumed;
    report.arrival_time = t_star;
    if (record.excitation_consumed) {
        report.post_state = record.post_state;
        report.stationarity_drift = 0.0;  // vacuum is trivially stationary
        return report;
    }
    report.post_state = apply_phase(record.post_state, network.leaves().front(), std::numbers::pi);
    report.stationarity_drift =
        stationarity_drift(decomp, report.post_state,
                           10.0 * std::numbers::pi / alpha, 501);
    return report;
}

}  // namespace spinnet
