// analysis.hpp — target states, fidelity, populations, pairwise concurrence,
// stationarity metrics, and the column projection onto the equivalent chain.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spinnet/hamiltonian.hpp"
#include "spinnet/topology.hpp"
#include "spinnet/wavefunction.hpp"

namespace spinnet {

// A named amplitude pattern over a subset of nodes (normally the leaves),
// compared against full-network states with zeros off support.
struct TargetState {
    std::vector<NodeId> support;
    std::vector<Complex> amplitudes;
};

enum class WVariant { Symmetric, Plus, Minus };

// Symmetric variant: every amplitude 1/sqrt(p). The +/- variants are the
// tripartite patterns (1, e^{+-2pi i/3}, e^{-+2pi i/3})/sqrt(3), which are
// dark: their amplitudes cancel at the hub.
inline TargetState w_target(const std::vector<NodeId>& leaves, WVariant variant) {
    const std::size_t p = leaves.size();
    if (variant == WVariant::Symmetric) {
        if (p < 2)
            throw std::invalid_argument("w_target: symmetric variant needs at least 2 leaves");
        const double amp = 1.0 / std::sqrt(static_cast<double>(p));
        return TargetState{leaves, std::vector<Complex>(p, Complex{amp, 0.0})};
    }
    if (p != 3)
        throw std::invalid_argument("w_target: the +/- variants are tripartite (3 leaves)");
    const double sign = variant == WVariant::Plus ? 1.0 : -1.0;
    const double amp = 1.0 / std::sqrt(3.0);
    TargetState target{leaves, {}};
    target.amplitudes = {Complex{amp, 0.0},
                         std::polar(amp, sign * 2.0 * std::numbers::pi / 3.0),
                         std::polar(amp, -sign * 2.0 * std::numbers::pi / 3.0)};
    return target;
}

// The state the dynamics actually creates at arrival: the leaf-weight
// pattern. Equal amplitudes on a star, unequal on bifurcating trees.
inline TargetState distributed_target(const SpinNetwork& network) {
    const std::vector<double> weights = leaf_weights(network);
    TargetState target{network.leaves(), {}};
    target.amplitudes.reserve(weights.size());
    for (double w : weights) target.amplitudes.emplace_back(w, 0.0);
    return target;
}

// |<target|psi>|^2, clipped into [0, 1]; global phase of psi drops out.
inline double fidelity(const WaveFunction& psi, const TargetState& target) {
    Complex overlap{0.0, 0.0};
    for (std::size_t k = 0; k < target.support.size(); ++k) {
        const NodeId node = target.support[k];
        if (node >= psi.size())
            throw std::invalid_argument("fidelity: target support outside the state");
        overlap += std::conj(target.amplitudes[k]) * psi[node];
    }
    return std::min(std::norm(overlap), 1.0);
}

inline std::vector<double> site_populations(const WaveFunction& psi) {
    std::vector<double> populations;
    populations.reserve(psi.size());
    for (const Complex& a : psi.amplitudes) populations.push_back(std::norm(a));
    return populations;
}

// Wootters concurrence of the two-site reduced state. For a pure state in
// the single-excitation sector the closed form is 2|a_i||a_j|.
inline double pairwise_concurrence(const WaveFunction& psi, NodeId i, NodeId j) {
    if (i == j)
        throw std::invalid_argument("pairwise_concurrence: sites must be distinct");
    if (i >= psi.size() || j >= psi.size())
        throw std::invalid_argument("pairwise_concurrence: site index out of range");
    return 2.0 * std::abs(psi[i]) * std::abs(psi[j]);
}

// Max over the sampled horizon and over nodes of | |a_k(t)|^2 - |a_k(0)|^2 |.
// Zero (to solver precision) exactly when psi is stationary.
inline double stationarity_drift(const SpectralDecomposition& decomp, const WaveFunction& psi,
                                 double horizon, std::size_t samples) {
    if (samples < 2)
        throw std::invalid_argument("stationarity_drift: need at least 2 samples");
    const std::vector<double> initial = site_populations(psi);
    double drift = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double t = horizon * static_cast<double>(s) / static_cast<double>(samples - 1);
        const WaveFunction evolved = evolve(decomp, psi, t);
        for (std::size_t k = 0; k < evolved.size(); ++k)
            drift = std::max(drift, std::abs(std::norm(evolved[k]) - initial[k]));
    }
    return drift;
}

// Project onto the orthonormal column states |C_c> = sum_{k in column c}
// w_k |k>, with w_k the hub-product path weights. For states reachable from
// the input this is an isometry onto the equivalent 1D chain.
inline std::vector<Complex> column_project(const SpinNetwork& network, const WaveFunction& psi) {
    if (!network.equal_depth())
        throw std::invalid_argument("column_project: network must have equal-depth leaves");
    if (psi.size() != network.node_count())
        throw std::invalid_argument("column_project: state dimension mismatch");
    const std::vector<double> weights = node_path_weights(network);
    std::vector<Complex> projected(network.equivalent_chain_length(), Complex{0.0, 0.0});
    for (NodeId k = 0; k < network.node_count(); ++k)
        projected[network.column(k)] += weights[k] * psi[k];
    return projected;
}

}  // namespace spinnet
