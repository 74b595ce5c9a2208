// couplings.hpp — perfect-state-transfer coupling profiles.
//
// A 1D chain of N sites transfers an excitation end to end in time pi/(2a)
// when the couplings follow J_i = a*sqrt(i*(N-i)). On a branched network the
// same profile is applied column-wise, and every edge leaving a hub with p
// children is divided by sqrt(p) so that the symmetric subspace reproduces
// the equivalent 1D chain exactly.
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spinnet/topology.hpp"

namespace spinnet {

struct CouplingRule {
    double alpha = 1.0;  // overall energy scale, > 0
};

// Element i (1-based, i = 1..N-1) is alpha*sqrt(i*(N-i)); palindromic.
inline std::vector<double> christandl_couplings(std::size_t n, double alpha) {
    if (n < 2)
        throw std::invalid_argument("christandl_couplings: chain length must be >= 2");
    if (alpha <= 0.0)
        throw std::domain_error("christandl_couplings: coupling scale alpha must be > 0");
    std::vector<double> couplings;
    couplings.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        couplings.push_back(alpha * std::sqrt(static_cast<double>(i * (n - i))));
    return couplings;
}

// Arrival time of the excitation at the far column, pi/(2*alpha).
inline double transfer_time(const CouplingRule& rule) {
    if (rule.alpha <= 0.0)
        throw std::domain_error("transfer_time: coupling scale alpha must be > 0");
    return std::numbers::pi / (2.0 * rule.alpha);
}

// Assign the column-wise Christandl profile with the per-hub 1/sqrt(children)
// correction. Requires an equal-depth network; N_eq = leaf column + 1.
inline SpinNetwork assign_couplings(const SpinNetwork& network, const CouplingRule& rule) {
    if (rule.alpha <= 0.0)
        throw std::domain_error("assign_couplings: coupling scale alpha must be > 0");
    if (!network.equal_depth())
        throw std::invalid_argument(
            "assign_couplings: depth mismatch; perfect transfer requires all "
            "leaves in the same column");

    const std::size_t n_eq = network.equivalent_chain_length();
    if (n_eq == 1) return network;  // single node, nothing to assign

    const std::vector<double> chain = christandl_couplings(n_eq, rule.alpha);
    std::vector<double> per_edge;
    per_edge.reserve(network.edges().size());
    for (const Edge& e : network.edges()) {
        const double base = chain[network.column(e.parent)];
        const double divisor = std::sqrt(static_cast<double>(network.child_count(e.parent)));
        per_edge.push_back(base / divisor);
    }
    return network.with_couplings(per_edge);
}

}  // namespace spinnet
