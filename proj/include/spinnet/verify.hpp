// verify.hpp — the built-in end-to-end verification suite behind
// `spinnet verify`: perfect transfer, W-state creation and revival,
// freezing, the singlet protocol, column-projection equivalence, and solver
// residuals, each reported as a measured residual against its threshold.
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinnet/analysis.hpp"
#include "spinnet/cli.hpp"
#include "spinnet/couplings.hpp"
#include "spinnet/dynamics.hpp"
#include "spinnet/hamiltonian.hpp"
#include "spinnet/topology.hpp"

namespace spinnet {

struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool require_above = false;  // partial freezing passes when drift EXCEEDS the threshold
    bool pass = false;
};

struct VerifyOptions {
    // Debug hook: scales the first assigned coupling of every network built
    // by the suite by (1 + value). Any nonzero value must break the
    // mirror-transfer check; engineered transfer tolerates no error.
    double coupling_perturbation = 0.0;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_passed() const {
        for (const VerifyCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline SpinNetwork couple_for_verify(const SpinNetwork& network, double alpha,
                                     const VerifyOptions& options) {
    SpinNetwork coupled = assign_couplings(network, CouplingRule{alpha});
    if (options.coupling_perturbation != 0.0 && !coupled.edges().empty()) {
        std::vector<double> values = coupled.couplings();
        values[0] *= 1.0 + options.coupling_perturbation;
        coupled = coupled.with_couplings(values);
    }
    return coupled;
}

inline BranchSpec two_hub_tree_spec() {
    // Seven nodes, hubs at columns 1 and 2; creates leaf weights
    // (1/sqrt(2), 1/2, 1/2).
    return BranchSpec{2, {BranchSpec{2, {}}, BranchSpec{1, {BranchSpec{1, {}}, BranchSpec{1, {}}}}}};
}

inline void add_check(VerifyReport& report, const std::string& name, double residual,
                      double threshold, bool require_above = false) {
    VerifyCheck check{name, residual, threshold, require_above, false};
    check.pass = require_above ? residual > threshold : residual <= threshold;
    report.checks.push_back(check);
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions& options = {}) {
    using std::numbers::pi;
    VerifyReport report;
    const double alpha = 1.0;
    const double t_star = pi / 2.0;

    // Perfect mirror transfer along engineered chains.
    {
        double worst = 0.0;
        for (std::size_t n = 2; n <= 8; ++n) {
            const SpinNetwork chain =
                detail::couple_for_verify(build_tree(BranchSpec{n, {}}), alpha, options);
            const SpectralDecomposition decomp = spectral_decompose(build_block(chain));
            const WaveFunction arrived = evolve(decomp, basis_state(chain, 0), t_star);
            worst = std::max(worst, 1.0 - std::norm(arrived[n - 1]));
        }
        detail::add_check(report, "chain_mirror_transfer", worst, 1e-9);
    }

    // W-state creation on the one-to-three star, plus its revivals.
    {
        const SpinNetwork star = detail::couple_for_verify(build_star(2, 3, 1), alpha, options);
        const SpectralDecomposition decomp = spectral_decompose(build_block(star));
        const TargetState w0 = w_target(star.leaves(), WVariant::Symmetric);
        const WaveFunction arrived = evolve(decomp, basis_state(star, 0), t_star);

        double population_error = 0.0;
        for (NodeId leaf : star.leaves())
            population_error =
                std::max(population_error, std::abs(std::norm(arrived[leaf]) - 1.0 / 3.0));
        detail::add_check(report, "w_state_leaf_populations", population_error, 1e-9);
        detail::add_check(report, "w_state_fidelity", 1.0 - fidelity(arrived, w0), 1e-9);

        double revival_error = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const WaveFunction revived =
                evolve(decomp, basis_state(star, 0), t_star + k * pi / alpha);
            revival_error = std::max(revival_error, 1.0 - fidelity(revived, w0));
        }
        detail::add_check(report, "w_state_revival", revival_error, 1e-9);
    }

    // Freezing: roots-of-unity on the 3-output star, pi flips on a 2-output
    // star. Both must produce a dark state with no further dynamics.
    {
        const struct {
            const char* norm_name;
            const char* drift_name;
            std::size_t outputs;
            PhaseScheme scheme;
        } cases[] = {
            {"freeze_roots_dark_norm", "freeze_roots_drift", 3, PhaseScheme::RootsOfUnity},
            {"freeze_pi_half_dark_norm", "freeze_pi_half_drift", 2, PhaseScheme::PiOnHalf},
        };
        for (const auto& scenario : cases) {
            const SpinNetwork star =
                detail::couple_for_verify(build_star(2, scenario.outputs, 1), alpha, options);
            const HamiltonianBlock block = build_block(star);
            const SpectralDecomposition decomp = spectral_decompose(block);
            WaveFunction psi = evolve(decomp, basis_state(star, 0), t_star);
            const std::vector<double> phases =
                freeze_phases(scenario.outputs, scenario.scheme);
            for (std::size_t k = 0; k < phases.size(); ++k)
                psi = apply_phase(psi, star.leaves()[k], phases[k]);
            detail::add_check(report, scenario.norm_name, apply_hamiltonian(block, psi).norm(),
                              1e-12);
            detail::add_check(report, scenario.drift_name,
                              stationarity_drift(decomp, psi, 20.0 * pi, 801), 1e-9);
        }
    }

    // Unequal leaf weights on the two-hub bifurcation tree.
    {
        const SpinNetwork tree =
            detail::couple_for_verify(build_tree(detail::two_hub_tree_spec()), alpha, options);
        const SpectralDecomposition decomp = spectral_decompose(build_block(tree));
        const WaveFunction arrived = evolve(decomp, basis_state(tree, 0), t_star);
        const double expected[] = {0.5, 0.25, 0.25};
        double error = 0.0;
        for (std::size_t k = 0; k < tree.leaves().size(); ++k)
            error = std::max(error, std::abs(std::norm(arrived[tree.leaves()[k]]) - expected[k]));
        detail::add_check(report, "asymmetric_leaf_populations", error, 1e-9);
    }

    // Singlet preparation branch probabilities and frozen outcome-0 branch.
    // The protocol runs on pristine couplings; the perturbation hook covers
    // the transfer checks above.
    {
        const SingletReport consumed = singlet_protocol(alpha, 1, 0);
        const SingletReport projected = singlet_protocol(alpha, 0, 0);
        const double probability_error =
            std::max(std::abs(consumed.probability - 1.0 / 3.0),
                     std::abs(projected.probability - 2.0 / 3.0));
        detail::add_check(report, "singlet_branch_probabilities", probability_error, 1e-12);
        detail::add_check(report, "singlet_frozen_drift", projected.stationarity_drift, 1e-9);
    }

    // Longer output branches cannot be frozen completely: drift must remain.
    {
        const SpinNetwork star = detail::couple_for_verify(build_star(2, 3, 2), alpha, options);
        const SpectralDecomposition decomp = spectral_decompose(build_block(star));
        WaveFunction psi = evolve(decomp, basis_state(star, 0), t_star);
        const std::vector<double> phases = freeze_phases(3, PhaseScheme::RootsOfUnity);
        for (std::size_t k = 0; k < phases.size(); ++k)
            psi = apply_phase(psi, star.leaves()[k], phases[k]);
        detail::add_check(report, "partial_freezing_drift",
                          stationarity_drift(decomp, psi, 20.0 * pi, 801), 1e-3,
                          /*require_above=*/true);
    }

    // Column projection reproduces the equivalent 1D chain at all times.
    {
        const struct {
            const char* name;
            SpinNetwork network;
        } cases[] = {
            {"column_projection_star", detail::couple_for_verify(build_star(2, 3, 1), alpha, options)},
            {"column_projection_two_hub",
             detail::couple_for_verify(build_tree(detail::two_hub_tree_spec()), alpha, options)},
        };
        for (const auto& scenario : cases) {
            const SpectralDecomposition decomp =
                spectral_decompose(build_block(scenario.network));
            const std::size_t n_eq = scenario.network.equivalent_chain_length();
            const SpinNetwork chain =
                detail::couple_for_verify(build_tree(BranchSpec{n_eq, {}}), alpha, options);
            const SpectralDecomposition chain_decomp = spectral_decompose(build_block(chain));
            double worst = 0.0;
            for (int k = 0; k < 200; ++k) {
                const double t = 4.0 * pi * static_cast<double>(k) / 199.0;
                const WaveFunction full =
                    evolve(decomp, basis_state(scenario.network, 0), t);
                const WaveFunction reduced = evolve(chain_decomp, basis_state(chain, 0), t);
                const std::vector<Complex> projected = column_project(scenario.network, full);
                for (std::size_t c = 0; c < n_eq; ++c)
                    worst = std::max(worst, std::abs(projected[c] - reduced[c]));
            }
            detail::add_check(report, scenario.name, worst, 1e-9);
        }
    }

    // Eigensolver quality on a family of representative networks.
    {
        const std::vector<SpinNetwork> networks = {
            detail::couple_for_verify(build_tree(BranchSpec{12, {}}), alpha, options),
            detail::couple_for_verify(build_star(3, 4, 2), alpha, options),
            detail::couple_for_verify(build_tree(detail::two_hub_tree_spec()), alpha, options),
            detail::couple_for_verify(
                build_tree(BranchSpec{
                    2,
                    {BranchSpec{1, {BranchSpec{1, {}}, BranchSpec{1, {}}}},
                     BranchSpec{1, {BranchSpec{1, {}}, BranchSpec{1, {}}}}}}),
                alpha, options),
        };
        double reconstruction = 0.0;
        double orthonormality = 0.0;
        for (const SpinNetwork& network : networks) {
            const HamiltonianBlock block = build_block(network);
            const SpectralDecomposition decomp = spectral_decompose(block);
            const std::size_t n = decomp.dimension;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    double rebuilt = 0.0;
                    double gram = 0.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        rebuilt += decomp.eigenvector(i, k) * decomp.eigenvalues[k] *
                                   decomp.eigenvector(j, k);
                        gram += decomp.eigenvector(k, i) * decomp.eigenvector(k, j);
                    }
                    reconstruction = std::max(reconstruction, std::abs(rebuilt - block.at(i, j)));
                    orthonormality =
                        std::max(orthonormality, std::abs(gram - (i == j ? 1.0 : 0.0)));
                }
            }
        }
        detail::add_check(report, "spectral_reconstruction", reconstruction, 1e-10);
        detail::add_check(report, "eigenvector_orthonormality", orthonormality, 1e-12);
    }

    // Identical config and seed must reproduce the CSV byte for byte.
    {
        ExperimentConfig config;
        config.topology.family = TopologyConfig::Family::Star;
        config.topology.star_m = 2;
        config.topology.star_p = 3;
        config.topology.star_l = 1;
        config.alpha = 1.0;
        PulseConfig scheme;
        scheme.kind = PulseConfig::Kind::Scheme;
        scheme.time.t_star_terms = 1;
        scheme.scheme = PhaseScheme::RootsOfUnity;
        config.schedule.push_back(scheme);
        MeasurementConfig measurement;
        measurement.time.t_star_terms = 1;
        measurement.time.revival_terms = 1;
        measurement.node = 4;
        config.measurements.push_back(measurement);
        config.samples.end.t_star_terms = 1;
        config.samples.end.revival_terms = 2;
        config.samples.steps = 97;
        config.outputs = {OutputKind::Populations, OutputKind::Amplitudes,
                          OutputKind::FidelityW0};
        config.seed = 20250810;
        const std::string first = evolve_csv(config);
        const std::string second = evolve_csv(config);
        detail::add_check(report, "evolve_determinism", first == second ? 0.0 : 1.0, 0.5);
    }

    return report;
}

inline nlohmann::ordered_json verification_json(const VerifyReport& report) {
    nlohmann::ordered_json doc;
    doc["all_passed"] = report.all_passed();
    doc["checks"] = nlohmann::ordered_json::array();
    for (const VerifyCheck& check : report.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = check.name;
        entry["residual"] = check.residual;
        entry["threshold"] = check.threshold;
        entry["comparison"] = check.require_above ? "above" : "below";
        entry["pass"] = check.pass;
        doc["checks"].push_back(entry);
    }
    return doc;
}

}  // namespace spinnet
