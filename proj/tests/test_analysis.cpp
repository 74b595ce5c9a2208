#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "spinnet/analysis.hpp"
#include "spinnet/dynamics.hpp"
#include "test_helpers.hpp"

using namespace spinnet;
using std::numbers::pi;

TEST_CASE("w targets", "[analysis]") {
    const std::vector<NodeId> leaves{2, 3, 4};
    const TargetState w0 = w_target(leaves, WVariant::Symmetric);
    for (const Complex& a : w0.amplitudes)
        REQUIRE(std::abs(a - Complex{1.0 / std::sqrt(3.0), 0.0}) < 1e-15);

    const TargetState w_plus = w_target(leaves, WVariant::Plus);
    REQUIRE(std::abs(w_plus.amplitudes[0] - Complex{1.0 / std::sqrt(3.0), 0.0}) < 1e-15);
    REQUIRE(std::abs(w_plus.amplitudes[1] - std::polar(1.0 / std::sqrt(3.0), 2.0 * pi / 3.0)) <
            1e-15);
    REQUIRE(std::abs(w_plus.amplitudes[2] - std::polar(1.0 / std::sqrt(3.0), -2.0 * pi / 3.0)) <
            1e-15);

    // <W+|W0> = 0.
    Complex overlap{0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k)
        overlap += std::conj(w_plus.amplitudes[k]) * w0.amplitudes[k];
    REQUIRE(std::abs(overlap) < 1e-15);

    REQUIRE_THROWS_AS(w_target({1, 2}, WVariant::Plus), std::invalid_argument);
    REQUIRE_THROWS_AS(w_target({1}, WVariant::Symmetric), std::invalid_argument);
}

TEST_CASE("distributed targets follow the leaf weights", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const TargetState from_star = distributed_target(star);
    const TargetState w0 = w_target(star.leaves(), WVariant::Symmetric);
    for (std::size_t k = 0; k < 3; ++k)
        REQUIRE(std::abs(from_star.amplitudes[k] - w0.amplitudes[k]) < 1e-15);

    const TargetState from_tree = distributed_target(test_helpers::coupled_two_hub_tree());
    REQUIRE(std::abs(from_tree.amplitudes[0] - Complex{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
    REQUIRE(std::abs(from_tree.amplitudes[1] - Complex{0.5, 0.0}) < 1e-15);
    REQUIRE(std::abs(from_tree.amplitudes[2] - Complex{0.5, 0.0}) < 1e-15);

    const TargetState from_chain = distributed_target(test_helpers::coupled_chain(4));
    REQUIRE(from_chain.support == std::vector<NodeId>{3});
    REQUIRE(from_chain.amplitudes[0] == Complex{1.0, 0.0});
}

TEST_CASE("fidelity identifies the created state", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const TargetState w0 = w_target(star.leaves(), WVariant::Symmetric);
    const TargetState w_plus = w_target(star.leaves(), WVariant::Plus);

    WaveFunction embedded(star.node_count());
    for (std::size_t k = 0; k < 3; ++k) embedded[star.leaves()[k]] = w0.amplitudes[k];
    REQUIRE(fidelity(embedded, w0) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(fidelity(embedded, w_plus) < 1e-15);

    const SpectralDecomposition d = spectral_decompose(build_block(star));
    const WaveFunction arrived = evolve(d, basis_state(star, 0), pi / 2.0);
    REQUIRE(fidelity(arrived, w0) >= 1.0 - 1e-9);
}

TEST_CASE("fidelity ignores a global phase", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const TargetState w0 = w_target(star.leaves(), WVariant::Symmetric);
    std::mt19937_64 rng(0x5eed000d);
    const WaveFunction psi = test_helpers::random_state(rng, star.node_count());

    WaveFunction rotated = psi;  // multiplication by i is exact
    for (auto& a : rotated.amplitudes) a *= Complex{0.0, 1.0};
    REQUIRE(fidelity(rotated, w0) == fidelity(psi, w0));

    WaveFunction generic = psi;
    for (auto& a : generic.amplitudes) a *= std::polar(1.0, 0.8137);
    REQUIRE(std::abs(fidelity(generic, w0) - fidelity(psi, w0)) < 1e-14);
}

TEST_CASE("site populations", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const auto indicator = site_populations(basis_state(star, 3));
    REQUIRE(indicator == std::vector<double>{0.0, 0.0, 0.0, 1.0, 0.0});

    std::mt19937_64 rng(0x5eed000e);
    for (int trial = 0; trial < 20; ++trial) {
        const WaveFunction psi = test_helpers::random_state(rng, 2 + rng() % 8);
        double total = 0.0;
        for (double p : site_populations(psi)) total += p;
        REQUIRE(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("concurrence closed form", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    WaveFunction w0(star.node_count());
    for (NodeId leaf : star.leaves()) w0[leaf] = Complex{1.0 / std::sqrt(3.0), 0.0};

    REQUIRE(pairwise_concurrence(w0, 2, 3) == Catch::Approx(2.0 / 3.0).margin(1e-15));
    REQUIRE(pairwise_concurrence(w0, 2, 4) == Catch::Approx(2.0 / 3.0).margin(1e-15));
    REQUIRE(pairwise_concurrence(w0, 3, 4) == Catch::Approx(2.0 / 3.0).margin(1e-15));

    REQUIRE(pairwise_concurrence(basis_state(star, 2), 2, 3) == 0.0);

    WaveFunction bell(4);
    bell[1] = Complex{1.0 / std::sqrt(2.0), 0.0};
    bell[2] = Complex{1.0 / std::sqrt(2.0), 0.0};
    REQUIRE(pairwise_concurrence(bell, 1, 2) == Catch::Approx(1.0).margin(1e-15));

    REQUIRE_THROWS_AS(pairwise_concurrence(w0, 2, 2), std::invalid_argument);
}

TEST_CASE("concurrence matches the Wootters oracle", "[analysis][oracle]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    WaveFunction w0(star.node_count());
    for (NodeId leaf : star.leaves()) w0[leaf] = Complex{1.0 / std::sqrt(3.0), 0.0};
    REQUIRE(std::abs(oracles::wootters_concurrence(w0, 2, 3) - 2.0 / 3.0) < 1e-12);

    std::mt19937_64 rng(0x5eed000f);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const WaveFunction psi = test_helpers::random_state(rng, n);
        const NodeId i = rng() % n;
        NodeId j = rng() % n;
        if (j == i) j = (j + 1) % n;
        const double closed = pairwise_concurrence(psi, i, j);
        const double brute = oracles::wootters_concurrence(psi, i, j);
        REQUIRE(std::abs(closed - brute) < 1e-12);
    }
}

TEST_CASE("eigenvectors do not drift", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const SpectralDecomposition d = spectral_decompose(build_block(star));
    WaveFunction mode(star.node_count());
    for (std::size_t i = 0; i < star.node_count(); ++i)
        mode[i] = Complex{d.eigenvector(i, 1), 0.0};
    REQUIRE(stationarity_drift(d, mode, 10.0, 64) < 1e-12);
}

TEST_CASE("frozen versus unfrozen drift", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const SpectralDecomposition d = spectral_decompose(build_block(star));
    WaveFunction arrived = evolve(d, basis_state(star, 0), pi / 2.0);

    REQUIRE(stationarity_drift(d, arrived, 20.0 * pi, 801) > 0.1);

    const auto phases = freeze_phases(3, PhaseScheme::RootsOfUnity);
    for (std::size_t k = 0; k < 3; ++k)
        arrived = apply_phase(arrived, star.leaves()[k], phases[k]);
    REQUIRE(stationarity_drift(d, arrived, 20.0 * pi, 801) < 1e-9);
}

TEST_CASE("dark W patterns annihilate under H", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const HamiltonianBlock h = build_block(star);
    for (WVariant variant : {WVariant::Plus, WVariant::Minus}) {
        const TargetState target = w_target(star.leaves(), variant);
        WaveFunction psi(star.node_count());
        for (std::size_t k = 0; k < 3; ++k) psi[star.leaves()[k]] = target.amplitudes[k];
        REQUIRE(apply_hamiltonian(h, psi).norm() < 1e-12);
    }
}

TEST_CASE("column projection refuses unequal depths", "[analysis]") {
    const BranchSpec lopsided{1, {BranchSpec{1, {}}, BranchSpec{2, {}}}};
    const SpinNetwork tree = build_tree(lopsided, true);
    REQUIRE_THROWS_AS(column_project(tree, WaveFunction(tree.node_count())),
                      std::invalid_argument);
}

TEST_CASE("column projection basics", "[analysis]") {
    const SpinNetwork star = test_helpers::coupled_star(2, 3, 1);
    const auto at_input = column_project(star, basis_state(star, 0));
    REQUIRE(at_input.size() == 3);
    REQUIRE(at_input[0] == Complex{1.0, 0.0});
    REQUIRE(at_input[1] == Complex{0.0, 0.0});
    REQUIRE(at_input[2] == Complex{0.0, 0.0});

    const SpectralDecomposition d = spectral_decompose(build_block(star));
    const auto arrived = column_project(star, evolve(d, basis_state(star, 0), pi / 2.0));
    REQUIRE(std::abs(arrived[0]) < 1e-9);
    REQUIRE(std::abs(arrived[1]) < 1e-9);
    REQUIRE(std::abs(arrived[2] - Complex{-1.0, 0.0}) < 1e-9);
}

TEST_CASE("projected dynamics match the equivalent chain", "[analysis][oracle]") {
    const SpinNetwork cases[] = {test_helpers::coupled_star(2, 3, 1),
                                 test_helpers::coupled_two_hub_tree()};
    for (const SpinNetwork& network : cases) {
        const SpectralDecomposition d = spectral_decompose(build_block(network));
        const SpinNetwork chain =
            test_helpers::coupled_chain(network.equivalent_chain_length());
        const SpectralDecomposition chain_d = spectral_decompose(build_block(chain));
        for (int k = 0; k < 200; ++k) {
            const double t = 4.0 * pi * static_cast<double>(k) / 199.0;
            const WaveFunction full = evolve(d, basis_state(network, 0), t);
            const WaveFunction reduced = evolve(chain_d, basis_state(chain, 0), t);
            const auto projected = column_project(network, full);
            double projected_norm = 0.0;
            for (std::size_t c = 0; c < projected.size(); ++c) {
                REQUIRE(std::abs(projected[c] - reduced[c]) < 1e-9);
                projected_norm += std::norm(projected[c]);
            }
            REQUIRE(std::abs(projected_norm - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("arrival maximizes fidelity to the distributed target", "[analysis]") {
    const SpinNetwork cases[] = {
        test_helpers::coupled_star(2, 3, 1), test_helpers::coupled_star(2, 3, 1, 2.0),
        test_helpers::coupled_two_hub_tree(), test_helpers::coupled_star(3, 4, 2)};
    const double alphas[] = {1.0, 2.0, 1.0, 1.0};
    for (std::size_t c = 0; c < 4; ++c) {
        const SpinNetwork& network = cases[c];
        const double alpha = alphas[c];
        const SpectralDecomposition d = spectral_decompose(build_block(network));
        const TargetState target = distributed_target(network);
        const double step = pi / (200.0 * alpha);
        double best_time = 0.0;
        double best = -1.0;
        for (int k = 0; k * step <= pi / alpha + 1e-12; ++k) {
            const double f = fidelity(evolve(d, basis_state(network, 0), k * step), target);
            if (f > best) {
                best = f;
                best_time = k * step;
            }
        }
        REQUIRE(std::abs(best_time - pi / (2.0 * alpha)) <= step + 1e-12);
        REQUIRE(best >= 1.0 - 1e-9);
    }
}
