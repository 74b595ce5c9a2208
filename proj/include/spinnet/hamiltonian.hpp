// hamiltonian.hpp — the real-symmetric single-excitation block and exact
// time evolution through its spectral decomposition.
//
// The full chain Hamiltonian conserves the number of flipped spins, so the
// one-excitation sector closes on itself: entry (k,l) is the coupling J_kl
// for an edge and 0 otherwise, and the diagonal carries the onsite energies
// (zero in the uniform limit, where the common shift is only a global
// phase). Hopping matrix elements equal J itself; this is the convention
// under which the Christandl profile gives arrival exactly at pi/(2*alpha).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spinnet/topology.hpp"
#include "spinnet/wavefunction.hpp"

namespace spinnet {

class HamiltonianBlock {
public:
    explicit HamiltonianBlock(std::size_t dimension)
        : dim_(dimension), entries_(dimension * dimension, 0.0) {
        if (dimension == 0)
            throw std::invalid_argument("HamiltonianBlock: dimension must be positive");
    }

    std::size_t dimension() const { return dim_; }
    double& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    double max_abs_entry() const {
        double m = 0.0;
        for (double e : entries_) m = std::max(m, std::abs(e));
        return m;
    }

    double max_asymmetry() const {
        double m = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                m = std::max(m, std::abs(at(i, j) - at(j, i)));
        return m;
    }

private:
    std::size_t dim_;
    std::vector<double> entries_;
};

inline HamiltonianBlock build_block(const SpinNetwork& network) {
    if (!network.couplings_assigned())
        throw std::invalid_argument(
            "build_block: incomplete network; couplings have not been assigned");
    HamiltonianBlock h(network.node_count());
    for (const Edge& e : network.edges()) {
        h.at(e.parent, e.child) = *e.coupling;
        h.at(e.child, e.parent) = *e.coupling;
    }
    for (NodeId k = 0; k < network.node_count(); ++k) h.at(k, k) = network.onsite_energy(k);
    return h;
}

struct SpectralDecomposition {
    std::size_t dimension = 0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // row-major; column j pairs with eigenvalue j

    double eigenvector(std::size_t i, std::size_t j) const {
        return eigenvectors[i * dimension + j];
    }
};

namespace detail {

// Cyclic Jacobi with the standard staged thresholding; the matrices here are
// tiny (tens of nodes), where Jacobi's accuracy beats anything fancier.
inline void jacobi_eigensolve(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                              std::vector<double>& v) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    d.resize(n);
    std::vector<double> b(n), z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) b[i] = d[i] = a[i * n + i];

    auto rotate = [&](std::vector<double>& m, std::size_t i, std::size_t j, std::size_t k,
                      std::size_t l, double s, double tau) {
        const double g = m[i * n + j];
        const double h = m[k * n + l];
        m[i * n + j] = g - s * (h + g * tau);
        m[k * n + l] = h + s * (g - h * tau);
    };

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off_sum = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off_sum += std::abs(a[p * n + q]);
        if (off_sum == 0.0) return;  // converged; d holds the eigenvalues
        const double thresh = (sweep < 3) ? 0.2 * off_sum / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(a[p * n + q]);
                if (sweep > 3 && std::abs(d[p]) + g == std::abs(d[p]) &&
                    std::abs(d[q]) + g == std::abs(d[q])) {
                    a[p * n + q] = 0.0;
                } else if (std::abs(a[p * n + q]) > thresh) {
                    double h = d[q] - d[p];
                    double t;
                    if (std::abs(h) + g == std::abs(h)) {
                        t = a[p * n + q] / h;
                    } else {
                        const double theta = 0.5 * h / a[p * n + q];
                        t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                        if (theta < 0.0) t = -t;
                    }
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);
                    h = t * a[p * n + q];
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[p * n + q] = 0.0;
                    for (std::size_t k = 0; k < p; ++k) rotate(a, k, p, k, q, s, tau);
                    for (std::size_t k = p + 1; k < q; ++k) rotate(a, p, k, k, q, s, tau);
                    for (std::size_t k = q + 1; k < n; ++k) rotate(a, p, k, q, k, s, tau);
                    for (std::size_t k = 0; k < n; ++k) rotate(v, k, p, k, q, s, tau);
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    throw std::runtime_error("jacobi_eigensolve: no convergence in 100 sweeps");
}

}  // namespace detail

// Deterministic full diagonalization. Eigenvalues ascend; each eigenvector
// column has its largest-magnitude entry made positive so repeated runs are
// bit-identical.
inline SpectralDecomposition spectral_decompose(const HamiltonianBlock& h) {
    const std::size_t n = h.dimension();
    const double scale = std::max(h.max_abs_entry(), 1.0);
    if (h.max_asymmetry() > 1e-12 * scale)
        throw std::invalid_argument("spectral_decompose: matrix violates symmetry");

    std::vector<double> work = h.entries();
    std::vector<double> d, v;
    detail::jacobi_eigensolve(work, n, d, v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    SpectralDecomposition out;
    out.dimension = n;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = d[src];
        std::size_t lead = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v[i * n + src]) > std::abs(v[lead * n + src])) lead = i;
        const double sign = v[lead * n + src] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[i * n + j] = sign * v[i * n + src];
    }
    return out;
}

// psi(t) = sum_j e^{-i lambda_j t} v_j (v_j^T psi0), hbar = 1.
inline WaveFunction evolve(const SpectralDecomposition& decomp, const WaveFunction& psi0,
                           double t) {
    const std::size_t n = decomp.dimension;
    if (psi0.size() != n)
        throw std::invalid_argument("evolve: state dimension does not match decomposition");
    if (t == 0.0) return psi0;

    std::vector<Complex> modes(n, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        Complex c{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) c += decomp.eigenvector(i, j) * psi0[i];
        modes[j] = c * std::polar(1.0, -decomp.eigenvalues[j] * t);
    }
    WaveFunction out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) s += decomp.eigenvector(i, j) * modes[j];
        out[i] = s;
    }
    return out;
}

inline WaveFunction apply_hamiltonian(const HamiltonianBlock& h, const WaveFunction& psi) {
    const std::size_t n = h.dimension();
    if (psi.size() != n)
        throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
    WaveFunction out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) s += h.at(i, j) * psi[j];
        out[i] = s;
    }
    return out;
}

}  // namespace spinnet
