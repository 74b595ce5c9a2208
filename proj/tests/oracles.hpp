// oracles.hpp — test-only reference implementations, deliberately
// independent of the library's spectral-decomposition path:
//   * expm_evolve: scaling-and-squaring matrix exponential e^{-iHt}
//   * wootters_concurrence: the full Wootters formula on the 4x4 two-site
//     reduced density matrix, via a complex Hermitian Jacobi eigensolver
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spinnet/hamiltonian.hpp"
#include "spinnet/wavefunction.hpp"

namespace oracles {

using spinnet::Complex;

struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<Complex> a;

    explicit ComplexMatrix(std::size_t size) : n(size), a(size * size, Complex{0.0, 0.0}) {}

    Complex& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static ComplexMatrix identity(std::size_t size) {
        ComplexMatrix m(size);
        for (std::size_t i = 0; i < size; ++i) m.at(i, i) = Complex{1.0, 0.0};
        return m;
    }
};

inline ComplexMatrix multiply(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            const Complex xik = x.at(i, k);
            if (xik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) += xik * y.at(k, j);
        }
    return out;
}

inline double max_abs(const ComplexMatrix& m) {
    double v = 0.0;
    for (const Complex& c : m.a) v = std::max(v, std::abs(c));
    return v;
}

// e^{-iHt} psi by scaling and squaring with a Taylor kernel. Slow and
// simple; dimensions stay tiny in the tests.
inline spinnet::WaveFunction expm_evolve(const spinnet::HamiltonianBlock& h,
                                         const spinnet::WaveFunction& psi, double t) {
    const std::size_t n = h.dimension();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Complex{0.0, -t * h.at(i, j)};

    int squarings = 0;
    double scale = max_abs(m) * static_cast<double>(n);
    while (scale > 0.5 && squarings < 60) {
        scale /= 2.0;
        ++squarings;
    }
    const double factor = std::ldexp(1.0, -squarings);
    for (Complex& c : m.a) c *= factor;

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = multiply(term, m);
        for (Complex& c : term.a) c /= static_cast<double>(k);
        for (std::size_t i = 0; i < result.a.size(); ++i) result.a[i] += term.a[i];
        if (max_abs(term) < 1e-24) break;
    }
    for (int k = 0; k < squarings; ++k) result = multiply(result, result);

    spinnet::WaveFunction out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) s += result.at(i, j) * psi[j];
        out[i] = s;
    }
    return out;
}

struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;  // column j pairs with values[j]
};

// Cyclic Jacobi with complex rotations for Hermitian matrices.
inline HermitianEigen hermitian_eigensolve(ComplexMatrix a) {
    const std::size_t n = a.n;
    ComplexMatrix v = ComplexMatrix::identity(n);
    double scale = 0.0;
    for (const Complex& c : a.a) scale = std::max(scale, std::abs(c));
    scale = std::max(scale, 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a.at(p, q));
        if (off <= 1e-15 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a.at(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-18 * scale) continue;
                const Complex phase = apq / r;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double tan_theta;
                if (tau >= 0.0)
                    tan_theta = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    tan_theta = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tan_theta * tan_theta);
                const double s = tan_theta * c;

                for (std::size_t k = 0; k < n; ++k) {  // A <- A J
                    const Complex akp = a.at(k, p);
                    const Complex akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * std::conj(phase) * akq;
                    a.at(k, q) = s * phase * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^H A
                    const Complex apk = a.at(p, k);
                    const Complex aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * phase * aqk;
                    a.at(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {  // V <- V J
                    const Complex vkp = v.at(k, p);
                    const Complex vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * std::conj(phase) * vkq;
                    v.at(k, q) = s * phase * vkp + c * vkq;
                }
            }
        }
    }

    HermitianEigen eigen{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) eigen.values[j] = a.at(j, j).real();
    eigen.vectors = v;
    return eigen;
}

// Wootters concurrence of the reduced state of sites (i, j), built from the
// full pure state by tracing everything else out. Basis order |00>, |01>,
// |10>, |11> with the first slot belonging to site i.
//
// The spin-flip eigenvalue roots sqrt(lambda_k) of rho*rho_tilde are
// evaluated as the singular values of M^T (sigma_y x sigma_y) M, where M is
// the 4 x d purification factor with rho = M M^H. This is the same Wootters
// formula; taking square roots of near-zero eigenvalues directly would blow
// eps-sized noise up to ~1e-8, while singular values carry absolute error
// on the order of machine epsilon.
inline double wootters_concurrence(const spinnet::WaveFunction& psi, std::size_t i,
                                   std::size_t j) {
    if (i == j || i >= psi.size() || j >= psi.size())
        throw std::invalid_argument("wootters_concurrence: bad site pair");
    const std::size_t n = psi.size();

    // Purification factor: columns index the environment basis, column 0 the
    // all-up rest, then one column per excitation site k outside {i, j}.
    const std::size_t env_dim = n - 1;
    std::vector<std::vector<Complex>> m(4, std::vector<Complex>(env_dim, Complex{0.0, 0.0}));
    m[1][0] = psi[j];  // |01>: excitation on site j, rest vacuum
    m[2][0] = psi[i];  // |10>: excitation on site i
    std::size_t column = 1;
    for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) m[0][column++] = psi[k];  // |00> (x) |1_k>

    // Reduced density matrix rho = M M^H, checked against the direct
    // partial-trace expressions.
    ComplexMatrix rho(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            Complex s{0.0, 0.0};
            for (std::size_t e = 0; e < env_dim; ++e) s += m[r][e] * std::conj(m[c][e]);
            rho.at(r, c) = s;
        }
    double rest = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) rest += std::norm(psi[k]);
    if (std::abs(rho.at(0, 0).real() - rest) > 1e-14 ||
        std::abs(rho.at(1, 1).real() - std::norm(psi[j])) > 1e-14 ||
        std::abs(rho.at(2, 2).real() - std::norm(psi[i])) > 1e-14 ||
        std::abs(rho.at(1, 2) - psi[j] * std::conj(psi[i])) > 1e-14 ||
        std::abs(rho.at(3, 3)) != 0.0)
        throw std::logic_error("wootters_concurrence: purification factor mismatch");

    // C = M^T (sigma_y x sigma_y) M, complex symmetric, d x d.
    // sigma_y x sigma_y maps (00,01,10,11) -> (-11, 10, 01, -00).
    ComplexMatrix flip(env_dim);
    for (std::size_t a = 0; a < env_dim; ++a)
        for (std::size_t b = 0; b < env_dim; ++b)
            flip.at(a, b) = -m[0][a] * m[3][b] + m[1][a] * m[2][b] + m[2][a] * m[1][b] -
                            m[3][a] * m[0][b];

    // Singular values through the Hermitian embedding [[0, C], [C^H, 0]],
    // whose spectrum is {+-sigma_k}.
    ComplexMatrix embedding(2 * env_dim);
    for (std::size_t a = 0; a < env_dim; ++a)
        for (std::size_t b = 0; b < env_dim; ++b) {
            embedding.at(a, env_dim + b) = flip.at(a, b);
            embedding.at(env_dim + a, b) = std::conj(flip.at(b, a));
        }
    HermitianEigen eigen = hermitian_eigensolve(embedding);
    std::vector<double> magnitudes(eigen.values.size());
    for (std::size_t k = 0; k < magnitudes.size(); ++k)
        magnitudes[k] = std::abs(eigen.values[k]);
    std::sort(magnitudes.begin(), magnitudes.end(), std::greater<double>());

    double roots[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < 4 && 2 * k < magnitudes.size(); ++k)
        roots[k] = magnitudes[2 * k];  // each singular value appears as a +- pair
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

}  // namespace oracles
