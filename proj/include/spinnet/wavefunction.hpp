// wavefunction.hpp — complex amplitudes over the single-excitation site basis.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace spinnet {

using Complex = std::complex<double>;

// One complex amplitude per network node. |k⟩ is the state with the
// excitation on node k; anything outside the single-excitation sector is
// represented only by the all-zero "vacuum" vector (see MeasurementRecord).
struct WaveFunction {
    std::vector<Complex> amplitudes;

    WaveFunction() = default;
    explicit WaveFunction(std::size_t n) : amplitudes(n) {}
    WaveFunction(std::initializer_list<Complex> init) : amplitudes(init) {}

    std::size_t size() const { return amplitudes.size(); }

    Complex& operator[](std::size_t k) { return amplitudes[k]; }
    const Complex& operator[](std::size_t k) const { return amplitudes[k]; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }

    double norm() const { return std::sqrt(norm_squared()); }
};

inline Complex inner_product(const WaveFunction& bra, const WaveFunction& ket) {
    if (bra.size() != ket.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < bra.size(); ++k) s += std::conj(bra[k]) * ket[k];
    return s;
}

}  // namespace spinnet
