#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "umebmub/umebmub.hpp"

namespace umebmub::testing {

inline Complex gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

inline Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(r, c);
    for (auto& z : m.data()) z = gaussian(rng);
    return m;
}

/// Haar-like unitary from Gram-Schmidt on Gaussian columns.
inline Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    Matrix m = random_matrix(n, n, rng);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            Complex ip{};
            for (std::size_t r = 0; r < n; ++r) ip += std::conj(m(r, p)) * m(r, c);
            for (std::size_t r = 0; r < n; ++r) m(r, c) -= ip * m(r, p);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < n; ++r) nrm += std::norm(m(r, c));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < n; ++r) m(r, c) /= nrm;
    }
    return m;
}

inline BipartiteState random_state(int d, std::mt19937_64& rng) {
    std::vector<Complex> amp(static_cast<std::size_t>(2 * d));
    for (auto& z : amp) z = gaussian(rng);
    return BipartiteState::normalized(d, std::move(amp));
}

inline MubPairSpec random_spec(int d, std::mt19937_64& rng) {
    return {d, random_unitary(2, rng), random_unitary(static_cast<std::size_t>(d), rng)};
}

/// Real Hadamard-matrix spec with diagonal S at phases (phi1, phi2) and a
/// random sign orbit of the Sylvester matrix.
inline MubPairSpec random_hadamard_spec(int d, double phi1, double phi2, std::mt19937_64& rng) {
    auto h = sylvester_hadamard(d);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<int> rs(static_cast<std::size_t>(d)), cs(static_cast<std::size_t>(d));
    for (auto& v : rs) v = coin(rng) ? -1 : 1;
    for (auto& v : cs) v = coin(rng) ? -1 : 1;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) h[r * d + c] *= rs[r] * cs[c];
    return {d, diagonal_phase_S(phi1, phi2), scaled_sign_matrix(h, d)};
}

inline std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x * y);
    return out;
}

}  // namespace umebmub::testing
