#pragma once

// Pure states on C^2 (x) C^d with their Schmidt pair. The second half is a
// numeric certificate that an orthonormal set admits no maximally entangled
// extension.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "umebmub/linalg.hpp"
#include "umebmub/report.hpp"

namespace umebmub {

/// Raised for malformed or non-normalized state data.
class StateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Slack for the unit-norm invariant of stored states. Looser than the
/// verification tolerance so that JSON round trips and long products pass.
inline constexpr double kNormSlack = 1e-8;

class BipartiteState {
public:
    BipartiteState(int d, std::vector<Complex> amplitudes) : d_(d), amp_(std::move(amplitudes)) {
        if (d < 2) throw StateError("second factor dimension must be >= 2, got " + std::to_string(d));
        if (amp_.size() != static_cast<std::size_t>(2 * d)) {
            throw StateError("state on C^2 x C^" + std::to_string(d) + " needs " +
                             std::to_string(2 * d) + " amplitudes, got " +
                             std::to_string(amp_.size()));
        }
        const double n = norm(amp_);
        if (std::abs(n - 1.0) > kNormSlack) {
            throw StateError("state is not normalized (norm " + std::to_string(n) + ")");
        }
    }

    /// |a>|j'>
    static BipartiteState basis_vector(int d, int a, int j) {
        std::vector<Complex> amp(static_cast<std::size_t>(2 * d));
        amp.at(static_cast<std::size_t>(a * d + j)) = 1.0;
        return {d, std::move(amp)};
    }

    /// Scales a nonzero vector to unit norm before constructing the state.
    static BipartiteState normalized(int d, std::vector<Complex> amplitudes) {
        const double n = norm(amplitudes);
        if (!(n > 0.0)) throw StateError("cannot normalize the zero vector");
        for (auto& z : amplitudes) z /= n;
        return {d, std::move(amplitudes)};
    }

    [[nodiscard]] int d() const noexcept { return d_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amp_; }
    [[nodiscard]] Complex at(int a, int j) const { return amp_[static_cast<std::size_t>(a * d_ + j)]; }

    friend bool operator==(const BipartiteState&, const BipartiteState&) = default;

private:
    int d_;
    std::vector<Complex> amp_;
};

inline Complex inner_product(const BipartiteState& u, const BipartiteState& v) {
    if (u.d() != v.d()) {
        throw DimensionError("states live on C^2 x C^" + std::to_string(u.d()) + " and C^2 x C^" +
                             std::to_string(v.d()));
    }
    return inner_product(u.amplitudes(), v.amplitudes());
}

/// The 2 x d matrix M with M[a, j] = amplitude on |a>|j'>.
inline Matrix coefficient_matrix(const BipartiteState& s) {
    const auto d = static_cast<std::size_t>(s.d());
    return Matrix(2, d, std::vector<Complex>(s.amplitudes().begin(), s.amplitudes().end()));
}

/// Schmidt coefficients, lambda1 >= lambda2 >= 0.
struct SchmidtPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

namespace detail {

// Entries of the 2x2 Hermitian G = M M^dagger from a 2 x d amplitude block.
struct Gram2 {
    double g00 = 0.0;
    double g11 = 0.0;
    Complex g01{};

    [[nodiscard]] double det() const { return g00 * g11 - std::norm(g01); }
};

inline Gram2 gram2(std::span<const Complex> amp, std::size_t d) {
    Gram2 g;
    for (std::size_t j = 0; j < d; ++j) {
        const Complex x = amp[j];
        const Complex y = amp[d + j];
        g.g00 += std::norm(x);
        g.g11 += std::norm(y);
        g.g01 += x * std::conj(y);
    }
    return g;
}

}  // namespace detail

/// Closed form from the eigenvalues of G = M M^dagger:
///   lambda^2 = (tr G +- sqrt(tr^2 G - 4 det G)) / 2.
/// The discriminant is evaluated as sqrt((G00 - G11)^2 + 4|G01|^2), which is
/// the same quantity without cancellation near lambda1 = lambda2.
inline SchmidtPair schmidt_coefficients(const BipartiteState& s) {
    const auto g = detail::gram2(s.amplitudes(), static_cast<std::size_t>(s.d()));
    const double tr = g.g00 + g.g11;
    const double diff = g.g00 - g.g11;
    const double disc = std::sqrt(diff * diff + 4.0 * std::norm(g.g01));
    const double big = 0.5 * (tr + disc);
    const double small = std::max(0.0, 0.5 * (tr - disc));
    return {std::sqrt(big), std::sqrt(small)};
}

/// det(M M^dagger) = lambda1^2 lambda2^2; at most 1/4, with equality exactly
/// for maximally entangled states.
inline double entanglement_determinant(const BipartiteState& s) {
    return detail::gram2(s.amplitudes(), static_cast<std::size_t>(s.d())).det();
}

inline bool is_maximally_entangled(const BipartiteState& s, Tolerance tol = {}) {
    const auto p = schmidt_coefficients(s);
    const double target = std::numbers::sqrt2 / 2.0;
    return std::abs(p.lambda1 - target) <= tol.eps() && std::abs(p.lambda2 - target) <= tol.eps();
}

/// Orthonormal basis of a subspace of C^2 (x) C^d.
struct Subspace {
    int d = 2;
    std::vector<BipartiteState> basis;

    [[nodiscard]] std::size_t dim() const noexcept { return basis.size(); }

    static Subspace full(int d) {
        Subspace s{d, {}};
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < d; ++j) s.basis.push_back(BipartiteState::basis_vector(d, a, j));
        return s;
    }
};

/// Largest |<u_i|u_j> - delta_ij| over the list, with the offending pair.
struct GramDefect {
    double deviation = 0.0;
    int i = 0;
    int j = 0;
};

inline GramDefect gram_defect(std::span<const BipartiteState> states) {
    GramDefect worst;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i; j < states.size(); ++j) {
            const Complex ip = inner_product(states[i], states[j]);
            const double dev = std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0.0));
            if (dev > worst.deviation) worst = {dev, static_cast<int>(i), static_cast<int>(j)};
        }
    return worst;
}

/// Completes `states` to an orthonormal basis of C^{2d} by Gram-Schmidt
/// against e_0, e_1, ... in order and returns the added vectors.
inline Subspace orthogonal_complement(int d, std::span<const BipartiteState> states,
                                      Tolerance tol = {}) {
    const auto dim = static_cast<std::size_t>(2 * d);
    for (const auto& s : states) {
        if (s.d() != d) {
            throw DimensionError("orthogonal_complement: state on C^2 x C^" + std::to_string(s.d()) +
                                 " in a C^2 x C^" + std::to_string(d) + " set");
        }
    }
    if (states.size() > dim) {
        throw DimensionError("orthogonal_complement: " + std::to_string(states.size()) +
                             " vectors exceed dimension " + std::to_string(dim));
    }
    if (const auto g = gram_defect(states); g.deviation > tol.eps()) {
        throw StateError("orthogonal_complement: input is not orthonormal (pair " +
                         std::to_string(g.i) + "," + std::to_string(g.j) + " deviates by " +
                         std::to_string(g.deviation) + ")");
    }

    std::vector<std::vector<Complex>> q;
    q.reserve(dim);
    for (const auto& s : states) q.emplace_back(s.amplitudes().begin(), s.amplitudes().end());

    Subspace out{d, {}};
    constexpr double kAcceptResidual = 1e-6;
    for (std::size_t k = 0; k < dim && q.size() < dim; ++k) {
        std::vector<Complex> v(dim);
        v[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : q) {
                const Complex c = inner_product(u, v);
                for (std::size_t t = 0; t < dim; ++t) v[t] -= c * u[t];
            }
        }
        const double n = norm(v);
        if (n < kAcceptResidual) continue;
        for (auto& z : v) z /= n;
        q.push_back(v);
        out.basis.emplace_back(d, std::move(v));
    }
    if (out.dim() + states.size() != dim) {
        throw std::logic_error("orthogonal_complement: completion produced the wrong dimension");
    }
    return out;
}

inline Subspace orthogonal_complement(std::span<const BipartiteState> states, Tolerance tol = {}) {
    if (states.empty()) throw StateError("orthogonal_complement: empty input, dimension unknown");
    return orthogonal_complement(states.front().d(), states, tol);
}

struct OptimizerConfig {
    int starts = 64;
    double refine_tol = 1e-9;
    double certify_margin = 1e-6;
    int max_iters = 500;
    std::uint64_t seed = 0x5eedf00dULL;
};

namespace detail {

// det(M M^dagger) on the unit sphere of a subspace, in subspace coordinates.
class SubspaceObjective {
public:
    explicit SubspaceObjective(const Subspace& sub)
        : d_(static_cast<std::size_t>(sub.d)), k_(sub.dim()) {
        basis_.reserve(k_);
        for (const auto& s : sub.basis) basis_.emplace_back(s.amplitudes().begin(), s.amplitudes().end());
    }

    [[nodiscard]] std::size_t dim() const noexcept { return k_; }

    [[nodiscard]] std::vector<Complex> embed(std::span<const Complex> c) const {
        std::vector<Complex> v(2 * d_);
        for (std::size_t i = 0; i < k_; ++i)
            for (std::size_t t = 0; t < 2 * d_; ++t) v[t] += c[i] * basis_[i][t];
        return v;
    }

    [[nodiscard]] double value(std::span<const Complex> c) const {
        const auto v = embed(c);
        return gram2(v, d_).det();
    }

    // Riemannian gradient of det(M M^dagger) at unit c, projected on the
    // tangent space of the sphere.
    [[nodiscard]] std::vector<Complex> gradient(std::span<const Complex> c) const {
        const auto v = embed(c);
        const auto g = gram2(v, d_);
        // A = adj(G) M with adj(G) = [[G11, -G01], [-conj(G01), G00]].
        std::vector<Complex> a(2 * d_);
        for (std::size_t j = 0; j < d_; ++j) {
            a[j] = g.g11 * v[j] - g.g01 * v[d_ + j];
            a[d_ + j] = -std::conj(g.g01) * v[j] + g.g00 * v[d_ + j];
        }
        std::vector<Complex> grad(k_);
        for (std::size_t i = 0; i < k_; ++i) grad[i] = inner_product(basis_[i], a);
        const Complex radial = inner_product(c, grad);
        for (std::size_t i = 0; i < k_; ++i) grad[i] -= radial * c[i];
        return grad;
    }

private:
    std::size_t d_;
    std::size_t k_;
    std::vector<std::vector<Complex>> basis_;
};

inline void normalize_in_place(std::vector<Complex>& c) {
    const double n = norm(c);
    for (auto& z : c) z /= n;
}

// Adaptive-step projected gradient ascent from a unit starting point.
inline double ascend(const SubspaceObjective& f, std::vector<Complex> c, const OptimizerConfig& cfg) {
    normalize_in_place(c);
    double fc = f.value(c);
    double step = 1.0;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const auto g = f.gradient(c);
        if (norm(g) < cfg.refine_tol) break;
        bool improved = false;
        while (step > 1e-14) {
            std::vector<Complex> trial(c);
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += step * g[i];
            normalize_in_place(trial);
            const double ft = f.value(trial);
            if (ft > fc) {
                c = std::move(trial);
                fc = ft;
                step *= 1.5;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return fc;
}

}  // namespace detail

/// Lower-bound estimate of sup det(M_v M_v^dagger) over unit v in the
/// subspace. The supremum reaches 1/4 exactly when the subspace holds a
/// maximally entangled vector.
inline double max_entanglement_in_subspace(const Subspace& sub, const OptimizerConfig& cfg = {}) {
    if (sub.dim() == 0) throw DimensionError("max_entanglement_in_subspace: empty subspace");
    const detail::SubspaceObjective f(sub);
    const std::size_t k = f.dim();
    if (k == 1) return f.value(std::vector<Complex>{1.0});

    std::vector<std::vector<Complex>> starts;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Complex> e(k);
        e[i] = 1.0;
        starts.push_back(std::move(e));
    }
    if (k == 2) {
        // Coarse grid over (cos t, e^{i p} sin t); its best point seeds a start.
        constexpr int kGrid = 64;
        double best = -1.0;
        std::vector<Complex> arg;
        for (int a = 0; a <= kGrid; ++a) {
            const double t = 0.5 * kPi * a / kGrid;
            for (int b = 0; b < kGrid; ++b) {
                const double p = 2.0 * kPi * b / kGrid;
                std::vector<Complex> c{std::cos(t), std::polar(std::sin(t), p)};
                const double v = f.value(c);
                if (v > best) {
                    best = v;
                    arg = std::move(c);
                }
            }
        }
        starts.push_back(std::move(arg));
    }
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    for (int s = 0; s < cfg.starts; ++s) {
        std::vector<Complex> c(k);
        for (auto& z : c) z = {gauss(rng), gauss(rng)};
        starts.push_back(std::move(c));
    }

    double best = 0.0;
    for (auto& s : starts) best = std::max(best, detail::ascend(f, std::move(s), cfg));
    return best;
}

/// Checks the defining clauses of an unextendible maximally entangled set.
/// Clause order in the report: entanglement of each member, orthonormality,
/// absence of a maximally entangled vector in the complement.
inline VerificationReport verify_umeb(std::span<const BipartiteState> states, Tolerance tol = {},
                                      const OptimizerConfig& cfg = {}) {
    if (states.empty()) throw StateError("verify_umeb: empty state list");
    const int d = states.front().d();
    for (const auto& s : states) {
        if (s.d() != d) throw DimensionError("verify_umeb: states of mixed dimension");
    }
    const double half = std::numbers::sqrt2 / 2.0;

    VerificationReport entangled{.criterion = "maximally_entangled", .target_value = half,
                                 .worst_index = {0}, .tolerance = tol.eps()};
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto p = schmidt_coefficients(states[i]);
        const double dev = std::max(std::abs(p.lambda1 - half), std::abs(p.lambda2 - half));
        if (dev > entangled.max_abs_deviation) {
            entangled.max_abs_deviation = dev;
            entangled.worst_index = {static_cast<int>(i)};
        }
    }
    entangled.passed = entangled.max_abs_deviation <= tol.eps();

    const auto g = gram_defect(states);
    VerificationReport orthonormal{.passed = g.deviation <= tol.eps(), .criterion = "orthonormal",
                                   .target_value = 0.0, .max_abs_deviation = g.deviation,
                                   .worst_index = {g.i, g.j}, .tolerance = tol.eps()};

    const double threshold = 0.25 - cfg.certify_margin;
    VerificationReport unextendible{.criterion = "unextendible", .target_value = 0.25,
                                    .tolerance = threshold};
    const auto full_dim = static_cast<std::size_t>(2 * d);
    if (states.size() >= full_dim) {
        unextendible.passed = orthonormal.passed;
        unextendible.note = "vacuous: the set spans the whole space, complement is {0}";
    } else if (!orthonormal.passed) {
        unextendible.passed = false;
        unextendible.max_abs_deviation = std::numeric_limits<double>::quiet_NaN();
        unextendible.note = "not evaluated: input is not orthonormal";
    } else {
        const auto complement = orthogonal_complement(d, states, tol);
        unextendible.max_abs_deviation = max_entanglement_in_subspace(complement, cfg);
        unextendible.passed = unextendible.max_abs_deviation <= threshold;
        unextendible.worst_index = {static_cast<int>(complement.dim())};
        unextendible.note = "max det(M M^dagger) over the " + std::to_string(complement.dim()) +
                            "-dimensional complement; 1/4 means a maximally entangled vector exists";
    }

    VerificationReport report{.criterion = "umeb", .target_value = 0.25, .tolerance = tol.eps()};
    report.passed = entangled.passed && orthonormal.passed && unextendible.passed;
    report.max_abs_deviation = std::max(entangled.max_abs_deviation, orthonormal.max_abs_deviation);
    report.note = report.passed ? "all three clauses hold" : "at least one clause fails";
    report.clauses = {std::move(entangled), std::move(orthonormal), std::move(unextendible)};
    return report;
}

}  // namespace umebmub
