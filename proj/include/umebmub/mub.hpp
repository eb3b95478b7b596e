#pragma once

// Second basis psi_{n,m} = (S (x) W) phi_{n,m}, tested for mutual
// unbiasedness against complete_basis(d) by independent routes:
//   verify_pair_direct   all (2d)^2 overlaps have modulus 1/sqrt(2d)
//   transformed_matrix   F^dagger (S (x) W) F has constant modulus
//   theorem_conditions   nine entrywise families on s_kl, w_st
// corollary_check is the phase-level filter for diagonal S.
//
// Symbolic indices s_kl, w_st are 1-based; everything stored here is
// 0-based, so w_{s,t} lives at W(s-1, t-1).

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "umebmub/bases.hpp"
#include "umebmub/linalg.hpp"
#include "umebmub/report.hpp"

namespace umebmub {

/// Raised for a pair spec whose S or W is malformed or not unitary.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct MubPairSpec {
    int d = 3;
    Matrix S;
    Matrix W;
};

inline void validate(const MubPairSpec& spec, Tolerance tol = {}) {
    if (spec.d < 3) throw ConstructionError("pair spec needs d >= 3, got d = " + std::to_string(spec.d));
    if (spec.S.rows() != 2 || spec.S.cols() != 2) throw SpecError("S must be 2x2, got " + spec.S.shape());
    const auto d = static_cast<std::size_t>(spec.d);
    if (spec.W.rows() != d || spec.W.cols() != d) {
        throw SpecError("W must be " + Matrix::shape_string(d, d) + ", got " + spec.W.shape());
    }
    if (const double e = unitarity_defect(spec.S); e > tol.eps()) {
        throw SpecError("S is not unitary (max |S^dagger S - I| = " + std::to_string(e) + ")");
    }
    if (const double e = unitarity_defect(spec.W); e > tol.eps()) {
        throw SpecError("W is not unitary (max |W^dagger W - I| = " + std::to_string(e) + ")");
    }
}

inline BasisSet build_second_basis(const MubPairSpec& spec, Tolerance tol = {}) {
    validate(spec, tol);
    const Matrix local = tensor_product(spec.S, spec.W);
    const auto first = complete_basis(spec.d);
    std::vector<BipartiteState> states;
    states.reserve(first.size());
    for (const auto& s : first.states()) states.emplace_back(spec.d, apply(local, s.amplitudes()));
    return {spec.d, first.labels(), std::move(states)};
}

inline double unbiased_overlap(int d) { return 1.0 / std::sqrt(2.0 * d); }

inline VerificationReport verify_pair_direct(const BasisSet& a, const BasisSet& b, Tolerance tol = {}) {
    if (a.d() != b.d()) {
        throw DimensionError("verify_pair_direct: bases on C^2 x C^" + std::to_string(a.d()) +
                             " and C^2 x C^" + std::to_string(b.d()));
    }
    if (!a.is_full() || !b.is_full()) {
        throw DimensionError("verify_pair_direct: both bases must have 2d = " +
                             std::to_string(2 * a.d()) + " members");
    }
    VerificationReport r{.criterion = "mub_direct", .target_value = unbiased_overlap(a.d()),
                         .tolerance = tol.eps()};
    r.worst_index = {a.labels()[0].n, a.labels()[0].m, b.labels()[0].n, b.labels()[0].m};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double dev = std::abs(std::abs(inner_product(a.state(i), b.state(j))) - r.target_value);
            if (dev > r.max_abs_deviation) {
                r.max_abs_deviation = dev;
                r.worst_index = {a.labels()[i].n, a.labels()[i].m, b.labels()[j].n, b.labels()[j].m};
            }
        }
    r.passed = r.max_abs_deviation <= tol.eps();
    return r;
}

/// S (x) W expressed in the completed basis: F^dagger (S (x) W) F.
inline Matrix transformed_matrix(const MubPairSpec& spec, Tolerance tol = {}) {
    validate(spec, tol);
    const Matrix f = build_F(spec.d);
    return adjoint(f) * tensor_product(spec.S, spec.W) * f;
}

/// Passes when every entry of the n x n matrix has modulus 1/sqrt(n).
inline VerificationReport constant_modulus_check(const Matrix& t, Tolerance tol = {}) {
    if (!t.is_square()) throw DimensionError("constant_modulus_check: " + t.shape() + " is not square");
    VerificationReport r{.criterion = "transformed_matrix_constant_modulus",
                         .target_value = 1.0 / std::sqrt(static_cast<double>(t.rows())),
                         .worst_index = {0, 0}, .tolerance = tol.eps()};
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) {
            const double dev = std::abs(std::abs(t(i, j)) - r.target_value);
            if (dev > r.max_abs_deviation) {
                r.max_abs_deviation = dev;
                r.worst_index = {static_cast<int>(i), static_cast<int>(j)};
            }
        }
    r.passed = r.max_abs_deviation <= tol.eps();
    return r;
}

inline VerificationReport transformed_matrix_check(const MubPairSpec& spec, Tolerance tol = {}) {
    return constant_modulus_check(transformed_matrix(spec, tol), tol);
}

// ---------------------------------------------------------------------------
// Entrywise conditions on S and W

/// One instance of an entrywise condition
///   | s11 w[x0] + (-1)^a s21 w[x1] + (-1)^b s12 w[x2] + (-1)^c s22 w[x3] |
/// with 0-based (row, col) positions x0..x3 into W.
struct TheoremCondition {
    int family = 1;  // 1..9
    int a = 0, b = 0, c = 0;
    int k = 0, j = 0;  // 1-based loop indices, 0 where the family has none
    std::array<std::array<int, 2>, 4> w{};
};

inline constexpr std::array<std::array<int, 3>, 4> kSignTriples{{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};

/// Every instance of the nine families for dimension d, k and j ranging over
/// 1..d-2.
inline std::vector<TheoremCondition> theorem_condition_list(int d) {
    if (d < 3) throw ConstructionError("theorem conditions need d >= 3, got " + std::to_string(d));
    const int last = d - 1;
    const int pen = d - 2;
    std::vector<TheoremCondition> out;
    auto emit = [&](int family, int k, int j, std::array<std::array<int, 2>, 4> w) {
        for (const auto& t : kSignTriples) out.push_back({family, t[0], t[1], t[2], k, j, w});
    };
    for (int k = 1; k <= d - 2; ++k)
        for (int j = 1; j <= d - 2; ++j) {
            const int r = k - 1, c = j - 1;
            emit(1, k, j, {{{r, c}, {r + 1, c}, {r, c + 1}, {r + 1, c + 1}}});
        }
    for (int k = 1; k <= d - 2; ++k) {
        const int r = k - 1;
        emit(2, k, 0, {{{r, last}, {r + 1, last}, {r, last}, {r + 1, last}}});
    }
    for (int j = 1; j <= d - 2; ++j) {
        const int c = j - 1;
        emit(3, 0, j, {{{last, c}, {last, c}, {last, c + 1}, {last, c + 1}}});
    }
    for (int j = 1; j <= d - 2; ++j) {
        const int c = j - 1;
        emit(4, 0, j, {{{pen, c}, {0, c}, {pen, c + 1}, {0, c + 1}}});
    }
    for (int k = 1; k <= d - 2; ++k) {
        const int r = k - 1;
        emit(5, k, 0, {{{r, pen}, {r + 1, pen}, {r, 0}, {r + 1, 0}}});
    }
    emit(6, 0, 0, {{{pen, pen}, {0, pen}, {pen, 0}, {0, 0}}});
    emit(7, 0, 0, {{{pen, last}, {0, last}, {pen, last}, {0, last}}});
    emit(8, 0, 0, {{{last, pen}, {last, pen}, {last, 0}, {last, 0}}});
    emit(9, 0, 0, {{{last, last}, {last, last}, {last, last}, {last, last}}});
    return out;
}

inline double theorem_lhs(const MubPairSpec& spec, const TheoremCondition& c) {
    auto w = [&](int i) { return spec.W(static_cast<std::size_t>(c.w[i][0]), static_cast<std::size_t>(c.w[i][1])); };
    auto sign = [](int e) { return e ? -1.0 : 1.0; };
    const Complex sum = spec.S(0, 0) * w(0) + sign(c.a) * spec.S(1, 0) * w(1) +
                        sign(c.b) * spec.S(0, 1) * w(2) + sign(c.c) * spec.S(1, 1) * w(3);
    return std::abs(sum);
}

/// Target of every left-hand side: twice the unbiased entry modulus,
/// 2 / sqrt(2d) = sqrt(2/d) (1/sqrt(2) at d = 4).
inline double theorem_target(int d) { return std::sqrt(2.0 / d); }

/// worst_index = [family, a, b, c, k, j].
inline VerificationReport theorem_conditions(const MubPairSpec& spec, Tolerance tol = {}) {
    validate(spec, tol);
    VerificationReport r{.criterion = "theorem_conditions", .target_value = theorem_target(spec.d),
                         .tolerance = tol.eps()};
    const auto conds = theorem_condition_list(spec.d);
    r.worst_index = {conds[0].family, conds[0].a, conds[0].b, conds[0].c, conds[0].k, conds[0].j};
    for (const auto& c : conds) {
        const double dev = std::abs(theorem_lhs(spec, c) - r.target_value);
        if (dev > r.max_abs_deviation) {
            r.max_abs_deviation = dev;
            r.worst_index = {c.family, c.a, c.b, c.c, c.k, c.j};
        }
    }
    r.passed = r.max_abs_deviation <= tol.eps();
    return r;
}

// ---------------------------------------------------------------------------
// Phase parameterization for diagonal S

/// s11 = e^{i phi1}, s22 = e^{i phi2}, w_st = r_st e^{i theta_st}; r and
/// theta are d x d row-major.
struct PhaseSpec {
    int d = 3;
    double phi1 = 0.0;
    double phi2 = 0.0;
    std::vector<double> r;
    std::vector<double> theta;

    [[nodiscard]] double r_at(int s, int t) const { return r.at(static_cast<std::size_t>(s * d + t)); }
    [[nodiscard]] double theta_at(int s, int t) const {
        return theta.at(static_cast<std::size_t>(s * d + t));
    }
};

inline void check_well_formed(const PhaseSpec& ps) {
    if (ps.d < 3) throw ConstructionError("phase spec needs d >= 3, got d = " + std::to_string(ps.d));
    const auto n = static_cast<std::size_t>(ps.d * ps.d);
    if (ps.r.size() != n || ps.theta.size() != n) {
        throw DimensionError("phase spec r/theta must each hold d*d = " + std::to_string(n) + " values");
    }
}

inline MubPairSpec to_pair_spec(const PhaseSpec& ps) {
    check_well_formed(ps);
    const auto d = static_cast<std::size_t>(ps.d);
    Matrix s(2, 2);
    s(0, 0) = std::polar(1.0, ps.phi1);
    s(1, 1) = std::polar(1.0, ps.phi2);
    Matrix w(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w(i, j) = std::polar(ps.r[i * d + j], ps.theta[i * d + j]);
    return {ps.d, std::move(s), std::move(w)};
}

/// Reads phases off a spec whose S is diagonal.
inline PhaseSpec to_phase_spec(const MubPairSpec& spec, Tolerance tol = {}) {
    if (std::abs(spec.S(0, 1)) > tol.eps() || std::abs(spec.S(1, 0)) > tol.eps()) {
        throw SpecError("phase form needs a diagonal S");
    }
    const auto d = static_cast<std::size_t>(spec.d);
    PhaseSpec ps{spec.d, std::arg(spec.S(0, 0)), std::arg(spec.S(1, 1)), {}, {}};
    ps.r.resize(d * d);
    ps.theta.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ps.r[i * d + j] = std::abs(spec.W(i, j));
            ps.theta[i * d + j] = std::arg(spec.W(i, j));
        }
    return ps;
}

/// One phase-difference constraint
///   (phi1 + theta[x]) - (phi2 + theta[y]) = pi/2 (mod pi)
/// with 0-based positions x, y into theta.
struct PhaseConstraint {
    int family = 1;  // 1..9, same numbering as TheoremCondition
    std::array<int, 2> x{};
    std::array<int, 2> y{};
};

inline std::vector<PhaseConstraint> corollary_constraints(int d) {
    if (d < 3) throw ConstructionError("phase constraints need d >= 3, got " + std::to_string(d));
    const int last = d - 1;
    const int pen = d - 2;
    std::vector<PhaseConstraint> out;
    for (int r = 0; r < d - 2; ++r)
        for (int c = 0; c < d - 2; ++c) out.push_back({1, {r, c}, {r + 1, c + 1}});
    for (int r = 0; r < d - 2; ++r) out.push_back({2, {r, last}, {r + 1, last}});
    for (int c = 0; c < d - 2; ++c) out.push_back({3, {last, c}, {last, c + 1}});
    for (int r = 0; r < d - 2; ++r) out.push_back({4, {r, pen}, {r + 1, 0}});
    for (int c = 0; c < d - 2; ++c) out.push_back({5, {pen, c}, {0, c + 1}});
    out.push_back({6, {pen, pen}, {0, 0}});
    out.push_back({7, {pen, last}, {0, last}});
    out.push_back({8, {last, pen}, {last, 0}});
    out.push_back({9, {last, last}, {last, last}});
    return out;
}

/// Reduces an angle into [0, pi).
inline double reduce_mod_pi(double x) {
    double y = std::fmod(x, kPi);
    if (y < 0.0) y += kPi;
    return y;
}

/// Passes when every r_st is 1/sqrt(d) and every phase family differs from
/// pi/2 by a multiple of pi. worst_index is [0, s, t] for a modulus failure
/// and [family, x_row, x_col, y_row, y_col] for a phase failure.
inline VerificationReport corollary_check(const PhaseSpec& ps, Tolerance tol = {}) {
    check_well_formed(ps);
    VerificationReport r{.criterion = "corollary_phase_conditions", .target_value = kPi / 2.0,
                         .worst_index = {0, 0, 0}, .tolerance = tol.eps()};
    const double modulus_target = 1.0 / std::sqrt(static_cast<double>(ps.d));
    for (int s = 0; s < ps.d; ++s)
        for (int t = 0; t < ps.d; ++t) {
            const double dev = std::abs(ps.r_at(s, t) - modulus_target);
            if (dev > r.max_abs_deviation) {
                r.max_abs_deviation = dev;
                r.worst_index = {0, s, t};
            }
        }
    for (const auto& c : corollary_constraints(ps.d)) {
        const double diff = (ps.phi1 + ps.theta_at(c.x[0], c.x[1])) - (ps.phi2 + ps.theta_at(c.y[0], c.y[1]));
        const double dev = std::abs(reduce_mod_pi(diff) - kPi / 2.0);
        if (dev > r.max_abs_deviation) {
            r.max_abs_deviation = dev;
            r.worst_index = {c.family, c.x[0], c.x[1], c.y[0], c.y[1]};
        }
    }
    r.passed = r.max_abs_deviation <= tol.eps();
    r.note = "moduli target 1/sqrt(d) = " + std::to_string(modulus_target) + "; phase differences target pi/2 mod pi";
    return r;
}

// ---------------------------------------------------------------------------
// Worked examples

enum class ExampleId { ex1, ex2, ex3, ex4 };

inline constexpr std::array<ExampleId, 4> kAllExamples{ExampleId::ex1, ExampleId::ex2, ExampleId::ex3,
                                                       ExampleId::ex4};

inline std::string_view to_string(ExampleId id) {
    switch (id) {
        case ExampleId::ex1: return "ex1";
        case ExampleId::ex2: return "ex2";
        case ExampleId::ex3: return "ex3";
        case ExampleId::ex4: return "ex4";
    }
    return "?";
}

inline ExampleId parse_example_id(std::string_view s) {
    for (auto id : kAllExamples)
        if (to_string(id) == s) return id;
    throw std::invalid_argument("unknown example id '" + std::string(s) + "' (expected ex1, ex2, ex3 or ex4)");
}

namespace detail {

inline Matrix scaled_sign_matrix(std::initializer_list<std::initializer_list<int>> rows, double scale) {
    const std::size_t n = rows.size();
    Matrix m(n, n);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) m(i, j++) = scale * v;
        ++i;
    }
    return m;
}

}  // namespace detail

/// Reference (d, S, W) for each worked example.
inline MubPairSpec example_catalog(ExampleId id) {
    const Complex i{0.0, 1.0};
    switch (id) {
        case ExampleId::ex1:
            return {4, Matrix{{i, 0.0}, {0.0, 1.0}},
                    detail::scaled_sign_matrix({{-1, 1, 1, 1}, {1, -1, 1, 1}, {1, 1, -1, 1}, {1, 1, 1, -1}}, 0.5)};
        case ExampleId::ex2:
            return {4, Matrix{{twelfth_root(4), 0.0}, {0.0, twelfth_root(1)}},
                    detail::scaled_sign_matrix({{1, -1, 1, 1}, {1, 1, -1, 1}, {-1, 1, 1, 1}, {1, 1, 1, -1}}, 0.5)};
        case ExampleId::ex3:
            return {4, Matrix{{twelfth_root(2), 0.0}, {0.0, twelfth_root(11)}},
                    detail::scaled_sign_matrix({{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}}, 0.5)};
        case ExampleId::ex4:
            return {8, Matrix{{i, 0.0}, {0.0, 1.0}},
                    detail::scaled_sign_matrix({{1, 1, 1, 1, 1, 1, 1, 1},
                                                {-1, 1, -1, 1, -1, 1, -1, 1},
                                                {1, 1, -1, -1, 1, 1, -1, -1},
                                                {-1, 1, 1, -1, -1, 1, 1, -1},
                                                {1, 1, 1, 1, -1, -1, -1, -1},
                                                {-1, 1, -1, 1, 1, -1, 1, -1},
                                                {1, 1, -1, -1, -1, -1, 1, 1},
                                                {-1, 1, 1, -1, 1, -1, -1, 1}},
                                               1.0 / (2.0 * std::numbers::sqrt2))};
    }
    throw std::invalid_argument("unknown example id");
}

/// The phase description given alongside each example: phi1, phi2, r = 1/sqrt(d),
/// and the 1-based (s, t) positions whose theta is pi (all others 0).
inline PhaseSpec example_phases(ExampleId id) {
    struct Raw {
        int d;
        double phi1, phi2;
        std::vector<std::array<int, 2>> pi_entries;
    };
    const Raw raw = [&]() -> Raw {
        switch (id) {
            case ExampleId::ex1: return {4, kPi / 2.0, 0.0, {{1, 1}, {2, 2}, {3, 3}, {4, 4}}};
            case ExampleId::ex2: return {4, 2.0 * kPi / 3.0, kPi / 6.0, {{1, 2}, {2, 3}, {3, 1}, {4, 4}}};
            case ExampleId::ex3:
                return {4, kPi / 3.0, -kPi / 6.0, {{2, 3}, {3, 2}, {2, 4}, {3, 4}, {4, 2}, {4, 3}}};
            case ExampleId::ex4:
                return {8, kPi / 2.0, 0.0,
                        {{2, 1}, {2, 3}, {2, 5}, {2, 7}, {3, 3}, {3, 4}, {3, 7}, {3, 8}, {4, 1}, {4, 4},
                         {4, 5}, {4, 8}, {5, 5}, {5, 6}, {5, 7}, {5, 8}, {6, 1}, {6, 3}, {6, 6}, {6, 8},
                         {7, 3}, {7, 4}, {7, 5}, {7, 6}, {8, 1}, {8, 4}, {8, 6}, {8, 7}}};
        }
        throw std::invalid_argument("unknown example id");
    }();
    const auto n = static_cast<std::size_t>(raw.d * raw.d);
    PhaseSpec ps{raw.d, raw.phi1, raw.phi2, std::vector<double>(n, 1.0 / std::sqrt(double(raw.d))),
                 std::vector<double>(n, 0.0)};
    for (const auto& [s, t] : raw.pi_entries) ps.theta[static_cast<std::size_t>((s - 1) * raw.d + (t - 1))] = kPi;
    return ps;
}

}  // namespace umebmub
