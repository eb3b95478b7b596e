#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "umebmub/umebmub.hpp"

using namespace umebmub;
using umebmub::testing::random_state;
using umebmub::testing::random_unitary;

namespace {

const double kHalfRoot = std::sqrt(0.5);

// Independent oracle: singular values of the 2 x d coefficient block via
// Eigen's Jacobi SVD.
std::array<double, 2> svd_oracle(const BipartiteState& s) {
    Eigen::MatrixXcd m(2, s.d());
    for (int a = 0; a < 2; ++a)
        for (int j = 0; j < s.d(); ++j) m(a, j) = s.at(a, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    return {sv(0), sv(1)};
}

// det(M M^dagger) written out for a 2 x d block, independent of the library.
double det_oracle(const std::vector<Complex>& v, int d) {
    double n0 = 0.0, n1 = 0.0;
    Complex x{};
    for (int j = 0; j < d; ++j) {
        n0 += std::norm(v[j]);
        n1 += std::norm(v[d + j]);
        x += v[j] * std::conj(v[d + j]);
    }
    return n0 * n1 - std::norm(x);
}

// Brute-force maximum of det over unit vectors cos(t) u + e^{ip} sin(t) v:
// a 2000 x 2000 grid followed by three 10x zoom passes around the best cell.
double grid_oracle(const BipartiteState& u, const BipartiteState& v) {
    const int d = u.d();
    auto eval = [&](double t, double p) {
        std::vector<Complex> w(static_cast<std::size_t>(2 * d));
        const Complex b = std::polar(std::sin(t), p);
        for (int k = 0; k < 2 * d; ++k) w[k] = std::cos(t) * u.amplitudes()[k] + b * v.amplitudes()[k];
        return det_oracle(w, d);
    };
    constexpr int n = 2000;
    double best = -1.0, bt = 0.0, bp = 0.0;
    double ht = 0.5 * kPi / n, hp = 2.0 * kPi / n;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) {
            const double t = i * ht, p = j * hp;
            const double f = eval(t, p);
            if (f > best) best = f, bt = t, bp = p;
        }
    for (int pass = 0; pass < 3; ++pass) {
        const double ct = bt, cp = bp;
        const double st = 2.0 * ht / 100.0, sp = 2.0 * hp / 100.0;
        for (int i = -100; i <= 100; ++i)
            for (int j = -100; j <= 100; ++j) {
                const double t = std::clamp(ct + i * st, 0.0, 0.5 * kPi), p = cp + j * sp;
                const double f = eval(t, p);
                if (f > best) best = f, bt = t, bp = p;
            }
        ht = st;
        hp = sp;
    }
    return best;
}

Subspace random_subspace(int d, std::size_t dim, std::mt19937_64& rng) {
    const Matrix u = random_unitary(static_cast<std::size_t>(2 * d), rng);
    Subspace s{d, {}};
    for (std::size_t c = 0; c < dim; ++c) s.basis.emplace_back(d, u.column(c));
    return s;
}

}  // namespace

TEST(Entanglement, CoefficientMatrixExamples) {
    const Matrix product = coefficient_matrix(BipartiteState::basis_vector(4, 0, 0));
    Matrix expected(2, 4);
    expected(0, 0) = 1.0;
    EXPECT_EQ(product, expected);

    const auto umeb = build_umeb(4);
    Matrix m00(2, 4);
    m00(0, 0) = kHalfRoot;
    m00(1, 1) = kHalfRoot;
    EXPECT_LE(max_abs_diff(coefficient_matrix(umeb.find({0, 0})), m00), 1e-15);

    // n = 1, j = 2: 2 (+) 1 = 0 mod 3, sign (-1)^{1*1}
    Matrix m12(2, 4);
    m12(0, 2) = kHalfRoot;
    m12(1, 0) = -kHalfRoot;
    EXPECT_LE(max_abs_diff(coefficient_matrix(umeb.find({1, 2})), m12), 1e-15);
}

TEST(Entanglement, StateRejectsBadInput) {
    EXPECT_THROW(BipartiteState(1, {1.0, 0.0}), StateError);
    EXPECT_THROW(BipartiteState(3, {1.0, 0.0}), StateError);
    EXPECT_THROW(BipartiteState(2, {1.0, 1.0, 0.0, 0.0}), StateError);
}

TEST(Entanglement, SchmidtExamples) {
    const auto p = schmidt_coefficients(build_umeb(4).find({0, 0}));
    EXPECT_NEAR(p.lambda1, kHalfRoot, 1e-15);
    EXPECT_NEAR(p.lambda2, kHalfRoot, 1e-15);

    const auto q = schmidt_coefficients(BipartiteState::basis_vector(4, 0, 0));
    EXPECT_DOUBLE_EQ(q.lambda1, 1.0);
    EXPECT_DOUBLE_EQ(q.lambda2, 0.0);
}

TEST(Entanglement, SchmidtMatchesSvdOracle) {
    std::mt19937_64 rng(2024);
    for (int d : {2, 3, 4, 8, 16}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto s = random_state(d, rng);
            const auto p = schmidt_coefficients(s);
            const auto o = svd_oracle(s);
            EXPECT_NEAR(p.lambda1, o[0], 1e-10);
            EXPECT_NEAR(p.lambda2, o[1], 1e-10);
            EXPECT_GE(p.lambda1, p.lambda2);
            EXPECT_NEAR(p.lambda1 * p.lambda1 + p.lambda2 * p.lambda2, 1.0, 1e-12);
        }
    }
}

TEST(Entanglement, MaximalEntanglementExamples) {
    const auto umeb = build_umeb(4);
    for (const auto& s : umeb.states()) EXPECT_TRUE(is_maximally_entangled(s));
    EXPECT_FALSE(is_maximally_entangled(complete_basis(4).find({0, 3})));
    EXPECT_FALSE(is_maximally_entangled(complete_basis(4).find({1, 3})));

    // Local unitaries keep the Schmidt pair, so psi_{n,j} for j <= 2 stay maximal.
    const auto psi = build_second_basis(example_catalog(ExampleId::ex1));
    for (int n = 0; n < 2; ++n)
        for (int j = 0; j <= 2; ++j) EXPECT_TRUE(is_maximally_entangled(psi.find({n, j})));
}

TEST(Entanglement, ComplementOfUmebIsProductWithLastLevel) {
    const auto umeb = build_umeb(4);
    const auto comp = orthogonal_complement(umeb.states());
    ASSERT_EQ(comp.dim(), 2u);
    for (const auto& v : comp.basis) {
        for (int k = 0; k < 8; ++k) {
            if (k == 3 || k == 7) continue;
            EXPECT_LE(std::abs(v.amplitudes()[k]), 1e-15) << "index " << k;
        }
        EXPECT_LE(entanglement_determinant(v), 1e-15);
    }
}

TEST(Entanglement, ComplementEdgeCases) {
    const auto full = complete_basis(4);
    EXPECT_EQ(orthogonal_complement(full.states()).dim(), 0u);

    const std::vector<BipartiteState> one{BipartiteState::basis_vector(2, 0, 0)};
    const auto comp = orthogonal_complement(one);
    ASSERT_EQ(comp.dim(), 3u);
    EXPECT_EQ(comp.basis[0], BipartiteState::basis_vector(2, 0, 1));
    EXPECT_EQ(comp.basis[1], BipartiteState::basis_vector(2, 1, 0));
    EXPECT_EQ(comp.basis[2], BipartiteState::basis_vector(2, 1, 1));

    const std::vector<BipartiteState> overlapping{
        BipartiteState::basis_vector(2, 0, 0),
        BipartiteState::normalized(2, {1.0, 1.0, 0.0, 0.0})};
    EXPECT_THROW(orthogonal_complement(overlapping), StateError);
}

TEST(Entanglement, MaxEntanglementExamples) {
    const auto comp = orthogonal_complement(build_umeb(4).states());
    EXPECT_LE(max_entanglement_in_subspace(comp), 1e-12);
    EXPECT_NEAR(max_entanglement_in_subspace(Subspace::full(4)), 0.25, 1e-9);

    const auto phi = build_umeb(4).find({1, 1});
    const Subspace line{4, {phi}};
    EXPECT_NEAR(max_entanglement_in_subspace(line), 0.25, 1e-15);
}

TEST(Entanglement, MaxEntanglementMatchesGridOracle) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 3; ++trial) {
        const auto sub = random_subspace(4, 2, rng);
        const double oracle = grid_oracle(sub.basis[0], sub.basis[1]);
        EXPECT_NEAR(max_entanglement_in_subspace(sub), oracle, 1e-6);
        EXPECT_GE(max_entanglement_in_subspace(sub), oracle - 1e-12);
    }
}

TEST(Entanglement, VerifyUmebExamples) {
    const auto r4 = verify_umeb(build_umeb(4).states());
    EXPECT_TRUE(r4.passed);
    ASSERT_EQ(r4.clauses.size(), 3u);
    EXPECT_LE(r4.clauses[2].max_abs_deviation, 1e-9);

    EXPECT_TRUE(verify_umeb(build_umeb(3).states()).passed);
    EXPECT_EQ(build_umeb(3).size(), 4u);

    const auto full = verify_umeb(complete_basis(4).states());
    EXPECT_FALSE(full.passed);
    EXPECT_FALSE(full.clauses[0].passed);
    EXPECT_EQ(full.clauses[0].worst_index, std::vector<int>{6});  // phi_{0,3}
    EXPECT_TRUE(full.clauses[1].passed);
    EXPECT_TRUE(full.clauses[2].passed);
    EXPECT_NE(full.clauses[2].note.find("vacuous"), std::string::npos);
}

TEST(Entanglement, VerifyUmebDetectsExtendibleSet) {
    // Dropping two maximally entangled states leaves phi_{0,0}, phi_{1,0} in
    // the complement, so clause (iii) must fail.
    const auto umeb = build_umeb(4);
    std::vector<BipartiteState> partial(umeb.states().begin() + 2, umeb.states().end());
    const auto r = verify_umeb(partial);
    EXPECT_TRUE(r.clauses[0].passed);
    EXPECT_TRUE(r.clauses[1].passed);
    EXPECT_FALSE(r.clauses[2].passed);
    EXPECT_NEAR(r.clauses[2].max_abs_deviation, 0.25, 1e-9);
}

TEST(EntanglementProperty, SchmidtInvariantUnderLocalUnitaries) {
    std::mt19937_64 rng(31);
    for (int d : {3, 4, 8}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto s = random_state(d, rng);
            const Matrix local = tensor_product(random_unitary(2, rng), random_unitary(static_cast<std::size_t>(d), rng));
            const BipartiteState t(d, umebmub::apply(local, s.amplitudes()));
            const auto a = schmidt_coefficients(s), b = schmidt_coefficients(t);
            EXPECT_NEAR(a.lambda1, b.lambda1, 1e-10);
            EXPECT_NEAR(a.lambda2, b.lambda2, 1e-10);
        }
    }
}

TEST(EntanglementProperty, DeterminantBoundedByQuarter) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = random_state(5, rng);
        EXPECT_LE(entanglement_determinant(s), 0.25 + 1e-15);
        EXPECT_FALSE(is_maximally_entangled(s));
    }
    for (int d : {3, 5, 8}) {
        const auto umeb = build_umeb(d);
        for (const auto& s : umeb.states()) EXPECT_NEAR(entanglement_determinant(s), 0.25, 1e-15);
    }
}

TEST(EntanglementProperty, ComplementIsOrthonormalAndOrthogonal) {
    std::mt19937_64 rng(41);
    for (int d : {2, 3, 5}) {
        for (std::size_t n = 0; n <= static_cast<std::size_t>(2 * d); ++n) {
            const auto sub = random_subspace(d, n, rng);
            const auto comp = orthogonal_complement(d, sub.basis);
            ASSERT_EQ(comp.dim() + n, static_cast<std::size_t>(2 * d));
            EXPECT_LE(gram_defect(comp.basis).deviation, 1e-12);
            for (const auto& c : comp.basis)
                for (const auto& s : sub.basis) EXPECT_LE(std::abs(inner_product(s, c)), 1e-12);
        }
    }
}

TEST(EntanglementProperty, UmebFamilyCertifies) {
    for (int d : {3, 4, 5, 8}) {
        const auto r = verify_umeb(build_umeb(d).states());
        EXPECT_TRUE(r.passed) << "d = " << d;
        EXPECT_LE(r.clauses[2].max_abs_deviation, 1e-12);
    }
}
