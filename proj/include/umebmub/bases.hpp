#pragma once

// The unextendible maximally entangled set on C^2 (x) C^d, its completion by
// two product states, and the unitary F whose columns are the completed basis.
//
// Label order is fixed with n varying fastest:
//   (0,0), (1,0), (0,1), (1,1), ..., (0,d-1), (1,d-1)
// and column k of build_F(d) is state k of complete_basis(d).

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "umebmub/entanglement.hpp"
#include "umebmub/linalg.hpp"

namespace umebmub {

struct Label {
    int n = 0;
    int m = 0;
    friend bool operator==(const Label&, const Label&) = default;
};

class BasisSet {
public:
    BasisSet(int d, std::vector<Label> labels, std::vector<BipartiteState> states)
        : d_(d), labels_(std::move(labels)), states_(std::move(states)) {
        if (labels_.size() != states_.size()) {
            throw DimensionError("basis set has " + std::to_string(labels_.size()) + " labels but " +
                                 std::to_string(states_.size()) + " states");
        }
        for (const auto& s : states_) {
            if (s.d() != d_) throw DimensionError("basis set mixes state dimensions");
        }
    }

    [[nodiscard]] int d() const noexcept { return d_; }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] bool is_full() const noexcept { return states_.size() == static_cast<std::size_t>(2 * d_); }
    [[nodiscard]] const std::vector<Label>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<BipartiteState>& states() const noexcept { return states_; }
    [[nodiscard]] const BipartiteState& state(std::size_t k) const { return states_.at(k); }

    [[nodiscard]] const BipartiteState& find(Label l) const {
        for (std::size_t k = 0; k < labels_.size(); ++k)
            if (labels_[k] == l) return states_[k];
        throw std::out_of_range("no state labelled (" + std::to_string(l.n) + "," +
                                std::to_string(l.m) + ")");
    }

private:
    int d_;
    std::vector<Label> labels_;
    std::vector<BipartiteState> states_;
};

/// Raised when a construction is requested outside its domain (d < 3).
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_construction_dim(int d, const char* what) {
    if (d < 3) {
        throw ConstructionError(std::string(what) + ": the construction needs d >= 3, got d = " +
                                std::to_string(d));
    }
}

// (|0>|j'> + (-1)^n |1>|(j+1 mod d-1)'>) / sqrt(2), j in [0, d-2]
inline BipartiteState umeb_state(int d, int n, int j) {
    std::vector<Complex> amp(static_cast<std::size_t>(2 * d));
    const double h = std::numbers::sqrt2 / 2.0;
    for (int a = 0; a < 2; ++a) {
        const int target = (j + a) % (d - 1);
        const double sign = (n * a) % 2 == 0 ? 1.0 : -1.0;
        amp[static_cast<std::size_t>(a * d + target)] += sign * h;
    }
    return {d, std::move(amp)};
}

// (|0> + (-1)^n |1>) |(d-1)'> / sqrt(2)
inline BipartiteState product_completion_state(int d, int n) {
    std::vector<Complex> amp(static_cast<std::size_t>(2 * d));
    const double h = std::numbers::sqrt2 / 2.0;
    amp[static_cast<std::size_t>(d - 1)] = h;
    amp[static_cast<std::size_t>(2 * d - 1)] = n == 0 ? h : -h;
    return {d, std::move(amp)};
}

}  // namespace detail

/// The 2(d-1) maximally entangled states phi_{n,j}, j = 0..d-2.
inline BasisSet build_umeb(int d) {
    detail::require_construction_dim(d, "build_umeb");
    std::vector<Label> labels;
    std::vector<BipartiteState> states;
    for (int j = 0; j <= d - 2; ++j)
        for (int n = 0; n < 2; ++n) {
            labels.push_back({n, j});
            states.push_back(detail::umeb_state(d, n, j));
        }
    return {d, std::move(labels), std::move(states)};
}

/// build_umeb(d) plus the two product states phi_{0,d-1}, phi_{1,d-1}.
inline BasisSet complete_basis(int d) {
    detail::require_construction_dim(d, "complete_basis");
    auto umeb = build_umeb(d);
    auto labels = umeb.labels();
    auto states = umeb.states();
    for (int n = 0; n < 2; ++n) {
        labels.push_back({n, d - 1});
        states.push_back(detail::product_completion_state(d, n));
    }
    return {d, std::move(labels), std::move(states)};
}

/// Stacks the states of a full basis as columns of a 2d x 2d matrix.
inline Matrix basis_matrix(const BasisSet& b) {
    const auto dim = static_cast<std::size_t>(2 * b.d());
    Matrix m(dim, b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        const auto amp = b.state(k).amplitudes();
        for (std::size_t r = 0; r < dim; ++r) m(r, k) = amp[r];
    }
    return m;
}

inline Matrix build_F(int d) {
    detail::require_construction_dim(d, "build_F");
    return basis_matrix(complete_basis(d));
}

}  // namespace umebmub
