#pragma once

// Dense complex matrices for the small (<= 32x32) systems in this library.
// Storage is row-major. Vectors on C^2 (x) C^d use the composite index
// (a, j) -> a*d + j throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace umebmub {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultEps = 1e-10;

/// Raised when operand shapes do not conform.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Absolute deviation bound used by every numeric check.
class Tolerance {
public:
    constexpr Tolerance() = default;
    explicit Tolerance(double eps) : eps_(eps) {
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw std::invalid_argument("tolerance must be a positive finite number, got " +
                                        std::to_string(eps));
        }
    }
    [[nodiscard]] constexpr double eps() const noexcept { return eps_; }

private:
    double eps_ = kDefaultEps;
};

inline double modulus(Complex z) noexcept { return std::abs(z); }

/// e^{k pi i / 6}, the twelfth roots of unity used by the worked examples.
inline Complex twelfth_root(int k) { return std::polar(1.0, k * kPi / 6.0); }

class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("matrix dimensions must be positive");
        }
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("matrix dimensions must be positive");
        }
        if (data_.size() != rows * cols) {
            throw DimensionError("matrix data length " + std::to_string(data_.size()) +
                                 " does not match " + shape_string(rows, cols));
        }
    }

    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) {
            throw DimensionError("matrix dimensions must be positive");
        }
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw DimensionError("ragged initializer list");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const Complex> entries) {
        Matrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    static Matrix column_vector(std::span<const Complex> entries) {
        return Matrix(entries.size(), 1, std::vector<Complex>(entries.begin(), entries.end()));
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const Complex> data() const noexcept { return data_; }
    [[nodiscard]] std::span<Complex> data() noexcept { return data_; }

    [[nodiscard]] std::vector<Complex> column(std::size_t c) const {
        std::vector<Complex> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    [[nodiscard]] std::string shape() const { return shape_string(rows_, cols_); }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    Matrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }
    friend Matrix operator*(Complex s, Matrix m) { return m *= s; }
    friend Matrix operator*(Matrix m, Complex s) { return m *= s; }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    static std::string shape_string(std::size_t r, std::size_t c) {
        return std::to_string(r) + "x" + std::to_string(c);
    }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string("operator") + op + ": shapes " + shape() + " and " +
                                 o.shape() + " differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: cannot multiply " + a.shape() + " by " + b.shape());
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

/// Kronecker product: (A (x) B)[p*B.rows + q, r*B.cols + s] = A[p,r] * B[q,s].
inline Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t r = 0; r < a.cols(); ++r) {
            const Complex apr = a(p, r);
            for (std::size_t q = 0; q < b.rows(); ++q)
                for (std::size_t s = 0; s < b.cols(); ++s)
                    out(p * b.rows() + q, r * b.cols() + s) = apr * b(q, s);
        }
    return out;
}

inline Matrix adjoint(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shapes " + a.shape() + " and " + b.shape() + " differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

/// Largest entrywise deviation of A^dagger A from the identity.
inline double unitarity_defect(const Matrix& a) {
    if (!a.is_square()) {
        throw DimensionError("unitarity check needs a square matrix, got " + a.shape());
    }
    return max_abs_diff(adjoint(a) * a, Matrix::identity(a.rows()));
}

inline bool is_unitary(const Matrix& a, Tolerance tol = {}) {
    return unitarity_defect(a) <= tol.eps();
}

/// <u|v>, conjugate-linear in the first argument.
inline Complex inner_product(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw DimensionError("inner_product: lengths " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()) + " differ");
    }
    Complex acc{};
    for (std::size_t k = 0; k < u.size(); ++k) acc += std::conj(u[k]) * v[k];
    return acc;
}

inline double norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

/// Applies a square matrix to a vector.
inline std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw DimensionError("apply: matrix " + m.shape() + " on vector of length " +
                             std::to_string(v.size()));
    }
    std::vector<Complex> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace umebmub
