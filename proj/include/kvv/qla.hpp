#ifndef KVV_QLA_HPP
#define KVV_QLA_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "kvv/error.hpp"
#include "kvv/rational.hpp"

namespace kvv {

using QVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    QVector operator*(std::span<const Rational> x) const {
        if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
        QVector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Forward elimination with the first nonzero entry of each column as pivot.
///
/// Works over any exact field type exposing the usual operators plus
/// `is_zero(x)` via the supplied predicate. Operates in place on a row-major
/// grid and returns the pivot columns in order; the grid is left in row
/// echelon form.
template <typename T, typename IsZero, typename Sub, typename Mul, typename Div>
std::vector<std::size_t> row_echelon(std::vector<T>& grid, std::size_t rows, std::size_t cols,
                                     IsZero is_zero, Sub sub, Mul mul, Div div) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(grid[p * cols + c])) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t k = 0; k < cols; ++k) std::swap(grid[p * cols + k], grid[r * cols + k]);
        const T pivot = grid[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (is_zero(grid[i * cols + c])) continue;
            const T factor = div(grid[i * cols + c], pivot);
            for (std::size_t k = c; k < cols; ++k)
                grid[i * cols + k] = sub(grid[i * cols + k], mul(factor, grid[r * cols + k]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Unique exact solution of m·x = rhs. Throws SingularMatrix if m is not invertible.
inline QVector solve_linear(const QMatrix& m, std::span<const Rational> rhs) {
    if (!m.is_square()) throw DimensionMismatch("solve_linear needs a square matrix");
    const std::size_t n = m.rows();
    if (rhs.size() != n) throw DimensionMismatch("right-hand side length differs from matrix size");
    if (n == 0) return {};

    const std::size_t w = n + 1;
    std::vector<Rational> grid(n * w);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) grid[i * w + j] = m(i, j);
        grid[i * w + n] = rhs[i];
    }
    const auto pivots = row_echelon(
        grid, n, w, [](const Rational& x) { return x.is_zero(); },
        [](const Rational& a, const Rational& b) { return a - b; },
        [](const Rational& a, const Rational& b) { return a * b; },
        [](const Rational& a, const Rational& b) { return a / b; });
    if (pivots.size() < n || pivots.back() >= n) throw SingularMatrix();

    QVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational acc = grid[ii * w + n];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= grid[ii * w + j] * x[j];
        x[ii] = acc / grid[ii * w + ii];
    }
    return x;
}

/// Leading principal minors det(m[0..k, 0..k]) for k = 1..n.
inline QVector leading_principal_minors(const QMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("minors need a square matrix");
    const std::size_t n = m.rows();
    QVector minors;
    minors.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Rational> grid(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) grid[i * k + j] = m(i, j);
        // Track the sign flips of row swaps to recover the determinant.
        Rational det = 1;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t p = c;
            while (p < k && grid[p * k + c].is_zero()) ++p;
            if (p == k) { det = 0; break; }
            if (p != c) {
                for (std::size_t j = 0; j < k; ++j) std::swap(grid[p * k + j], grid[c * k + j]);
                det = -det;
            }
            det *= grid[c * k + c];
            for (std::size_t i = c + 1; i < k; ++i) {
                if (grid[i * k + c].is_zero()) continue;
                const Rational f = grid[i * k + c] / grid[c * k + c];
                for (std::size_t j = c; j < k; ++j) grid[i * k + j] -= f * grid[c * k + j];
            }
        }
        minors.push_back(det);
    }
    return minors;
}

/// True iff the k-th leading principal minor has sign (-1)^k for every k.
inline bool is_negative_definite(const QMatrix& m) {
    if (!m.is_symmetric()) throw NotSymmetric();
    const QVector minors = leading_principal_minors(m);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        const int want = (k % 2 == 0) ? -1 : 1;
        if (minors[k].sign() != want) return false;
    }
    return true;
}

inline QVector floor_rationals(std::span<const Rational> v) {
    QVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.floor());
    return out;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product of unequal lengths");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

} // namespace kvv

#endif // KVV_QLA_HPP
