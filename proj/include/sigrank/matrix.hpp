#pragma once

// Dense rational matrices, exact rank, reduced row echelon form and linear
// subspaces in canonical form.

#include "exact.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sigrank {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw MathError("matrix data size does not match shape");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds a matrix whose rows are the given vectors (all of equal length).
    static Matrix from_rows(std::span<const Vec> rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw MathError("row length mismatch");
            std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const {
        return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    Vec apply(std::span<const Rational> v) const {
        if (v.size() != cols_) throw MathError("matrix-vector dimension mismatch");
        Vec out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (sgn((*this)(r, c)) != 0) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
    }

    const std::vector<Rational>& data() const { return data_; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw MathError("matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact rank over Q (hence over R and C). Each row is scaled to integers by
/// the lcm of its denominators, then fraction-free (Bareiss) elimination runs
/// on the integer matrix; every division in the loop is exact.
inline std::size_t matrix_rank(const Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(m(r, c)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(m(r, c)) != 0) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }

    std::size_t rank = 0;
    Integer prev = 1;
    Integer tmp;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && sgn(a[pivot][c]) == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const Integer& p = a[rank][c];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const Integer f = a[r][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                tmp = a[r][j] * p - f * a[rank][j];
                mpz_divexact(a[r][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

/// Reduced row echelon form with zero rows removed.
inline Matrix rref(const Matrix& m) {
    Matrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && sgn(a(pivot, c)) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(rank, j));
        const Rational inv = 1 / a(rank, c);
        for (std::size_t j = c; j < cols; ++j) a(rank, j) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || sgn(a(r, c)) == 0) continue;
            const Rational f = a(r, c);
            for (std::size_t j = c; j < cols; ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    std::vector<Rational> kept(a.data().begin(), a.data().begin() + static_cast<std::ptrdiff_t>(rank * cols));
    return Matrix(rank, cols, std::move(kept));
}

inline bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && matrix_rank(m) == m.rows(); }

/// A linear subspace of Q^d, stored as the reduced row echelon basis.
/// Two subspaces are equal iff their stored bases are identical.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    static Subspace span(std::span<const Vec> vectors, std::size_t ambient_dim) {
        Subspace s(ambient_dim);
        if (!vectors.empty()) s.basis_ = rref(Matrix::from_rows(vectors, ambient_dim));
        return s;
    }

    static Subspace full(std::size_t ambient_dim) {
        Subspace s(ambient_dim);
        s.basis_ = Matrix::identity(ambient_dim);
        return s;
    }

    /// The hyperplane {x_i = 0} (i is 0-based).
    static Subspace coordinate_hyperplane(std::size_t ambient_dim, std::size_t i) {
        std::vector<Vec> rows;
        for (std::size_t j = 0; j < ambient_dim; ++j) {
            if (j == i) continue;
            Vec e(ambient_dim);
            e[j] = 1;
            rows.push_back(std::move(e));
        }
        return span(rows, ambient_dim);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_full() const { return dim() == ambient_; }
    const Matrix& basis() const { return basis_; }

    std::vector<Vec> basis_vectors() const {
        std::vector<Vec> out;
        for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(basis_.row(r));
        return out;
    }

    bool contains(std::span<const Rational> v) const {
        auto rows = basis_vectors();
        rows.emplace_back(v.begin(), v.end());
        return matrix_rank(Matrix::from_rows(rows, ambient_)) == dim();
    }

    bool contains(const Subspace& other) const { return join(*this, other).dim() == dim(); }

    friend Subspace join(const Subspace& a, const Subspace& b) {
        if (a.ambient_ != b.ambient_) throw MathError("subspaces live in different ambient spaces");
        auto rows = a.basis_vectors();
        for (auto& v : b.basis_vectors()) rows.push_back(std::move(v));
        return span(rows, a.ambient_);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_;
    Matrix basis_;
};

}  // namespace sigrank
