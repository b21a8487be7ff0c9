#pragma once

// Dense order-k tensors over Q in (Q^d)^{⊗k}. Entries are laid out
// lexicographically in the multi-index (i_1, ..., i_k) with i_1 slowest.
// Indices are 0-based in this API.

#include "exact.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace sigrank {

using MultiIndex = std::vector<std::size_t>;

class Tensor {
public:
    Tensor() : Tensor(0, 1) {}

    /// Zero tensor of the given order and dimension.
    Tensor(std::size_t order, std::size_t dim) : order_(order), dim_(dim), entries_(ipow(dim, order)) {
        if (dim == 0) throw MathError("tensor dimension must be at least 1");
    }

    Tensor(std::size_t order, std::size_t dim, std::vector<Rational> entries)
        : order_(order), dim_(dim), entries_(std::move(entries)) {
        if (dim == 0) throw MathError("tensor dimension must be at least 1");
        if (entries_.size() != ipow(dim, order))
            throw MathError("tensor needs exactly d^k entries");
    }

    static Tensor scalar(Rational value, std::size_t dim) { return Tensor(0, dim, {std::move(value)}); }

    static Tensor vector(std::span<const Rational> v) {
        if (v.empty()) throw MathError("vector must be nonempty");
        return Tensor(1, v.size(), Vec(v.begin(), v.end()));
    }

    static Tensor basis(std::size_t i, std::size_t dim) {
        Tensor t(1, dim);
        t.entries_.at(i) = 1;
        return t;
    }

    /// v^{⊗k}
    static Tensor power(std::span<const Rational> v, std::size_t k);

    /// v_1 ⊗ ... ⊗ v_k (k ≥ 1, all of the same length).
    static Tensor elementary(std::span<const Vec> factors);

    std::size_t order() const { return order_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }

    const std::vector<Rational>& entries() const { return entries_; }
    Rational& operator[](std::size_t flat) { return entries_[flat]; }
    const Rational& operator[](std::size_t flat) const { return entries_[flat]; }

    std::size_t flat_index(std::span<const std::size_t> idx) const {
        if (idx.size() != order_) throw MathError("multi-index arity does not match tensor order");
        std::size_t flat = 0;
        for (auto i : idx) {
            if (i >= dim_) throw MathError("index out of range");
            flat = flat * dim_ + i;
        }
        return flat;
    }

    MultiIndex multi_index(std::size_t flat) const {
        MultiIndex idx(order_);
        for (std::size_t p = order_; p-- > 0;) {
            idx[p] = flat % dim_;
            flat /= dim_;
        }
        return idx;
    }

    const Rational& at(std::span<const std::size_t> idx) const { return entries_[flat_index(idx)]; }
    Rational& at(std::span<const std::size_t> idx) { return entries_[flat_index(idx)]; }
    const Rational& at(std::initializer_list<std::size_t> idx) const { return at({idx.begin(), idx.size()}); }
    Rational& at(std::initializer_list<std::size_t> idx) { return at({idx.begin(), idx.size()}); }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return sgn(x) == 0; });
    }

    Tensor& operator+=(const Tensor& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    Tensor& operator-=(const Tensor& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    Tensor& operator*=(const Rational& c) {
        for (auto& x : entries_) x *= c;
        return *this;
    }

    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, const Rational& c) { return a *= c; }
    friend Tensor operator*(const Rational& c, Tensor a) { return a *= c; }
    friend Tensor operator-(Tensor a) { return a *= Rational(-1); }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.order_ == b.order_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    void check_same_shape(const Tensor& o) const {
        if (order_ != o.order_ || dim_ != o.dim_) throw MathError("tensor shape mismatch");
    }

    std::size_t order_;
    std::size_t dim_;
    std::vector<Rational> entries_;
};

/// a ⊗ b: entry at (I, J) is a[I]·b[J].
inline Tensor tensor_product(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim()) throw MathError("tensor_product: dimension mismatch");
    Tensor out(a.order() + b.order(), a.dim());
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational& ai = a[i];
        if (sgn(ai) == 0) continue;
        for (std::size_t j = 0; j < nb; ++j)
            if (sgn(b[j]) != 0) out[i * nb + j] = ai * b[j];
    }
    return out;
}

/// Adds c·(a ⊗ b) into acc without materializing the product.
inline void add_product(Tensor& acc, const Tensor& a, const Tensor& b, const Rational& c = 1) {
    if (a.dim() != b.dim() || acc.dim() != a.dim() || acc.order() != a.order() + b.order())
        throw MathError("add_product: shape mismatch");
    const std::size_t nb = b.size();
    Rational ca;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        ca = c * a[i];
        for (std::size_t j = 0; j < nb; ++j)
            if (sgn(b[j]) != 0) acc[i * nb + j] += ca * b[j];
    }
}

inline Tensor Tensor::power(std::span<const Rational> v, std::size_t k) {
    Tensor out = scalar(1, v.size());
    const Tensor base = vector(v);
    for (std::size_t i = 0; i < k; ++i) out = tensor_product(out, base);
    return out;
}

inline Tensor Tensor::elementary(std::span<const Vec> factors) {
    if (factors.empty()) throw MathError("elementary tensor needs at least one factor");
    Tensor out = vector(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) out = tensor_product(out, vector(factors[i]));
    return out;
}

/// Output entry at (i_{π(1)}, ..., i_{π(k)}) equals input entry at (i_1, ..., i_k).
/// `perm` is 0-based: perm[p] = π(p).
inline Tensor permute_modes(const Tensor& t, std::span<const std::size_t> perm) {
    const std::size_t k = t.order();
    if (perm.size() != k) throw MathError("permute_modes: permutation arity does not match tensor order");
    std::vector<bool> seen(k, false);
    for (auto p : perm) {
        if (p >= k || seen[p]) throw MathError("permute_modes: not a permutation");
        seen[p] = true;
    }
    Tensor out(k, t.dim());
    MultiIndex src(k, 0), dst(k);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        for (std::size_t p = 0; p < k; ++p) dst[p] = src[perm[p]];
        out.at(dst) = t[flat];
        for (std::size_t p = k; p-- > 0;) {
            if (++src[p] < t.dim()) break;
            src[p] = 0;
        }
    }
    return out;
}

/// Applies m to every mode of t: m·(v_1⊗...⊗v_k) = (m v_1)⊗...⊗(m v_k).
/// Only invertible matrices are accepted (the action is by GL(V)).
inline Tensor gl_act(const Matrix& m, const Tensor& t) {
    const std::size_t d = t.dim();
    if (m.rows() != d || m.cols() != d) throw MathError("gl_act: matrix must be d x d");
    if (!is_invertible(m)) throw MathError("gl_act: matrix is singular");
    // One mode at a time: contract mode p with m.
    Tensor cur = t;
    const std::size_t k = t.order();
    for (std::size_t p = 0; p < k; ++p) {
        Tensor next(k, d);
        const std::size_t stride = ipow(d, k - 1 - p);
        for (std::size_t flat = 0; flat < cur.size(); ++flat) {
            if (sgn(cur[flat]) == 0) continue;
            const std::size_t i = (flat / stride) % d;
            const std::size_t base = flat - i * stride;
            for (std::size_t r = 0; r < d; ++r)
                if (sgn(m(r, i)) != 0) next[base + r * stride] += m(r, i) * cur[flat];
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace sigrank
