#pragma once

// Flattenings (unfoldings) of tensors along an index bipartition, mode
// unfoldings, and the Koszul flattening of order-3 tensors.

#include "matrix.hpp"
#include "tensor.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace sigrank {

struct Flattening {
    std::size_t source_order = 0;
    std::vector<std::size_t> row_modes;  // sorted, 0-based
    std::vector<std::size_t> col_modes;  // sorted complement
    Matrix matrix;

    /// Row/column of the matrix holding the tensor entry at `idx`. Row and
    /// column multi-indices are read lexicographically in the mode order.
    std::pair<std::size_t, std::size_t> cell(std::span<const std::size_t> idx, std::size_t dim) const {
        std::size_t r = 0, c = 0;
        for (auto p : row_modes) r = r * dim + idx[p];
        for (auto p : col_modes) c = c * dim + idx[p];
        return {r, c};
    }
};

/// Flattens t with the modes in `rows` (0-based) indexing matrix rows.
inline Flattening flatten(const Tensor& t, std::span<const std::size_t> rows) {
    const std::size_t k = t.order(), d = t.dim();
    std::vector<bool> is_row(k, false);
    for (auto p : rows) {
        if (p >= k) throw MathError("flatten: mode index out of range");
        if (is_row[p]) throw MathError("flatten: repeated mode index");
        is_row[p] = true;
    }
    if (rows.empty() || rows.size() == k)
        throw MathError("flatten: row modes must be a nonempty proper subset");

    Flattening f;
    f.source_order = k;
    for (std::size_t p = 0; p < k; ++p) (is_row[p] ? f.row_modes : f.col_modes).push_back(p);
    f.matrix = Matrix(ipow(d, f.row_modes.size()), ipow(d, f.col_modes.size()));
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        if (sgn(t[flat]) == 0) continue;
        const auto idx = t.multi_index(flat);
        auto [r, c] = f.cell(idx, d);
        f.matrix(r, c) = t[flat];
    }
    return f;
}

/// The d^{k-1} x d matrix whose rows are the mode-p fibers of t.
inline Matrix mode_fibers(const Tensor& t, std::size_t mode) {
    const std::size_t k = t.order(), d = t.dim();
    if (mode >= k) throw MathError("mode_fibers: mode out of range");
    Matrix m(ipow(d, k - 1), d);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        if (sgn(t[flat]) == 0) continue;
        const auto idx = t.multi_index(flat);
        std::size_t r = 0;
        for (std::size_t p = 0; p < k; ++p)
            if (p != mode) r = r * d + idx[p];
        m(r, idx[mode]) = t[flat];
    }
    return m;
}

/// Koszul flattening of an order-3 tensor T ∈ U⊗V⊗W, with U the pivot mode
/// (0-based) and W the last of the two remaining modes:
///   U*⊗W → V⊗W⊗W → V⊗∧²W,  v⊗w1⊗w2 ↦ v⊗(w1∧w2).
/// Rows are indexed by (u, w), columns by (v, {a<b}); shape d² × d·C(d,2).
inline Matrix koszul_flatten(const Tensor& t, std::size_t pivot_mode) {
    if (t.order() != 3) throw MathError("koszul_flatten: tensor must have order 3");
    if (pivot_mode > 2) throw MathError("koszul_flatten: pivot mode must be 0, 1 or 2");
    const std::size_t d = t.dim();
    std::size_t v_mode = 0, w_mode = 0;
    {
        std::vector<std::size_t> rest;
        for (std::size_t p = 0; p < 3; ++p)
            if (p != pivot_mode) rest.push_back(p);
        v_mode = rest[0];
        w_mode = rest[1];
    }
    // Index of the basis element e_a ∧ e_b (a < b) in lexicographic order.
    std::vector<std::vector<std::size_t>> wedge(d, std::vector<std::size_t>(d, 0));
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) wedge[a][b] = pairs++;

    Matrix f(d * d, d * pairs);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        if (sgn(t[flat]) == 0) continue;
        const auto idx = t.multi_index(flat);
        const std::size_t u = idx[pivot_mode], v = idx[v_mode], w1 = idx[w_mode];
        // u* ⊗ e_w2 ↦ T(u, v, w1) e_v ⊗ (e_w1 ∧ e_w2)
        for (std::size_t w2 = 0; w2 < d; ++w2) {
            if (w1 == w2) continue;
            const std::size_t row = u * d + w2;
            if (w1 < w2)
                f(row, v * pairs + wedge[w1][w2]) += t[flat];
            else
                f(row, v * pairs + wedge[w2][w1]) -= t[flat];
        }
    }
    return f;
}

}  // namespace sigrank
