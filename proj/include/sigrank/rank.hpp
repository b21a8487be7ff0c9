#pragma once

// Rank bounds for signature tensors: the closed-form upper bound for
// S_{k,α}, flattening and Koszul lower bounds, rank certificates, and the
// 2×2×2 hyperdeterminant classification.

#include "decomposition.hpp"
#include "exact.hpp"
#include "flatten.hpp"
#include "matrix.hpp"
#include "tensor.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace sigrank {

/// Σ_{a_1=4}^{m} Σ_{a_2=4}^{a_1} ... Σ_{a_{k-3}=4}^{a_{k-4}} (a_{k-3} − 1), summed directly.
inline std::int64_t nested_hockey_sum(std::int64_t k, std::int64_t m) {
    if (k < 4) throw MathError("nested_hockey_sum: k must be at least 4");
    auto rec = [](auto&& self, std::int64_t depth, std::int64_t upper) -> std::int64_t {
        std::int64_t s = 0;
        for (std::int64_t a = 4; a <= upper; ++a) s += depth == 1 ? a - 1 : self(self, depth - 1, a);
        return s;
    };
    return rec(rec, k - 3, m);
}

/// C(m+k−6, k−2) + 2·C(m+k−7, k−3): closed form of nested_hockey_sum.
inline std::int64_t hockey_stick_closed(std::int64_t k, std::int64_t m) {
    return binomial(m + k - 6, k - 2) + 2 * binomial(m + k - 7, k - 3);
}

/// Upper bound on rk S_{k,α}(v_1..v_m):
///   m = 1: 1;  k = 1: 1;  k = 2: m;  m = 2: ⌈(k+1)/2⌉;  m = 3: ⌈(k+1)²/4⌉;
///   k ≥ 3, m ≥ 4:
///     Σ_{j=0}^{k-4} C(m+j−4, j)·⌈(k−j+1)²/4⌉ + 2·C(m+k−6, k−2) + 4·C(m+k−7, k−3).
inline std::int64_t rank_bound_formula(std::int64_t k, std::int64_t m) {
    if (k < 1 || m < 1) throw MathError("rank_bound_formula: k and m must be positive");
    if (m == 1 || k == 1) return 1;
    if (k == 2) return m;
    if (m == 2) return ceil_div(k + 1, 2);
    if (m == 3) return ceil_div((k + 1) * (k + 1), 4);
    std::int64_t total = 0;
    for (std::int64_t j = 0; j <= k - 4; ++j) total += binomial(m + j - 4, j) * ceil_div((k - j + 1) * (k - j + 1), 4);
    return total + 2 * binomial(m + k - 6, k - 2) + 4 * binomial(m + k - 7, k - 3);
}

/// The bipartitions scanned by flattening_lower_bound, as sorted row-mode sets
/// (0-based). Up to order 7 every split up to complement (mode 0 always on the
/// row side); from order 8 on only the odd/even split and the prefixes.
inline std::vector<std::vector<std::size_t>> lower_bound_bipartitions(std::size_t order) {
    std::vector<std::vector<std::size_t>> out;
    if (order < 2) return out;
    if (order <= 7) {
        for (std::uint32_t mask = 0; mask < (1u << (order - 1)); ++mask) {
            if (mask == (1u << (order - 1)) - 1) continue;  // all modes on the row side
            std::vector<std::size_t> rows{0};
            for (std::size_t p = 1; p < order; ++p)
                if (mask & (1u << (p - 1))) rows.push_back(p);
            out.push_back(std::move(rows));
        }
        return out;
    }
    std::vector<std::size_t> even_positions;  // 1-based odd positions 1,3,5,...
    for (std::size_t p = 0; p < order; p += 2) even_positions.push_back(p);
    out.push_back(even_positions);
    for (std::size_t len = 1; len < order; ++len) {
        std::vector<std::size_t> prefix(len);
        for (std::size_t p = 0; p < len; ++p) prefix[p] = p;
        out.push_back(std::move(prefix));
    }
    return out;
}

/// Max matrix rank over the bipartitions of lower_bound_bipartitions.
inline std::size_t flattening_lower_bound(const Tensor& t) {
    if (t.order() < 2) throw MathError("flattening_lower_bound: order must be at least 2");
    std::size_t best = 0;
    for (const auto& rows : lower_bound_bipartitions(t.order()))
        best = std::max(best, matrix_rank(flatten(t, rows).matrix));
    return best;
}

/// max over the three pivot modes of ⌈rank(F)/(d−1)⌉ for the Koszul flattening F.
inline std::size_t koszul_lower_bound(const Tensor& t) {
    if (t.order() != 3) throw MathError("koszul_lower_bound: tensor must have order 3");
    const std::size_t d = t.dim();
    if (d < 2) return t.is_zero() ? 0 : 1;
    std::size_t best = 0;
    for (std::size_t pivot = 0; pivot < 3; ++pivot) {
        const std::size_t r = matrix_rank(koszul_flatten(t, pivot));
        best = std::max(best, (r + d - 2) / (d - 1));
    }
    return best;
}

struct RankCertificate {
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::optional<Decomposition> witness;
    bool exact() const { return lower == upper; }
};

/// Combines the lower bounds with the length of a witness decomposition.
inline RankCertificate certify_rank(const Tensor& t, const Decomposition& witness) {
    if (witness.order() != t.order() || witness.dim() != t.dim() || witness.realize() != t)
        throw MathError("invalid witness");
    RankCertificate cert;
    if (t.order() >= 2) {
        cert.lower = flattening_lower_bound(t);
        if (t.order() == 3) cert.lower = std::max(cert.lower, koszul_lower_bound(t));
    } else {
        cert.lower = t.is_zero() ? 0 : 1;
    }
    cert.upper = witness.length();
    cert.witness = witness;
    return cert;
}

namespace detail {
inline void check_222(const Tensor& t, const char* who) {
    if (t.order() != 3 || t.dim() != 2) throw MathError(std::string(who) + ": tensor must be 2x2x2");
}
}  // namespace detail

/// Cayley's hyperdeterminant of a 2×2×2 tensor.
inline Rational hyperdet_222(const Tensor& t) {
    detail::check_222(t, "hyperdet_222");
    auto a = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& { return t[i * 4 + j * 2 + k]; };
    Rational det = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                   a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    det -= 2 * (a(0, 0, 0) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 1) + a(0, 0, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 1) +
                a(0, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 0) +
                a(0, 0, 1) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 0) + a(0, 1, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 0, 1));
    det += 4 * (a(0, 0, 0) * a(0, 1, 1) * a(1, 0, 1) * a(1, 1, 0) + a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0) * a(1, 1, 1));
    return det;
}

/// Ranks of the three single-mode flattenings of an order-3 tensor.
inline std::vector<std::size_t> single_mode_flattening_ranks(const Tensor& t) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < t.order(); ++p) {
        const std::size_t rows[1] = {p};
        out.push_back(matrix_rank(flatten(t, rows).matrix));
    }
    return out;
}

/// Complex rank of a 2×2×2 tensor: 0 for zero, 1 when every flattening has
/// rank ≤ 1, 3 when the hyperdeterminant vanishes and all three flattenings
/// have rank 2, otherwise 2. Real rank may differ and is not computed.
inline std::size_t classify_222_complex_rank(const Tensor& t) {
    detail::check_222(t, "classify_222_complex_rank");
    if (t.is_zero()) return 0;
    const auto ranks = single_mode_flattening_ranks(t);
    if (std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r <= 1; })) return 1;
    if (sgn(hyperdet_222(t)) == 0 && std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r == 2; }))
        return 3;
    return 2;
}

}  // namespace sigrank
