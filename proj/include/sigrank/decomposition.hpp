#pragma once

// Explicit decompositions of signature tensors of piecewise linear paths and
// of the weighted family
//   S_{k,α}(v_1..v_m) = Σ_{a_1+...+a_m=k} v_1^{⊗a_1}⊗...⊗v_m^{⊗a_m} / ((a_1+α)! a_2! ... a_m!).
//
// Each expanded summand is a non-commuting monomial in v_1..v_m with the
// variables in increasing order. A decomposition groups those monomials into
// elementary tensors: every group is a sequence of k slots, a slot being a
// set of candidate variables, and the group stands for the sum over all
// choices of one candidate per slot. Coefficients are read off the
// definition, so a grouping only has to say which monomials go together.

#include "exact.hpp"
#include "tensor.hpp"

#include <cstddef>
#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace sigrank {

struct DecompositionTerm {
    Rational coeff;
    std::vector<Vec> factors;
};

/// A list of weighted elementary tensors of one order and dimension.
class Decomposition {
public:
    Decomposition(std::size_t dim, std::size_t order) : dim_(dim), order_(order) {}

    void add(Rational coeff, std::vector<Vec> factors) {
        if (factors.size() != order_) throw MathError("decomposition term has the wrong number of factors");
        for (const auto& f : factors)
            if (f.size() != dim_) throw MathError("decomposition factor has the wrong dimension");
        terms_.push_back({std::move(coeff), std::move(factors)});
    }

    std::size_t dim() const { return dim_; }
    std::size_t order() const { return order_; }
    const std::vector<DecompositionTerm>& terms() const { return terms_; }

    /// Number of terms that are nonzero tensors.
    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& t : terms_) {
            bool nonzero = sgn(t.coeff) != 0;
            for (const auto& f : t.factors)
                nonzero = nonzero && std::any_of(f.begin(), f.end(), [](const Rational& x) { return sgn(x) != 0; });
            n += nonzero ? 1 : 0;
        }
        return n;
    }

    Tensor realize() const {
        Tensor out(order_, dim_);
        for (const auto& t : terms_) {
            if (sgn(t.coeff) == 0) continue;
            if (order_ == 0) {
                out[0] += t.coeff;
                continue;
            }
            out += Tensor::elementary(t.factors) * t.coeff;
        }
        return out;
    }

    /// v ⊗ (this)
    Decomposition prepend(const Vec& v) const {
        Decomposition out(dim_, order_ + 1);
        for (const auto& t : terms_) {
            std::vector<Vec> f;
            f.reserve(order_ + 1);
            f.push_back(v);
            f.insert(f.end(), t.factors.begin(), t.factors.end());
            out.add(t.coeff, std::move(f));
        }
        return out;
    }

    Decomposition scaled(const Rational& c) const {
        Decomposition out = *this;
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }

    Decomposition& append(const Decomposition& o) {
        if (o.dim_ != dim_ || o.order_ != order_) throw MathError("decomposition shape mismatch");
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        return *this;
    }

private:
    std::size_t dim_;
    std::size_t order_;
    std::vector<DecompositionTerm> terms_;
};

/// A group of monomials: slot p may hold any variable listed in slots[p]
/// (0-based variable indices).
struct MonomialGroup {
    std::vector<std::vector<std::size_t>> slots;
};

namespace detail {

inline void push_repeat(MonomialGroup& g, std::size_t var, std::size_t times) {
    for (std::size_t i = 0; i < times; ++i) g.slots.push_back({var});
}

inline std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {  // [lo, hi]
    std::vector<std::size_t> out;
    for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

}  // namespace detail

/// Coefficient of the monomial with variable sequence `word` in S_{k,α}:
/// 1/((a_1+α)! a_2! ... a_m!). The word must be weakly increasing.
inline Rational monomial_coefficient(std::span<const std::size_t> word, std::size_t alpha) {
    Integer den = 1;
    std::size_t first_count = 0;
    std::size_t i = 0;
    while (i < word.size()) {
        if (i > 0 && word[i] < word[i - 1]) throw std::logic_error("monomial variables out of order");
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        if (word[i] == 0)
            first_count = j - i;
        else
            den *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    den *= factorial(static_cast<unsigned>(first_count + alpha));
    return Rational(Integer(1), den);
}

/// Every monomial (variable sequence) covered by the groups, in group order.
inline std::vector<std::vector<std::size_t>> covered_monomials(std::span<const MonomialGroup> groups) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& g : groups) {
        std::vector<std::size_t> choice(g.slots.size(), 0);
        while (true) {
            std::vector<std::size_t> word(g.slots.size());
            for (std::size_t p = 0; p < word.size(); ++p) word[p] = g.slots[p][choice[p]];
            out.push_back(std::move(word));
            std::size_t p = choice.size();
            while (p-- > 0) {
                if (++choice[p] < g.slots[p].size()) break;
                choice[p] = 0;
            }
            if (p == static_cast<std::size_t>(-1)) break;
        }
    }
    return out;
}

/// Turns each group into one elementary tensor c·ℓ_1⊗...⊗ℓ_k where ℓ_p is a
/// linear combination of the slot's candidates. Requires the monomial
/// coefficients within a group to factor slot by slot; this is checked.
inline Decomposition decompose_groups(std::span<const Vec> vs, std::size_t alpha, std::span<const MonomialGroup> groups,
                                      std::size_t order) {
    if (vs.empty()) throw MathError("need at least one vector");
    const std::size_t d = vs[0].size();
    for (const auto& v : vs)
        if (v.size() != d) throw MathError("vectors have different dimensions");
    Decomposition out(d, order);
    for (const auto& g : groups) {
        if (g.slots.size() != order) throw std::logic_error("group has the wrong number of slots");
        std::vector<std::size_t> base(order);
        for (std::size_t p = 0; p < order; ++p) base[p] = g.slots[p].front();
        const Rational c0 = monomial_coefficient(base, alpha);

        std::vector<std::vector<Rational>> weight(order);  // weight[p][i]: factor for slots[p][i]
        std::vector<Vec> factors;
        for (std::size_t p = 0; p < order; ++p) {
            Vec f(d);
            for (auto var : g.slots[p]) {
                auto w = base;
                w[p] = var;
                const Rational r = monomial_coefficient(w, alpha) / c0;
                weight[p].push_back(r);
                for (std::size_t c = 0; c < d; ++c) f[c] += r * vs[var][c];
            }
            factors.push_back(std::move(f));
        }
        // separability: every monomial of the group gets its own coefficient
        std::vector<std::size_t> choice(order, 0);
        for (;;) {
            std::vector<std::size_t> w(order);
            Rational prod = c0;
            for (std::size_t p = 0; p < order; ++p) {
                w[p] = g.slots[p][choice[p]];
                prod *= weight[p][choice[p]];
            }
            if (monomial_coefficient(w, alpha) != prod)
                throw std::logic_error("monomial group does not factor into an elementary tensor");
            std::size_t p = order;
            while (p-- > 0) {
                if (++choice[p] < g.slots[p].size()) break;
                choice[p] = 0;
            }
            if (p == static_cast<std::size_t>(-1)) break;
        }
        out.add(c0, std::move(factors));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Groupings. Variables are 0-based: u = 0, v = 1, w = 2.

/// m = 1: the single monomial v^k.
inline std::vector<MonomialGroup> groups_one_segment(std::size_t k) {
    MonomialGroup g;
    detail::push_repeat(g, 0, k);
    return {g};
}

/// m = 2, pairing consecutive monomials u^j v^{k-j}:
///   k = 2s+1: u^{2j} ⊗ (u | v) ⊗ v^{2s-2j},             j = 0..s
///   k = 2s:   u^{2s-2j+1} ⊗ (u | v) ⊗ v^{2j-2},         j = 1..s,  plus v^k.
/// ⌈(k+1)/2⌉ groups.
inline std::vector<MonomialGroup> groups_two_segments(std::size_t k) {
    std::vector<MonomialGroup> out;
    if (k % 2 == 1) {
        const std::size_t s = (k - 1) / 2;
        for (std::size_t j = 0; j <= s; ++j) {
            MonomialGroup g;
            detail::push_repeat(g, 0, 2 * j);
            g.slots.push_back({0, 1});
            detail::push_repeat(g, 1, 2 * s - 2 * j);
            out.push_back(std::move(g));
        }
    } else {
        const std::size_t s = k / 2;
        for (std::size_t j = 1; j <= s; ++j) {
            MonomialGroup g;
            detail::push_repeat(g, 0, 2 * s - 2 * j + 1);
            g.slots.push_back({0, 1});
            detail::push_repeat(g, 1, 2 * j - 2);
            out.push_back(std::move(g));
        }
        MonomialGroup last;
        detail::push_repeat(last, 1, k);
        out.push_back(std::move(last));
    }
    return out;
}

/// m = 3, ⌈(k+1)²/4⌉ groups.
///   k = 2s+1:
///     u^{2i} ⊗ (u|v|w) ⊗ w^{2(s-i)},                         i = 0..s
///     u^j ⊗ v^{2(s-i)-j} ⊗ (v|w) ⊗ w^{2i},                   i = 0..s-1, j = 1..2(s-i)-1
///     v^{2i} ⊗ (v|w) ⊗ w^{2(s-i)},                           i = 1..s
///   k = 2s:
///     u^{2i+1} ⊗ (u|v|w) ⊗ w^{2(s-i-1)},                     i = 0..s-1
///     u^j ⊗ v^{2(s-i)-j-1} ⊗ (v|w) ⊗ w^{2i},                 i = 0..s-2, j = 1..2(s-i)-2
///     v^{2i+1} ⊗ (v|w) ⊗ w^{2(s-i-1)},                       i = 0..s-1
///     w^k
inline std::vector<MonomialGroup> groups_three_segments(std::size_t k) {
    using detail::push_repeat;
    std::vector<MonomialGroup> out;
    if (k % 2 == 1) {
        const std::size_t s = (k - 1) / 2;
        for (std::size_t i = 0; i <= s; ++i) {
            MonomialGroup g;
            push_repeat(g, 0, 2 * i);
            g.slots.push_back({0, 1, 2});
            push_repeat(g, 2, 2 * (s - i));
            out.push_back(std::move(g));
        }
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 1; j + 1 <= 2 * (s - i); ++j) {
                MonomialGroup g;
                push_repeat(g, 0, j);
                push_repeat(g, 1, 2 * (s - i) - j);
                g.slots.push_back({1, 2});
                push_repeat(g, 2, 2 * i);
                out.push_back(std::move(g));
            }
        for (std::size_t i = 1; i <= s; ++i) {
            MonomialGroup g;
            push_repeat(g, 1, 2 * i);
            g.slots.push_back({1, 2});
            push_repeat(g, 2, 2 * (s - i));
            out.push_back(std::move(g));
        }
    } else {
        const std::size_t s = k / 2;
        for (std::size_t i = 0; i < s; ++i) {
            MonomialGroup g;
            push_repeat(g, 0, 2 * i + 1);
            g.slots.push_back({0, 1, 2});
            push_repeat(g, 2, 2 * (s - i - 1));
            out.push_back(std::move(g));
        }
        for (std::size_t i = 0; i + 2 <= s; ++i)
            for (std::size_t j = 1; j + 2 <= 2 * (s - i); ++j) {
                MonomialGroup g;
                push_repeat(g, 0, j);
                push_repeat(g, 1, 2 * (s - i) - j - 1);
                g.slots.push_back({1, 2});
                push_repeat(g, 2, 2 * i);
                out.push_back(std::move(g));
            }
        for (std::size_t i = 0; i < s; ++i) {
            MonomialGroup g;
            push_repeat(g, 1, 2 * i + 1);
            g.slots.push_back({1, 2});
            push_repeat(g, 2, 2 * (s - i - 1));
            out.push_back(std::move(g));
        }
        MonomialGroup last;
        push_repeat(last, 2, k);
        out.push_back(std::move(last));
    }
    return out;
}

/// k = 2: v_i ⊗ (v_i | v_{i+1} | ... | v_m), i = 1..m.
inline std::vector<MonomialGroup> groups_second_level(std::size_t m) {
    std::vector<MonomialGroup> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back({{{i}, detail::range(i, m - 1)}});
    return out;
}

/// k = 3, with s = ⌈m/2⌉ and 1-based i:
///   v_1 ⊗ v_1 ⊗ (v_1..v_m)
///   v_i ⊗ v_i ⊗ (v_i..v_m),            i = 2..s
///   (v_1..v_{i-1}) ⊗ v_i ⊗ (v_i..v_m), i = 2..s
///   (v_1..v_i) ⊗ v_i ⊗ v_i,            i = s+1..m
///   (v_1..v_i) ⊗ v_i ⊗ (v_{i+1}..v_m), i = s+1..m-1
/// 2m − 2 groups.
inline std::vector<MonomialGroup> groups_third_level(std::size_t m) {
    using detail::range;
    if (m < 2) throw MathError("third-level grouping needs m >= 2");
    const std::size_t s = (m + 1) / 2;
    std::vector<MonomialGroup> out;
    out.push_back({{{0}, {0}, range(0, m - 1)}});
    for (std::size_t i = 2; i <= s; ++i) out.push_back({{{i - 1}, {i - 1}, range(i - 1, m - 1)}});
    for (std::size_t i = 2; i <= s; ++i) out.push_back({{range(0, i - 2), {i - 1}, range(i - 1, m - 1)}});
    for (std::size_t i = s + 1; i <= m; ++i) out.push_back({{range(0, i - 1), {i - 1}, {i - 1}}});
    for (std::size_t i = s + 1; i + 1 <= m; ++i) out.push_back({{range(0, i - 1), {i - 1}, range(i, m - 1)}});
    return out;
}

// ---------------------------------------------------------------------------

/// S_{k,α}(v_1..v_m) straight from its definition (dynamic programming over
/// the variables, last to first).
inline Tensor s_k_alpha(std::span<const Vec> vs, std::size_t k, std::size_t alpha) {
    if (k < 2) throw MathError("s_k_alpha: k must be at least 2");
    if (vs.empty()) throw MathError("s_k_alpha: need at least one vector");
    const std::size_t d = vs[0].size(), m = vs.size();
    for (const auto& v : vs)
        if (v.size() != d) throw MathError("s_k_alpha: vectors have different dimensions");
    // tail[r] = Σ_{a_j+...+a_m = r} v_j^{a_j}/a_j! ⊗ ... (for the current j)
    std::vector<Tensor> tail;
    for (std::size_t r = 0; r <= k; ++r) tail.push_back(Tensor::power(vs[m - 1], r) * inv_factorial(static_cast<unsigned>(r)));
    for (std::size_t j = m - 1; j-- > 0;) {
        const std::size_t extra = j == 0 ? alpha : 0;
        std::vector<Tensor> next;
        for (std::size_t r = 0; r <= k; ++r) {
            Tensor acc(r, d);
            for (std::size_t a = 0; a <= r; ++a)
                add_product(acc, Tensor::power(vs[j], a), tail[r - a], inv_factorial(static_cast<unsigned>(a + extra)));
            next.push_back(std::move(acc));
        }
        tail = std::move(next);
        if (j == 0) return tail[k];
    }
    // m == 1
    return Tensor::power(vs[0], k) * inv_factorial(static_cast<unsigned>(k + alpha));
}

/// σ^{(k)} of the two-segment path u ⊔ v as ⌈(k+1)/2⌉ elementary tensors.
inline Decomposition decompose_two_segments(const Vec& u, const Vec& v, std::size_t k) {
    if (k == 0) throw MathError("decompose_two_segments: k must be at least 1");
    const std::vector<Vec> vs{u, v};
    const auto groups = groups_two_segments(k);
    return decompose_groups(vs, 0, groups, k);
}

/// σ^{(k)} of u ⊔ v ⊔ w as at most ⌈(k+1)²/4⌉ elementary tensors.
inline Decomposition decompose_three_segments(const Vec& u, const Vec& v, const Vec& w, std::size_t k) {
    if (k == 0) throw MathError("decompose_three_segments: k must be at least 1");
    const std::vector<Vec> vs{u, v, w};
    const auto groups = groups_three_segments(k);
    return decompose_groups(vs, 0, groups, k);
}

/// σ^{(2)} of v_1 ⊔ ... ⊔ v_m as Σ_i v_i ⊗ (v_i/2 + v_{i+1} + ... + v_m).
inline Decomposition decompose_second_level(std::span<const Vec> vs) {
    if (vs.empty()) throw MathError("decompose_second_level: need at least one segment");
    const auto groups = groups_second_level(vs.size());
    return decompose_groups(vs, 0, groups, 2);
}

/// S_{3,α}(v_1..v_m) as at most 2m − 2 elementary tensors.
inline Decomposition decompose_s3_alpha(std::span<const Vec> vs, std::size_t alpha) {
    if (vs.size() < 2) throw MathError("decompose_s3_alpha: need m >= 2");
    const auto groups = groups_third_level(vs.size());
    return decompose_groups(vs, alpha, groups, 3);
}

/// S_{k,α}(v_1..v_m) by peeling off v_1:
///   S_{k,α}(v_1..v_m) = v_1 ⊗ S_{k-1,α+1}(v_1..v_m) + (1/α!)·S_{k,0}(v_2..v_m),
/// bottoming out at m ≤ 3 (one/two/three-segment groupings, α on the first
/// variable) and at k ≤ 3 (second/third-level groupings).
inline Decomposition decompose_s_k_alpha(std::span<const Vec> vs, std::size_t k, std::size_t alpha) {
    if (k < 2) throw MathError("decompose_s_k_alpha: k must be at least 2");
    if (vs.empty()) throw MathError("decompose_s_k_alpha: need at least one vector");
    const std::size_t m = vs.size();
    if (m == 1) return decompose_groups(vs, alpha, groups_one_segment(k), k);
    if (k == 2) return decompose_groups(vs, alpha, groups_second_level(m), 2);
    if (k == 3) return decompose_s3_alpha(vs, alpha);
    if (m == 2) return decompose_groups(vs, alpha, groups_two_segments(k), k);
    if (m == 3) return decompose_groups(vs, alpha, groups_three_segments(k), k);
    Decomposition out = decompose_s_k_alpha(vs, k - 1, alpha + 1).prepend(vs[0]);
    out.append(decompose_s_k_alpha(vs.subspan(1), k, 0).scaled(inv_factorial(static_cast<unsigned>(alpha))));
    return out;
}

}  // namespace sigrank
