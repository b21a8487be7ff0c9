#pragma once

// Free Lie elements inside the tensor algebra, the exp/log correspondence
// between log-signatures and signatures, the f_λ components of exp, Thrall
// vanishing, and pure-volume detection.

#include "exact.hpp"
#include "signature.hpp"
#include "tensor.hpp"
#include "words.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace sigrank {

/// [a, b] = a⊗b − b⊗a
inline Tensor lie_bracket(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim()) throw MathError("lie_bracket: dimension mismatch");
    Tensor out = tensor_product(a, b);
    add_product(out, b, a, Rational(-1));
    return out;
}

/// The left-normed bracketing operator
///   e_{i1}⊗...⊗e_{ik} ↦ [...[[e_{i1}, e_{i2}], e_{i3}], ..., e_{ik}],
/// extended linearly. Uses r(w·i) = r(w)⊗e_i − e_i⊗r(w) on the slices of t
/// by last letter.
inline Tensor dynkin_operator(const Tensor& t) {
    const std::size_t k = t.order(), d = t.dim();
    if (k == 0) throw MathError("dynkin_operator: order must be at least 1");
    if (k == 1) return t;
    Tensor out(k, d);
    const std::size_t inner = ipow(d, k - 1);
    for (std::size_t i = 0; i < d; ++i) {
        Tensor slice(k - 1, d);
        bool any = false;
        for (std::size_t f = 0; f < inner; ++f) {
            slice[f] = t[f * d + i];
            any = any || sgn(slice[f]) != 0;
        }
        if (!any) continue;
        const Tensor r = dynkin_operator(slice);
        for (std::size_t f = 0; f < inner; ++f) {
            if (sgn(r[f]) == 0) continue;
            out[f * d + i] += r[f];          // r ⊗ e_i
            out[i * inner + f] -= r[f];      // e_i ⊗ r
        }
    }
    return out;
}

/// Dynkin–Specht–Wever: t ∈ Lie^k(V) iff the bracketing operator maps t to k·t.
inline bool is_lie_element(const Tensor& t) {
    if (t.order() == 0) throw MathError("is_lie_element: order must be at least 1");
    return dynkin_operator(t) == t * Rational(static_cast<unsigned long>(t.order()));
}

inline bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        // w must be strictly smaller than each proper suffix
        if (!std::lexicographical_compare(w.letters.begin(), w.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(i),
                                          w.letters.end()))
            return false;
    }
    return true;
}

/// Lyndon words of length exactly n over {1..d}, in lexicographic order
/// (Duval's generation algorithm).
inline std::vector<Word> lyndon_words(std::size_t d, std::size_t n) {
    std::vector<Word> out;
    if (n == 0 || d == 0) return out;
    std::vector<std::uint32_t> w{1};
    while (!w.empty()) {
        if (w.size() == n) out.emplace_back(w);
        const std::size_t m = w.size();
        while (w.size() < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == d) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

/// Standard bracketing of a Lyndon word: b(w) = [b(u), b(v)] with v the
/// longest proper Lyndon suffix.
inline Tensor standard_bracketing(const Word& w, std::size_t d) {
    if (!is_lyndon(w)) throw MathError("standard_bracketing: '" + to_string(w) + "' is not a Lyndon word");
    w.check_alphabet(d);
    if (w.size() == 1) return Tensor::basis(w.letters[0] - 1, d);
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v(std::vector<std::uint32_t>(w.letters.begin() + static_cast<std::ptrdiff_t>(i), w.letters.end()));
        if (is_lyndon(v)) {
            Word u(std::vector<std::uint32_t>(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(i)));
            return lie_bracket(standard_bracketing(u, d), standard_bracketing(v, d));
        }
    }
    throw MathError("standard_bracketing: no Lyndon suffix");  // unreachable for Lyndon words
}

/// A basis of Lie^n(Q^d): standard bracketings of the Lyndon words of length n.
/// The coordinates this induces are our choice and are not canonical.
inline std::vector<Tensor> lyndon_basis(std::size_t d, std::size_t n) {
    std::vector<Tensor> out;
    for (const auto& w : lyndon_words(d, n)) out.push_back(standard_bracketing(w, d));
    return out;
}

/// T_(1), ..., T_(K), each in Lie^k(Q^d); the constant term is 0.
class LogSignature {
public:
    /// levels[k-1] is T_(k). Every level is checked for Lie membership.
    LogSignature(std::size_t dim, std::vector<Tensor> levels) : dim_(dim), levels_(std::move(levels)) {
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            const std::size_t k = i + 1;
            if (levels_[i].order() != k || levels_[i].dim() != dim_)
                throw MathError("log-signature level " + std::to_string(k) + " has the wrong shape");
            if (!is_lie_element(levels_[i]))
                throw MathError("log-signature level " + std::to_string(k) + " is not a Lie element");
        }
    }

    static LogSignature zero(std::size_t dim, std::size_t max_level) {
        std::vector<Tensor> levels;
        for (std::size_t k = 1; k <= max_level; ++k) levels.emplace_back(k, dim);
        return LogSignature(dim, std::move(levels));
    }

    std::size_t dim() const { return dim_; }
    std::size_t max_level() const { return levels_.size(); }
    /// T_(k), 1 ≤ k ≤ K.
    const Tensor& level(std::size_t k) const {
        if (k == 0 || k > max_level()) throw MathError("log-signature level out of range");
        return levels_[k - 1];
    }
    const std::vector<Tensor>& levels() const { return levels_; }

    friend bool operator==(const LogSignature& a, const LogSignature& b) {
        return a.dim_ == b.dim_ && a.levels_ == b.levels_;
    }

private:
    std::size_t dim_;
    std::vector<Tensor> levels_;
};

namespace detail {

/// powers[t][k] = level k of N^{⊗t}, for the nilpotent N with N[0] = 0 and
/// N[k] = nil(k) for 1 ≤ k ≤ K.
inline std::vector<std::vector<Tensor>> nilpotent_powers(std::size_t d, std::size_t K,
                                                         const std::function<const Tensor&(std::size_t)>& nil) {
    std::vector<std::vector<Tensor>> powers(K + 1);
    for (std::size_t t = 1; t <= K; ++t) {
        powers[t].reserve(K + 1);
        for (std::size_t k = 0; k <= K; ++k) powers[t].emplace_back(k, d);
        for (std::size_t k = t; k <= K; ++k) {
            if (t == 1) {
                powers[1][k] = nil(k);
                continue;
            }
            for (std::size_t j = 1; j + (t - 1) <= k; ++j) add_product(powers[t][k], nil(j), powers[t - 1][k - j]);
        }
    }
    return powers;
}

}  // namespace detail

/// exp(ℓ) truncated at K: level k is Σ over compositions (α_1..α_t) of k of
/// (1/t!)·T_(α_1)⊗...⊗T_(α_t).
inline TruncatedSignature exp_log_signature(const LogSignature& l) {
    const std::size_t d = l.dim(), K = l.max_level();
    auto powers = detail::nilpotent_powers(d, K, [&](std::size_t k) -> const Tensor& { return l.level(k); });
    std::vector<Tensor> levels;
    levels.push_back(Tensor::scalar(1, d));
    for (std::size_t k = 1; k <= K; ++k) {
        Tensor acc(k, d);
        for (std::size_t t = 1; t <= k; ++t) acc += powers[t][k] * inv_factorial(static_cast<unsigned>(t));
        levels.push_back(std::move(acc));
    }
    return TruncatedSignature(d, std::move(levels));
}

/// log(1 + N) = Σ (−1)^{t+1} N^{⊗t}/t on levels 1..K, without Lie validation.
inline std::vector<Tensor> log_series(const TruncatedSignature& s) {
    if (s.constant() != 1) throw MathError("log_signature: constant term must equal 1");
    const std::size_t d = s.dim(), K = s.max_level();
    auto powers = detail::nilpotent_powers(d, K, [&](std::size_t k) -> const Tensor& { return s.level(k); });
    std::vector<Tensor> levels;
    for (std::size_t k = 1; k <= K; ++k) {
        Tensor acc(k, d);
        for (std::size_t t = 1; t <= k; ++t)
            acc += powers[t][k] * Rational(t % 2 == 1 ? 1 : -1, static_cast<unsigned long>(t));
        levels.push_back(std::move(acc));
    }
    return levels;
}

/// The log-signature of a group-like element. Throws if some level of the
/// logarithm is not a Lie element, i.e. s violates the shuffle identity.
inline LogSignature log_signature(const TruncatedSignature& s) { return LogSignature(s.dim(), log_series(s)); }

/// A partition λ ⊢ k, parts kept weakly decreasing.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
        for (auto p : parts_)
            if (p == 0) throw MathError("partition parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    const std::vector<std::size_t>& parts() const { return parts_; }
    std::size_t sum() const { return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }
    std::size_t length() const { return parts_.size(); }
    /// a_i(λ): number of parts equal to i.
    std::size_t multiplicity(std::size_t i) const {
        return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), i));
    }
    bool is_uniform() const { return !parts_.empty() && parts_.front() == parts_.back(); }

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<std::size_t> parts_;
};

inline std::string to_string(const Partition& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.parts().size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(p.parts()[i]);
    }
    return out + ")";
}

/// All partitions of k, in reverse lexicographic order ((k) first).
inline std::vector<Partition> partitions_of(std::size_t k) {
    std::vector<Partition> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t max_part) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    if (k > 0) rec(k, k);
    return out;
}

/// T^{⊗h}; the order-0 unit when h = 0.
inline Tensor tensor_power(const Tensor& t, std::size_t h) {
    Tensor out = Tensor::scalar(1, t.dim());
    for (std::size_t i = 0; i < h; ++i) out = tensor_product(out, t);
    return out;
}

/// f_λ(ℓ) = Σ over distinct permutations α of λ of (1/t!)·T_(α_1)⊗...⊗T_(α_t).
inline Tensor f_lambda(const LogSignature& l, const Partition& lam) {
    const std::size_t k = lam.sum();
    if (k == 0) throw MathError("f_lambda: empty partition");
    if (k > l.max_level()) throw MathError("f_lambda: partition size exceeds truncation level");
    const std::size_t t = lam.length();
    const Rational weight = inv_factorial(static_cast<unsigned>(t));
    std::vector<std::size_t> alpha = lam.parts();
    std::sort(alpha.begin(), alpha.end());
    Tensor out(k, l.dim());
    do {
        Tensor term = l.level(alpha[0]);
        for (std::size_t i = 1; i < t; ++i) term = tensor_product(term, l.level(alpha[i]));
        out += term * weight;
    } while (std::next_permutation(alpha.begin(), alpha.end()));
    return out;
}

/// True iff λ has two distinct entries and one of its parts divides k; then
/// any signature φ_k(ℓ) lying in W_λ is zero. The condition is sufficient,
/// not necessary: W_(2,3,6) with k = 11 holds no nonzero signature either.
inline bool thrall_forced_zero(const Partition& lam, std::size_t k) {
    if (lam.sum() != k) throw MathError("thrall_forced_zero: partition does not sum to k");
    if (lam.is_uniform()) return false;
    return std::any_of(lam.parts().begin(), lam.parts().end(), [&](std::size_t p) { return k % p == 0; });
}

/// Tail test for pure n-volume: for every k0 ≤ k ≤ K, level k equals
/// T^{⊗h}/h! when k = h·n and 0 otherwise, with T = level n of log(s).
inline bool pure_volume_check(const TruncatedSignature& s, std::size_t n, std::size_t k0) {
    if (n == 0) throw MathError("pure_volume_check: n must be positive");
    if (k0 <= n) throw MathError("pure_volume_check: k0 must exceed n");
    if (k0 > s.max_level()) throw MathError("pure_volume_check: k0 exceeds truncation level");
    const auto logs = log_series(s);
    const Tensor& t = logs[n - 1];
    for (std::size_t k = k0; k <= s.max_level(); ++k) {
        if (k % n == 0) {
            const std::size_t h = k / n;
            if (s.level(k) != tensor_power(t, h) * inv_factorial(static_cast<unsigned>(h))) return false;
        } else if (!s.level(k).is_zero()) {
            return false;
        }
    }
    return true;
}

}  // namespace sigrank
