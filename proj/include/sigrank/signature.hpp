#pragma once

// Truncated tensor-algebra elements, signatures of piecewise linear paths via
// Chen's identity, an independent iterated-integral oracle, and the shuffle
// identity check.

#include "exact.hpp"
#include "tensor.hpp"
#include "words.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sigrank {

/// Levels 0..K of an element of the truncated tensor algebra over Q^d.
/// Level k is an order-k tensor. Signatures of paths have level 0 equal to 1.
class TruncatedSignature {
public:
    TruncatedSignature(std::size_t dim, std::vector<Tensor> levels) : dim_(dim), levels_(std::move(levels)) {
        if (levels_.empty()) throw MathError("truncated signature needs at least level 0");
        for (std::size_t k = 0; k < levels_.size(); ++k)
            if (levels_[k].order() != k || levels_[k].dim() != dim_)
                throw MathError("level " + std::to_string(k) + " has the wrong shape");
    }

    /// The unit: constant 1, every higher level zero.
    static TruncatedSignature trivial(std::size_t dim, std::size_t max_level) {
        std::vector<Tensor> levels;
        levels.push_back(Tensor::scalar(1, dim));
        for (std::size_t k = 1; k <= max_level; ++k) levels.emplace_back(k, dim);
        return TruncatedSignature(dim, std::move(levels));
    }

    std::size_t dim() const { return dim_; }
    std::size_t max_level() const { return levels_.size() - 1; }
    const Tensor& level(std::size_t k) const {
        if (k > max_level()) throw MathError("level exceeded");
        return levels_[k];
    }
    const std::vector<Tensor>& levels() const { return levels_; }
    const Rational& constant() const { return levels_[0][0]; }

    /// Entry σ_w for a word with letters in 1..d.
    const Rational& entry(const Word& w) const {
        if (w.size() > max_level()) throw MathError("level exceeded");
        w.check_alphabet(dim_);
        std::size_t flat = 0;
        for (auto l : w.letters) flat = flat * dim_ + (l - 1);
        return levels_[w.size()][flat];
    }

    friend bool operator==(const TruncatedSignature& a, const TruncatedSignature& b) {
        return a.dim_ == b.dim_ && a.levels_ == b.levels_;
    }

private:
    std::size_t dim_;
    std::vector<Tensor> levels_;
};

/// Truncated product in the tensor algebra: level k is Σ_{i+j=k} a_i ⊗ b_j.
inline TruncatedSignature chen_concat(const TruncatedSignature& a, const TruncatedSignature& b) {
    if (a.dim() != b.dim()) throw MathError("chen_concat: dimension mismatch");
    if (a.max_level() != b.max_level()) throw MathError("chen_concat: truncation level mismatch");
    const std::size_t d = a.dim(), K = a.max_level();
    std::vector<Tensor> levels;
    for (std::size_t k = 0; k <= K; ++k) {
        Tensor acc(k, d);
        for (std::size_t i = 0; i <= k; ++i) add_product(acc, a.level(i), b.level(k - i));
        levels.push_back(std::move(acc));
    }
    return TruncatedSignature(d, std::move(levels));
}

/// Signature of the segment t ↦ t·v: level k is v^{⊗k}/k!.
inline TruncatedSignature segment_signature(std::span<const Rational> v, std::size_t max_level) {
    if (v.empty()) throw MathError("segment vector must be nonempty");
    const std::size_t d = v.size();
    const Tensor step = Tensor::vector(v);
    std::vector<Tensor> levels;
    levels.push_back(Tensor::scalar(1, d));
    for (std::size_t k = 1; k <= max_level; ++k)
        levels.push_back(tensor_product(levels.back(), step) * Rational(1, static_cast<unsigned long>(k)));
    return TruncatedSignature(d, std::move(levels));
}

/// A piecewise linear path, stored by its segment increments.
class Path {
public:
    Path(std::size_t dim, std::vector<Vec> increments) : dim_(dim), increments_(std::move(increments)) {
        if (dim_ == 0) throw MathError("path dimension must be at least 1");
        if (increments_.empty()) throw MathError("path needs at least one segment");
        for (const auto& u : increments_)
            if (u.size() != dim_) throw MathError("increment has the wrong dimension");
    }

    std::size_t dim() const { return dim_; }
    std::size_t segments() const { return increments_.size(); }
    const std::vector<Vec>& increments() const { return increments_; }

    /// M·X, segment by segment.
    Path transformed(const Matrix& m) const {
        std::vector<Vec> out;
        for (const auto& u : increments_) out.push_back(m.apply(u));
        return Path(dim_, std::move(out));
    }

    friend bool operator==(const Path& a, const Path& b) {
        return a.dim_ == b.dim_ && a.increments_ == b.increments_;
    }

private:
    std::size_t dim_;
    std::vector<Vec> increments_;
};

/// Left fold of chen_concat over the segment signatures.
inline TruncatedSignature pwl_signature(const Path& p, std::size_t max_level) {
    TruncatedSignature acc = segment_signature(p.increments().front(), max_level);
    for (std::size_t j = 1; j < p.segments(); ++j)
        acc = chen_concat(acc, segment_signature(p.increments()[j], max_level));
    return acc;
}

/// The iterated integral ∫_{0<t_1<...<t_n<1} dX^{w_1}...dX^{w_n}, computed by
/// exact polynomial integration piece by piece. Does not use Chen's identity;
/// it exists to cross-check pwl_signature.
inline Rational iterated_integral_entry(const Path& p, const Word& w) {
    w.check_alphabet(p.dim());
    const std::size_t m = p.segments();
    // poly[j] holds F_n on piece j as coefficients in the local time τ ∈ [0,1].
    std::vector<std::vector<Rational>> poly(m, std::vector<Rational>{Rational(1)});
    Rational end_value = 1;
    for (auto letter : w.letters) {
        Rational carry = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const Rational& speed = p.increments()[j][letter - 1];
            std::vector<Rational> next(poly[j].size() + 1);
            next[0] = carry;
            for (std::size_t e = 0; e < poly[j].size(); ++e)
                next[e + 1] = poly[j][e] * speed / Rational(static_cast<unsigned long>(e + 1));
            Rational at_one = 0;
            for (const auto& c : next) at_one += c;
            carry = at_one;
            poly[j] = std::move(next);
        }
        end_value = carry;
    }
    return end_value;
}

/// Consecutive differences of the samples. The base point is dropped, which
/// the signature does not see anyway.
inline Path time_series_to_path(std::span<const Vec> samples) {
    if (samples.size() < 2) throw MathError("time series needs at least 2 samples");
    const std::size_t d = samples.front().size();
    std::vector<Vec> inc;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].size() != d || samples[i - 1].size() != d)
            throw MathError("time series samples have different dimensions");
        Vec u(d);
        for (std::size_t c = 0; c < d; ++c) u[c] = samples[i][c] - samples[i - 1][c];
        inc.push_back(std::move(u));
    }
    return Path(d, std::move(inc));
}

/// Σ coeff · σ_word.
inline Rational eval(const TruncatedSignature& sig, const WordSum& ws) {
    Rational out = 0;
    for (const auto& [w, c] : ws.terms()) {
        if (w.size() > sig.max_level()) throw MathError("level exceeded");
        out += Rational(static_cast<long>(c)) * sig.entry(w);
    }
    return out;
}

struct ShuffleVerdict {
    bool holds = true;
    std::optional<std::pair<Word, Word>> counterexample;
};

/// Checks σ_v·σ_w == σ_{v⧢w} for every pair with |v|+|w| ≤ max_level,
/// scanning |v|, v, |w|, w in lexicographic order; reports the first failure.
/// Interleavings are enumerated as position masks, independently of the
/// recursive shuffle().
inline ShuffleVerdict check_shuffle_identity(const TruncatedSignature& sig, std::size_t max_level) {
    if (max_level > sig.max_level()) throw MathError("check_shuffle_identity: max_level exceeds truncation");
    const std::size_t d = sig.dim();
    // masks[a][b]: bit patterns of length a+b with a ones (ones mark letters of v).
    std::vector<std::vector<std::vector<std::uint32_t>>> masks(max_level + 1,
                                                               std::vector<std::vector<std::uint32_t>>(max_level + 1));
    for (std::size_t a = 0; a <= max_level; ++a)
        for (std::size_t b = 0; a + b <= max_level; ++b)
            for (std::uint32_t mask = 0; mask < (1u << (a + b)); ++mask)
                if (static_cast<std::size_t>(__builtin_popcount(mask)) == a) masks[a][b].push_back(mask);

    std::vector<std::size_t> flat_pow(max_level + 1);
    for (std::size_t n = 0; n <= max_level; ++n) flat_pow[n] = ipow(d, n);

    for (std::size_t a = 0; a <= max_level; ++a) {
        const auto vs = all_words(d, a);
        for (std::size_t vi = 0; vi < vs.size(); ++vi) {
            const Rational& sv = sig.level(a)[vi];
            for (std::size_t b = 0; a + b <= max_level; ++b) {
                const auto ws = all_words(d, b);
                const Tensor& target = sig.level(a + b);
                for (std::size_t wi = 0; wi < ws.size(); ++wi) {
                    Rational rhs = 0;
                    for (auto mask : masks[a][b]) {
                        std::size_t flat = 0, pv = 0, pw = 0;
                        for (std::size_t pos = 0; pos < a + b; ++pos) {
                            // position 0 is the most significant letter
                            const bool from_v = (mask >> (a + b - 1 - pos)) & 1u;
                            const auto letter = from_v ? vs[vi].letters[pv++] : ws[wi].letters[pw++];
                            flat = flat * d + (letter - 1);
                        }
                        rhs += target[flat];
                    }
                    if (sv * sig.level(b)[wi] != rhs) return {false, std::make_pair(vs[vi], ws[wi])};
                }
            }
        }
    }
    return {};
}

}  // namespace sigrank
