#pragma once

// Symmetry classification of tensors (full, skew, and the two partial blocks),
// the 2×2×2 signature family, and harnesses for the statements about
// symmetric and skew signature tensors.

#include "exact.hpp"
#include "lie.hpp"
#include "signature.hpp"
#include "tensor.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sigrank {

/// The two index blocks for which partial symmetry is tracked.
enum class Block { first, last };

inline std::string to_string(Block b) { return b == Block::first ? "first_k_minus_1" : "last_k_minus_1"; }

/// A multi-index at which swapping two adjacent positions breaks a property.
struct SymmetryWitness {
    std::string property;  // "first_k_minus_1", "last_k_minus_1" or "skew"
    std::size_t position = 0;  // swapped positions are position and position+1 (0-based)
    MultiIndex index;
};

struct SymmetryReport {
    bool is_symmetric = false;
    bool is_skew = false;
    bool partial_first = false;
    bool partial_last = false;
    std::optional<SymmetryWitness> witness;

    bool partial(Block b) const { return b == Block::first ? partial_first : partial_last; }
};

namespace detail {

/// First multi-index where t(..i_p, i_{p+1}..) != sign·t(..i_{p+1}, i_p..).
inline std::optional<MultiIndex> adjacent_violation(const Tensor& t, std::size_t p, int sign) {
    MultiIndex swapped;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        swapped = t.multi_index(flat);
        std::swap(swapped[p], swapped[p + 1]);
        const Rational& other = t.at(swapped);
        if (sign > 0 ? t[flat] != other : t[flat] != -other) return t.multi_index(flat);
    }
    return std::nullopt;
}

/// Checks adjacent swaps at positions lo..hi-1; records the first violation.
inline bool invariant_on(const Tensor& t, std::size_t lo, std::size_t hi, int sign, const char* label,
                         std::optional<SymmetryWitness>& witness) {
    for (std::size_t p = lo; p < hi; ++p) {
        if (auto v = adjacent_violation(t, p, sign)) {
            if (!witness) witness = SymmetryWitness{label, p, std::move(*v)};
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Exact symmetry flags. Adjacent transpositions generate each group, so only
/// those are tested. The witness is the first violation found, scanning the
/// first block, then the last block, then skew symmetry.
inline SymmetryReport symmetry_report(const Tensor& t) {
    const std::size_t k = t.order();
    if (k < 2) throw MathError("symmetry_report: order must be at least 2");
    SymmetryReport r;
    r.partial_first = detail::invariant_on(t, 0, k - 2, +1, "first_k_minus_1", r.witness);
    r.partial_last = detail::invariant_on(t, 1, k - 1, +1, "last_k_minus_1", r.witness);
    // The two blocks overlap when k ≥ 3 and generate the full group; for k = 2
    // both are trivial, so the single swap is tested directly.
    if (k == 2)
        r.is_symmetric = detail::invariant_on(t, 0, 1, +1, "symmetric", r.witness);
    else
        r.is_symmetric = r.partial_first && r.partial_last;
    r.is_skew = detail::invariant_on(t, 0, k - 1, -1, "skew", r.witness);
    return r;
}

/// Coordinates of a level-3 signature in dimension 2: (x, y) is the first
/// log-signature level, a the area coordinate, (b, c) the two level-3 Lie
/// coordinates.
struct Sig222Params {
    Rational x, y, a, b, c;
};

/// The eight entries
///   σ111 = x³/6            σ222 = y³/6
///   σ112 = x²y/6 + ax/2 + b   σ121 = x²y/6 − 2b   σ211 = x²y/6 − ax/2 + b
///   σ122 = xy²/6 + ay/2 + c   σ212 = xy²/6 − 2c   σ221 = xy²/6 − ay/2 + c
inline Tensor sig222_from_params(const Sig222Params& p) {
    Tensor t(3, 2);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Rational& v) { t[i * 4 + j * 2 + k] = v; };
    const Rational xxy = p.x * p.x * p.y / 6, xyy = p.x * p.y * p.y / 6;
    set(0, 0, 0, p.x * p.x * p.x / 6);
    set(0, 0, 1, xxy + p.a * p.x / 2 + p.b);
    set(0, 1, 0, xxy - 2 * p.b);
    set(1, 0, 0, xxy - p.a * p.x / 2 + p.b);
    set(0, 1, 1, xyy + p.a * p.y / 2 + p.c);
    set(1, 0, 1, xyy - 2 * p.c);
    set(1, 1, 0, xyy - p.a * p.y / 2 + p.c);
    set(1, 1, 1, p.y * p.y * p.y / 6);
    return t;
}

/// The log-signature (T1, T2, T3) whose exponential has sig222_from_params(p)
/// as level 3.
inline LogSignature sig222_log_signature(const Sig222Params& p) {
    Tensor t1(1, 2), t2(2, 2), t3(3, 2);
    t1[0] = p.x;
    t1[1] = p.y;
    t2[1] = p.a;
    t2[2] = -p.a;
    // b·(e112 − 2e121 + e211) + c·(e122 − 2e212 + e221)
    t3[1] += p.b;
    t3[2] -= 2 * p.b;
    t3[4] += p.b;
    t3[3] += p.c;
    t3[5] -= 2 * p.c;
    t3[6] += p.c;
    return LogSignature(2, {t1, t2, t3});
}

/// Closed-form partial-symmetry condition for the 2×2×2 family:
/// first block ax = 6b and ay = −6c; last block ax = −6b and ay = 6c.
inline bool partial_symmetry_constraint(const Sig222Params& p, Block side) {
    const int s = side == Block::first ? 1 : -1;
    return p.a * p.x == s * 6 * p.b && p.a * p.y == -s * 6 * p.c;
}

/// Outcome of a theorem harness. `vacuous` marks inputs outside the
/// hypothesis, which pass trivially.
struct HarnessResult {
    bool holds = true;
    bool vacuous = false;
    std::string violated;  // the first failed clause, empty when holds
};

/// If exp level k is nonzero and partially symmetric, checks:
/// T_(1) ≠ 0; T_(i) = 0 for 2 ≤ i ≤ k/2; exp level i symmetric for 2 ≤ i ≤ k;
/// and exp level k−1 carries the same partial flag.
inline HarnessResult verify_partial_symmetry_consequences(const LogSignature& l, std::size_t k) {
    if (k < 4) throw MathError("verify_partial_symmetry_consequences: k must be at least 4");
    if (k > l.max_level()) throw MathError("verify_partial_symmetry_consequences: k exceeds truncation level");
    const auto sig = exp_log_signature(l);
    const Tensor& top = sig.level(k);
    const auto rep = symmetry_report(top);
    HarnessResult out;
    if (top.is_zero() || !(rep.partial_first || rep.partial_last)) {
        out.vacuous = true;
        return out;
    }
    auto fail = [&](std::string clause) {
        out.holds = false;
        out.violated = std::move(clause);
        return out;
    };
    if (l.level(1).is_zero()) return fail("T_(1) != 0");
    for (std::size_t i = 2; i <= k / 2; ++i)
        if (!l.level(i).is_zero()) return fail("T_(" + std::to_string(i) + ") == 0");
    for (std::size_t i = 2; i <= k; ++i)
        if (!symmetry_report(sig.level(i)).is_symmetric)
            return fail("exp level " + std::to_string(i) + " symmetric");
    const auto below = symmetry_report(sig.level(k - 1));
    if ((rep.partial_first && !below.partial_first) || (rep.partial_last && !below.partial_last))
        return fail("exp level " + std::to_string(k - 1) + " carries the partial flag");
    return out;
}

/// True iff (exp level k skew ⟹ exp level k zero).
inline bool skew_impossibility_check(const LogSignature& l, std::size_t k) {
    if (k < 3) throw MathError("skew_impossibility_check: k must be at least 3");
    if (k > l.max_level()) throw MathError("skew_impossibility_check: k exceeds truncation level");
    const Tensor top = exp_log_signature(l).level(k);
    return !symmetry_report(top).is_skew || top.is_zero();
}

}  // namespace sigrank
