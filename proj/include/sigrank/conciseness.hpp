#pragma once

// Mode subspaces, symmetric conciseness, hyperplane recovery from a truncated
// signature, and the divisor propagation harness.

#include "exact.hpp"
#include "flatten.hpp"
#include "matrix.hpp"
#include "signature.hpp"
#include "tensor.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sigrank {

/// Span of the mode-p fibers, i.e. the row space of the mode-p unfolding.
inline Subspace mode_subspace(const Tensor& t, std::size_t mode) {
    const Matrix fibers = mode_fibers(t, mode);
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < fibers.rows(); ++r) {
        Vec row = fibers.row(r);
        bool zero = true;
        for (const auto& x : row) zero = zero && sgn(x) == 0;
        if (!zero) rows.push_back(std::move(row));
    }
    return Subspace::span(rows, t.dim());
}

/// One subspace per mode. t is concise iff all of them are full.
inline std::vector<Subspace> mode_subspaces(const Tensor& t) {
    if (t.order() < 1) throw MathError("mode_subspaces: order must be at least 1");
    std::vector<Subspace> out;
    for (std::size_t p = 0; p < t.order(); ++p) out.push_back(mode_subspace(t, p));
    return out;
}

inline bool is_concise(const Tensor& t) {
    for (const auto& s : mode_subspaces(t))
        if (!s.is_full()) return false;
    return true;
}

/// The smallest W with t ∈ W^{⊗k}: the join of the mode subspaces.
inline Subspace symmetric_conciseness(const Tensor& t) {
    Subspace w(t.dim());
    for (const auto& s : mode_subspaces(t)) w = join(w, s);
    return w;
}

/// t ∈ w^{⊗k}. Order-0 tensors lie in every w^{⊗0}.
inline bool confined_to(const Tensor& t, const Subspace& w) {
    if (t.dim() != w.ambient_dim()) throw MathError("confined_to: dimension mismatch");
    return t.order() == 0 || w.contains(symmetric_conciseness(t));
}

/// W joined over levels 1..K. A proper W is only certified up to level K:
/// higher levels are not seen.
struct HyperplaneRecovery {
    std::optional<Subspace> subspace;  // absent when W is the whole space
    std::size_t certified_up_to = 0;
};

inline HyperplaneRecovery hyperplane_recovery(const TruncatedSignature& s) {
    if (s.max_level() < 2) throw MathError("hyperplane_recovery: truncation level must be at least 2");
    Subspace w(s.dim());
    for (std::size_t k = 1; k <= s.max_level(); ++k) w = join(w, symmetric_conciseness(s.level(k)));
    HyperplaneRecovery out;
    out.certified_up_to = s.max_level();
    if (!w.is_full()) out.subspace = std::move(w);
    return out;
}

struct DivisorPropagation {
    bool holds = true;
    std::vector<std::size_t> divisors;    // the divisors t of k that were checked
    std::optional<std::size_t> failed_at;  // first divisor whose level escapes w
};

/// Given level k ∈ w^{⊗k}, checks level t ∈ w^{⊗t} for every divisor t of k.
inline DivisorPropagation divisor_propagation_check(const TruncatedSignature& s, std::size_t k, const Subspace& w) {
    if (k == 0 || k > s.max_level()) throw MathError("divisor_propagation_check: level out of range");
    if (w.ambient_dim() != s.dim()) throw MathError("divisor_propagation_check: dimension mismatch");
    if (!confined_to(s.level(k), w)) throw MathError("hypothesis not met");
    DivisorPropagation out;
    for (std::size_t t = 1; t <= k; ++t) {
        if (k % t != 0) continue;
        out.divisors.push_back(t);
        if (out.holds && !confined_to(s.level(t), w)) {
            out.holds = false;
            out.failed_at = t;
        }
    }
    return out;
}

}  // namespace sigrank
