#pragma once

// Seeded generators for integer vectors, paths, Lie elements and
// log-signatures. Everything is reproducible from the seed.

#include "exact.hpp"
#include "lie.hpp"
#include "signature.hpp"
#include "tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace sigrank {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    Vec int_vector(std::size_t d, std::int64_t lo, std::int64_t hi) {
        Vec v(d);
        for (auto& x : v) x = Rational(static_cast<long>(integer(lo, hi)));
        return v;
    }

    /// Like int_vector, resampled until nonzero (needs lo < 0 < hi or 0 ∉ [lo, hi]).
    Vec nonzero_int_vector(std::size_t d, std::int64_t lo, std::int64_t hi) {
        for (;;) {
            Vec v = int_vector(d, lo, hi);
            for (const auto& x : v)
                if (sgn(x) != 0) return v;
        }
    }

    Path path(std::size_t d, std::size_t segments, std::int64_t lo, std::int64_t hi) {
        std::vector<Vec> inc;
        for (std::size_t j = 0; j < segments; ++j) inc.push_back(int_vector(d, lo, hi));
        return Path(d, std::move(inc));
    }

    /// Integer combination of the Lyndon basis of Lie^k.
    Tensor lie_element(std::size_t d, std::size_t k, std::int64_t lo, std::int64_t hi) {
        const auto& basis = lyndon_basis_cached(d, k);
        Tensor out(k, d);
        for (const auto& b : basis) {
            const auto c = integer(lo, hi);
            if (c != 0) out += b * Rational(static_cast<long>(c));
        }
        return out;
    }

    /// Levels 1..K drawn independently by lie_element.
    LogSignature log_signature(std::size_t d, std::size_t max_level, std::int64_t lo, std::int64_t hi) {
        std::vector<Tensor> levels;
        for (std::size_t k = 1; k <= max_level; ++k) levels.push_back(lie_element(d, k, lo, hi));
        return LogSignature(d, std::move(levels));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    const std::vector<Tensor>& lyndon_basis_cached(std::size_t d, std::size_t k) {
        auto key = std::make_pair(d, k);
        auto it = bases_.find(key);
        if (it == bases_.end()) it = bases_.emplace(key, lyndon_basis(d, k)).first;
        return it->second;
    }

    std::mt19937_64 rng_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Tensor>> bases_;
};

}  // namespace sigrank
