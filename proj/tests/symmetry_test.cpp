#include "random.hpp"
#include "rank.hpp"
#include "symmetry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace sigrank;

namespace {

// Invariance under every permutation of the listed positions, by brute force.
bool invariant_under_all(const Tensor& t, const std::vector<std::size_t>& positions, int sign) {
    std::vector<std::size_t> sub = positions;
    std::sort(sub.begin(), sub.end());
    do {
        std::vector<std::size_t> perm(t.order());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = 0; i < positions.size(); ++i) perm[positions[i]] = sub[i];
        // sign of the permutation by counting inversions
        int inv = 0;
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (std::size_t j = i + 1; j < sub.size(); ++j) inv += sub[i] > sub[j];
        const int s = (sign < 0 && inv % 2) ? -1 : 1;
        if (permute_modes(t, perm) != t * Rational(s)) return false;
    } while (std::next_permutation(sub.begin(), sub.end()));
    return true;
}

std::vector<std::size_t> iota_from(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

Tensor random_tensor(Sampler& s, std::size_t k, std::size_t d) {
    Tensor t(k, d);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(static_cast<long>(s.integer(-1, 1)));
    return t;
}

Tensor symmetrize_block(const Tensor& t, const std::vector<std::size_t>& positions) {
    Tensor out(t.order(), t.dim());
    std::vector<std::size_t> sub = positions;
    do {
        std::vector<std::size_t> perm(t.order());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = 0; i < positions.size(); ++i) perm[positions[i]] = sub[i];
        out += permute_modes(t, perm);
    } while (std::next_permutation(sub.begin(), sub.end()));
    return out;
}

Sig222Params params(long x, long y, long a, long b, long c) {
    return {Rational(x), Rational(y), Rational(a), Rational(b), Rational(c)};
}

}  // namespace

TEST(SymmetryReport, PowerOfVector) {
    const Vec v{1, -2, 3};
    for (std::size_t k = 2; k <= 4; ++k) {
        const auto r = symmetry_report(Tensor::power(v, k));
        EXPECT_TRUE(r.is_symmetric);
        EXPECT_TRUE(r.partial_first);
        EXPECT_TRUE(r.partial_last);
        EXPECT_FALSE(r.is_skew);
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_EQ(r.witness->property, "skew");
    }
}

TEST(SymmetryReport, AreaIsSkew) {
    Tensor area(2, 2);
    area[1] = 1;
    area[2] = -1;
    const auto r = symmetry_report(area);
    EXPECT_TRUE(r.is_skew);
    EXPECT_FALSE(r.is_symmetric);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->property, "symmetric");
    EXPECT_THROW(symmetry_report(Tensor(1, 2)), MathError);
}

TEST(SymmetryReport, AgreesWithBruteForceOverAllPermutations) {
    Sampler s(61);
    for (std::size_t k = 2; k <= 4; ++k)
        for (int trial = 0; trial < 20; ++trial) {
            Tensor t = random_tensor(s, k, 2);
            // Bias some samples towards the structured cases.
            if (trial % 4 == 1) t = symmetrize_block(t, iota_from(0, k - 1));
            if (trial % 4 == 2) t = symmetrize_block(t, iota_from(1, k));
            if (trial % 4 == 3) t = symmetrize_block(t, iota_from(0, k));
            const auto r = symmetry_report(t);
            EXPECT_EQ(r.is_symmetric, invariant_under_all(t, iota_from(0, k), +1));
            EXPECT_EQ(r.is_skew, invariant_under_all(t, iota_from(0, k), -1));
            EXPECT_EQ(r.partial_first, invariant_under_all(t, iota_from(0, k - 1), +1));
            EXPECT_EQ(r.partial_last, invariant_under_all(t, iota_from(1, k), +1));
            // Both blocks are single positions when k = 2, so the flags say nothing there.
            if (k >= 3) {
                EXPECT_EQ(r.is_symmetric, r.partial_first && r.partial_last);
            }
            if (r.is_symmetric) {
                EXPECT_TRUE(r.partial_first && r.partial_last);
            }
            const bool some_false = !r.is_symmetric || !r.is_skew || !r.partial_first || !r.partial_last;
            EXPECT_EQ(r.witness.has_value(), some_false);
        }
}

TEST(SymmetryReport, WitnessPointsAtABrokenSwap) {
    Sampler s(62);
    const Tensor t = random_tensor(s, 3, 3);
    const auto r = symmetry_report(t);
    ASSERT_TRUE(r.witness.has_value());
    auto swapped = r.witness->index;
    std::swap(swapped[r.witness->position], swapped[r.witness->position + 1]);
    if (r.witness->property == "skew")
        EXPECT_NE(t.at(r.witness->index), -t.at(swapped));
    else
        EXPECT_NE(t.at(r.witness->index), t.at(swapped));
}

TEST(Sig222, DisplayedEntries) {
    EXPECT_TRUE(sig222_from_params(params(0, 0, 0, 0, 0)).is_zero());
    const Tensor t = sig222_from_params(params(1, 0, 0, 0, 0));
    Tensor expected(3, 2);
    expected[0] = Rational(1, 6);
    EXPECT_EQ(t, expected);
    // σ112 = x²y/6 + ax/2 + b at (6,−6,1,1,1): −36 + 3 + 1
    EXPECT_EQ(sig222_from_params(params(6, -6, 1, 1, 1))[1], -32);
}

TEST(Sig222, EqualsExpLevelThree) {
    Sampler s(63);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = params(s.integer(-4, 4), s.integer(-4, 4), s.integer(-4, 4), s.integer(-4, 4), s.integer(-4, 4));
        EXPECT_EQ(sig222_from_params(p), exp_log_signature(sig222_log_signature(p)).level(3));
    }
}

TEST(Sig222, PaperParametersArePartiallySymmetricOfRankThree) {
    const auto p = params(6, -6, 1, 1, 1);
    EXPECT_TRUE(partial_symmetry_constraint(p, Block::first));
    const Tensor t = sig222_from_params(p);
    const auto r = symmetry_report(t);
    EXPECT_TRUE(r.partial_first);
    EXPECT_FALSE(r.partial_last);
    EXPECT_FALSE(r.is_symmetric);
    EXPECT_EQ(hyperdet_222(t), 0);
    EXPECT_EQ(single_mode_flattening_ranks(t), (std::vector<std::size_t>{2, 2, 2}));
    EXPECT_EQ(classify_222_complex_rank(t), 3u);
    EXPECT_FALSE(partial_symmetry_constraint(params(1, 1, 1, 1, 1), Block::first));
}

TEST(Sig222, ConstraintMatchesReportOnBothSides) {
    Sampler s(64);
    for (int trial = 0; trial < 300; ++trial) {
        Sig222Params p = params(s.integer(-3, 3), s.integer(-3, 3), s.integer(-3, 3), 0, 0);
        // Half of the samples are steered onto the constraint of one side.
        const int mode = trial % 3;
        if (mode == 0) {
            p.b = p.a * p.x / 6;
            p.c = -p.a * p.y / 6;
        } else if (mode == 1) {
            p.b = -p.a * p.x / 6;
            p.c = p.a * p.y / 6;
        } else {
            p.b = Rational(static_cast<long>(s.integer(-3, 3)));
            p.c = Rational(static_cast<long>(s.integer(-3, 3)));
        }
        const Tensor t = sig222_from_params(p);
        const auto r = symmetry_report(t);
        EXPECT_EQ(partial_symmetry_constraint(p, Block::first), r.partial_first);
        EXPECT_EQ(partial_symmetry_constraint(p, Block::last), r.partial_last);
        if ((r.partial_first || r.partial_last) && !r.is_symmetric) {
            EXPECT_EQ(hyperdet_222(t), 0);
            EXPECT_EQ(classify_222_complex_rank(t), 3u);
        }
    }
}

TEST(Sig222, ZeroLieCoordinatesGiveSymmetricTensors) {
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) {
            const auto p = params(x, y, 0, 0, 0);
            EXPECT_TRUE(partial_symmetry_constraint(p, Block::first));
            EXPECT_TRUE(symmetry_report(sig222_from_params(p)).is_symmetric);
        }
}

TEST(SkewImpossibility, PureAreaAndSegments) {
    Tensor area(2, 3);
    area[1] = 1;
    area[3] = -1;
    std::vector<Tensor> levels{Tensor(1, 3), area, Tensor(3, 3), Tensor(4, 3)};
    const LogSignature pure(3, levels);
    EXPECT_TRUE(skew_impossibility_check(pure, 4));
    EXPECT_FALSE(symmetry_report(exp_log_signature(pure).level(4)).is_skew);
    EXPECT_THROW(skew_impossibility_check(pure, 2), MathError);
    EXPECT_THROW(skew_impossibility_check(pure, 5), MathError);
}

TEST(SkewImpossibility, RandomLogSignatures) {
    Sampler s(65);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const auto l = s.log_signature(d, 5, -2, 2);
        for (std::size_t k = 3; k <= 5; ++k) EXPECT_TRUE(skew_impossibility_check(l, k));
    }
}

TEST(SkewImpossibility, PowersOfSkewMatricesAreNotSkew) {
    Sampler s(66);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + trial % 3;
        Tensor a(2, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                const Rational x(static_cast<long>(s.integer(-2, 2)));
                a[i * d + j] = x;
                a[j * d + i] = -x;
            }
        const auto r = symmetry_report(tensor_product(a, a));
        EXPECT_EQ(r.is_skew, a.is_zero());
    }
}

TEST(PartialConsequences, SegmentPassesNonVacuously) {
    const Vec v{1, 2};
    std::vector<Tensor> levels{Tensor::vector(v)};
    for (std::size_t k = 2; k <= 5; ++k) levels.emplace_back(k, 2);
    const auto res = verify_partial_symmetry_consequences(LogSignature(2, levels), 5);
    EXPECT_TRUE(res.holds);
    EXPECT_FALSE(res.vacuous);
    EXPECT_THROW(verify_partial_symmetry_consequences(LogSignature(2, levels), 3), MathError);
}

TEST(PartialConsequences, RandomInputsNeverViolate) {
    Sampler s(67);
    for (int trial = 0; trial < 40; ++trial) {
        const auto l = s.log_signature(2, 5, -2, 2);
        for (std::size_t k = 4; k <= 5; ++k) {
            const auto res = verify_partial_symmetry_consequences(l, k);
            EXPECT_TRUE(res.holds) << res.violated;
        }
        if (!l.level(2).is_zero()) {
            const auto r = symmetry_report(exp_log_signature(l).level(4));
            EXPECT_FALSE(r.partial_first || r.partial_last);
        }
    }
}

TEST(PartialConsequences, PureLevelThreeAtSix) {
    Sampler s(68);
    std::vector<Tensor> levels{Tensor(1, 2), Tensor(2, 2), s.lie_element(2, 3, 1, 2)};
    for (std::size_t k = 4; k <= 6; ++k) levels.emplace_back(k, 2);
    const LogSignature l(2, levels);
    const auto r = symmetry_report(exp_log_signature(l).level(6));
    EXPECT_FALSE(r.partial_first || r.partial_last);
    EXPECT_TRUE(verify_partial_symmetry_consequences(l, 6).vacuous);
}
