#include "random.hpp"
#include "rank.hpp"
#include "signature.hpp"

#include <gtest/gtest.h>

using namespace sigrank;

namespace {

Vec e(std::size_t i, std::size_t d) {
    Vec v(d);
    v[i] = 1;
    return v;
}

Path axis_path(std::size_t d) {
    std::vector<Vec> inc;
    for (std::size_t i = 0; i < d; ++i) inc.push_back(e(i, d));
    return Path(d, inc);
}

}  // namespace

TEST(SegmentSignature, LevelsArePowersOverFactorial) {
    const Vec v{2, -1};
    const auto s = segment_signature(v, 4);
    for (std::size_t k = 0; k <= 4; ++k) {
        if (k == 0) {
            EXPECT_EQ(s.constant(), 1);
            continue;
        }
        EXPECT_EQ(s.level(k), Tensor::power(v, k) * inv_factorial(static_cast<unsigned>(k)));
    }
    EXPECT_THROW(s.level(5), MathError);
}

TEST(PwlSignature, AxisPathLevelThree) {
    const auto s = pwl_signature(axis_path(3), 3);
    // 1/6 e111 + 1/2 e112 + 1/2 e113 + 1/6 e222 + 1/2 e223 + 1/2 e122 + e123 + 1/2 e133 + 1/2 e233 + 1/6 e333
    EXPECT_EQ(s.entry(Word{1, 1, 1}), Rational(1, 6));
    EXPECT_EQ(s.entry(Word{1, 1, 2}), Rational(1, 2));
    EXPECT_EQ(s.entry(Word{1, 1, 3}), Rational(1, 2));
    EXPECT_EQ(s.entry(Word{2, 2, 2}), Rational(1, 6));
    EXPECT_EQ(s.entry(Word{2, 2, 3}), Rational(1, 2));
    EXPECT_EQ(s.entry(Word{1, 2, 2}), Rational(1, 2));
    EXPECT_EQ(s.entry(Word{1, 2, 3}), 1);
    EXPECT_EQ(s.entry(Word{1, 3, 3}), Rational(1, 2));
    EXPECT_EQ(s.entry(Word{2, 3, 3}), Rational(1, 2));
    EXPECT_EQ(s.entry(Word{3, 3, 3}), Rational(1, 6));
    std::size_t nonzero = 0;
    for (const auto& x : s.level(3).entries()) nonzero += sgn(x) != 0;
    EXPECT_EQ(nonzero, 10u);
}

TEST(PwlSignature, MatchesIteratedIntegralOracle) {
    Sampler s(21);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t d = 1 + s.integer(0, 2), m = 1 + s.integer(0, 3);
        const Path p = s.path(d, m, -3, 3);
        const auto sig = pwl_signature(p, 4);
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& w : all_words(d, n)) EXPECT_EQ(sig.entry(w), iterated_integral_entry(p, w));
    }
}

TEST(PwlSignature, ReversedPathInvertsSignature) {
    Sampler s(22);
    const Path p = s.path(3, 3, -2, 2);
    std::vector<Vec> back;
    for (auto it = p.increments().rbegin(); it != p.increments().rend(); ++it) {
        Vec u = *it;
        for (auto& x : u) x = -x;
        back.push_back(u);
    }
    const auto forward = pwl_signature(p, 4);
    const auto reverse = pwl_signature(Path(3, back), 4);
    EXPECT_EQ(chen_concat(forward, reverse), TruncatedSignature::trivial(3, 4));
}

TEST(PwlSignature, TreeLikeExcursionIsInvisible) {
    const Vec a{1, 2}, b{-1, 3}, minus_b{1, -3};
    const auto plain = pwl_signature(Path(2, {a}), 5);
    const auto excursion = pwl_signature(Path(2, {a, b, minus_b}), 5);
    EXPECT_EQ(plain, excursion);
}

TEST(PwlSignature, SplittingASegmentChangesNothing) {
    const Vec v{3, -6}, half{Rational(3, 2), -3};
    EXPECT_EQ(pwl_signature(Path(2, {v}), 4), pwl_signature(Path(2, {half, half}), 4));
}

TEST(PwlSignature, IsGlEquivariant) {
    Sampler s(23);
    const std::vector<Vec> rows{{1, 2, 0}, {0, 1, -1}, {1, 0, 1}};
    const Matrix m = Matrix::from_rows(rows, 3);
    const Path p = s.path(3, 3, -2, 2);
    const auto a = pwl_signature(p.transformed(m), 3);
    const auto b = pwl_signature(p, 3);
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(a.level(k), gl_act(m, b.level(k)));
}

TEST(PwlSignature, SegmentIsRankOneAndSymmetricAtEveryLevel) {
    // Segment characterization: level 2 has rank 1 and level 3 is symmetric.
    Sampler s(24);
    const Vec v = s.nonzero_int_vector(3, -3, 3);
    const auto sig = segment_signature(v, 3);
    const std::vector<std::size_t> rows{0};
    EXPECT_EQ(matrix_rank(flatten(sig.level(2), rows).matrix), 1u);
    EXPECT_EQ(flattening_lower_bound(sig.level(3)), 1u);
    // Two independent segments: level 2 has rank 2.
    const auto two = pwl_signature(Path(3, {e(0, 3), e(1, 3)}), 2);
    EXPECT_EQ(matrix_rank(flatten(two.level(2), rows).matrix), 2u);
}

TEST(ShuffleIdentity, HoldsForPathSignatures) {
    Sampler s(25);
    for (int trial = 0; trial < 5; ++trial) {
        const auto sig = pwl_signature(s.path(2, 3, -3, 3), 5);
        const auto verdict = check_shuffle_identity(sig, 5);
        EXPECT_TRUE(verdict.holds);
        EXPECT_FALSE(verdict.counterexample.has_value());
    }
}

TEST(ShuffleIdentity, ReportsFirstCounterexample) {
    auto levels = pwl_signature(axis_path(2), 3).levels();
    levels[2][1] += 1;  // σ_12
    const TruncatedSignature broken(2, levels);
    const auto verdict = check_shuffle_identity(broken, 3);
    ASSERT_FALSE(verdict.holds);
    // The empty word never fails; σ_1·σ_1 does not involve σ_12, so 1 ⧢ 2 is first.
    EXPECT_EQ(verdict.counterexample->first, (Word{1}));
    EXPECT_EQ(verdict.counterexample->second, (Word{2}));
}

TEST(ShuffleIdentity, EvalAgreesWithEntrywiseProduct) {
    Sampler s(26);
    const auto sig = pwl_signature(s.path(3, 2, -3, 3), 4);
    const Word v{1, 3}, w{2, 2};
    EXPECT_EQ(sig.entry(v) * sig.entry(w), eval(sig, shuffle(v, w)));
    EXPECT_THROW(eval(sig, shuffle(Word{1, 2, 3}, Word{1, 1})), MathError);
}

TEST(TimeSeries, DifferencesBecomeIncrements) {
    const std::vector<Vec> samples{{0, 0}, {1, 2}, {1, 5}};
    const Path p = time_series_to_path(samples);
    EXPECT_EQ(p.increments()[0], (Vec{1, 2}));
    EXPECT_EQ(p.increments()[1], (Vec{0, 3}));
    const std::vector<Vec> one{{1, 2}};
    EXPECT_THROW(time_series_to_path(one), MathError);
}

TEST(Path, RejectsBadShapes) {
    EXPECT_THROW(Path(2, {}), MathError);
    EXPECT_THROW(Path(2, {Vec{1, 2, 3}}), MathError);
    EXPECT_THROW(chen_concat(TruncatedSignature::trivial(2, 3), TruncatedSignature::trivial(2, 4)), MathError);
}
