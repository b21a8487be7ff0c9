#include "exact.hpp"
#include "matrix.hpp"
#include "random.hpp"

#include <gtest/gtest.h>

using namespace sigrank;

namespace {

// Plain rational Gaussian elimination with full pivot search; shares no code
// with the fraction-free routine under test.
std::size_t oracle_rank(std::vector<std::vector<Rational>> a) {
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(parse_rational("+6/4"), Rational(3, 2));
    EXPECT_EQ(parse_rational("-0"), Rational(0));
    EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
    EXPECT_EQ(to_string(parse_rational("-8/4")), "-2");
}

TEST(Rational, RejectsMalformedText) {
    EXPECT_THROW(parse_rational(""), ParseError);
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("1.5"), ParseError);
    EXPECT_THROW(parse_rational("abc"), ParseError);
    EXPECT_THROW(parse_rational("1/2/3"), ParseError);
    EXPECT_THROW(parse_rational("6/-4"), ParseError);
    EXPECT_THROW(parse_rational(" 7"), ParseError);
}

TEST(Combinatorics, FactorialAndBinomial) {
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(6), 720);
    EXPECT_EQ(inv_factorial(3), Rational(1, 6));
    EXPECT_EQ(binomial(9, 3), 84);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(binomial(4, -1), 0);
    EXPECT_EQ(binomial(0, 0), 1);
    EXPECT_EQ(ceil_div(7, 2), 4);
    EXPECT_EQ(ceil_div(8, 2), 4);
}

TEST(MatrixRank, MatchesGaussianOracleOnRandomMatrices) {
    Sampler s(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + s.integer(0, 5), c = 1 + s.integer(0, 5);
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < r; ++i) {
            Vec v = s.int_vector(c, -2, 2);
            // Mix in fractions and forced dependencies.
            if (i >= 2 && s.integer(0, 2) == 0)
                for (std::size_t j = 0; j < c; ++j) v[j] = rows[0][j] * Rational(1, 3) - rows[1][j] * 2;
            rows.push_back(v);
        }
        const Matrix m = Matrix::from_rows(rows, c);
        EXPECT_EQ(matrix_rank(m), oracle_rank(rows)) << "trial " << trial;
        EXPECT_EQ(matrix_rank(m), matrix_rank(m.transposed()));
        EXPECT_EQ(rref(m).rows(), matrix_rank(m));
    }
}

TEST(MatrixRank, ZeroAndIdentity) {
    EXPECT_EQ(matrix_rank(Matrix(3, 4)), 0u);
    EXPECT_EQ(matrix_rank(Matrix::identity(5)), 5u);
    EXPECT_TRUE(is_invertible(Matrix::identity(2)));
    EXPECT_FALSE(is_invertible(Matrix(2, 2)));
}

TEST(Rref, IsCanonicalForTheRowSpace) {
    const std::vector<Vec> a{{1, 2, 3}, {2, 4, 7}};
    const std::vector<Vec> b{{0, 0, 1}, {3, 6, 0}};
    EXPECT_EQ(rref(Matrix::from_rows(a, 3)), rref(Matrix::from_rows(b, 3)));
    const Matrix r = rref(Matrix::from_rows(a, 3));
    EXPECT_EQ(r(0, 0), 1);
    EXPECT_EQ(r(0, 2), 0);
    EXPECT_EQ(r(1, 2), 1);
}

TEST(Subspace, ContainmentJoinAndEquality) {
    const auto h = Subspace::coordinate_hyperplane(3, 0);
    EXPECT_EQ(h.dim(), 2u);
    const std::vector<Vec> span_vecs{{0, 1, 1}, {0, 1, -1}};
    EXPECT_EQ(Subspace::span(span_vecs, 3), h);
    const Vec inside{0, 5, -2}, outside{1, 0, 0};
    EXPECT_TRUE(h.contains(inside));
    EXPECT_FALSE(h.contains(outside));
    const std::vector<Vec> line{{1, 1, 0}};
    EXPECT_TRUE(join(h, Subspace::span(line, 3)).is_full());
    EXPECT_TRUE(Subspace::full(3).contains(h));
    EXPECT_FALSE(h.contains(Subspace::full(3)));
}
