#include "flatten.hpp"
#include "random.hpp"
#include "rank.hpp"
#include "tensor.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace sigrank;

namespace {

Tensor random_tensor(Sampler& s, std::size_t k, std::size_t d) {
    Tensor t(k, d);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(static_cast<long>(s.integer(-3, 3)));
    return t;
}

// Koszul flattening assembled as the matrix product skew · (T_U ⊗ id_W), with
// T_U : U* → V⊗W the plain flattening. Rows (u, w2), columns (v, a<b).
Matrix koszul_oracle(const Tensor& t, std::size_t pivot) {
    const std::size_t d = t.dim();
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < 3; ++p)
        if (p != pivot) rest.push_back(p);
    // (T_U ⊗ id): (u, w2) ↦ Σ T(u,v,w1) e_v⊗e_w1⊗e_w2, columns (v, w1, w2).
    Matrix lift(d * d, d * d * d);
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v)
            for (std::size_t w1 = 0; w1 < d; ++w1) {
                MultiIndex idx(3);
                idx[pivot] = u;
                idx[rest[0]] = v;
                idx[rest[1]] = w1;
                for (std::size_t w2 = 0; w2 < d; ++w2) lift(u * d + w2, (v * d + w1) * d + w2) = t.at(idx);
            }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
    // skew: e_v⊗e_w1⊗e_w2 ↦ e_v ⊗ (e_w1 ∧ e_w2)
    Matrix skew(d * d * d, d * pairs.size());
    for (std::size_t v = 0; v < d; ++v)
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            auto [a, b] = pairs[q];
            skew((v * d + a) * d + b, v * pairs.size() + q) = 1;
            skew((v * d + b) * d + a, v * pairs.size() + q) = -1;
        }
    return lift * skew;
}

}  // namespace

TEST(Tensor, IndexingIsLexicographicWithFirstIndexSlowest) {
    Tensor t(3, 2);
    const MultiIndex idx{1, 0, 1};
    EXPECT_EQ(t.flat_index(idx), 5u);
    EXPECT_EQ(t.multi_index(6), (MultiIndex{1, 1, 0}));
}

TEST(Tensor, ProductOfBasisVectors) {
    const Tensor e = tensor_product(tensor_product(Tensor::basis(0, 3), Tensor::basis(2, 3)), Tensor::basis(1, 3));
    EXPECT_EQ(e[0 * 9 + 2 * 3 + 1], 1);
    Rational sum = 0;
    for (const auto& x : e.entries()) sum += x;
    EXPECT_EQ(sum, 1);
}

TEST(Tensor, PowerAndElementaryAgree) {
    const Vec v{1, -2, Rational(1, 3)};
    const std::vector<Vec> f{v, v, v};
    EXPECT_EQ(Tensor::power(v, 3), Tensor::elementary(f));
}

TEST(Tensor, AddProductAccumulates) {
    Sampler s(3);
    const Tensor a = random_tensor(s, 1, 2), b = random_tensor(s, 2, 2);
    Tensor acc(3, 2);
    add_product(acc, a, b, 3);
    EXPECT_EQ(acc, tensor_product(a, b) * Rational(3));
}

TEST(PermuteModes, MovesEntriesAndComposes) {
    Sampler s(5);
    const Tensor t = random_tensor(s, 3, 3);
    const std::vector<std::size_t> tau{1, 2, 0}, rho{2, 0, 1};
    // dst[p] = src[perm[p]]
    const Tensor moved = permute_modes(t, tau);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const auto src = t.multi_index(flat);
        const MultiIndex dst{src[tau[0]], src[tau[1]], src[tau[2]]};
        EXPECT_EQ(moved.at(dst), t[flat]);
    }
    // Acting by tau and then rho equals acting once by q(p) = tau(rho(p)).
    std::vector<std::size_t> q(3);
    for (std::size_t p = 0; p < 3; ++p) q[p] = tau[rho[p]];
    EXPECT_EQ(permute_modes(permute_modes(t, tau), rho), permute_modes(t, q));
    const std::vector<std::size_t> bad{0, 0, 1};
    EXPECT_THROW(permute_modes(t, bad), MathError);
}

TEST(GlAct, ActsFactorwiseOnElementaryTensors) {
    const std::vector<Vec> rows{{1, 2}, {0, 1}};
    const Matrix m = Matrix::from_rows(rows, 2);
    const Vec a{1, 1}, b{2, -1};
    const std::vector<Vec> f{a, b};
    const std::vector<Vec> g{m.apply(a), m.apply(b)};
    EXPECT_EQ(gl_act(m, Tensor::elementary(f)), Tensor::elementary(g));
    EXPECT_THROW(gl_act(Matrix(2, 2), Tensor::elementary(f)), MathError);
}

TEST(GlAct, PreservesFlatteningRanks) {
    Sampler s(8);
    const std::vector<Vec> rows{{1, 1, 0}, {0, 1, 2}, {1, 0, 1}};
    const Matrix m = Matrix::from_rows(rows, 3);
    ASSERT_TRUE(is_invertible(m));
    for (int trial = 0; trial < 10; ++trial) {
        const Tensor t = random_tensor(s, 3, 3);
        EXPECT_EQ(flattening_lower_bound(t), flattening_lower_bound(gl_act(m, t)));
        EXPECT_EQ(koszul_lower_bound(t), koszul_lower_bound(gl_act(m, t)));
    }
}

TEST(Flatten, PlacesEveryEntry) {
    Sampler s(9);
    const Tensor t = random_tensor(s, 4, 2);
    const std::vector<std::size_t> rows{1, 3};
    const auto f = flatten(t, rows);
    EXPECT_EQ(f.matrix.rows(), 4u);
    EXPECT_EQ(f.matrix.cols(), 4u);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const auto idx = t.multi_index(flat);
        EXPECT_EQ(f.matrix(idx[1] * 2 + idx[3], idx[0] * 2 + idx[2]), t[flat]);
    }
    const std::vector<std::size_t> none, all{0, 1, 2, 3};
    EXPECT_THROW(flatten(t, none), MathError);
    EXPECT_THROW(flatten(t, all), MathError);
}

TEST(Flatten, RankOneTensorHasRankOneFlattenings) {
    const std::vector<Vec> f{{1, 2, 0}, {0, 1, 1}, {3, 0, 1}, {1, 1, 1}};
    const Tensor t = Tensor::elementary(f);
    for (const auto& rows : lower_bound_bipartitions(4)) EXPECT_EQ(matrix_rank(flatten(t, rows).matrix), 1u);
}

TEST(ModeFibers, RowsAreFibers) {
    Sampler s(10);
    const Tensor t = random_tensor(s, 3, 2);
    const Matrix m = mode_fibers(t, 1);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const auto idx = t.multi_index(flat);
        EXPECT_EQ(m(idx[0] * 2 + idx[2], idx[1]), t[flat]);
    }
}

TEST(KoszulFlatten, MatchesCompositionOracle) {
    Sampler s(12);
    for (std::size_t d : {2u, 3u, 4u}) {
        const Tensor t = random_tensor(s, 3, d);
        for (std::size_t pivot = 0; pivot < 3; ++pivot) {
            const Matrix f = koszul_flatten(t, pivot);
            EXPECT_EQ(f.rows(), d * d);
            EXPECT_EQ(f.cols(), d * static_cast<std::size_t>(binomial(d, 2)));
            EXPECT_EQ(f, koszul_oracle(t, pivot));
        }
    }
}

TEST(KoszulFlatten, RankOneGivesDMinusOne) {
    const std::vector<Vec> f{{1, 2, 3}, {1, 0, 1}, {2, 1, 1}};
    const Tensor t = Tensor::elementary(f);
    for (std::size_t pivot = 0; pivot < 3; ++pivot) EXPECT_EQ(matrix_rank(koszul_flatten(t, pivot)), 2u);
    EXPECT_EQ(koszul_lower_bound(t), 1u);
}
