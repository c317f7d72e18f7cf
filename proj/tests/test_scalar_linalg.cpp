#include "operadlab/rational.hpp"
#include "operadlab/sparse_matrix.hpp"
#include "operadlab/tpoly.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace operadlab;

namespace {

// mpq_class(n, d) keeps the fraction as given; arithmetic needs lowest terms.
Rat q(long n, long d)
{
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Laplace expansion along the first row; independent of the Bareiss code.
Rat cofactor_det(const std::vector<std::vector<Rat>>& a)
{
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Rat total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Rat>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Rat> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        Rat term = a[0][j] * cofactor_det(minor);
        total += (j % 2 ? -term : term);
    }
    return total;
}

Rat random_rat(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    return q(num(rng), den(rng));
}

RatMatrix random_sparse(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density)
{
    RatMatrix m(rows, cols);
    std::bernoulli_distribution keep(density);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng)) m.set(r, c, random_rat(rng));
    return m;
}

TPoly random_tpoly(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> deg(-1, 6);
    std::vector<Rat> c;
    for (int d = deg(rng); d >= 0; --d) c.push_back(random_rat(rng));
    return TPoly(c);
}

} // namespace

TEST(Rational, ParseAndFormat)
{
    EXPECT_EQ(parse_rat("3"), Rat(3));
    EXPECT_EQ(parse_rat("-3"), Rat(-3));
    EXPECT_EQ(parse_rat("6/4"), Rat(3, 2));
    EXPECT_EQ(parse_rat(" -7 / 14 "), Rat(-1, 2));
    EXPECT_EQ(format_rat_fraction(Rat(2)), "2/1");
    EXPECT_EQ(format_rat_fraction(Rat(0)), "0/1");
    EXPECT_EQ(format_rat_fraction(q(-6, 4)), "-3/2");
    EXPECT_EQ(format_rat(q(-6, 4)), "-3/2");
    EXPECT_EQ(format_rat(q(4, 2)), "2");
}

TEST(Rational, ParseRejectsMalformed)
{
    EXPECT_THROW(parse_rat(""), std::invalid_argument);
    EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rat("a/2"), std::invalid_argument);
    EXPECT_THROW(parse_rat("1/-2"), std::invalid_argument);
    EXPECT_THROW(parse_rat("1/2/3"), std::invalid_argument);
    EXPECT_THROW(parse_rat("-"), std::invalid_argument);
}

TEST(Rational, CanonicalForm)
{
    Rat x = parse_rat("-10/4");
    EXPECT_EQ(x, q(-5, 2));
    EXPECT_GT(x.get_den(), 0);
    EXPECT_EQ(x.get_num(), -5);
    EXPECT_EQ(x.get_den(), 2);
    EXPECT_EQ(parse_rat("+0/7"), Rat(0));
    EXPECT_EQ(format_rat_fraction(parse_rat("+0/7")), "0/1");
}

TEST(Rational, FieldAxiomsOnRandomValues)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Rat a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
        EXPECT_EQ(Rat((a + b) + c), Rat(a + (b + c)));
        EXPECT_EQ(Rat(a * b), Rat(b * a));
        EXPECT_EQ(Rat((a * b) * c), Rat(a * (b * c)));
        EXPECT_EQ(Rat(a * (b + c)), Rat(a * b + a * c));
        if (a != 0) {
            EXPECT_EQ(Rat(a * (1 / a)), Rat(1));
        }
    }
}

TEST(Rational, Factorial)
{
    EXPECT_EQ(factorial(0), Rat(1));
    EXPECT_EQ(factorial(5), Rat(120));
    EXPECT_EQ(factorial(20), Rat(BigInt("2432902008176640000")));
}

TEST(TPolyTest, Basics)
{
    TPoly t = TPoly::t();
    EXPECT_EQ(t + (TPoly(1) - t), TPoly(1));
    EXPECT_EQ((TPoly{-3, 2}) - (TPoly{-2, 2}), TPoly(-1));
    EXPECT_EQ((TPoly{0, Rat(1, 2)}).eval(1), Rat(1, 2));
    EXPECT_TRUE(TPoly().is_zero());
    EXPECT_EQ(TPoly().degree(), -1);
    EXPECT_TRUE((t - t).coefficients().empty());
    EXPECT_EQ((TPoly{1, 0, 0}).degree(), 0);
    EXPECT_EQ((TPoly{-3, 2}).to_string(), "2t - 3");
    EXPECT_EQ((TPoly{0, Rat(5, 2), Rat(-5, 2)}).to_string(), "-5/2 t^2 + 5/2 t");
    EXPECT_EQ(TPoly().to_string(), "0");
}

TEST(TPolyTest, RingAxiomsAndEvaluation)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        TPoly p = random_tpoly(rng), q = random_tpoly(rng), r = random_tpoly(rng);
        EXPECT_EQ(p + q, q + p);
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ(p - p, TPoly());
        Rat at = random_rat(rng);
        EXPECT_EQ((p * q).eval(at), Rat(p.eval(at) * q.eval(at)));
        EXPECT_EQ((p + q).eval(at), Rat(p.eval(at) + q.eval(at)));
    }
}

TEST(Matrix, RankExamples)
{
    EXPECT_EQ(rank(RatMatrix::identity(3)), 3u);
    EXPECT_EQ(rank(RatMatrix(2, 3)), 0u);
    EXPECT_EQ(rank(RatMatrix(0, 0)), 0u);
    auto a = RatMatrix::from_dense({{2, 1, 0, -1}, {-1, 2, 2, -1}, {-1, 0, 1, 2}, {-2, 1, -1, 2}});
    EXPECT_EQ(rank(a), 4u);
    auto sing = RatMatrix::from_dense({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    EXPECT_EQ(rank(sing), 2u);
    EXPECT_EQ(rank(sing, PivotStrategy::sparsest_first), 2u);
}

TEST(Matrix, DetExamples)
{
    EXPECT_EQ(det(RatMatrix::identity(5)), Rat(1));
    EXPECT_EQ(det(RatMatrix::from_dense({{2, 1}, {-1, 2}})), Rat(5));
    EXPECT_EQ(det(RatMatrix::from_dense({{0, 1}, {1, 0}})), Rat(-1));
    EXPECT_EQ(det(RatMatrix::from_dense({{Rat(1, 2), 0}, {0, Rat(2, 3)}})), Rat(1, 3));
    EXPECT_EQ(det(RatMatrix(0, 0)), Rat(1));
    EXPECT_EQ(det(RatMatrix::from_dense({{1, 2}, {2, 4}})), Rat(0));
    EXPECT_THROW(det(RatMatrix(2, 3)), std::invalid_argument);
}

TEST(Matrix, BareissMatchesCofactorExpansion)
{
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 15; ++trial) {
            RatMatrix m = random_sparse(rng, n, n, 0.7);
            EXPECT_EQ(det(m), cofactor_det(m.dense())) << "n = " << n;
        }
}

TEST(Matrix, RankInvariants)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> dim(1, 50);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        RatMatrix m = random_sparse(rng, r, c, 0.08);
        std::size_t rk = rank(m);
        EXPECT_EQ(rk, rank(m.transpose()));
        EXPECT_LE(rk, std::min(r, c));
        EXPECT_EQ(rk, rank(m, PivotStrategy::sparsest_first));
        std::vector<std::size_t> perm(r);
        for (std::size_t i = 0; i < r; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        EXPECT_EQ(rk, rank(m.select_rows(perm)));
    }
}

TEST(Matrix, LowRankProducts)
{
    std::mt19937_64 rng(9);
    for (std::size_t k = 0; k <= 5; ++k) {
        RatMatrix a = random_sparse(rng, 12, k, 1.0), b = random_sparse(rng, k, 15, 1.0);
        EXPECT_LE(rank(a * b), k);
    }
}

TEST(Matrix, EntriesAndProduct)
{
    RatMatrix m(2, 2);
    m.set(0, 1, 3);
    m.add(0, 1, -3);
    EXPECT_TRUE(m.is_zero());
    EXPECT_THROW(m.at(2, 0), std::out_of_range);
    EXPECT_THROW(RatMatrix::from_dense({{1, 2}, {3}}), std::invalid_argument);
    auto a = RatMatrix::from_dense({{1, 2}, {3, 4}});
    EXPECT_EQ(a * RatMatrix::identity(2), a);
    EXPECT_EQ(a * a, RatMatrix::from_dense({{7, 10}, {15, 22}}));
    EXPECT_THROW(a * RatMatrix(3, 1), std::invalid_argument);
}

TEST(Matrix, JsonAndText)
{
    auto a = RatMatrix::from_dense({{0, Rat(1, 2)}, {-2, 0}});
    auto j = to_json(a);
    EXPECT_EQ(j.dump(), R"({"cols":2,"entries":[[0,1,"1/2"],[1,0,"-2/1"]],"rows":2})");
    EXPECT_EQ(matrix_from_json(j), a);
    EXPECT_EQ(to_text(a), "0 1/2\n-2 0\n");
}

TEST(Span, Dimensions)
{
    EXPECT_EQ(span_dim(std::vector<std::vector<Rat>>{{1, 0}, {0, 1}}), 2u);
    EXPECT_EQ(span_dim(std::vector<std::vector<Rat>>{{1, 1}, {2, 2}}), 1u);
    EXPECT_EQ(span_dim(std::vector<std::vector<Rat>>{{0, 0}}), 0u);
    EXPECT_EQ(span_dim(std::vector<std::vector<Rat>>{}), 0u);
    EXPECT_EQ(span_dim(std::vector<std::vector<Rat>>{{Rat(1, 3), Rat(2, 3)}, {1, 2}, {1, Rat(5, 2)}}), 2u);
}

TEST(Span, EchelonMembership)
{
    using Row = SparseEchelon<int>::Row;
    SparseEchelon<int> e;
    EXPECT_TRUE(e.insert(Row{{0, 2}, {3, 4}}));
    EXPECT_FALSE(e.insert(Row{{0, -1}, {3, -2}}));
    EXPECT_TRUE(e.contains(Row{{0, 6}, {3, 12}}));
    EXPECT_FALSE(e.contains(Row{{3, 1}}));
    EXPECT_TRUE(e.insert(Row{{3, 1}}));
    EXPECT_TRUE(e.contains(Row{{0, 1}}));
    EXPECT_EQ(e.rank(), 2u);
    EXPECT_FALSE(e.insert(Row{}));
    EXPECT_EQ(e.normalize_row(Row{{5, 1}, {2, 3}, {5, -1}}), (Row{{2, 3}}));
}
