#include "operadlab/splitting.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace operadlab;

namespace {

using Exps = std::vector<int>;
using PPoly = std::map<Exps, TPoly>;

// Bracket on exponent vectors through the diagonal action of x^m d/dx,
// with coefficients in Q[t]. Shares nothing with the operadic bracket.
PPoly act(int m, const Exps& e, const TPoly& c)
{
    PPoly out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Exps f = e;
        f[i] += m - 1;
        out[f] += TPoly(e[i]) * c;
    }
    return out;
}

int total(const Exps& e)
{
    int s = 0;
    for (int x : e) s += x;
    return s;
}

PPoly oracle_bracket(const PPoly& u, const PPoly& v)
{
    PPoly out;
    for (const auto& [c, a] : u)
        for (const auto& [d, b] : v) {
            for (const auto& [k, x] : act(total(c), d, a * b)) out[k] += x;
            for (const auto& [k, x] : act(total(d), c, a * b)) out[k] -= x;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

PPoly scale(const PPoly& u, const Rat& s)
{
    PPoly out;
    for (const auto& [k, c] : u) out[k] = TPoly(s) * c;
    return out;
}

PPoly as_ppoly(const ParametricVector& v)
{
    PPoly out;
    for (const auto& [p, c] : v.terms()) out[p.exponents()] = c;
    return out;
}

TPoly lin(Rat c0, Rat c1) { return TPoly{std::move(c0), std::move(c1)}; }

Rat q(long n, long d)
{
    Rat r(n, d);
    r.canonicalize();
    return r;
}

const TPoly one_minus_t = lin(1, -1);

// All compositions of m into exactly three parts.
std::vector<Exps> three_blocks(int m)
{
    std::vector<Exps> out;
    for (int a = 1; a < m; ++a)
        for (int b = 1; a + b < m; ++b) out.push_back({a, b, m - a - b});
    return out;
}

PPoly u1_oracle() { return {{{1, 1}, TPoly(1)}}; }
PPoly u2_oracle() { return {{{2, 1}, lin(0, q(1, 2))}, {{1, 2}, lin(0, q(1, 2))}, {{1, 1, 1}, one_minus_t}}; }

} // namespace

TEST(SplittingBuild, LowTerms)
{
    EXPECT_EQ(as_ppoly(build_u1()), u1_oracle());
    EXPECT_EQ(as_ppoly(build_u2()), u2_oracle());
    EXPECT_THROW(build_un(0), std::invalid_argument);
    EXPECT_THROW(build_un(9), std::invalid_argument);
}

TEST(SplittingBuild, MatchesActionOracle)
{
    PPoly u = u2_oracle();
    Rat fact = 1;
    for (int n = 3; n <= 7; ++n) {
        u = oracle_bracket(u1_oracle(), u);
        fact *= n - 2;
        EXPECT_EQ(as_ppoly(build_un(n)), scale(u, 1 / fact)) << "n = " << n;
    }
    EXPECT_EQ(as_ppoly(bracket(build_u2(), build_un(3))), oracle_bracket(u2_oracle(), as_ppoly(build_un(3))));
}

TEST(SplittingBuild, Recursion)
{
    // u_{n+1} = [u_1, u_n] / (n - 1)
    for (int n = 3; n <= 6; ++n)
        EXPECT_EQ(build_un(n + 1), TPoly(Rat(1, n - 1)) * bracket(build_u1(), build_un(n))) << n;
}

TEST(SplittingValues, U3AndU4)
{
    PPoly u3{{{3, 1}, lin(-1, 1)}, {{1, 3}, lin(-1, 1)}, {{2, 2}, lin(0, 1)}};
    for (const auto& e : three_blocks(4)) u3[e] = one_minus_t;
    EXPECT_EQ(as_ppoly(build_un(3)), u3);

    PPoly u4{{{4, 1}, lin(-2, q(3, 2))},
             {{1, 4}, lin(-2, q(3, 2))},
             {{3, 2}, lin(q(-1, 2), q(3, 2))},
             {{2, 3}, lin(q(-1, 2), q(3, 2))}};
    for (const auto& e : three_blocks(5)) u4[e] = one_minus_t;
    EXPECT_EQ(as_ppoly(build_un(4)), u4);
}

TEST(SplittingValues, U5)
{
    PPoly u5{{{5, 1}, lin(-3, 2)},
             {{1, 5}, lin(-3, 2)},
             {{4, 2}, lin(q(-7, 6), 2)},
             {{2, 4}, lin(q(-7, 6), 2)},
             {{3, 3}, lin(q(-2, 3), 2)}};
    for (const auto& e : three_blocks(6)) u5[e] = one_minus_t;
    EXPECT_EQ(u5.size(), 15u);
    EXPECT_EQ(as_ppoly(build_un(5)), u5);
}

TEST(SplittingValues, BracketU2U3)
{
    PPoly b{{{5, 1}, lin(-3, 2)},
            {{1, 5}, lin(-3, 2)},
            {{4, 2}, lin(0, q(3, 2))},
            {{2, 4}, lin(0, q(3, 2))},
            {{3, 3}, lin(-2, 2)}};
    for (const auto& e : three_blocks(6))
        if (e != Exps{2, 2, 2}) b[e] = one_minus_t;
    EXPECT_EQ(as_ppoly(bracket(build_u2(), build_un(3))), b);
}

TEST(SplittingValues, Obstruction)
{
    PPoly expected{{{4, 2}, lin(q(-7, 6), q(1, 2))},
                   {{2, 4}, lin(q(-7, 6), q(1, 2))},
                   {{3, 3}, TPoly(q(4, 3))},
                   {{2, 2, 2}, one_minus_t}};
    EXPECT_EQ(as_ppoly(obstruction()), expected);
}

TEST(SplittingValues, SymmetriesAndAugmentation)
{
    for (std::size_t n = 1; n <= 7; ++n) {
        auto u = build_un(static_cast<int>(n));
        EXPECT_EQ(iota(u), u) << n;
        EXPECT_EQ(augment(u), (W1Vector<TPoly>(EndQ{}, W1Gen{n + 1}))) << n;
        for (const auto& [p, c] : u.terms()) EXPECT_LE(p.blocks(), 3u);
    }
}

TEST(SplittingValues, OrderIndependence)
{
    auto u2 = build_u2(), u3 = build_un(3);
    EXPECT_EQ(bracket_reverse_order(u2, u3), bracket(u2, u3));
    EXPECT_EQ(bracket_reverse_order(u3, u2), bracket(u3, u2));
    EXPECT_EQ(bracket(u3, u2), -bracket(u2, u3));
}

TEST(TPolyGcd, Examples)
{
    EXPECT_EQ(tpoly_gcd(lin(-1, 1) * lin(2, 1), lin(-1, 1) * lin(3, 1)), lin(-1, 1));
    EXPECT_EQ(tpoly_gcd(lin(2, 4), TPoly()), lin(q(1, 2), 1));
    EXPECT_EQ(tpoly_gcd(TPoly(), TPoly()), TPoly());
    EXPECT_EQ(tpoly_gcd(lin(1, 1), TPoly(q(4, 3))), TPoly(1));
    EXPECT_EQ(tpoly_gcd(lin(q(-7, 6), q(1, 2)), lin(1, -1)), TPoly(1));
}

TEST(Golden, ComparatorReportsExactTerms)
{
    auto a = parametric({{{2, 1}, lin(0, 1)}, {{1, 2}, TPoly(1)}});
    auto b = parametric({{{2, 1}, lin(0, 1)}, {{1, 1, 1}, TPoly(2)}});
    auto d = golden_compare("x", a, b);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].vector, "x");
    std::set<std::string> terms{d[0].term, d[1].term};
    EXPECT_EQ(terms, (std::set<std::string>{"x1 x2^2", "x1 x2 x3"}));
    EXPECT_TRUE(golden_compare("x", a, a).empty());
}

TEST(Golden, DisplaysAgainstComputation)
{
    EXPECT_TRUE(golden_compare("u3", golden::u3(), build_un(3)).empty());
    EXPECT_TRUE(golden_compare("u4", golden::u4(), build_un(4)).empty());

    auto d5 = golden_compare("u5", golden::u5(), build_un(5));
    ASSERT_EQ(d5.size(), 1u);
    EXPECT_EQ(d5[0].term, "x1^3 x2^3");
    EXPECT_EQ(d5[0].expected, lin(-3, 2));
    EXPECT_EQ(d5[0].computed, lin(q(-2, 3), 2));

    auto db = golden_compare("bracket_u2_u3", golden::bracket_u2_u3(), bracket(build_u2(), build_un(3)));
    std::set<std::string> terms;
    for (const auto& x : db) terms.insert(x.term);
    EXPECT_EQ(terms, (std::set<std::string>{"x1^4 x2", "x1^5 x2", "x1^4 x2^2", "x1^2 x2^4", "x1 x2^5"}));
}

TEST(Certificate, Fields)
{
    auto c = certify_no_splitting();
    ASSERT_TRUE(c.constant_witness.has_value());
    EXPECT_EQ(c.constant_witness->first, "x1^3 x2^3");
    EXPECT_EQ(c.constant_witness->second, q(4, 3));
    EXPECT_EQ(c.coefficient_gcd, TPoly(1));
    EXPECT_TRUE(c.certified());
    EXPECT_TRUE(c.iota_invariant);
    EXPECT_TRUE(c.augments_to_witt);
    EXPECT_TRUE(c.order_independent);
    EXPECT_TRUE(c.semidirect_check) << c.semidirect_counterexample;
    EXPECT_TRUE(c.golden_ok("u3"));
    EXPECT_TRUE(c.golden_ok("u4"));
    EXPECT_FALSE(c.golden_ok("u5"));
    EXPECT_FALSE(c.golden_ok("bracket_u2_u3"));
    EXPECT_THROW(c.golden_ok("u6"), std::invalid_argument);
    EXPECT_EQ(c.golden_diffs.size(), 6u);
    EXPECT_FALSE(c.passed());
    ASSERT_EQ(c.golden_match.size(), 4u);
    EXPECT_EQ(c.golden_match[0].first, "u3");
    EXPECT_EQ(c.golden_match[3].first, "bracket_u2_u3");
}

TEST(Certificate, Json)
{
    auto j = to_json(certify_no_splitting());
    for (const char* key : {"u3", "u4", "u5", "bracket_u2_u3", "obstruction", "constant_witness", "golden_diffs"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["constant_witness"][0], "x1^3 x2^3");
    EXPECT_EQ(j["constant_witness"][1], "4/3");
    EXPECT_EQ(j["golden_diffs"].size(), 6u);
    EXPECT_EQ(j["obstruction"]["operad"], "par");
}

TEST(MinusPart, Abelian)
{
    std::string ce;
    EXPECT_TRUE(check_minus_part_abelian(7, &ce)) << ce;
}
