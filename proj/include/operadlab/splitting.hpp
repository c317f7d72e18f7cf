#pragma once

#include "operadlab/lie_vector.hpp"
#include "operadlab/partition.hpp"
#include "operadlab/tpoly.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace operadlab {

/// Vectors of Lambda(Q Par) whose coefficients are polynomials in the free
/// parameter t of the arity-3 value u_2.
using ParametricVector = LieVector<ParOperad, TPoly>;

inline ParametricVector parametric(std::initializer_list<std::pair<std::vector<int>, TPoly>> terms)
{
    ParametricVector v(ParOperad{});
    for (const auto& [e, c] : terms) v.add(Partition(e), c);
    return v;
}

/// u_1 = x1 x2, the only unit-preserving choice in arity 2.
inline ParametricVector build_u1() { return parametric({{{1, 1}, TPoly(1)}}); }

/// u_2 = (t/2)(x1^2 x2 + x1 x2^2) + (1 - t) x1 x2 x3.
inline ParametricVector build_u2()
{
    TPoly half_t = TPoly{Rat(0), Rat(1, 2)};
    TPoly one_minus_t{Rat(1), Rat(-1)};
    return parametric({{{2, 1}, half_t}, {{1, 2}, half_t}, {{1, 1, 1}, one_minus_t}});
}

/// u_n = (1/(n-2)!) (ad u_1)^(n-2) u_2 for n >= 3; u_1, u_2 as above.
inline ParametricVector build_un(int n)
{
    if (n < 1 || n > 8) throw std::invalid_argument("build_un: n must be in 1..8");
    if (n == 1) return build_u1();
    ParametricVector u = build_u2();
    const ParametricVector u1 = build_u1();
    for (int i = 0; i < n - 2; ++i) u = bracket(u1, u);
    return TPoly(Rat(1) / Rat(factorial(static_cast<unsigned>(n - 2)))) * u;
}

/// [u, v] expanded with both term lists walked back to front; must agree
/// with bracket(u, v).
inline ParametricVector bracket_reverse_order(const ParametricVector& u, const ParametricVector& v)
{
    u.same_operad(v);
    const ParOperad& op = u.operad();
    ParametricVector out(op);
    for (auto a = u.terms().rbegin(); a != u.terms().rend(); ++a)
        for (auto b = v.terms().rbegin(); b != v.terms().rend(); ++b) {
            TPoly ab = a->second * b->second;
            basis_bracket(op, a->first, b->first,
                          [&](const Partition& e, int s) { out.add_unchecked(e, TPoly(s) * ab); });
        }
    return out;
}

/// u_5 - [u_2, u_3]; a splitting would force this to vanish for some t.
inline ParametricVector obstruction() { return build_un(5) - bracket(build_un(2), build_un(3)); }

// ---------------------------------------------------------------------------
// Published values of u_3, u_4, u_5 and [u_2, u_3], entered term by term as
// printed (monomials written as exponent vectors).

namespace golden {

inline TPoly lin(Rat c0, Rat c1) { return TPoly{std::move(c0), std::move(c1)}; }

inline ParametricVector u3()
{
    TPoly a = lin(1, -1);
    return parametric({{{2, 2}, lin(0, 1)},
                       {{3, 1}, -a},
                       {{1, 3}, -a},
                       {{1, 2, 1}, a},
                       {{2, 1, 1}, a},
                       {{1, 1, 2}, a}});
}

inline ParametricVector u4()
{
    TPoly a = lin(1, -1);
    return parametric({{{3, 2}, lin(Rat(-1, 2), Rat(3, 2))},
                       {{2, 3}, lin(Rat(-1, 2), Rat(3, 2))},
                       {{4, 1}, lin(-2, Rat(3, 2))},
                       {{1, 4}, lin(-2, Rat(3, 2))},
                       {{1, 3, 1}, a},
                       {{2, 1, 2}, a},
                       {{2, 2, 1}, a},
                       {{1, 2, 2}, a},
                       {{3, 1, 1}, a},
                       {{1, 1, 3}, a}});
}

inline ParametricVector u5()
{
    TPoly a = lin(Rat(1, 3), Rat(-1, 3));
    ParametricVector v = parametric({{{3, 3}, lin(-3, 2)},
                                     {{4, 2}, lin(Rat(-7, 6), 2)},
                                     {{2, 4}, lin(Rat(-7, 6), 2)},
                                     {{5, 1}, lin(-3, 2)},
                                     {{1, 5}, lin(-3, 2)}});
    // (1-t)/3 { (x1x2^3x3^2 + x1^2x2^3x3) + 3 x1x2^4x3 + 3 x1^2x2^2x3^2
    //           + 2(x1^2x2^3x3 + x1x2^3x3^2) + 3(x1^3x2x3^2 + x1^2x2x3^3)
    //           + 3(x1^3x2^2x3 + x1x2^2x3^3) + 3(x1^4x2x3 + x1x2x3^4) }
    const std::vector<std::pair<std::vector<int>, int>> braces = {
        {{1, 3, 2}, 1}, {{2, 3, 1}, 1}, {{1, 4, 1}, 3}, {{2, 2, 2}, 3}, {{2, 3, 1}, 2}, {{1, 3, 2}, 2},
        {{3, 1, 2}, 3}, {{2, 1, 3}, 3}, {{3, 2, 1}, 3}, {{1, 2, 3}, 3}, {{4, 1, 1}, 3}, {{1, 1, 4}, 3}};
    for (const auto& [e, k] : braces) v.add(Partition(e), TPoly(k) * a);
    return v;
}

inline ParametricVector bracket_u2_u3()
{
    TPoly a = lin(1, -1);
    TPoly five_halves_t_a = TPoly{Rat(0), Rat(5, 2), Rat(-5, 2)};
    TPoly t2_t_3 = TPoly{Rat(-3), Rat(1), Rat(1)};
    return parametric({{{3, 3}, TPoly(-2) * a},
                       // printed as x1^4 x2 + x1^2 x2^4
                       {{4, 1}, five_halves_t_a},
                       {{2, 4}, five_halves_t_a},
                       {{5, 1}, t2_t_3},
                       {{1, 5}, t2_t_3},
                       {{1, 4, 1}, a},
                       {{2, 1, 3}, a},
                       {{3, 1, 2}, a},
                       {{2, 3, 1}, a},
                       {{1, 3, 2}, a},
                       {{3, 2, 1}, a},
                       {{1, 2, 3}, a},
                       {{4, 1, 1}, a},
                       {{1, 1, 4}, a}});
}

} // namespace golden

struct GoldenDiff {
    std::string vector;
    std::string term;
    TPoly expected;
    TPoly computed;
};

/// Coefficient-by-coefficient comparison over the union of supports.
inline std::vector<GoldenDiff> golden_compare(const std::string& name, const ParametricVector& expected,
                                              const ParametricVector& computed)
{
    std::vector<GoldenDiff> out;
    std::map<Partition, std::pair<TPoly, TPoly>> all;
    for (const auto& [p, c] : expected.terms()) all[p].first = c;
    for (const auto& [p, c] : computed.terms()) all[p].second = c;
    for (const auto& [p, ec] : all)
        if (!(ec.first == ec.second)) out.push_back({name, render_partition(p), ec.first, ec.second});
    return out;
}

/// Monic gcd over Q (zero if both are zero).
inline TPoly tpoly_gcd(TPoly a, TPoly b)
{
    auto rem = [](TPoly x, const TPoly& y) {
        while (!x.is_zero() && x.degree() >= y.degree()) {
            Rat f = x.coefficient(x.degree()) / y.coefficient(y.degree());
            std::vector<Rat> shift(static_cast<std::size_t>(x.degree() - y.degree()) + 1, Rat(0));
            shift.back() = f;
            x -= TPoly(shift) * y;
        }
        return x;
    };
    while (!b.is_zero()) {
        TPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return TPoly(Rat(1) / a.coefficient(a.degree())) * a;
}

struct SplittingCertificate {
    ParametricVector u3, u4, u5, bracket_u2_u3, obstruction;

    /// First term of the obstruction whose coefficient is a nonzero constant.
    std::optional<std::pair<std::string, Rat>> constant_witness;
    /// gcd of all obstruction coefficients; constant means no common root.
    TPoly coefficient_gcd;

    std::vector<GoldenDiff> golden_diffs;
    std::vector<std::pair<std::string, bool>> golden_match; ///< in display order

    bool iota_invariant = true;     ///< iota(u_n) = u_n, n = 1..5
    bool augments_to_witt = true;   ///< eps(u_n) = x^(n+1) d/dx, n = 1..5
    bool order_independent = true;  ///< reversed expansion gives the same obstruction
    bool semidirect_check = true;   ///< [Lambda^-, Lambda^-] = 0 up to arity 6
    std::string semidirect_counterexample;

    /// No t makes the obstruction vanish.
    bool certified() const { return constant_witness.has_value() || coefficient_gcd.degree() == 0; }
    bool goldens_ok() const { return golden_diffs.empty(); }
    bool golden_ok(const std::string& name) const
    {
        for (const auto& [n, ok] : golden_match)
            if (n == name) return ok;
        throw std::invalid_argument("no golden display named " + name);
    }
    bool passed() const
    {
        return certified() && goldens_ok() && iota_invariant && augments_to_witt && order_independent &&
               semidirect_check;
    }
};

/// Checks [a, b] = 0 for a, b in the basis {p - iota(p) : p > iota(p)} of
/// Lambda^- with arities up to max_arity.
inline bool check_minus_part_abelian(std::size_t max_arity, std::string* counterexample = nullptr)
{
    ParOperad op{};
    std::vector<ParVector> minus;
    for (std::size_t m = 2; m <= max_arity; ++m)
        for (const auto& p : op.basis(m)) {
            Partition q = iota(p);
            if (q < p) {
                ParVector v(op, p);
                v.add(q, Rat(-1));
                minus.push_back(v);
            }
        }
    for (std::size_t i = 0; i < minus.size(); ++i)
        for (std::size_t j = i + 1; j < minus.size(); ++j) {
            ParVector b = bracket(minus[i], minus[j]);
            if (!b.is_zero()) {
                if (counterexample)
                    *counterexample = "[" + to_string(minus[i]) + ", " + to_string(minus[j]) + "] = " + to_string(b);
                return false;
            }
        }
    return true;
}

inline SplittingCertificate certify_no_splitting()
{
    SplittingCertificate c;
    std::vector<ParametricVector> u;
    for (int n = 1; n <= 5; ++n) u.push_back(build_un(n));
    c.u3 = u[2];
    c.u4 = u[3];
    c.u5 = u[4];
    c.bracket_u2_u3 = bracket(u[1], u[2]);
    c.obstruction = c.u5 - c.bracket_u2_u3;

    for (const auto& [p, coeff] : c.obstruction.terms())
        if (coeff.degree() == 0) {
            c.constant_witness = std::make_pair(render_partition(p), coeff.constant_term());
            break;
        }
    for (const auto& [p, coeff] : c.obstruction.terms()) c.coefficient_gcd = tpoly_gcd(c.coefficient_gcd, coeff);

    const std::pair<const char*, std::pair<ParametricVector, const ParametricVector*>> checks[] = {
        {"u3", {golden::u3(), &c.u3}},
        {"u4", {golden::u4(), &c.u4}},
        {"u5", {golden::u5(), &c.u5}},
        {"bracket_u2_u3", {golden::bracket_u2_u3(), &c.bracket_u2_u3}},
    };
    for (const auto& [name, pair] : checks) {
        auto diffs = golden_compare(name, pair.first, *pair.second);
        c.golden_match.emplace_back(name, diffs.empty());
        c.golden_diffs.insert(c.golden_diffs.end(), diffs.begin(), diffs.end());
    }

    for (std::size_t n = 1; n <= u.size(); ++n) {
        if (!(iota(u[n - 1]) == u[n - 1])) c.iota_invariant = false;
        W1Vector<TPoly> expected(EndQ{}, W1Gen{n + 1});
        if (!(augment(u[n - 1]) == expected)) c.augments_to_witt = false;
    }
    c.order_independent = c.u5 - bracket_reverse_order(u[1], u[2]) == c.obstruction;
    c.semidirect_check = check_minus_part_abelian(6, &c.semidirect_counterexample);
    return c;
}

inline nlohmann::json to_json(const SplittingCertificate& c)
{
    nlohmann::json j;
    j["u3"] = to_json(c.u3);
    j["u4"] = to_json(c.u4);
    j["u5"] = to_json(c.u5);
    j["bracket_u2_u3"] = to_json(c.bracket_u2_u3);
    j["obstruction"] = to_json(c.obstruction);
    if (c.constant_witness)
        j["constant_witness"] = {c.constant_witness->first, format_rat_fraction(c.constant_witness->second)};
    else
        j["constant_witness"] = nullptr;
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& d : c.golden_diffs)
        diffs.push_back({{"vector", d.vector},
                         {"term", d.term},
                         {"expected", d.expected.to_string()},
                         {"computed", d.computed.to_string()}});
    j["golden_diffs"] = diffs;
    return j;
}

} // namespace operadlab
