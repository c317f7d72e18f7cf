#pragma once

#include "operadlab/lie_vector.hpp"
#include "operadlab/operad.hpp"
#include "operadlab/tree.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace operadlab {

/*
 * Nontrivial order-preserving partition of {1..m}, written as the monomial
 * x_1^{a_1} ... x_N^{a_N} with N >= 2 and every a_i >= 1 (block i has a_i
 * consecutive points). The distinguished arity-1 unit is stored as the
 * one-block sequence [1]; no other one-block sequence is valid.
 */
class Partition {
public:
    Partition() : exps_{1} {}

    static Partition unit() { return Partition(); }

    explicit Partition(std::vector<int> exponents)
    {
        if (exponents == std::vector<int>{1}) {
            exps_ = {1};
            return;
        }
        if (exponents.size() < 2) throw std::invalid_argument("a partition needs at least two blocks");
        for (int a : exponents)
            if (a < 1) throw std::invalid_argument("partition exponents must be >= 1");
        exps_ = std::move(exponents);
    }

    bool is_unit() const { return exps_.size() == 1; }
    const std::vector<int>& exponents() const { return exps_; }
    std::size_t blocks() const { return is_unit() ? 0 : exps_.size(); }

    std::size_t arity() const
    {
        std::size_t m = 0;
        for (int a : exps_) m += static_cast<std::size_t>(a);
        return m;
    }

    /// By arity, then block count, then exponent sequence in descending
    /// lexicographic order: x1^4 x2 < x1^3 x2^2 < x1^2 x2^3 < x1 x2^4.
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b)
    {
        if (auto c = a.arity() <=> b.arity(); c != 0) return c;
        if (auto c = a.exps_.size() <=> b.exps_.size(); c != 0) return c;
        return b.exps_ <=> a.exps_;
    }
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> exps_;
};

/// Par or Par_n (at most n blocks; 0 = unbounded).
struct ParOperad {
    using element_type = Partition;

    int n = 0;

    OperadId id() const { return {OperadId::Family::par, n}; }
    std::size_t arity(const Partition& p) const { return p.arity(); }
    Partition unit() const { return Partition::unit(); }
    std::size_t min_arity() const { return 1; }

    bool contains(const Partition& p) const
    {
        return p.is_unit() || n == 0 || p.blocks() <= static_cast<std::size_t>(n);
    }

    /// The block containing position s absorbs arity(d) - 1 points.
    Partition compose_at(const Partition& c, std::size_t s, const Partition& d) const
    {
        if (s < 1 || s > c.arity()) throw std::out_of_range("compose_at: slot out of range");
        if (d.is_unit()) return c;
        if (c.is_unit()) return d;
        std::vector<int> e = c.exponents();
        std::size_t end = 0;
        for (auto& a : e) {
            end += static_cast<std::size_t>(a);
            if (s <= end) {
                a += static_cast<int>(d.arity()) - 1;
                break;
            }
        }
        return Partition(std::move(e));
    }

    std::vector<Partition> basis(std::size_t m) const
    {
        std::vector<Partition> out;
        if (m == 0) return out;
        if (m == 1) return {Partition::unit()};
        std::size_t top = n ? std::min<std::size_t>(static_cast<std::size_t>(n), m) : m;
        for (std::size_t k = 2; k <= top; ++k)
            detail::for_each_composition(m, k, 1, m, [&](const std::vector<std::size_t>& parts) {
                out.emplace_back(std::vector<int>(parts.begin(), parts.end()));
            });
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t basis_size(std::size_t m) const
    {
        if (m == 0) return 0;
        if (m == 1) return 1;
        // Compositions of m into k parts: binom(m-1, k-1).
        std::size_t top = n ? std::min<std::size_t>(static_cast<std::size_t>(n), m) : m;
        std::size_t total = 0, binom = 1; // binom(m-1, k-1), starting at k = 1
        for (std::size_t k = 2; k <= top; ++k) {
            binom = binom * (m - k + 1) / (k - 1);
            total += binom;
        }
        return total;
    }

    Partition random_element(std::size_t m, std::mt19937_64& rng) const
    {
        if (m == 0) throw std::invalid_argument("Par has no arity-0 elements");
        if (m == 1) return Partition::unit();
        std::size_t top = n ? std::min<std::size_t>(static_cast<std::size_t>(n), m) : m;
        std::size_t k = std::uniform_int_distribution<std::size_t>(2, top)(rng);
        std::vector<std::size_t> pool(m - 1);
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::size_t> cuts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k - 1));
        std::sort(cuts.begin(), cuts.end());
        std::vector<int> e;
        std::size_t prev = 0;
        for (auto c : cuts) {
            e.push_back(static_cast<int>(c - prev));
            prev = c;
        }
        e.push_back(static_cast<int>(m - prev));
        return Partition(std::move(e));
    }

    std::string render(const Partition& p) const;
    Partition parse(std::string_view text) const;

    friend bool operator==(const ParOperad&, const ParOperad&) = default;
};

/// "x1^3 x2"; the unit is "1".
inline std::string render_partition(const Partition& p)
{
    if (p.is_unit()) return "1";
    std::string out;
    for (std::size_t i = 0; i < p.exponents().size(); ++i) {
        if (i) out += ' ';
        out += "x" + std::to_string(i + 1);
        if (p.exponents()[i] != 1) out += "^" + std::to_string(p.exponents()[i]);
    }
    return out;
}

/// "[3,1]"; the unit is "1".
inline std::string canonical_partition_text(const Partition& p)
{
    if (p.is_unit()) return "1";
    std::string out = "[";
    for (std::size_t i = 0; i < p.exponents().size(); ++i)
        out += (i ? "," : "") + std::to_string(p.exponents()[i]);
    return out + "]";
}

/// Accepts "1", "[3,1]", "x1^3 x2" and "x1^3x2". Variables must appear as
/// x1, x2, ..., xN in order.
inline Partition parse_partition(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto bad = [&]() { return std::invalid_argument("malformed partition: " + std::string(text)); };
    if (s == "1") return Partition::unit();
    std::vector<int> e;
    std::size_t pos = 0;
    auto number = [&]() {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) throw bad();
        int v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
        return v;
    };
    if (!s.empty() && s.front() == '[') {
        ++pos;
        while (true) {
            e.push_back(number());
            if (pos >= s.size()) throw bad();
            if (s[pos] == ']') {
                ++pos;
                break;
            }
            if (s[pos++] != ',') throw bad();
        }
        if (pos != s.size()) throw bad();
        return Partition(std::move(e));
    }
    while (pos < s.size()) {
        if (s[pos++] != 'x') throw bad();
        int index = number();
        if (index != static_cast<int>(e.size()) + 1) throw bad();
        int a = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            a = number();
        }
        e.push_back(a);
    }
    if (e.empty()) throw bad();
    return Partition(std::move(e));
}

inline std::string ParOperad::render(const Partition& p) const { return render_partition(p); }

inline Partition ParOperad::parse(std::string_view text) const
{
    Partition p = parse_partition(text);
    if (!contains(p)) throw std::invalid_argument(std::string(text) + " is not in " + id().name());
    return p;
}

using ParVector = LieVector<ParOperad, Rat>;

/// Closed-form gamma(c; d_1..d_k): block i gets the total arity of the d_s
/// plugged into its positions.
inline Partition par_gamma(const Partition& c, const std::vector<Partition>& ds)
{
    if (ds.size() != c.arity()) throw std::invalid_argument("par_gamma: argument count must equal arity(c)");
    if (c.is_unit()) return ds.front();
    std::vector<int> b;
    std::size_t s = 0;
    for (int a : c.exponents()) {
        int total = 0;
        for (int q = 0; q < a; ++q) total += static_cast<int>(ds[s++].arity());
        b.push_back(total);
    }
    return Partition(std::move(b));
}

/// Reads off the leaf counts of the root's subtrees; nu(leaf) = 1.
inline Partition nu(const Tree& t)
{
    if (t.is_dot()) throw std::invalid_argument("nu is not defined on o");
    if (t.is_leaf()) return Partition::unit();
    std::vector<int> e;
    for (const auto& ch : t.children()) e.push_back(static_cast<int>(ch.arity()));
    return Partition(std::move(e));
}

template <Coefficient Coeff>
LieVector<ParOperad, Coeff> nu(const LieVector<TreeOperad, Coeff>& v)
{
    LieVector<ParOperad, Coeff> out(ParOperad{v.operad().n});
    for (const auto& [t, c] : v.terms()) out.add_unchecked(nu(t), c);
    return out;
}

/// Reverses the exponent sequence; fixes the unit.
inline Partition iota(const Partition& p)
{
    if (p.is_unit()) return p;
    std::vector<int> e(p.exponents().rbegin(), p.exponents().rend());
    return Partition(std::move(e));
}

template <Coefficient Coeff>
LieVector<ParOperad, Coeff> iota(const LieVector<ParOperad, Coeff>& v)
{
    LieVector<ParOperad, Coeff> out(v.operad());
    for (const auto& [p, c] : v.terms()) out.add_unchecked(iota(p), c);
    return out;
}

// ---------------------------------------------------------------------------
// Diagonal action of W_1 on Q[x_1, x_2, ...]:
//   (x^m d/dx) f = sum_i x_i^m df/dx_i.

/// Rational polynomial in x_1, x_2, ...; exponent vectors carry no trailing
/// zeros.
class DiagonalPoly {
public:
    using Monomial = std::vector<int>;

    DiagonalPoly() = default;

    static DiagonalPoly from(const Partition& p)
    {
        DiagonalPoly f;
        f.add(p.exponents(), 1);
        return f;
    }

    static DiagonalPoly from(const ParVector& v)
    {
        DiagonalPoly f;
        for (const auto& [p, c] : v.terms()) {
            if (p.is_unit()) throw std::invalid_argument("the unit is not a monomial of the polynomial ring");
            f.add(p.exponents(), c);
        }
        return f;
    }

    void add(Monomial m, const Rat& c)
    {
        while (!m.empty() && m.back() == 0) m.pop_back();
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    DiagonalPoly& operator-=(const DiagonalPoly& o)
    {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }

    friend bool operator==(const DiagonalPoly&, const DiagonalPoly&) = default;

private:
    std::map<Monomial, Rat> terms_;
};

inline DiagonalPoly diagonal_act(const W1Vector<Rat>& xi, const DiagonalPoly& f)
{
    DiagonalPoly out;
    for (const auto& [gen, a] : xi.terms()) {
        const int shift = static_cast<int>(gen.m) - 1;
        for (const auto& [mono, b] : f.terms())
            for (std::size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] == 0) continue;
                auto next = mono;
                next[i] += shift;
                out.add(std::move(next), a * b * mono[i]);
            }
    }
    return out;
}

/// Back from the polynomial ring; every monomial must be a partition in op.
inline ParVector to_par_vector(const ParOperad& op, const DiagonalPoly& f)
{
    ParVector out(op);
    for (const auto& [mono, c] : f.terms()) {
        if (mono.size() < 2 || std::find(mono.begin(), mono.end(), 0) != mono.end())
            throw std::logic_error("polynomial leaves the span of Par");
        out.add(Partition(mono), c);
    }
    return out;
}

/// [c, d] = eps(c)(d) - eps(d)(c) for c, d supported in arities >= 2.
inline ParVector bracket_via_action(const ParVector& c, const ParVector& d)
{
    c.same_operad(d);
    for (const auto* v : {&c, &d})
        for (const auto& [p, coeff] : v->terms())
            if (p.arity() < 2) throw std::invalid_argument("bracket_via_action needs arities >= 2");
    DiagonalPoly out = diagonal_act(augment(c), DiagonalPoly::from(d));
    out -= diagonal_act(augment(d), DiagonalPoly::from(c));
    return to_par_vector(c.operad(), out);
}

} // namespace operadlab
