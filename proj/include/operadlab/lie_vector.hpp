#pragma once

#include "operadlab/operad.hpp"
#include "operadlab/rational.hpp"
#include "operadlab/tpoly.hpp"

#include <json.hpp>

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace operadlab {

template <class C>
concept Coefficient = requires(C a, const C& b) {
    { a += b } -> std::same_as<C&>;
    { a -= b } -> std::same_as<C&>;
    { is_zero(b) } -> std::same_as<bool>;
    C(1);
};

/// Finitely supported linear combination of basis elements of one operad,
/// i.e. an element of the Lie algebra Lambda(QC). Zero coefficients are
/// never stored.
template <NonsymmetricOperad Op, Coefficient Coeff = Rat>
class LieVector {
public:
    using operad_type = Op;
    using element_type = typename Op::element_type;
    using coeff_type = Coeff;
    using Terms = std::map<element_type, Coeff>;

    LieVector() = default;
    explicit LieVector(Op op) : op_(std::move(op)) {}
    LieVector(Op op, const element_type& e, const Coeff& c = Coeff(1)) : op_(std::move(op)) { add(e, c); }

    const Op& operad() const { return op_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coeff coefficient(const element_type& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add(const element_type& e, const Coeff& c)
    {
        if (operadlab::is_zero(c)) return;
        if (!op_.contains(e))
            throw std::invalid_argument("element " + op_.render(e) + " is not in " + op_.id().name());
        add_unchecked(e, c);
    }

    /// For elements produced by the operad's own composition.
    void add_unchecked(const element_type& e, const Coeff& c)
    {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) it->second += c;
        if (operadlab::is_zero(it->second)) terms_.erase(it);
    }

    LieVector& operator+=(const LieVector& o)
    {
        same_operad(o);
        for (const auto& [e, c] : o.terms_) add_unchecked(e, c);
        return *this;
    }
    LieVector& operator-=(const LieVector& o)
    {
        same_operad(o);
        for (const auto& [e, c] : o.terms_) add_unchecked(e, Coeff(0) - c);
        return *this;
    }
    friend LieVector operator+(LieVector a, const LieVector& b) { return a += b; }
    friend LieVector operator-(LieVector a, const LieVector& b) { return a -= b; }
    friend LieVector operator-(const LieVector& a) { return Coeff(-1) * a; }
    friend LieVector operator*(const Coeff& s, const LieVector& v)
    {
        LieVector out(v.op_);
        if (operadlab::is_zero(s)) return out;
        for (const auto& [e, c] : v.terms_) out.add_unchecked(e, s * c);
        return out;
    }
    friend bool operator==(const LieVector& a, const LieVector& b)
    {
        return a.op_.id() == b.op_.id() && a.terms_ == b.terms_;
    }

    void same_operad(const LieVector& o) const
    {
        if (!(op_.id() == o.op_.id()))
            throw std::invalid_argument("operad mismatch: " + op_.id().name() + " vs " + o.op_.id().name());
    }

private:
    Op op_{};
    Terms terms_;
};

/// Calls emit(element, integer coefficient) for each term of
/// [c, d] = sum_t d o_t c - sum_s c o_s d.
template <NonsymmetricOperad Op, class Emit>
void basis_bracket(const Op& op, const typename Op::element_type& c, const typename Op::element_type& d, Emit&& emit)
{
    const std::size_t k = op.arity(c);
    const std::size_t j = op.arity(d);
    for (std::size_t t = 1; t <= j; ++t) emit(op.compose_at(d, t, c), 1);
    for (std::size_t s = 1; s <= k; ++s) emit(op.compose_at(c, s, d), -1);
}

template <NonsymmetricOperad Op, Coefficient Coeff>
LieVector<Op, Coeff> bracket(const LieVector<Op, Coeff>& u, const LieVector<Op, Coeff>& v)
{
    u.same_operad(v);
    const Op& op = u.operad();
    std::map<typename Op::element_type, long long> unit_bracket;
    LieVector<Op, Coeff> out(op);
    for (const auto& [c, a] : u.terms())
        for (const auto& [d, b] : v.terms()) {
            unit_bracket.clear();
            basis_bracket(op, c, d, [&](const auto& e, int sign) { unit_bracket[e] += sign; });
            Coeff ab = a * b;
            for (const auto& [e, n] : unit_bracket)
                if (n != 0) out.add_unchecked(e, Coeff(static_cast<int>(n)) * ab);
        }
    return out;
}

/// The operator delta_c : d -> c(d) = sum_t d o_t c. delta is injective
/// (delta_c(unit) = c) and delta_[c,d] = [delta_c, delta_d].
template <NonsymmetricOperad Op, Coefficient Coeff>
class DeltaRep {
public:
    explicit DeltaRep(LieVector<Op, Coeff> c) : c_(std::move(c)) {}

    const LieVector<Op, Coeff>& vector() const { return c_; }

    LieVector<Op, Coeff> operator()(const LieVector<Op, Coeff>& d) const
    {
        c_.same_operad(d);
        const Op& op = c_.operad();
        LieVector<Op, Coeff> out(op);
        for (const auto& [x, a] : c_.terms())
            for (const auto& [y, b] : d.terms()) {
                Coeff ab = b * a;
                for (std::size_t t = 1; t <= op.arity(y); ++t) out.add_unchecked(op.compose_at(y, t, x), ab);
            }
        return out;
    }

private:
    LieVector<Op, Coeff> c_;
};

template <NonsymmetricOperad Op, Coefficient Coeff>
DeltaRep<Op, Coeff> delta_rep(const LieVector<Op, Coeff>& c)
{
    return DeltaRep<Op, Coeff>(c);
}

/// Arity-homogeneous components; component m is the (m-1)-eigenspace of ad e0.
template <NonsymmetricOperad Op, Coefficient Coeff>
std::map<std::size_t, LieVector<Op, Coeff>> grade_split(const LieVector<Op, Coeff>& u)
{
    std::map<std::size_t, LieVector<Op, Coeff>> out;
    for (const auto& [e, c] : u.terms()) {
        auto [it, fresh] = out.try_emplace(u.operad().arity(e), u.operad());
        it->second.add_unchecked(e, c);
    }
    return out;
}

/// The unit e0 as a Lie algebra element.
template <NonsymmetricOperad Op, Coefficient Coeff = Rat>
LieVector<Op, Coeff> e0(const Op& op)
{
    return LieVector<Op, Coeff>(op, op.unit());
}

/*
 * Augmentation: each arity-m component goes to (sum of its coefficients) 1_m
 * in Lambda(End Q) = W_1, where 1_m is x^m d/dx. It is a homomorphism of
 * operads and of Lie algebras.
 */
template <NonsymmetricOperad Op, Coefficient Coeff>
LieVector<EndQ, Coeff> augment(const LieVector<Op, Coeff>& u)
{
    static_assert(!std::is_same_v<Op, EndQ>, "augmentation is defined for operads of sets other than End(Q)");
    LieVector<EndQ, Coeff> out{EndQ{}};
    for (const auto& [e, c] : u.terms()) out.add_unchecked(W1Gen{u.operad().arity(e)}, c);
    return out;
}

/// Alias used for the polynomial vector field side: coefficient of 1_m is
/// the coefficient of x^m d/dx.
template <Coefficient Coeff = Rat>
using W1Vector = LieVector<EndQ, Coeff>;

/// e_i = x^{i+1} d/dx.
template <Coefficient Coeff = Rat>
W1Vector<Coeff> witt(std::size_t i)
{
    return W1Vector<Coeff>(EndQ{}, W1Gen{i + 1});
}

// ---------------------------------------------------------------------------
// Text and JSON forms.

inline std::string format_coeff(const Rat& c) { return c.get_str(); }
inline std::string format_coeff(const TPoly& c) { return c.to_string(); }

inline nlohmann::json coeff_json(const Rat& c) { return format_rat_fraction(c); }
inline nlohmann::json coeff_json(const TPoly& c)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : c.coefficients()) arr.push_back(format_rat_fraction(x));
    return arr;
}

/// "x1^3 x2 + x1^2 x2^2 - x1 x2^3", "3/2 (12) - o", "(2t - 3) x1^3 x2^3".
template <NonsymmetricOperad Op, Coefficient Coeff>
std::string to_string(const LieVector<Op, Coeff>& v)
{
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : v.terms()) {
        std::string elem = v.operad().render(e);
        if constexpr (std::is_same_v<Coeff, Rat>) {
            bool neg = sgn(c) < 0;
            Rat mag = abs(c);
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (mag != 1) out += mag.get_str() + " ";
            out += elem;
        } else {
            out += out.empty() ? "" : " + ";
            if (c == Coeff(1))
                out += elem;
            else
                out += "(" + format_coeff(c) + ") " + elem;
        }
    }
    return out;
}

template <NonsymmetricOperad Op, Coefficient Coeff>
nlohmann::json to_json(const LieVector<Op, Coeff>& v)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : v.terms()) terms.push_back({v.operad().render(e), coeff_json(c)});
    return {{"operad", v.operad().id().selector()}, {"terms", terms}};
}

/*
 * Parses a rational combination such as "x1^3 x2 + 2 x1 x2^3 - 1/2 x1^2 x2".
 * A term is an optional rational coefficient (separated by a space or '*')
 * followed by an element in the operad's text form.
 */
template <NonsymmetricOperad Op>
LieVector<Op, Rat> parse_lie_vector(const Op& op, std::string_view text)
{
    LieVector<Op, Rat> out(op);
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto parse_term = [&](std::string_view term, int sign) {
        term = trim(term);
        if (term.empty()) throw std::invalid_argument("empty term in: " + std::string(text));
        Rat coeff = sign;
        std::size_t cut = term.find_first_of(" *");
        if (cut != std::string_view::npos) {
            std::string_view head = term.substr(0, cut);
            bool numeric = !head.empty() && head.find_first_not_of("0123456789/") == std::string_view::npos;
            if (numeric) {
                coeff *= parse_rat(head);
                term = trim(term.substr(cut + 1));
                if (!term.empty() && term.front() == '*') term = trim(term.substr(1));
            }
        }
        out.add(op.parse(term), coeff);
    };
    std::string_view s = trim(text);
    if (s == "0") return out;
    int sign = 1;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        sign = s.front() == '-' ? -1 : 1;
        s.remove_prefix(1);
    }
    // Split on '+'/'-' that stand alone between terms (surrounded by spaces),
    // so element grammars may use '-' internally (e.g. "tree-").
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && i > 0 && s[i - 1] == ' ' && i + 1 < s.size() && s[i + 1] == ' ') {
            parse_term(s.substr(start, i - start), sign);
            sign = s[i] == '-' ? -1 : 1;
            start = i + 1;
        }
    }
    parse_term(s.substr(start), sign);
    return out;
}

} // namespace operadlab
