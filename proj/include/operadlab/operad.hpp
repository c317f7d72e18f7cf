#pragma once

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace operadlab {

/// Which concrete nonsymmetric operad a value belongs to. `n` is the bound
/// on vertex out-degree (trees) or block count (partitions); 0 = unbounded.
struct OperadId {
    enum class Family { tree, tree_minus, par, endq };

    Family family = Family::tree;
    int n = 0;

    friend bool operator==(const OperadId&, const OperadId&) = default;

    /// Selector form used on the command line: tree, tree2, tree-, tree2-,
    /// par, par2, endq.
    std::string selector() const
    {
        std::string bound = n ? std::to_string(n) : "";
        switch (family) {
        case Family::tree: return "tree" + bound;
        case Family::tree_minus: return "tree" + bound + "-";
        case Family::par: return "par" + bound;
        case Family::endq: return "endq";
        }
        return {};
    }

    /// Display form: Tree_2, TreeMinus, Par_2, EndQ.
    std::string name() const
    {
        std::string bound = n ? "_" + std::to_string(n) : "";
        switch (family) {
        case Family::tree: return "Tree" + bound;
        case Family::tree_minus: return "TreeMinus" + bound;
        case Family::par: return "Par" + bound;
        case Family::endq: return "EndQ";
        }
        return {};
    }

    static OperadId parse(std::string_view text)
    {
        std::string s;
        for (char ch : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        auto bound = [&](std::string_view digits) {
            if (digits.empty()) return 0;
            int v = 0;
            for (char ch : digits) {
                if (ch < '0' || ch > '9') throw std::invalid_argument("unknown operad: " + std::string(text));
                v = v * 10 + (ch - '0');
            }
            if (v < 2) throw std::invalid_argument("operad bound must be >= 2: " + std::string(text));
            return v;
        };
        if (s == "endq") return {Family::endq, 0};
        std::string_view sv = s;
        if (sv.starts_with("treeminus")) return {Family::tree_minus, bound(sv.substr(9))};
        if (sv.starts_with("tree")) {
            sv.remove_prefix(4);
            if (sv.ends_with("-")) {
                sv.remove_suffix(1);
                return {Family::tree_minus, bound(sv)};
            }
            return {Family::tree, bound(sv)};
        }
        if (sv.starts_with("par")) return {Family::par, bound(sv.substr(3))};
        throw std::invalid_argument("unknown operad: " + std::string(text));
    }
};

/*
 * A nonsymmetric operad of sets with a linearly ordered basis in each arity.
 *
 * compose_at(c, s, d) is the partial composition c o_s d with 1-based slot s.
 * Elements are totally ordered by operator<; the order is the canonical basis
 * order used for matrices and wedge tuples.
 */
template <class O>
concept NonsymmetricOperad = requires(const O& op, const typename O::element_type& e, std::size_t s,
                                      std::mt19937_64& rng, std::string_view text) {
    typename O::element_type;
    requires std::totally_ordered<typename O::element_type>;
    { op.id() } -> std::same_as<OperadId>;
    { op.arity(e) } -> std::convertible_to<std::size_t>;
    { op.unit() } -> std::same_as<typename O::element_type>;
    { op.compose_at(e, s, e) } -> std::same_as<typename O::element_type>;
    { op.contains(e) } -> std::same_as<bool>;
    { op.min_arity() } -> std::convertible_to<std::size_t>;
    { op.basis(s) } -> std::same_as<std::vector<typename O::element_type>>;
    { op.basis_size(s) } -> std::convertible_to<std::size_t>;
    { op.random_element(s, rng) } -> std::same_as<typename O::element_type>;
    { op.render(e) } -> std::same_as<std::string>;
    { op.parse(text) } -> std::same_as<typename O::element_type>;
};

/// Simultaneous composition gamma(c; d_1..d_k), folded from partial
/// compositions right to left. Slot s of c is still slot s after composing
/// into slots s+1..k, so no index shifting is needed in this order.
template <NonsymmetricOperad Op>
typename Op::element_type gamma(const Op& op, const typename Op::element_type& c,
                                const std::vector<typename Op::element_type>& args)
{
    if (args.size() != op.arity(c) || args.empty())
        throw std::invalid_argument("gamma: argument count must equal arity(c) >= 1");
    auto result = c;
    for (std::size_t s = args.size(); s >= 1; --s) result = op.compose_at(result, s, args[s - 1]);
    return result;
}

/// Left-to-right fold of the same composition. Composing into slot s shifts
/// every later slot by arity(d_s) - 1; this is the documented reindexing.
template <NonsymmetricOperad Op>
typename Op::element_type gamma_left_fold(const Op& op, const typename Op::element_type& c,
                                          const std::vector<typename Op::element_type>& args)
{
    if (args.size() != op.arity(c) || args.empty())
        throw std::invalid_argument("gamma: argument count must equal arity(c) >= 1");
    auto result = c;
    std::size_t slot = 1;
    for (const auto& d : args) {
        result = op.compose_at(result, slot, d);
        slot += op.arity(d);
    }
    return result;
}

/// 1_m in End(Q), identified with x^m d/dx.
struct W1Gen {
    std::size_t m = 0;
    friend auto operator<=>(const W1Gen&, const W1Gen&) = default;
};

/// The endomorphism operad of Q: one basis element 1_m per arity m >= 0.
struct EndQ {
    using element_type = W1Gen;

    OperadId id() const { return {OperadId::Family::endq, 0}; }
    std::size_t arity(const W1Gen& e) const { return e.m; }
    W1Gen unit() const { return {1}; }
    std::size_t min_arity() const { return 0; }
    bool contains(const W1Gen&) const { return true; }

    W1Gen compose_at(const W1Gen& c, std::size_t s, const W1Gen& d) const
    {
        if (c.m == 0) throw std::invalid_argument("compose_at: arity-0 element has no slots");
        if (s < 1 || s > c.m) throw std::out_of_range("compose_at: slot out of range");
        return {c.m + d.m - 1};
    }

    std::vector<W1Gen> basis(std::size_t m) const { return {W1Gen{m}}; }
    std::size_t basis_size(std::size_t) const { return 1; }
    W1Gen random_element(std::size_t m, std::mt19937_64&) const { return {m}; }

    std::string render(const W1Gen& e) const { return "1_" + std::to_string(e.m); }

    /// Accepts "1_m", "x" or "x^m", optionally followed by "d/dx".
    W1Gen parse(std::string_view text) const
    {
        std::string s;
        for (char ch : text)
            if (ch != ' ') s.push_back(ch);
        auto number = [&](std::string_view digits) {
            if (digits.empty()) throw std::invalid_argument("bad EndQ element: " + std::string(text));
            std::size_t v = 0;
            for (char ch : digits) {
                if (ch < '0' || ch > '9') throw std::invalid_argument("bad EndQ element: " + std::string(text));
                v = v * 10 + static_cast<std::size_t>(ch - '0');
            }
            return v;
        };
        std::string_view sv = s;
        if (sv.ends_with("d/dx")) sv.remove_suffix(4);
        if (sv.starts_with("1_")) return {number(sv.substr(2))};
        if (sv == "x") return {1};
        if (sv.starts_with("x^")) return {number(sv.substr(2))};
        throw std::invalid_argument("bad EndQ element: " + std::string(text));
    }
};

struct AxiomReport {
    bool passed = true;
    std::size_t checks = 0;
    std::optional<std::string> counterexample;

    void fail(std::string what)
    {
        if (passed) counterexample = std::move(what);
        passed = false;
    }
};

namespace detail {

/// Calls f(parts) for every composition of `total` into `k` parts, each in
/// [lo, hi]. k = 0 yields the empty composition iff total = 0.
inline void for_each_composition(std::size_t total, std::size_t k, std::size_t lo, std::size_t hi,
                                 const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> parts(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i == k) {
            if (left == 0) f(parts);
            return;
        }
        std::size_t rest = k - i - 1;
        for (std::size_t a = lo; a <= hi && a <= left; ++a) {
            if (left - a < rest * lo) break;
            parts[i] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, total);
}

/// Calls f(choice) for every tuple (x_1..x_k) with x_i in basis(arities[i]).
template <class E>
void for_each_product(const std::vector<const std::vector<E>*>& pools, const std::function<void(const std::vector<E>&)>& f)
{
    std::vector<E> pick(pools.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == pools.size()) {
            f(pick);
            return;
        }
        for (const auto& x : *pools[i]) {
            pick[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace detail

/*
 * Checks both unit laws and associativity of gamma.
 *
 * Exhaustive part: every c, d_1..d_k, e_1..e_j with arity(c) <= max_arity,
 * j = sum arity(d_s) <= max_arity and output arity <= max_arity. Random
 * part: `samples` seeded draws with arities up to max_arity + 3.
 */
template <NonsymmetricOperad Op>
AxiomReport check_axioms(const Op& op, std::size_t max_arity, std::size_t samples, std::uint64_t seed)
{
    using E = typename Op::element_type;
    if (max_arity < 2) throw std::invalid_argument("check_axioms: max_arity must be >= 2");
    AxiomReport report;
    const E one = op.unit();
    const std::size_t lo = op.min_arity();

    std::vector<std::vector<E>> pool(max_arity + 1);
    for (std::size_t m = lo; m <= max_arity; ++m) pool[m] = op.basis(m);

    auto check_one = [&](const E& c, const std::vector<E>& ds, const std::vector<E>& es) {
        ++report.checks;
        if (!(gamma_left_fold(op, c, ds) == gamma(op, c, ds)))
            report.fail("left and right folds of gamma disagree at c=" + op.render(c));
        if (es.empty()) return; // gamma(c; d) has arity 0, nothing to compose into
        E lhs = gamma(op, gamma(op, c, ds), es);
        std::vector<E> fs;
        std::size_t offset = 0;
        for (const auto& d : ds) {
            std::size_t j = op.arity(d);
            if (j == 0) {
                fs.push_back(d);
                continue;
            }
            std::vector<E> block(es.begin() + static_cast<std::ptrdiff_t>(offset),
                                 es.begin() + static_cast<std::ptrdiff_t>(offset + j));
            fs.push_back(gamma(op, d, block));
            offset += j;
        }
        E rhs = gamma(op, c, fs);
        if (!(lhs == rhs)) {
            std::string msg = "associativity fails for c=" + op.render(c) + " d=(";
            for (std::size_t i = 0; i < ds.size(); ++i) msg += (i ? "," : "") + op.render(ds[i]);
            msg += ") e=(";
            for (std::size_t i = 0; i < es.size(); ++i) msg += (i ? "," : "") + op.render(es[i]);
            report.fail(msg + ")");
        }
    };

    // Unit laws.
    for (std::size_t m = std::max<std::size_t>(lo, 1); m <= max_arity; ++m)
        for (const auto& c : pool[m]) {
            report.checks += 2;
            if (!(gamma(op, one, {c}) == c)) report.fail("left unit law fails for " + op.render(c));
            if (!(gamma(op, c, std::vector<E>(m, one)) == c)) report.fail("right unit law fails for " + op.render(c));
        }
    if (lo == 0)
        for (const auto& c : pool[0]) {
            ++report.checks;
            if (!(gamma(op, one, {c}) == c)) report.fail("left unit law fails for " + op.render(c));
        }

    // Exhaustive associativity.
    for (std::size_t k = 1; k <= max_arity && report.passed; ++k)
        for (std::size_t j = 0; j <= max_arity; ++j)
            detail::for_each_composition(j, k, lo, max_arity, [&](const std::vector<std::size_t>& darity) {
                std::vector<const std::vector<E>*> dpools;
                for (auto a : darity) dpools.push_back(&pool[a]);
                for (std::size_t out = 0; out <= max_arity; ++out)
                    detail::for_each_composition(out, j, lo, max_arity, [&](const std::vector<std::size_t>& earity) {
                        std::vector<const std::vector<E>*> epools;
                        for (auto a : earity) epools.push_back(&pool[a]);
                        for (const auto& c : pool[k])
                            detail::for_each_product<E>(dpools, [&](const std::vector<E>& ds) {
                                detail::for_each_product<E>(epools, [&](const std::vector<E>& es) {
                                    if (report.passed) check_one(c, ds, es);
                                });
                            });
                    });
            });

    // Seeded random samples beyond the exhaustive range.
    std::mt19937_64 rng(seed);
    const std::size_t hi = max_arity + 3;
    auto draw_arity = [&](std::size_t from, std::size_t to) {
        return std::uniform_int_distribution<std::size_t>(from, to)(rng);
    };
    for (std::size_t i = 0; i < samples && report.passed; ++i) {
        std::size_t k = draw_arity(1, 4);
        E c = op.random_element(k, rng);
        std::vector<E> ds;
        std::size_t j = 0;
        for (std::size_t s = 0; s < k; ++s) {
            std::size_t a = draw_arity(std::max<std::size_t>(lo, 1), hi / 2);
            ds.push_back(op.random_element(a, rng));
            j += a;
        }
        std::vector<E> es;
        for (std::size_t t = 0; t < j; ++t) es.push_back(op.random_element(draw_arity(lo, 3), rng));
        check_one(c, ds, es);
    }
    return report;
}

} // namespace operadlab
