#pragma once

#include "operadlab/homology.hpp"
#include "operadlab/lie_vector.hpp"
#include "operadlab/partition.hpp"
#include "operadlab/tree.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace operadlab {

/// Pass/fail with a count and the first counterexample.
using CheckReport = AxiomReport;

namespace detail {

template <NonsymmetricOperad Op>
std::vector<LieVector<Op, Rat>> basis_vectors(const Op& op, std::size_t m)
{
    std::vector<LieVector<Op, Rat>> out;
    for (const auto& e : op.basis(m)) out.emplace_back(op, e);
    return out;
}

template <NonsymmetricOperad Op>
LieVector<Op, Rat> random_vector(const Op& op, std::size_t m, std::mt19937_64& rng)
{
    LieVector<Op, Rat> v(op);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < 3; ++i) v.add_unchecked(op.random_element(m, rng), Rat(coeff(rng)));
    return v;
}

} // namespace detail

/// Antisymmetry on pairs and Jacobi on triples of basis elements whose
/// bracket lands in arity <= max_out. Arities start at max(min_arity, 1).
template <NonsymmetricOperad Op>
CheckReport check_jacobi(const Op& op, std::size_t max_out)
{
    CheckReport r;
    const std::size_t lo = std::max<std::size_t>(op.min_arity(), 1);
    std::vector<std::vector<LieVector<Op, Rat>>> pool(max_out + 1);
    for (std::size_t m = lo; m <= max_out; ++m) pool[m] = detail::basis_vectors(op, m);
    for (std::size_t a = lo; a <= max_out; ++a)
        for (std::size_t b = lo; a + b - 1 <= max_out; ++b)
            for (const auto& x : pool[a])
                for (const auto& y : pool[b]) {
                    ++r.checks;
                    if (!(bracket(x, y) + bracket(y, x)).is_zero())
                        r.fail("antisymmetry fails for " + to_string(x) + ", " + to_string(y));
                }
    for (std::size_t a = lo; a <= max_out; ++a)
        for (std::size_t b = a; a + b - 1 <= max_out; ++b)
            for (std::size_t c = b; a + b + c - 2 <= max_out; ++c)
                for (const auto& x : pool[a])
                    for (const auto& y : pool[b])
                        for (const auto& z : pool[c]) {
                            if (!r.passed) return r;
                            ++r.checks;
                            auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
                            if (!j.is_zero())
                                r.fail("Jacobi fails for " + to_string(x) + ", " + to_string(y) + ", " + to_string(z));
                        }
    return r;
}

/// Jacobi on seeded random triples of vectors with arities in [1, max_arity].
template <NonsymmetricOperad Op>
CheckReport check_jacobi_random(const Op& op, std::size_t max_arity, std::size_t samples, std::uint64_t seed)
{
    CheckReport r;
    std::mt19937_64 rng(seed);
    const std::size_t lo = std::max<std::size_t>(op.min_arity(), 1);
    std::uniform_int_distribution<std::size_t> arity(lo, max_arity);
    for (std::size_t i = 0; i < samples && r.passed; ++i) {
        auto x = detail::random_vector(op, arity(rng), rng);
        auto y = detail::random_vector(op, arity(rng), rng);
        auto z = detail::random_vector(op, arity(rng), rng);
        ++r.checks;
        auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
        if (!j.is_zero()) r.fail("Jacobi fails for " + to_string(x) + ", " + to_string(y) + ", " + to_string(z));
    }
    return r;
}

/// [P((k)), P((j))] lies in P((k+j-1)) for basis pairs with k+j-1 <= max_out.
template <NonsymmetricOperad Op>
CheckReport check_grading(const Op& op, std::size_t max_out)
{
    CheckReport r;
    const std::size_t lo = std::max<std::size_t>(op.min_arity(), 1);
    for (std::size_t a = lo; a <= max_out; ++a)
        for (std::size_t b = lo; a + b - 1 <= max_out; ++b)
            for (const auto& x : op.basis(a))
                for (const auto& y : op.basis(b))
                    basis_bracket(op, x, y, [&](const auto& e, int) {
                        ++r.checks;
                        if (op.arity(e) != a + b - 1)
                            r.fail("bracket of " + op.render(x) + ", " + op.render(y) + " leaves arity " +
                                   std::to_string(a + b - 1));
                    });
    return r;
}

/// f([x, y]) = [f(x), f(y)] for all basis pairs with output arity <= max_out.
template <NonsymmetricOperad Op, class Map>
CheckReport check_lie_hom(const Op& op, std::size_t max_out, Map&& f)
{
    CheckReport r;
    const std::size_t lo = std::max<std::size_t>(op.min_arity(), 1);
    std::vector<std::vector<LieVector<Op, Rat>>> pool(max_out + 1);
    for (std::size_t m = lo; m <= max_out; ++m) pool[m] = detail::basis_vectors(op, m);
    for (std::size_t a = lo; a <= max_out; ++a)
        for (std::size_t b = lo; a + b - 1 <= max_out; ++b)
            for (const auto& x : pool[a])
                for (const auto& y : pool[b]) {
                    if (!r.passed) return r;
                    ++r.checks;
                    if (!(f(bracket(x, y)) == bracket(f(x), f(y))))
                        r.fail("not a Lie homomorphism on " + to_string(x) + ", " + to_string(y));
                }
    return r;
}

/// nu(c o_s d) = nu(c) o_s nu(d) and nu(unit) = unit, exhaustively for
/// output arity <= max_arity in Tree_n.
inline CheckReport check_nu_operad_hom(int n, std::size_t max_arity)
{
    CheckReport r;
    TreeOperad trees{n, false};
    ParOperad par{n};
    ++r.checks;
    if (!(nu(trees.unit()) == par.unit())) r.fail("nu does not preserve the unit");
    for (std::size_t a = 1; a <= max_arity; ++a)
        for (std::size_t b = 1; a + b - 1 <= max_arity; ++b)
            for (const auto& c : trees.basis(a))
                for (const auto& d : trees.basis(b))
                    for (std::size_t s = 1; s <= a; ++s) {
                        ++r.checks;
                        if (!(nu(trees.compose_at(c, s, d)) == par.compose_at(nu(c), s, nu(d))))
                            r.fail("nu fails on " + render_tree(c) + " o_" + std::to_string(s) + " " + render_tree(d));
                    }
    return r;
}

/// Every Par_n basis element of arity <= max_arity is nu of some tree; the
/// witness is the corolla of corollas (or leaves) with the block sizes.
inline CheckReport check_nu_surjective(int n, std::size_t max_arity)
{
    CheckReport r;
    TreeOperad trees{n, false};
    ParOperad par{n};
    for (std::size_t m = 1; m <= max_arity; ++m) {
        std::map<Partition, bool> hit;
        for (const auto& t : trees.basis(m)) hit[nu(t)] = true;
        for (const auto& p : par.basis(m)) {
            ++r.checks;
            if (!hit.count(p)) r.fail(render_partition(p) + " is not in the image of nu");
        }
    }
    return r;
}

/// [c, d] computed by the operad agrees with eps(c)(d) - eps(d)(c) for all
/// Par basis pairs with output arity <= max_out.
inline CheckReport check_bracket_vs_action(std::size_t max_out)
{
    CheckReport r;
    ParOperad par{};
    for (std::size_t a = 2; a <= max_out; ++a)
        for (std::size_t b = 2; a + b - 1 <= max_out; ++b)
            for (const auto& c : par.basis(a))
                for (const auto& d : par.basis(b)) {
                    ++r.checks;
                    ParVector x(par, c), y(par, d);
                    if (!(bracket(x, y) == bracket_via_action(x, y)))
                        r.fail("operadic and action brackets differ on " + render_partition(c) + ", " +
                               render_partition(d));
                }
    return r;
}

/// Basis {p - p_0} of ker(eps) in arity m, p_0 the first basis element.
inline std::vector<ParVector> augmentation_kernel_basis(const ParOperad& op, std::size_t m)
{
    std::vector<ParVector> out;
    auto b = op.basis(m);
    for (std::size_t i = 1; i < b.size(); ++i) {
        ParVector v(op, b[i]);
        v.add(b[0], Rat(-1));
        out.push_back(v);
    }
    return out;
}

inline CheckReport check_kernel_abelian(const ParOperad& op, std::size_t max_arity)
{
    CheckReport r;
    std::vector<ParVector> kernel;
    for (std::size_t m = 2; m <= max_arity; ++m)
        for (auto& v : augmentation_kernel_basis(op, m)) kernel.push_back(std::move(v));
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = i; j < kernel.size(); ++j) {
            ++r.checks;
            auto b = bracket(kernel[i], kernel[j]);
            if (!b.is_zero())
                r.fail("[" + to_string(kernel[i]) + ", " + to_string(kernel[j]) + "] = " + to_string(b));
        }
    return r;
}

/// [1_m, 1_n] = (n - m) 1_{m+n-1} in End(Q) for 0 <= m, n <= max.
inline CheckReport check_witt_brackets(std::size_t max)
{
    CheckReport r;
    EndQ op;
    for (std::size_t m = 0; m <= max; ++m)
        for (std::size_t n = 0; n <= max; ++n) {
            ++r.checks;
            W1Vector<> expected(op);
            if (m + n >= 1) expected.add(W1Gen{m + n - 1}, Rat(static_cast<long>(n) - static_cast<long>(m)));
            if (!(bracket(W1Vector<>(op, W1Gen{m}), W1Vector<>(op, W1Gen{n})) == expected))
                r.fail("[1_" + std::to_string(m) + ", 1_" + std::to_string(n) + "] is wrong");
        }
    return r;
}

/// e_n = (1/(n-2)!) (ad e_1)^(n-2) e_2 for 3 <= n <= max_n.
inline CheckReport check_witt_recursion(std::size_t max_n)
{
    CheckReport r;
    for (std::size_t n = 3; n <= max_n; ++n) {
        W1Vector<> v = witt(2);
        for (std::size_t i = 0; i < n - 2; ++i) v = bracket(witt(1), v);
        ++r.checks;
        if (!(Rat(1) / Rat(factorial(static_cast<unsigned>(n - 2))) * v == witt(n)))
            r.fail("ad e_1 recursion fails at n = " + std::to_string(n));
    }
    return r;
}

/// dd = 0 and d((12) o_2 c) = c - (12) o_2 dc for every tree c of arity
/// 0..max_arity in Tree_n^- (n = 0: unbounded).
inline CheckReport check_tree_minus_complex(int n, std::size_t max_arity)
{
    CheckReport r;
    TreeOperad op{n, true};
    for (std::size_t m = 0; m <= max_arity; ++m)
        for (const auto& t : op.basis(m)) {
            TreeVector c(op, t);
            r.checks += 2;
            if (!boundary(boundary(c)).is_zero()) r.fail("dd != 0 on " + render_tree(t));
            if (!(boundary(homotopy(c)) == c - homotopy(boundary(c))))
                r.fail("homotopy identity fails on " + render_tree(t));
        }
    return r;
}

/// d d = 0 on every basis chain of degree 2..max_p and weight in [lo, hi].
template <NonsymmetricOperad Op>
CheckReport check_dd_zero(const ChainAlgebra<Op>& alg, int max_p, int lo, int hi,
                          SignConvention conv = SignConvention::paper)
{
    CheckReport r;
    for (int w = lo; w <= hi; ++w)
        for (int p = 2; p <= max_p; ++p)
            for (const auto& t : chain_basis(alg, p, w)) {
                ++r.checks;
                if (!apply_boundary(alg, apply_boundary(alg, Chain{{t, Rat(1)}}, conv), conv).empty())
                    r.fail("dd != 0 on " + alg.render(t));
            }
    return r;
}

} // namespace operadlab
