#pragma once

#include "operadlab/lie_vector.hpp"
#include "operadlab/sparse_matrix.hpp"

#include <cstddef>
#include <deque>
#include <map>
#include <vector>

namespace operadlab {

enum class ClosureMode {
    generators, ///< bracket each new basis vector with the generators only
    pairwise    ///< bracket each new basis vector with every basis vector found
};

template <NonsymmetricOperad Op>
struct GeneratedSubspace {
    using Vector = LieVector<Op, Rat>;
    using Element = typename Op::element_type;

    std::size_t max_arity = 0;
    std::map<std::size_t, std::vector<Vector>> basis;
    std::map<std::size_t, SparseEchelon<Element>> spans;

    std::size_t dim(std::size_t arity) const
    {
        auto it = spans.find(arity);
        return it == spans.end() ? 0 : it->second.rank();
    }

    /// Per-arity dimensions for arities 0..max_arity.
    std::vector<std::size_t> dims() const
    {
        std::vector<std::size_t> out(max_arity + 1, 0);
        for (std::size_t m = 0; m <= max_arity; ++m) out[m] = dim(m);
        return out;
    }

    /// Membership of a vector in the truncated subalgebra.
    bool contains(const Vector& v) const
    {
        for (const auto& [m, part] : grade_split(v)) {
            if (m > max_arity) return false;
            auto it = spans.find(m);
            if (it == spans.end()) return false;
            if (!it->second.contains(integer_row(part.terms()))) return false;
        }
        return true;
    }
};

/*
 * Span of all iterated brackets of the generators, truncated above
 * max_arity. Inhomogeneous generators are split into arity components first.
 *
 * The Lie subalgebra generated by a set S is spanned by right-normed brackets
 * [s_1, [s_2, ... s_k]], so closing the span under ad s for s in S already
 * gives everything; ClosureMode::pairwise is the stricter cross-check.
 */
template <NonsymmetricOperad Op>
GeneratedSubspace<Op> generated_subspace(const std::vector<LieVector<Op, Rat>>& gens, std::size_t max_arity,
                                         ClosureMode mode = ClosureMode::generators)
{
    using Vector = LieVector<Op, Rat>;
    GeneratedSubspace<Op> out;
    out.max_arity = max_arity;

    std::vector<Vector> homogeneous;
    for (const auto& g : gens)
        for (auto& [m, part] : grade_split(g))
            if (m <= max_arity) homogeneous.push_back(part);

    std::deque<Vector> work;
    auto offer = [&](const Vector& v) {
        if (v.is_zero()) return;
        std::size_t m = v.operad().arity(v.terms().begin()->first);
        if (m > max_arity) return;
        auto& span = out.spans[m];
        if (span.insert(integer_row(v.terms()))) {
            out.basis[m].push_back(v);
            work.push_back(v);
        }
    };
    for (const auto& g : homogeneous) offer(g);

    std::vector<Vector> found(work.begin(), work.end());
    while (!work.empty()) {
        Vector w = work.front();
        work.pop_front();
        const std::vector<Vector>& partners = mode == ClosureMode::generators ? homogeneous : found;
        std::vector<Vector> images;
        for (const auto& g : partners) images.push_back(bracket(g, w));
        for (const auto& img : images) {
            std::size_t before = work.size();
            offer(img);
            if (work.size() > before) found.push_back(work.back());
        }
    }
    return out;
}

} // namespace operadlab
