#pragma once

#include "operadlab/lie_vector.hpp"
#include "operadlab/partition.hpp"
#include "operadlab/sparse_matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace operadlab {

/// Sign of the Chevalley-Eilenberg boundary term [u_i,u_j] ^ rest (1-based i < j).
///  paper: (-1)^(i+j+1), so that d(u ^ v) = [u, v] exactly;
///  ce:    (-1)^(i+j), the textbook convention.
/// Both give the same homology.
enum class SignConvention { paper, ce };

enum class BasisOrder { canonical, reversed };

inline SignConvention parse_sign_convention(const std::string& s)
{
    if (s == "paper") return SignConvention::paper;
    if (s == "ce") return SignConvention::ce;
    throw std::invalid_argument("unknown sign convention: " + s);
}

/// A basis element of Lambda(C) addressed by weight (arity - 1) and its
/// position in the canonical basis of that arity.
struct Slot {
    int weight = 0;
    std::uint32_t index = 0;
    friend auto operator<=>(const Slot&, const Slot&) = default;
};

using WedgeTuple = std::vector<Slot>;

/*
 * Lambda_k(QC): the span of basis elements of weight >= k. Weight-graded
 * Chevalley-Eilenberg chains with trivial coefficients are built from it.
 * Cached catalogs make one instance safe to share across threads.
 */
template <NonsymmetricOperad Op>
class ChainAlgebra {
public:
    using Element = typename Op::element_type;

    ChainAlgebra(Op op, int k, BasisOrder order = BasisOrder::canonical)
        : op_(std::move(op)), k_(k), order_(order), cache_(std::make_shared<Cache>())
    {
    }

    const Op& operad() const { return op_; }
    int k() const { return k_; }
    BasisOrder order() const { return order_; }

    /// Lowest weight with basis elements.
    int min_weight() const { return std::max(k_, static_cast<int>(op_.min_arity()) - 1); }

    /// Basis elements of a given weight in canonical order (empty below min_weight).
    const std::vector<Element>& elements(int weight) const { return level(weight).elements; }

    std::size_t index_of(int weight, const Element& e) const
    {
        const auto& lv = level(weight);
        auto it = lv.index.find(e);
        if (it == lv.index.end()) throw std::invalid_argument("element outside the algebra: " + op_.render(e));
        return it->second;
    }

    Slot slot_of(const Element& e) const
    {
        int w = static_cast<int>(op_.arity(e)) - 1;
        return {w, static_cast<std::uint32_t>(index_of(w, e))};
    }

    const Element& element(const Slot& s) const { return elements(s.weight).at(s.index); }

    /// The basis order used for tuples and matrix rows/columns.
    bool less(const Slot& a, const Slot& b) const { return order_ == BasisOrder::canonical ? a < b : b < a; }

    bool tuple_less(const WedgeTuple& a, const WedgeTuple& b) const
    {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [this](const Slot& x, const Slot& y) { return less(x, y); });
    }

    std::string render(const WedgeTuple& t) const
    {
        if (t.empty()) return "()";
        std::string out;
        for (const auto& s : t) out += (out.empty() ? "" : " ^ ") + op_.render(element(s));
        return out;
    }

private:
    struct Level {
        std::vector<Element> elements;
        std::map<Element, std::size_t> index;
    };
    struct Cache {
        std::mutex mutex;
        std::map<int, std::shared_ptr<const Level>> levels;
    };

    const Level& level(int weight) const
    {
        std::lock_guard lock(cache_->mutex);
        auto& slot = cache_->levels[weight];
        if (!slot) {
            auto lv = std::make_shared<Level>();
            if (weight >= min_weight()) lv->elements = op_.basis(static_cast<std::size_t>(weight + 1));
            for (std::size_t i = 0; i < lv->elements.size(); ++i) lv->index.emplace(lv->elements[i], i);
            slot = lv;
        }
        return *slot;
    }

    Op op_;
    int k_;
    BasisOrder order_;
    std::shared_ptr<Cache> cache_;
};

/// Strictly increasing p-tuples (in the algebra's order) of total weight l,
/// sorted lexicographically.
template <NonsymmetricOperad Op>
std::vector<WedgeTuple> chain_basis(const ChainAlgebra<Op>& alg, int p, int weight)
{
    if (p < 0) throw std::invalid_argument("chain_basis: negative degree");
    std::vector<WedgeTuple> out;
    if (p == 0) {
        if (weight == 0) out.emplace_back();
        return out;
    }
    // Enumerate canonically increasing tuples; weights are nondecreasing, so
    // an element at position i with r slots left has weight <= floor(rest / r).
    WedgeTuple cur;
    auto floor_div = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    auto rec = [&](auto&& self, int rest, Slot lower, bool strict) -> void {
        int r = p - static_cast<int>(cur.size());
        if (r == 0) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        int hi = floor_div(rest, r);
        for (int w = std::max(lower.weight, alg.min_weight()); w <= hi; ++w) {
            std::size_t n = alg.elements(w).size();
            std::size_t start = 0;
            if (w == lower.weight) start = lower.index + (strict ? 1 : 0);
            if (r == 1 && w != rest) continue;
            for (std::size_t i = start; i < n; ++i) {
                cur.push_back({w, static_cast<std::uint32_t>(i)});
                self(self, rest - w, cur.back(), true);
                cur.pop_back();
            }
        }
    };
    rec(rec, weight, Slot{alg.min_weight(), 0}, false);
    if (alg.order() == BasisOrder::reversed) {
        for (auto& t : out) std::reverse(t.begin(), t.end());
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return alg.tuple_less(a, b); });
    }
    return out;
}

/// A chain: finitely supported combination of wedge tuples.
using Chain = std::map<WedgeTuple, Rat>;

namespace detail {

inline void chain_add(Chain& c, const WedgeTuple& t, const Rat& v)
{
    if (v == 0) return;
    auto [it, fresh] = c.try_emplace(t, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

/// s ^ rest as a sorted tuple with its sign; false if s already occurs.
template <NonsymmetricOperad Op>
bool wedge_front(const ChainAlgebra<Op>& alg, const Slot& s, const WedgeTuple& rest, WedgeTuple& out, int& sign)
{
    std::size_t pos = 0;
    while (pos < rest.size() && alg.less(rest[pos], s)) ++pos;
    if (pos < rest.size() && rest[pos] == s) return false;
    out.clear();
    out.reserve(rest.size() + 1);
    out.insert(out.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(pos));
    out.push_back(s);
    out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(pos), rest.end());
    sign = pos % 2 ? -1 : 1;
    return true;
}

} // namespace detail

/// d(u_1 ^ ... ^ u_p) = sum_{i<j} sign(i,j) [u_i, u_j] ^ (rest), with each
/// image tuple re-sorted. Calls emit(tuple, integer coefficient).
template <NonsymmetricOperad Op, class Emit>
void boundary_of_tuple(const ChainAlgebra<Op>& alg, const WedgeTuple& t, SignConvention conv, Emit&& emit)
{
    const Op& op = alg.operad();
    const std::size_t p = t.size();
    std::map<typename Op::element_type, long long> br;
    WedgeTuple rest, image;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            br.clear();
            basis_bracket(op, alg.element(t[i]), alg.element(t[j]), [&](const auto& e, int s) { br[e] += s; });
            // 0-based i, j: (-1)^(i+j) here equals (-1)^(i+j) in 1-based terms.
            int sign = (i + j) % 2 ? -1 : 1;
            if (conv == SignConvention::paper) sign = -sign;
            rest.clear();
            for (std::size_t q = 0; q < p; ++q)
                if (q != i && q != j) rest.push_back(t[q]);
            for (const auto& [e, n] : br) {
                if (n == 0) continue;
                int w = t[i].weight + t[j].weight;
                if (w < alg.min_weight()) continue;
                Slot s{w, static_cast<std::uint32_t>(alg.index_of(w, e))};
                int ws;
                if (!detail::wedge_front(alg, s, rest, image, ws)) continue;
                emit(image, static_cast<long long>(sign * ws) * n);
            }
        }
}

template <NonsymmetricOperad Op>
Chain apply_boundary(const ChainAlgebra<Op>& alg, const Chain& c, SignConvention conv)
{
    Chain out;
    for (const auto& [t, v] : c)
        boundary_of_tuple(alg, t, conv, [&](const WedgeTuple& img, long long n) {
            detail::chain_add(out, img, v * Rat(static_cast<long>(n)));
        });
    return out;
}

/// Matrix of d : C_p -> C_{p-1} at one weight. Row r is the image of the
/// r-th source tuple written in the target basis.
struct BoundaryBlock {
    std::vector<WedgeTuple> source;
    std::vector<WedgeTuple> target;
    RatMatrix matrix;
};

template <NonsymmetricOperad Op>
BoundaryBlock boundary_block(const ChainAlgebra<Op>& alg, int p, int weight,
                             SignConvention conv = SignConvention::paper)
{
    if (p < 1) throw std::invalid_argument("boundary_block: degree must be >= 1");
    BoundaryBlock b;
    b.source = chain_basis(alg, p, weight);
    b.target = chain_basis(alg, p - 1, weight);
    b.matrix = RatMatrix(b.source.size(), b.target.size());
    auto cmp = [&](const WedgeTuple& x, const WedgeTuple& y) { return alg.tuple_less(x, y); };
    std::map<WedgeTuple, std::size_t, decltype(cmp)> col(cmp);
    for (std::size_t i = 0; i < b.target.size(); ++i) col.emplace(b.target[i], i);
    for (std::size_t r = 0; r < b.source.size(); ++r)
        boundary_of_tuple(alg, b.source[r], conv, [&](const WedgeTuple& img, long long n) {
            b.matrix.add(r, col.at(img), Rat(static_cast<long>(n)));
        });
    return b;
}

struct HomologyRow {
    int p = 0;
    int weight = 0;
    std::size_t dim_c = 0;
    std::size_t rank_in = 0;  ///< rank of d : C_{p+1} -> C_p
    std::size_t rank_out = 0; ///< rank of d : C_p -> C_{p-1}
    std::size_t dim_h = 0;
};

template <NonsymmetricOperad Op>
HomologyRow homology_row(const ChainAlgebra<Op>& alg, int p, int weight, SignConvention conv = SignConvention::paper)
{
    HomologyRow row;
    row.p = p;
    row.weight = weight;
    row.dim_c = chain_basis(alg, p, weight).size();
    if (row.dim_c == 0) return row;
    if (p >= 1) row.rank_out = rank(boundary_block(alg, p, weight, conv).matrix);
    row.rank_in = rank(boundary_block(alg, p + 1, weight, conv).matrix);
    row.dim_h = row.dim_c - row.rank_out - row.rank_in;
    return row;
}

template <NonsymmetricOperad Op>
std::size_t homology_dim(const ChainAlgebra<Op>& alg, int p, int weight, SignConvention conv = SignConvention::paper)
{
    return homology_row(alg, p, weight, conv).dim_h;
}

/// One line of the H_1 lower-bound table for Lambda_1(Q Tree_2).
struct H1ProbeRow {
    int weight = 0;
    std::size_t dim_c1 = 0;
    std::size_t dim_c2 = 0;
    std::size_t rank = 0;
    std::size_t dim_h1 = 0;
    bool certified() const { return dim_h1 > 0 && dim_c1 > dim_c2 && dim_h1 >= dim_c1 - dim_c2; }
};

template <NonsymmetricOperad Op>
std::vector<H1ProbeRow> h1_nonvanishing_probe(const ChainAlgebra<Op>& alg, int from, int to)
{
    if (from < 2) throw std::invalid_argument("h1 probe: weights start at 2");
    std::vector<H1ProbeRow> rows;
    for (int w = from; w <= to; ++w) {
        BoundaryBlock b = boundary_block(alg, 2, w);
        H1ProbeRow r;
        r.weight = w;
        r.dim_c1 = b.target.size();
        r.dim_c2 = b.source.size();
        r.rank = rank(b.matrix);
        r.dim_h1 = r.dim_c1 - r.rank; // d : C_1 -> C_0 vanishes
        rows.push_back(r);
    }
    return rows;
}

/// Report of ad e0 = d(e0 ^) + (e0 ^)d on sampled chains.
struct HomotopyCheck {
    bool passed = true;
    std::size_t chains = 0;
    std::string counterexample;
};

/*
 * ad e0 acts on a weight-l chain as multiplication by l. Under the "paper"
 * convention the identity holds as written; under "ce" the
 * right side picks up an overall minus sign, which is what is checked then.
 */
template <NonsymmetricOperad Op>
HomotopyCheck ad_e0_homotopy_check(const ChainAlgebra<Op>& alg, int p, int weight, std::size_t samples,
                                   std::uint64_t seed, SignConvention conv = SignConvention::paper)
{
    if (alg.min_weight() > 0) throw std::invalid_argument("ad e0 check: e0 is not in the algebra");
    const Slot e0 = alg.slot_of(alg.operad().unit());
    HomotopyCheck report;
    auto basis = chain_basis(alg, p, weight);
    if (basis.empty()) return report;

    auto e0_wedge = [&](const Chain& c) {
        Chain out;
        WedgeTuple img;
        int sign;
        for (const auto& [t, v] : c)
            if (detail::wedge_front(alg, e0, t, img, sign)) detail::chain_add(out, img, v * sign);
        return out;
    };
    auto check = [&](const Chain& c) {
        Chain lhs;
        for (const auto& [t, v] : c) detail::chain_add(lhs, t, v * weight);
        Chain rhs = apply_boundary(alg, e0_wedge(c), conv);
        for (const auto& [t, v] : e0_wedge(apply_boundary(alg, c, conv))) detail::chain_add(rhs, t, v);
        if (conv == SignConvention::ce)
            for (auto& [t, v] : rhs) v = -v;
        ++report.chains;
        if (lhs != rhs && report.passed) {
            report.passed = false;
            std::string s;
            for (const auto& [t, v] : c) s += (s.empty() ? "" : " + ") + v.get_str() + "*(" + alg.render(t) + ")";
            report.counterexample = s;
        }
    };

    if (basis.size() <= samples) {
        for (const auto& t : basis) check(Chain{{t, Rat(1)}});
        return report;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (std::size_t i = 0; i < samples; ++i) {
        Chain c;
        for (int j = 0; j < 3; ++j) detail::chain_add(c, basis[pick(rng)], Rat(coeff(rng)));
        check(c);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Par_2 square family.

/// The m-1 pairs whose brackets give a square submatrix of d : C_2 -> C_1 at
/// weight m-1 of Lambda_1(Q Par_2), m >= 6: [x1x2, x1^(m-k-1) x2^k] for
/// 2 <= k <= m-3, [x1x2, x1 x2^(m-2)], [x1^2 x2, x1 x2^(m-3)],
/// [x1^2 x2, x1^2 x2^(m-4)].
inline std::vector<std::pair<Partition, Partition>> par2_square_pairs(int m)
{
    if (m < 6) throw std::invalid_argument("square family needs m >= 6");
    Partition a({1, 1}), b({2, 1});
    std::vector<std::pair<Partition, Partition>> out;
    for (int k = 2; k <= m - 3; ++k) out.emplace_back(a, Partition({m - k - 1, k}));
    out.emplace_back(a, Partition({1, m - 2}));
    out.emplace_back(b, Partition({1, m - 3}));
    out.emplace_back(b, Partition({2, m - 4}));
    return out;
}

/// (1/6) (-1)^(m+1) (m-3)! m (m-1) (2m-7).
inline Rat par2_square_det_formula(int m)
{
    Rat v = Rat(factorial(static_cast<unsigned>(m - 3))) * m * (m - 1) * (2 * m - 7) / 6;
    return m % 2 ? v : Rat(-v);
}

/// Rows of the weight m-1 block selected by par2_square_pairs(m).
inline RatMatrix par2_square_matrix(const ChainAlgebra<ParOperad>& alg, int m,
                                    SignConvention conv = SignConvention::paper)
{
    BoundaryBlock b = boundary_block(alg, 2, m - 1, conv);
    std::vector<std::size_t> rows;
    for (const auto& [u, v] : par2_square_pairs(m)) {
        WedgeTuple t{alg.slot_of(u), alg.slot_of(v)};
        if (alg.less(t[1], t[0])) std::swap(t[0], t[1]);
        auto it = std::find(b.source.begin(), b.source.end(), t);
        if (it == b.source.end()) throw std::logic_error("square family tuple missing from chain basis");
        rows.push_back(static_cast<std::size_t>(it - b.source.begin()));
    }
    return b.matrix.select_rows(rows);
}

// ---------------------------------------------------------------------------
// Emitters.

inline const char* homology_csv_header() { return "p,weight,dimC,rank_in,rank_out,dimH"; }

inline std::string to_csv(const HomologyRow& r)
{
    std::ostringstream s;
    s << r.p << ',' << r.weight << ',' << r.dim_c << ',' << r.rank_in << ',' << r.rank_out << ',' << r.dim_h;
    return s.str();
}

inline nlohmann::json to_json(const HomologyRow& r)
{
    nlohmann::json j;
    j["p"] = r.p;
    j["weight"] = r.weight;
    j["dimC"] = r.dim_c;
    j["rank_in"] = r.rank_in;
    j["rank_out"] = r.rank_out;
    j["dimH"] = r.dim_h;
    return j;
}

} // namespace operadlab
