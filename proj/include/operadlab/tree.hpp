#pragma once

#include "operadlab/lie_vector.hpp"
#include "operadlab/operad.hpp"
#include "operadlab/sparse_matrix.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace operadlab {

/*
 * Planar rooted tree with no unary vertices, stored as the preorder sequence
 * of out-degrees (a leaf is 0). Leaves are numbered 1..m left to right, which
 * is the order of the zeros in the code. The arity-1 tree is the bare leaf
 * (the operad unit); the arity-0 element of Tree^- (written o) has an empty
 * code.
 */
class Tree {
public:
    Tree() : Tree(leaf()) {}

    static Tree leaf() { return Tree(std::vector<std::uint8_t>{0}, 1); }
    static Tree dot() { return Tree(std::vector<std::uint8_t>{}, 0); }

    static Tree corolla(std::size_t m)
    {
        if (m == 1) return leaf();
        if (m < 2 || m > 255) throw std::invalid_argument("corolla arity out of range");
        std::vector<std::uint8_t> code(m + 1, 0);
        code[0] = static_cast<std::uint8_t>(m);
        return Tree(std::move(code), m);
    }

    static Tree node(const std::vector<Tree>& children)
    {
        if (children.size() < 2) throw std::invalid_argument("tree node needs at least two children");
        if (children.size() > 255) throw std::invalid_argument("tree node has too many children");
        std::vector<std::uint8_t> code{static_cast<std::uint8_t>(children.size())};
        std::size_t arity = 0;
        for (const auto& ch : children) {
            if (ch.is_dot()) throw std::invalid_argument("o cannot be a subtree");
            code.insert(code.end(), ch.code_.begin(), ch.code_.end());
            arity += ch.arity_;
        }
        return Tree(std::move(code), arity);
    }

    /// Validates a preorder out-degree sequence.
    static Tree from_code(std::vector<std::uint8_t> code)
    {
        if (code.empty()) return dot();
        std::size_t open = 1, arity = 0;
        for (std::size_t i = 0; i < code.size(); ++i) {
            if (open == 0) throw std::invalid_argument("tree code has trailing entries");
            if (code[i] == 1) throw std::invalid_argument("unary vertex in tree code");
            --open;
            if (code[i] == 0)
                ++arity;
            else
                open += code[i];
        }
        if (open != 0) throw std::invalid_argument("tree code is incomplete");
        return Tree(std::move(code), arity);
    }

    std::size_t arity() const { return arity_; }
    bool is_dot() const { return code_.empty(); }
    bool is_leaf() const { return code_.size() == 1; }
    const std::vector<std::uint8_t>& code() const { return code_; }

    std::size_t max_out_degree() const
    {
        std::size_t d = 0;
        for (auto c : code_) d = std::max<std::size_t>(d, c);
        return d;
    }

    /// Subtrees of the root, left to right; empty for a leaf or o.
    std::vector<Tree> children() const
    {
        std::vector<Tree> out;
        if (code_.size() <= 1) return out;
        std::size_t pos = 1;
        for (std::size_t c = 0; c < code_[0]; ++c) {
            std::size_t end = subtree_end(pos);
            std::vector<std::uint8_t> sub(code_.begin() + static_cast<std::ptrdiff_t>(pos),
                                          code_.begin() + static_cast<std::ptrdiff_t>(end));
            std::size_t leaves = 0;
            for (auto x : sub) leaves += x == 0;
            out.push_back(Tree(std::move(sub), leaves));
            pos = end;
        }
        return out;
    }

    /// Canonical order: by arity, then lexicographically on the code with a
    /// leaf ranked above every internal vertex. Tree((3)) comes out as
    /// ((12)3), (1(23)), (123).
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b)
    {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        const std::size_t n = std::min(a.code_.size(), b.code_.size());
        for (std::size_t i = 0; i < n; ++i) {
            unsigned x = a.code_[i] == 0 ? 256u : a.code_[i];
            unsigned y = b.code_[i] == 0 ? 256u : b.code_[i];
            if (x != y) return x <=> y;
        }
        return a.code_.size() <=> b.code_.size();
    }
    friend bool operator==(const Tree& a, const Tree& b) { return a.code_ == b.code_; }

private:
    Tree(std::vector<std::uint8_t> code, std::size_t arity) : code_(std::move(code)), arity_(arity) {}

    std::size_t subtree_end(std::size_t pos) const
    {
        std::size_t open = 1;
        while (open) {
            open = open - 1 + code_[pos];
            ++pos;
        }
        return pos;
    }

    // Position in code_ of the i-th leaf (1-based).
    std::size_t leaf_position(std::size_t i) const
    {
        std::size_t seen = 0;
        for (std::size_t p = 0; p < code_.size(); ++p)
            if (code_[p] == 0 && ++seen == i) return p;
        throw std::out_of_range("leaf index out of range");
    }

    friend Tree graft(const Tree&, std::size_t, const Tree&);
    friend Tree face(const Tree&, std::size_t);

    std::vector<std::uint8_t> code_;
    std::size_t arity_ = 1;
};

/// S o_i T: the root of T is attached to the i-th leaf of S.
inline Tree graft(const Tree& s, std::size_t i, const Tree& t)
{
    if (s.is_dot()) throw std::invalid_argument("graft: o has no leaves");
    if (i < 1 || i > s.arity()) throw std::out_of_range("graft: leaf index out of range");
    if (t.is_dot()) return face(s, i);
    if (t.is_leaf()) return s;
    std::size_t p = s.leaf_position(i);
    std::vector<std::uint8_t> code;
    code.reserve(s.code_.size() + t.code_.size() - 1);
    code.insert(code.end(), s.code_.begin(), s.code_.begin() + static_cast<std::ptrdiff_t>(p));
    code.insert(code.end(), t.code_.begin(), t.code_.end());
    code.insert(code.end(), s.code_.begin() + static_cast<std::ptrdiff_t>(p) + 1, s.code_.end());
    return Tree(std::move(code), s.arity() + t.arity() - 1);
}

/// d_i c: erase the i-th leaf and smooth away a vertex left with one child.
/// The face of the bare leaf is o.
inline Tree face(const Tree& c, std::size_t i)
{
    if (c.is_dot()) throw std::invalid_argument("face: o has no leaves");
    if (i < 1 || i > c.arity()) throw std::out_of_range("face: leaf index out of range");
    if (c.is_leaf()) return Tree::dot();
    std::size_t p = c.leaf_position(i);
    // Walk the preorder keeping the vertices that still have open child slots;
    // the top of the stack when reaching p is its parent.
    std::vector<std::pair<std::size_t, std::size_t>> open;
    std::size_t parent = 0;
    for (std::size_t q = 0; q <= p; ++q) {
        if (q > 0) {
            parent = open.back().first;
            if (--open.back().second == 0) open.pop_back();
        }
        if (c.code_[q] > 0) open.emplace_back(q, c.code_[q]);
    }
    std::vector<std::uint8_t> code = c.code_;
    code.erase(code.begin() + static_cast<std::ptrdiff_t>(p));
    if (--code[parent] == 1) code.erase(code.begin() + static_cast<std::ptrdiff_t>(parent));
    return Tree(std::move(code), c.arity() - 1);
}

/// The contracting homotopy c -> (12) o_2 c.
inline Tree homotopy(const Tree& c) { return graft(Tree::corolla(2), 2, c); }

namespace detail {

struct TreeCatalog {
    std::mutex mutex;
    std::map<std::pair<int, std::size_t>, std::shared_ptr<const std::vector<Tree>>> lists;
    std::map<std::pair<int, std::size_t>, std::size_t> counts;
};

inline TreeCatalog& tree_catalog()
{
    static TreeCatalog catalog;
    return catalog;
}

// Number of trees with m leaves whose vertices have between 2 and max_children
// children (0 = unbounded), by recursion over the root out-degree.
inline std::size_t tree_count_locked(TreeCatalog& cat, int max_children, std::size_t m)
{
    if (m <= 1) return 1;
    auto key = std::make_pair(max_children, m);
    if (auto it = cat.counts.find(key); it != cat.counts.end()) return it->second;
    std::size_t bound = max_children ? std::min<std::size_t>(static_cast<std::size_t>(max_children), m) : m;
    // forests[k][n]: ordered k-tuples of trees with n leaves in total.
    std::vector<std::vector<std::size_t>> forests(bound + 1, std::vector<std::size_t>(m + 1, 0));
    forests[0][0] = 1;
    for (std::size_t k = 1; k <= bound; ++k)
        for (std::size_t n = k; n <= m; ++n)
            for (std::size_t first = 1; first + (k - 1) <= n && first < m; ++first)
                forests[k][n] += tree_count_locked(cat, max_children, first) * forests[k - 1][n - first];
    std::size_t total = 0;
    for (std::size_t k = 2; k <= bound; ++k) total += forests[k][m];
    cat.counts[key] = total;
    return total;
}

inline void build_trees(int max_children, std::size_t m, std::vector<Tree>& out,
                        const std::function<const std::vector<Tree>&(std::size_t)>& smaller)
{
    if (m == 1) {
        out.push_back(Tree::leaf());
        return;
    }
    std::size_t bound = max_children ? std::min<std::size_t>(static_cast<std::size_t>(max_children), m) : m;
    for (std::size_t k = 2; k <= bound; ++k)
        for_each_composition(m, k, 1, m - 1, [&](const std::vector<std::size_t>& parts) {
            std::vector<const std::vector<Tree>*> pools;
            for (auto a : parts) pools.push_back(&smaller(a));
            for_each_product<Tree>(pools, [&](const std::vector<Tree>& kids) { out.push_back(Tree::node(kids)); });
        });
}

} // namespace detail

/// All trees of arity m with at most max_children children per vertex
/// (0 = unbounded), in canonical order. Results are cached; the cache is
/// safe for concurrent callers.
inline std::shared_ptr<const std::vector<Tree>> tree_list(int max_children, std::size_t m)
{
    auto& cat = detail::tree_catalog();
    std::lock_guard lock(cat.mutex);
    std::function<std::shared_ptr<const std::vector<Tree>>(std::size_t)> get = [&](std::size_t a) {
        auto key = std::make_pair(max_children, a);
        if (auto it = cat.lists.find(key); it != cat.lists.end()) return it->second;
        std::vector<Tree> trees;
        if (a == 0) {
            trees.push_back(Tree::dot());
        } else {
            std::vector<std::shared_ptr<const std::vector<Tree>>> keep;
            detail::build_trees(max_children, a, trees, [&](std::size_t b) -> const std::vector<Tree>& {
                keep.push_back(get(b));
                return *keep.back();
            });
        }
        std::sort(trees.begin(), trees.end());
        auto ptr = std::make_shared<const std::vector<Tree>>(std::move(trees));
        cat.lists.emplace(key, ptr);
        return ptr;
    };
    return get(m);
}

inline std::size_t tree_count(int max_children, std::size_t m)
{
    if (m == 0) return 1;
    auto& cat = detail::tree_catalog();
    std::lock_guard lock(cat.mutex);
    return detail::tree_count_locked(cat, max_children, m);
}

// ---------------------------------------------------------------------------
// Text forms. Grammar: T := "*" | "(" T T+ ")"; o is the arity-0 element.
// The digit form numbers the leaves 1..m (m <= 9), e.g. "((12)3)".

enum class TreeStyle { stars, digits };

inline std::string render_tree(const Tree& t, TreeStyle style = TreeStyle::digits)
{
    if (t.is_dot()) return "o";
    if (style == TreeStyle::digits && t.arity() > 9) style = TreeStyle::stars;
    std::string out;
    std::size_t leaf = 0;
    std::vector<std::size_t> remaining;
    for (auto c : t.code()) {
        if (c == 0) {
            out += style == TreeStyle::digits ? static_cast<char>('0' + ++leaf) : '*';
            while (!remaining.empty() && --remaining.back() == 0) {
                remaining.pop_back();
                out += ')';
            }
        } else {
            out += '(';
            remaining.push_back(c);
        }
    }
    return out;
}

inline Tree parse_tree(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s == "o" || s == "●") return Tree::dot();
    std::size_t pos = 0;
    std::size_t next_digit = 1;
    bool saw_digit = false, saw_star = false;
    std::function<Tree()> parse = [&]() -> Tree {
        if (pos >= s.size()) throw std::invalid_argument("unexpected end of tree text: " + std::string(text));
        char ch = s[pos];
        if (ch == '*') {
            ++pos;
            saw_star = true;
            return Tree::leaf();
        }
        if (ch >= '1' && ch <= '9') {
            if (static_cast<std::size_t>(ch - '0') != next_digit)
                throw std::invalid_argument("leaves must be numbered 1..m left to right: " + std::string(text));
            ++next_digit;
            ++pos;
            saw_digit = true;
            return Tree::leaf();
        }
        if (ch != '(') throw std::invalid_argument("bad character in tree text: " + std::string(text));
        ++pos;
        std::vector<Tree> kids;
        while (pos < s.size() && s[pos] != ')') kids.push_back(parse());
        if (pos >= s.size()) throw std::invalid_argument("unbalanced parentheses: " + std::string(text));
        ++pos;
        if (kids.size() < 2) throw std::invalid_argument("unary node in tree text: " + std::string(text));
        return Tree::node(kids);
    };
    Tree t = parse();
    if (pos != s.size()) throw std::invalid_argument("trailing characters in tree text: " + std::string(text));
    if (saw_digit && saw_star) throw std::invalid_argument("mixed leaf notation: " + std::string(text));
    return t;
}

/// JSON: a leaf is [], a vertex is the array of its subtrees, o is null.
inline nlohmann::json tree_to_json(const Tree& t)
{
    if (t.is_dot()) return nullptr;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& ch : t.children()) arr.push_back(tree_to_json(ch));
    return arr;
}

inline Tree tree_from_json(const nlohmann::json& j)
{
    if (j.is_null()) return Tree::dot();
    if (!j.is_array()) throw std::invalid_argument("tree JSON must be an array or null");
    if (j.empty()) return Tree::leaf();
    std::vector<Tree> kids;
    for (const auto& ch : j) kids.push_back(tree_from_json(ch));
    return Tree::node(kids);
}

// ---------------------------------------------------------------------------

/// Tree, Tree_n, Tree^- or Tree^-_n. In the minus variants, c o_i o = d_i c.
struct TreeOperad {
    using element_type = Tree;

    int n = 0;          ///< max children per vertex, 0 = unbounded
    bool minus = false; ///< include the arity-0 element o

    OperadId id() const { return {minus ? OperadId::Family::tree_minus : OperadId::Family::tree, n}; }
    std::size_t arity(const Tree& t) const { return t.arity(); }
    Tree unit() const { return Tree::leaf(); }
    std::size_t min_arity() const { return minus ? 0 : 1; }

    bool contains(const Tree& t) const
    {
        if (t.is_dot()) return minus;
        return n == 0 || t.max_out_degree() <= static_cast<std::size_t>(n);
    }

    Tree compose_at(const Tree& c, std::size_t s, const Tree& d) const
    {
        if (c.is_dot()) throw std::invalid_argument("compose_at: arity-0 element has no slots");
        if (s < 1 || s > c.arity()) throw std::out_of_range("compose_at: slot out of range");
        if (d.is_dot() && !minus) throw std::invalid_argument("compose_at: o is not in " + id().name());
        return graft(c, s, d);
    }

    std::vector<Tree> basis(std::size_t m) const
    {
        if (m == 0) return minus ? std::vector<Tree>{Tree::dot()} : std::vector<Tree>{};
        return *tree_list(n, m);
    }
    std::size_t basis_size(std::size_t m) const
    {
        if (m == 0) return minus ? 1 : 0;
        return tree_count(n, m);
    }

    Tree random_element(std::size_t m, std::mt19937_64& rng) const
    {
        if (m == 0) {
            if (!minus) throw std::invalid_argument("no arity-0 trees in " + id().name());
            return Tree::dot();
        }
        if (m == 1) return Tree::leaf();
        std::size_t bound = n ? std::min<std::size_t>(static_cast<std::size_t>(n), m) : m;
        std::size_t k = std::uniform_int_distribution<std::size_t>(2, bound)(rng);
        // Random composition of m into k positive parts via k-1 cut points.
        std::vector<std::size_t> cuts;
        std::vector<std::size_t> pool(m - 1);
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        cuts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k - 1));
        std::sort(cuts.begin(), cuts.end());
        std::vector<Tree> kids;
        std::size_t prev = 0;
        for (auto c : cuts) {
            kids.push_back(random_element(c - prev, rng));
            prev = c;
        }
        kids.push_back(random_element(m - prev, rng));
        return Tree::node(kids);
    }

    std::string render(const Tree& t) const { return render_tree(t); }
    Tree parse(std::string_view text) const
    {
        Tree t = parse_tree(text);
        if (!contains(t)) throw std::invalid_argument(std::string(text) + " is not in " + id().name());
        return t;
    }

    friend bool operator==(const TreeOperad&, const TreeOperad&) = default;
};

using TreeVector = LieVector<TreeOperad, Rat>;

/// Alternating face sum d = sum_i (-1)^(i-1) d_i on Q Tree^-((*)). With this
/// sign, dd = 0 and d((12) o_2 c) = c - (12) o_2 dc.
template <Coefficient Coeff>
LieVector<TreeOperad, Coeff> boundary(const LieVector<TreeOperad, Coeff>& v)
{
    TreeOperad target = v.operad();
    target.minus = true;
    LieVector<TreeOperad, Coeff> out(target);
    for (const auto& [t, c] : v.terms()) {
        if (t.is_dot()) continue;
        for (std::size_t i = 1; i <= t.arity(); ++i) {
            if (i % 2 == 1)
                out.add_unchecked(face(t, i), c);
            else
                out.add_unchecked(face(t, i), Coeff(0) - c);
        }
    }
    return out;
}

/// Unsigned face sum sum_i d_i, which is ad o = [o, -] in Lambda(Q Tree^-).
template <Coefficient Coeff>
LieVector<TreeOperad, Coeff> face_sum(const LieVector<TreeOperad, Coeff>& v)
{
    TreeOperad target = v.operad();
    target.minus = true;
    LieVector<TreeOperad, Coeff> out(target);
    for (const auto& [t, c] : v.terms()) {
        if (t.is_dot()) continue;
        for (std::size_t i = 1; i <= t.arity(); ++i) out.add_unchecked(face(t, i), c);
    }
    return out;
}

template <Coefficient Coeff>
LieVector<TreeOperad, Coeff> homotopy(const LieVector<TreeOperad, Coeff>& v)
{
    TreeOperad target = v.operad();
    target.minus = true;
    LieVector<TreeOperad, Coeff> out(target);
    for (const auto& [t, c] : v.terms()) out.add_unchecked(homotopy(t), c);
    return out;
}

/// Dimensions of H_m(Q Tree^-_n((*)), d) for m = 0..max_m, by exact ranks
/// of the face-sum matrices.
inline std::vector<std::size_t> face_complex_homology(int n, std::size_t max_m)
{
    TreeOperad op{n, true};
    // rank_of[m] = rank of d : C_m -> C_{m-1}; rank_of[0] = 0.
    std::vector<std::size_t> rank_of(max_m + 2, 0);
    for (std::size_t m = 1; m <= max_m + 1; ++m) {
        auto source = op.basis(m);
        auto target = op.basis(m - 1);
        std::map<Tree, std::size_t> col;
        for (std::size_t i = 0; i < target.size(); ++i) col.emplace(target[i], i);
        RatMatrix block(source.size(), target.size());
        for (std::size_t r = 0; r < source.size(); ++r) {
            auto image = boundary(LieVector<TreeOperad, Rat>(op, source[r]));
            for (const auto& [t, c] : image.terms()) block.set(r, col.at(t), c);
        }
        rank_of[m] = rank(block);
    }
    std::vector<std::size_t> h(max_m + 1);
    for (std::size_t m = 0; m <= max_m; ++m) h[m] = op.basis_size(m) - rank_of[m] - rank_of[m + 1];
    return h;
}

} // namespace operadlab
