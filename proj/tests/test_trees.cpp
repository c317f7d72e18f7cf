#include "operadlab/checks.hpp"
#include "operadlab/tree.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace operadlab;

namespace {

Tree t(const char* s) { return parse_tree(s); }

// Number of planar trees with m leaves, no unary vertices and at most
// `bound` children per vertex (0 = unbounded), counted by the forest
// recurrence rather than by enumeration.
std::size_t count_trees(std::size_t m, std::size_t bound)
{
    std::vector<std::size_t> trees(m + 1, 0);
    trees[1] = 1;
    for (std::size_t a = 2; a <= m; ++a) {
        // f[k][x]: ordered forests of k trees with x leaves in total.
        std::size_t top = bound ? std::min(bound, a) : a;
        std::vector<std::vector<std::size_t>> f(top + 1, std::vector<std::size_t>(a + 1, 0));
        f[0][0] = 1;
        for (std::size_t k = 1; k <= top; ++k)
            for (std::size_t x = 1; x <= a; ++x)
                for (std::size_t y = 1; y <= x && y < a; ++y) f[k][x] += f[k - 1][x - y] * trees[y];
        for (std::size_t k = 2; k <= top; ++k) trees[a] += f[k][a];
    }
    return trees[m];
}

std::size_t catalan(std::size_t n)
{
    std::vector<std::size_t> c(n + 1, 0);
    c[0] = 1;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    return c[n];
}

} // namespace

TEST(TreeGraft, Examples)
{
    EXPECT_EQ(graft(t("(12)"), 1, t("(12)")), t("((12)3)"));
    EXPECT_EQ(graft(t("(12)"), 2, t("(12)")), t("(1(23))"));
    EXPECT_EQ(graft(t("((12)3)"), 2, t("(123)")), t("((1(234))5)"));
    EXPECT_EQ(graft(Tree::leaf(), 1, t("(12)")), t("(12)"));
    EXPECT_EQ(graft(t("(12)"), 2, Tree::leaf()), t("(12)"));
    EXPECT_EQ(graft(t("(12)"), 1, Tree::dot()), Tree::leaf());
    EXPECT_THROW(graft(Tree::dot(), 1, t("(12)")), std::invalid_argument);
    EXPECT_THROW(graft(t("(12)"), 3, t("(12)")), std::out_of_range);
}

TEST(TreeFace, Examples)
{
    EXPECT_EQ(face(t("((1(23))4)"), 1), t("((12)3)"));
    EXPECT_EQ(face(t("((1(23))4)"), 2), t("((12)3)"));
    EXPECT_EQ(face(t("((1(23))4)"), 3), t("((12)3)"));
    EXPECT_EQ(face(t("((1(23))4)"), 4), t("(1(23))"));
    EXPECT_EQ(face(t("(123)"), 2), t("(12)"));
    EXPECT_EQ(face(t("(12)"), 1), Tree::leaf());
    EXPECT_EQ(face(Tree::leaf(), 1), Tree::dot());
    EXPECT_THROW(face(Tree::dot(), 1), std::invalid_argument);
    EXPECT_THROW(face(t("(12)"), 0), std::out_of_range);
}

TEST(TreeFace, SimplicialIdentities)
{
    TreeOperad op;
    for (std::size_t m = 2; m <= 6; ++m)
        for (const auto& c : op.basis(m))
            for (std::size_t j = 2; j <= m; ++j)
                for (std::size_t i = 1; i < j; ++i)
                    EXPECT_EQ(face(face(c, j), i), face(face(c, i), j - 1)) << render_tree(c) << " i=" << i << " j=" << j;
}

TEST(TreeFace, GraftingAnOIsAFace)
{
    TreeOperad op{0, true};
    for (std::size_t m = 1; m <= 5; ++m)
        for (const auto& c : op.basis(m))
            for (std::size_t i = 1; i <= m; ++i) EXPECT_EQ(op.compose_at(c, i, Tree::dot()), face(c, i));
}

TEST(TreeEnumeration, CanonicalOrder)
{
    auto b = TreeOperad{}.basis(3);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(render_tree(b[0]), "((12)3)");
    EXPECT_EQ(render_tree(b[1]), "(1(23))");
    EXPECT_EQ(render_tree(b[2]), "(123)");
    auto b2 = TreeOperad{2, false}.basis(3);
    ASSERT_EQ(b2.size(), 2u);
    EXPECT_EQ(render_tree(b2[0]), "((12)3)");
}

TEST(TreeEnumeration, CountsMatchRecurrences)
{
    for (std::size_t m = 1; m <= 10; ++m) {
        EXPECT_EQ(tree_count(2, m), catalan(m - 1)) << m;
        EXPECT_EQ(tree_count(2, m), count_trees(m, 2)) << m;
        EXPECT_EQ(tree_count(3, m), count_trees(m, 3)) << m;
    }
    for (std::size_t m = 1; m <= 9; ++m) EXPECT_EQ(tree_count(0, m), count_trees(m, 0)) << m;
    EXPECT_EQ(tree_count(0, 4), 11u);
    EXPECT_EQ(tree_count(0, 5), 45u);
    EXPECT_EQ((TreeOperad{2, true}.basis_size(0)), 1u);
    EXPECT_EQ((TreeOperad{2, false}.basis_size(0)), 0u);
}

TEST(TreeEnumeration, DistinctAndValid)
{
    for (std::size_t m = 1; m <= 7; ++m) {
        auto b = TreeOperad{}.basis(m);
        std::set<Tree> seen(b.begin(), b.end());
        EXPECT_EQ(seen.size(), b.size());
        for (const auto& x : b) {
            EXPECT_EQ(x.arity(), m);
            EXPECT_EQ(Tree::from_code(x.code()), x);
        }
    }
}

TEST(TreeComplex, BoundarySquaresToZeroAndHomotopy)
{
    auto r = check_tree_minus_complex(0, 7);
    EXPECT_TRUE(r.passed) << r.counterexample.value_or("");
    auto r2 = check_tree_minus_complex(2, 8);
    EXPECT_TRUE(r2.passed) << r2.counterexample.value_or("");
}

TEST(TreeComplex, SmallBoundaries)
{
    TreeOperad minus{0, true};
    TreeVector c(minus, t("(12)"));
    EXPECT_TRUE(boundary(c).is_zero());
    EXPECT_EQ(face_sum(c), Rat(2) * TreeVector(minus, Tree::leaf()));
    EXPECT_EQ(boundary(TreeVector(minus, Tree::leaf())), TreeVector(minus, Tree::dot()));
    EXPECT_EQ(boundary(TreeVector(minus, t("(123)"))), TreeVector(minus, t("(12)")));
    EXPECT_EQ(homotopy(TreeVector(minus, Tree::dot())), TreeVector(minus, Tree::leaf()));
}

TEST(TreeComplex, FaceComplexIsAcyclic)
{
    for (std::size_t h : face_complex_homology(0, 6)) EXPECT_EQ(h, 0u);
    for (std::size_t h : face_complex_homology(2, 7)) EXPECT_EQ(h, 0u);
}

TEST(TreeText, ParseAndRender)
{
    EXPECT_EQ(render_tree(t("( (1 2) 3 )")), "((12)3)");
    EXPECT_EQ(render_tree(t("((**)*)"), TreeStyle::stars), "((**)*)");
    EXPECT_EQ(t("((**)*)"), t("((12)3)"));
    EXPECT_EQ(t("*"), Tree::leaf());
    EXPECT_EQ(t("o"), Tree::dot());
    EXPECT_EQ(render_tree(Tree::dot()), "o");
    EXPECT_THROW(t("(*)"), std::invalid_argument);
    EXPECT_THROW(t("(12"), std::invalid_argument);
    EXPECT_THROW(t("(12))"), std::invalid_argument);
    EXPECT_THROW(t("((1*)3)"), std::invalid_argument);
    EXPECT_THROW((TreeOperad{2, false}.parse("(123)")), std::invalid_argument);
    EXPECT_THROW(TreeOperad{}.parse("o"), std::invalid_argument);
}

TEST(TreeText, RoundTrips)
{
    for (std::size_t m = 1; m <= 9; ++m)
        for (const auto& x : TreeOperad{3, false}.basis(m)) {
            EXPECT_EQ(parse_tree(render_tree(x)), x);
            EXPECT_EQ(parse_tree(render_tree(x, TreeStyle::stars)), x);
            EXPECT_EQ(tree_from_json(tree_to_json(x)), x);
        }
    EXPECT_EQ(tree_to_json(t("((12)3)")).dump(), "[[[],[]],[]]");
    EXPECT_TRUE(tree_to_json(Tree::dot()).is_null());
    EXPECT_EQ(tree_from_json(nullptr), Tree::dot());
    EXPECT_THROW(tree_from_json(nlohmann::json::array({nlohmann::json::array()})), std::invalid_argument);
    EXPECT_THROW(tree_from_json(3), std::invalid_argument);
}

TEST(TreeCode, Validation)
{
    EXPECT_THROW(Tree::from_code({1, 0}), std::invalid_argument);
    EXPECT_THROW(Tree::from_code({2, 0}), std::invalid_argument);
    EXPECT_THROW(Tree::from_code({0, 0}), std::invalid_argument);
    EXPECT_EQ(Tree::from_code({}), Tree::dot());
    EXPECT_EQ(Tree::from_code({2, 0, 2, 0, 0}), t("(1(23))"));
    EXPECT_EQ(t("(1(23))").children().size(), 2u);
    EXPECT_EQ(t("(1(234))").max_out_degree(), 3u);
}
