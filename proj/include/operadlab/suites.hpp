#pragma once

#include "operadlab/checks.hpp"
#include "operadlab/generate.hpp"
#include "operadlab/homology.hpp"
#include "operadlab/splitting.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace operadlab {

struct SuiteOptions {
    std::uint64_t seed = 1;
    SignConvention sign = SignConvention::paper;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;
    std::string counterexample; ///< first failure, empty on success
    double seconds = 0;

    /// Records one named check; the first failure becomes the counterexample.
    void record(const std::string& what, bool ok, const std::string& detail = "")
    {
        lines.push_back((ok ? "ok   " : "FAIL ") + what + (detail.empty() ? "" : ": " + detail));
        if (!ok && passed) counterexample = what + (detail.empty() ? "" : ": " + detail);
        passed = passed && ok;
    }
    void record(const std::string& what, const CheckReport& r)
    {
        record(what + " (" + std::to_string(r.checks) + " checks)", r.passed, r.counterexample.value_or(""));
    }
    void note(const std::string& text) { lines.push_back("     " + text); }
};

struct Suite {
    std::string name;
    std::string summary;
    std::function<void(SuiteResult&, const SuiteOptions&)> run;
};

namespace suites_detail {

inline std::string join(const std::vector<std::size_t>& v, std::size_t from = 0)
{
    std::string s;
    for (std::size_t i = from; i < v.size(); ++i) s += (i > from ? "," : "") + std::to_string(v[i]);
    return s;
}

inline std::vector<ParVector> par2_generators(bool with_fourth = true)
{
    ParOperad p{2};
    std::vector<ParVector> g{parse_lie_vector(p, "x1 x2"), parse_lie_vector(p, "x1^2 x2"),
                             parse_lie_vector(p, "x1 x2^2")};
    if (with_fourth) g.push_back(parse_lie_vector(p, "x1^3 x2 + x1 x2^3"));
    return g;
}

/// c(m) = sum_{l<m} c(l) c(m-1-l): binary planar trees with m+1 leaves.
inline std::vector<std::size_t> catalan_table(std::size_t n)
{
    std::vector<std::size_t> c(n + 1, 0);
    c[0] = 1;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t l = 0; l < m; ++l) c[m] += c[l] * c[m - 1 - l];
    return c;
}

/// c'(m): unordered pairs of distinct binary trees with weights summing to m.
inline std::size_t catalan_pairs(const std::vector<std::size_t>& c, std::size_t m)
{
    std::size_t total = 0;
    for (std::size_t l = 1; 2 * l < m; ++l) total += c[l] * c[m - l];
    if (m % 2 == 0) total += c[m / 2] * (c[m / 2] - 1) / 2;
    return total;
}

inline RatMatrix a5_published()
{
    return RatMatrix::from_dense({{2, 1, 0, -1}, {-1, 2, 2, -1}, {-1, 0, 1, 2}, {-2, 1, 1, 2}});
}

} // namespace suites_detail

/// Named verification suites in registry order.
inline const std::vector<Suite>& suites()
{
    using namespace suites_detail;
    static const std::vector<Suite> registry = {
        {"axioms", "unit and associativity laws, exhaustive to arity 6 plus 1000 seeded samples",
         [](SuiteResult& r, const SuiteOptions& o) {
             r.record("Tree_2", check_axioms(TreeOperad{2, false}, 6, 1000, o.seed));
             r.record("Tree", check_axioms(TreeOperad{0, false}, 6, 1000, o.seed));
             r.record("Par_2", check_axioms(ParOperad{2}, 6, 1000, o.seed));
             r.record("Par", check_axioms(ParOperad{0}, 6, 1000, o.seed));
             r.record("Tree^-", check_axioms(TreeOperad{0, true}, 4, 1000, o.seed));
             r.record("End(Q)", check_axioms(EndQ{}, 6, 1000, o.seed));
         }},
        {"jacobi", "antisymmetry, Jacobi and grading of the bracket",
         [](SuiteResult& r, const SuiteOptions& o) {
             r.record("Jacobi Tree_2, output arity <= 7", check_jacobi(TreeOperad{2, false}, 7));
             r.record("Jacobi Par_2, output arity <= 7", check_jacobi(ParOperad{2}, 7));
             r.record("Jacobi Tree, random", check_jacobi_random(TreeOperad{0, false}, 5, 300, o.seed));
             r.record("Jacobi Par, random", check_jacobi_random(ParOperad{0}, 5, 300, o.seed));
             r.record("grading Tree, arity <= 7", check_grading(TreeOperad{0, false}, 7));
             r.record("grading Par, arity <= 7", check_grading(ParOperad{0}, 7));
         }},
        {"nu-hom", "nu : Tree -> Par is a surjective operad map",
         [](SuiteResult& r, const SuiteOptions&) {
             r.record("nu operad map on Tree, arity <= 6", check_nu_operad_hom(0, 6));
             r.record("nu operad map on Tree_2, arity <= 6", check_nu_operad_hom(2, 6));
             r.record("nu onto Par, arity <= 7", check_nu_surjective(0, 7));
             r.record("nu onto Par_2, arity <= 7", check_nu_surjective(2, 7));
         }},
        {"epsilon-hom", "augmentations are Lie maps; Witt relations",
         [](SuiteResult& r, const SuiteOptions&) {
             auto eps = [](const auto& v) { return augment(v); };
             r.record("eps on Lambda(Q Tree), output arity <= 8", check_lie_hom(TreeOperad{0, false}, 8, eps));
             r.record("eps on Lambda(Q Par), output arity <= 8", check_lie_hom(ParOperad{0}, 8, eps));
             r.record("eps o nu on Lambda(Q Tree), output arity <= 8",
                      check_lie_hom(TreeOperad{0, false}, 8, [](const TreeVector& v) { return augment(nu(v)); }));
             r.record("nu on Lambda(Q Tree), output arity <= 6",
                      check_lie_hom(TreeOperad{0, false}, 6, [](const TreeVector& v) { return nu(v); }));
             CheckReport same;
             TreeOperad trees{0, false};
             for (std::size_t m = 1; m <= 6; ++m)
                 for (const auto& t : trees.basis(m)) {
                     ++same.checks;
                     TreeVector v(trees, t);
                     if (!(augment(v) == augment(nu(v)))) same.fail("eps_1 != eps o nu at " + render_tree(t));
                 }
             r.record("eps_1 = eps o nu, arity <= 6", same);
             r.record("[1_m, 1_n] = (n-m) 1_{m+n-1}, m,n <= 10", check_witt_brackets(10));
             r.record("e_n = (ad e_1)^(n-2) e_2 / (n-2)!, n <= 10", check_witt_recursion(10));
         }},
        {"acyclicity", "Tree^- face complex and low-weight Chevalley-Eilenberg homology",
         [](SuiteResult& r, const SuiteOptions& o) {
             r.record("dd = 0 and homotopy identity, Tree^-, arity <= 6", check_tree_minus_complex(0, 6));
             r.record("dd = 0 and homotopy identity, Tree_2^-, arity <= 6", check_tree_minus_complex(2, 6));
             auto h = face_complex_homology(0, 6);
             bool zero = std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; });
             r.record("H_m(Q Tree^-((*))) = 0 for m <= 6", zero, "dims " + join(h));
             ChainAlgebra<TreeOperad> tm(TreeOperad{2, true}, -1);
             std::vector<std::size_t> ht;
             for (int p = 0; p <= 3; ++p) ht.push_back(homology_dim(tm, p, 0, o.sign));
             r.record("H_p(Lambda(Q Tree_2^-))_(0) = (1,0,0,1)", ht == std::vector<std::size_t>{1, 0, 0, 1},
                      "got (" + join(ht) + ")");
             ChainAlgebra<ParOperad> p0(ParOperad{0}, 0);
             std::vector<std::size_t> hp;
             for (int p = 0; p <= 2; ++p) hp.push_back(homology_dim(p0, p, 0, o.sign));
             r.record("H_p(Lambda_0(Q Par))_(0) = (1,1,0)", hp == std::vector<std::size_t>{1, 1, 0},
                      "got (" + join(hp) + ")");
             ChainAlgebra<ParOperad> p2(ParOperad{2}, 1);
             r.record("dd = 0, Lambda_1(Q Par_2), p <= 4, weight <= 10", check_dd_zero(p2, 4, 0, 10, o.sign));
             r.record("dd = 0, Lambda_0(Q Par), p <= 4, weight <= 10", check_dd_zero(p0, 4, 0, 10, o.sign));
             ChainAlgebra<TreeOperad> t2(TreeOperad{2, false}, 1);
             r.record("dd = 0, Lambda_1(Q Tree_2), p <= 4, weight <= 10", check_dd_zero(t2, 4, 0, 10, o.sign));
             r.record("dd = 0, Lambda(Q Tree_2^-), p <= 4, weight <= 8", check_dd_zero(tm, 4, -1, 8, o.sign));
             for (int w = 0; w <= 4; ++w) {
                 auto hc = ad_e0_homotopy_check(p0, 2, w, 40, o.seed, o.sign);
                 r.record("ad e0 = d(e0^) + (e0^)d on C_2(Lambda_0(Q Par))_(" + std::to_string(w) + ")",
                          hc.passed, hc.counterexample);
             }
         }},
        {"catalan-h1", "Catalan chain dimensions and H_1(Lambda_1(Q Tree_2)) != 0 at weights 2..8",
         [](SuiteResult& r, const SuiteOptions&) {
             auto c = catalan_table(13);
             ChainAlgebra<TreeOperad> t2(TreeOperad{2, false}, 1);
             for (int m = 2; m <= 10; ++m) {
                 std::size_t c1 = chain_basis(t2, 1, m).size();
                 std::size_t c2 = chain_basis(t2, 2, m).size();
                 r.record("weight " + std::to_string(m) + ": dim C_1 = c(m), dim C_2 = c'(m)",
                          c1 == c[m] && c2 == catalan_pairs(c, m),
                          std::to_string(c1) + ", " + std::to_string(c2));
             }
             bool ineq = true;
             for (std::size_t m = 2; m <= 12; ++m) ineq = ineq && 2 * (catalan_pairs(c, m) + c[m]) <= c[m + 1];
             r.record("c'(m) + c(m) <= c(m+1)/2 for 2 <= m <= 12", ineq);
             for (const auto& row : h1_nonvanishing_probe(t2, 2, 8)) {
                 std::ostringstream s;
                 s << "dimC1=" << row.dim_c1 << " dimC2=" << row.dim_c2 << " rank=" << row.rank
                   << " dimH1=" << row.dim_h1;
                 r.record("H_1 weight " + std::to_string(row.weight) + " nonzero", row.certified(), s.str());
             }
         }},
        {"a5", "weight-4 block of Lambda_1(Q Par_2) in degree 2 against the published matrix",
         [](SuiteResult& r, const SuiteOptions& o) {
             ChainAlgebra<ParOperad> p2(ParOperad{2}, 1);
             BoundaryBlock b = boundary_block(p2, 2, 4, o.sign);
             std::string diff;
             RatMatrix pub = a5_published();
             for (std::size_t i = 0; i < 4; ++i)
                 for (std::size_t j = 0; j < 4; ++j)
                     if (b.matrix.at(i, j) != pub.at(i, j) && diff.empty())
                         diff = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
                                b.matrix.at(i, j).get_str() + ", published " + pub.at(i, j).get_str();
             for (std::size_t i = 0; i < b.source.size(); ++i) r.note(p2.render(b.source[i]));
             std::istringstream rows(to_text(b.matrix));
             for (std::string line; std::getline(rows, line);) r.note("[ " + line + " ]");
             r.record("matches the published 4x4 matrix", diff.empty(), diff);
             Rat d = det(b.matrix);
             r.record("det != 0", d != 0, "det = " + d.get_str());
             r.record("rank 4", rank(b.matrix) == 4);
         }},
        {"det-formula", "surjectivity of d : C_2 -> C_1 for Lambda_1(Q Par_2) and the square family",
         [](SuiteResult& r, const SuiteOptions& o) {
             ChainAlgebra<ParOperad> p2(ParOperad{2}, 1);
             for (int m = 5; m <= 12; ++m) {
                 auto rk = rank(boundary_block(p2, 2, m - 1, o.sign).matrix);
                 r.record("arity " + std::to_string(m) + ": rank = m-1", rk == static_cast<std::size_t>(m - 1),
                          "rank " + std::to_string(rk));
             }
             auto r3 = rank(boundary_block(p2, 2, 3, o.sign).matrix);
             auto r4 = rank(boundary_block(p2, 2, 4, o.sign).matrix);
             r.record("ranks at weights 3, 4 are 2, 4", r3 == 2 && r4 == 4,
                      std::to_string(r3) + ", " + std::to_string(r4));
             for (int m = 6; m <= 12; ++m) {
                 Rat d = det(par2_square_matrix(p2, m, SignConvention::paper));
                 r.record("m = " + std::to_string(m) + ": det of square family = closed form",
                          d == par2_square_det_formula(m), d.get_str());
             }
         }},
        {"gen-par", "Lambda_1(Q Par_2) is generated by four elements; H_1 = Q^4",
         [](SuiteResult& r, const SuiteOptions&) {
             auto g = generated_subspace(par2_generators(), 12);
             ParOperad p2{2};
             bool full = true;
             for (std::size_t m = 5; m <= 12; ++m) full = full && g.dim(m) == p2.basis_size(m);
             r.record("generated dims fill arities 5..12", full, "dims by arity 2..12: " + join(g.dims(), 2));
             auto pw = generated_subspace(par2_generators(), 10, ClosureMode::pairwise);
             auto gd = generated_subspace(par2_generators(), 10).dims();
             r.record("generator and pairwise closure agree to arity 10", pw.dims() == gd);
             ChainAlgebra<ParOperad> alg(p2, 1);
             std::vector<std::size_t> h;
             std::size_t total = 0;
             for (int w = 1; w <= 12; ++w) {
                 h.push_back(homology_dim(alg, 1, w));
                 total += h.back();
             }
             r.record("H_1 by weight 1..12 is (1,2,1,0,...), total 4",
                      total == 4 && h[0] == 1 && h[1] == 2 && h[2] == 1, "(" + join(h) + ")");
         }},
        {"gen-par-negative", "x1^3 x2 + x1 x2^3 is not a bracket",
         [](SuiteResult& r, const SuiteOptions&) {
             ParOperad p2{2};
             auto target = parse_lie_vector(p2, "x1^3 x2 + x1 x2^3");
             auto g = generated_subspace(par2_generators(false), 12);
             r.record("not generated by x1 x2, x1^2 x2, x1 x2^2", !g.contains(target));
             SparseEchelon<Partition> derived;
             for (const auto& a : p2.basis(2))
                 for (const auto& b : p2.basis(3))
                     derived.insert(integer_row(bracket(ParVector(p2, a), ParVector(p2, b)).terms()));
             r.record("not in [Lambda_1, Lambda_1] at weight 3", !derived.contains(integer_row(target.terms())),
                      "derived dim " + std::to_string(derived.rank()));
         }},
        {"par-kernel-abelian", "ker(eps) in Lambda(Q Par) is abelian; Lambda^- is abelian",
         [](SuiteResult& r, const SuiteOptions&) {
             r.record("[ker eps, ker eps] = 0, arity <= 5", check_kernel_abelian(ParOperad{0}, 5));
             std::string ce;
             r.record("[Lambda^-, Lambda^-] = 0, arity <= 6", check_minus_part_abelian(6, &ce), ce);
         }},
        {"no-splitting", "no unit-preserving Lie section of eps : Lambda(Q Par) -> L_0",
         [](SuiteResult& r, const SuiteOptions&) {
             SplittingCertificate c = certify_no_splitting();
             r.note("obstruction u5 - [u2, u3] = " + to_string(c.obstruction));
             if (c.constant_witness)
                 r.note("constant witness: (" + c.constant_witness->first + ", " +
                        format_rat(c.constant_witness->second) + ")");
             r.record("obstruction has a nonzero constant coefficient", c.constant_witness.has_value());
             r.record("obstruction coefficients have no common root", c.coefficient_gcd.degree() == 0,
                      "gcd = " + c.coefficient_gcd.to_string());
             r.record("u_n is iota-invariant, n <= 5", c.iota_invariant);
             r.record("eps(u_n) = x^(n+1) d/dx, n <= 5", c.augments_to_witt);
             r.record("obstruction independent of expansion order", c.order_independent);
             r.record("[Lambda^-, Lambda^-] = 0, arity <= 6", c.semidirect_check, c.semidirect_counterexample);
             for (const auto& [name, ok] : c.golden_match) {
                 std::string detail;
                 for (const auto& d : c.golden_diffs)
                     if (d.vector == name)
                         detail += (detail.empty() ? "" : "; ") + d.term + " published " + d.expected.to_string() +
                                   ", computed " + d.computed.to_string();
                 r.record(name + " matches the published display", ok, detail);
             }
         }},
    };
    return registry;
}

inline const Suite* find_suite(const std::string& name)
{
    for (const auto& s : suites())
        if (s.name == name) return &s;
    return nullptr;
}

/// Worker count: OPERADLAB_THREADS if set and positive, else hardware concurrency.
inline std::size_t suite_threads()
{
    if (const char* env = std::getenv("OPERADLAB_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline SuiteResult run_suite(const Suite& s, const SuiteOptions& o)
{
    SuiteResult r;
    r.name = s.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        s.run(r, o);
    } catch (const std::exception& e) {
        r.record("suite raised", false, e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Runs the named suites concurrently; results come back in the given order.
inline std::vector<SuiteResult> run_suites(const std::vector<const Suite*>& which, const SuiteOptions& o,
                                           std::size_t threads = suite_threads())
{
    std::vector<SuiteResult> out(which.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < which.size();) out[i] = run_suite(*which[i], o);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(threads, which.size()); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

inline std::string to_text(const SuiteResult& r)
{
    std::ostringstream s;
    s << "suite " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << '\n';
    for (const auto& line : r.lines) s << "  " << line << '\n';
    if (!r.passed) s << "  first counterexample: " << r.counterexample << '\n';
    return s.str();
}

inline nlohmann::json to_json(const SuiteResult& r)
{
    return {{"suite", r.name}, {"passed", r.passed}, {"lines", r.lines}, {"counterexample", r.counterexample}};
}

} // namespace operadlab
