// Command-line front end: enumerate, compose, bracket, homology, generate, verify.

#include "operadlab/operadlab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

using namespace operadlab;
using nlohmann::json;

namespace {

enum Exit { ok = 0, verification_failed = 1, usage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string operad = "tree";
    std::string algebra = "par2:1";
    std::optional<std::size_t> arity;
    std::optional<int> weight;
    std::optional<int> degree;
    std::size_t max_arity = 12;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string suite;
    bool all = false;
    std::string sign = "paper";
    bool count = false;
    std::optional<std::size_t> slot;
    bool matrix = false;
    bool pairwise = false;
    std::vector<std::string> args;
};

template <class F>
auto with_operad(const std::string& selector, F&& f)
{
    OperadId id;
    try {
        id = OperadId::parse(selector);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    switch (id.family) {
    case OperadId::Family::tree: return f(TreeOperad{id.n, false});
    case OperadId::Family::tree_minus: return f(TreeOperad{id.n, true});
    case OperadId::Family::par: return f(ParOperad{id.n});
    case OperadId::Family::endq: break;
    }
    return f(EndQ{});
}

void require_format(const Options& o, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (o.format == a) return;
    throw UsageError("format " + o.format + " is not available for this command");
}

template <class Op>
LieVector<Op, Rat> parse_vector(const Op& op, const std::string& text)
{
    try {
        return parse_lie_vector(op, text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int cmd_enumerate(const Options& o)
{
    if (!o.arity) throw UsageError("enumerate needs --arity");
    return with_operad(o.operad, [&](const auto& op) {
        std::size_t m = *o.arity;
        if (o.count) {
            std::size_t n = op.basis_size(m);
            if (o.format == "json")
                std::cout << json{{"operad", op.id().selector()}, {"arity", m}, {"count", n}}.dump() << '\n';
            else
                std::cout << n << '\n';
            return Exit::ok;
        }
        auto basis = op.basis(m);
        if (o.format == "json") {
            json elems = json::array();
            for (const auto& e : basis) elems.push_back(op.render(e));
            std::cout << json{{"operad", op.id().selector()}, {"arity", m}, {"elements", elems}}.dump(1) << '\n';
        } else if (o.format == "csv") {
            std::cout << "index,element\n";
            for (std::size_t i = 0; i < basis.size(); ++i) std::cout << i << ",\"" << op.render(basis[i]) << "\"\n";
        } else {
            for (const auto& e : basis) std::cout << op.render(e) << '\n';
        }
        return Exit::ok;
    });
}

int cmd_compose(const Options& o)
{
    require_format(o, {"text", "json"});
    if (o.args.size() < 2) throw UsageError("compose needs an element and at least one argument");
    return with_operad(o.operad, [&](const auto& op) {
        using E = typename std::decay_t<decltype(op)>::element_type;
        std::vector<E> xs;
        try {
            for (const auto& a : o.args) xs.push_back(op.parse(a));
            E out;
            if (o.slot) {
                if (xs.size() != 2) throw UsageError("compose --slot takes exactly two elements");
                out = op.compose_at(xs[0], *o.slot, xs[1]);
            } else {
                out = gamma(op, xs[0], std::vector<E>(xs.begin() + 1, xs.end()));
            }
            if (o.format == "json")
                std::cout << json{{"operad", op.id().selector()}, {"result", op.render(out)}}.dump() << '\n';
            else
                std::cout << op.render(out) << '\n';
        } catch (const std::logic_error& e) {
            throw UsageError(e.what());
        }
        return Exit::ok;
    });
}

int cmd_bracket(const Options& o)
{
    require_format(o, {"text", "json"});
    if (o.args.size() != 2) throw UsageError("bracket takes exactly two vectors");
    return with_operad(o.operad, [&](const auto& op) {
        auto u = parse_vector(op, o.args[0]);
        auto v = parse_vector(op, o.args[1]);
        auto b = bracket(u, v);
        if (o.format == "json")
            std::cout << to_json(b).dump() << '\n';
        else
            std::cout << to_string(b) << '\n';
        return Exit::ok;
    });
}

int cmd_homology(const Options& o)
{
    auto colon = o.algebra.find(':');
    std::string sel = o.algebra.substr(0, colon);
    std::optional<int> k;
    if (colon != std::string::npos) {
        try {
            k = std::stoi(o.algebra.substr(colon + 1));
        } catch (const std::exception&) {
            throw UsageError("bad algebra selector: " + o.algebra);
        }
    }
    SignConvention conv = parse_sign_convention(o.sign);
    if (!o.weight) throw UsageError("homology needs --weight");
    if (o.degree && (*o.degree < 0 || *o.degree > 4)) throw UsageError("--degree must be in 0..4");
    return with_operad(sel, [&](const auto& op) {
        int kk = k.value_or(static_cast<int>(op.min_arity()) - 1);
        ChainAlgebra alg(op, kk);
        if (o.matrix) {
            int p = o.degree.value_or(2);
            if (p < 1) throw UsageError("--matrix needs --degree >= 1");
            BoundaryBlock b = boundary_block(alg, p, *o.weight, conv);
            if (o.format == "json") {
                json src = json::array(), dst = json::array();
                for (const auto& t : b.source) src.push_back(alg.render(t));
                for (const auto& t : b.target) dst.push_back(alg.render(t));
                std::cout << json{{"rows", src}, {"cols", dst}, {"matrix", to_json(b.matrix)}}.dump(1) << '\n';
            } else {
                require_format(o, {"text"});
                std::cout << to_text(b.matrix);
            }
            return Exit::ok;
        }
        std::vector<int> ps;
        if (o.degree)
            ps.push_back(*o.degree);
        else
            for (int p = 0; p <= 4; ++p) ps.push_back(p);
        std::vector<HomologyRow> rows;
        for (int p : ps) rows.push_back(homology_row(alg, p, *o.weight, conv));
        if (o.format == "csv") {
            std::cout << homology_csv_header() << '\n';
            for (const auto& r : rows) std::cout << to_csv(r) << '\n';
        } else if (o.format == "json") {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back(to_json(r));
            std::cout << json{{"algebra", op.id().selector() + ":" + std::to_string(kk)}, {"rows", arr}}.dump(1)
                      << '\n';
        } else {
            for (const auto& r : rows)
                std::cout << "H_" << r.p << " weight " << r.weight << ": " << r.dim_h << "  (dim C " << r.dim_c
                          << ", rank in " << r.rank_in << ", rank out " << r.rank_out << ")\n";
        }
        return Exit::ok;
    });
}

int cmd_generate(const Options& o)
{
    require_format(o, {"text", "json", "csv"});
    if (o.args.empty()) throw UsageError("generate needs at least one generator");
    return with_operad(o.operad, [&](const auto& op) {
        using Op = std::decay_t<decltype(op)>;
        std::vector<LieVector<Op, Rat>> gens;
        for (const auto& a : o.args) gens.push_back(parse_vector(op, a));
        auto g = generated_subspace(gens, o.max_arity, o.pairwise ? ClosureMode::pairwise : ClosureMode::generators);
        auto dims = g.dims();
        if (o.format == "csv") {
            std::cout << "arity,dim,full\n";
            for (std::size_t m = 0; m < dims.size(); ++m)
                std::cout << m << ',' << dims[m] << ',' << op.basis_size(m) << '\n';
        } else if (o.format == "json") {
            json rows = json::array();
            for (std::size_t m = 0; m < dims.size(); ++m) {
                json basis = json::array();
                for (const auto& v : g.basis[m]) basis.push_back(to_string(v));
                rows.push_back({{"arity", m}, {"dim", dims[m]}, {"full", op.basis_size(m)}, {"basis", basis}});
            }
            std::cout << json{{"operad", op.id().selector()}, {"max_arity", o.max_arity}, {"arities", rows}}.dump(1)
                      << '\n';
        } else {
            for (std::size_t m = 0; m < dims.size(); ++m)
                std::cout << "arity " << m << ": " << dims[m] << " of " << op.basis_size(m) << '\n';
        }
        return Exit::ok;
    });
}

int cmd_verify(const Options& o)
{
    require_format(o, {"text", "json"});
    std::vector<const Suite*> which;
    if (o.all) {
        for (const auto& s : suites()) which.push_back(&s);
    } else if (!o.suite.empty()) {
        const Suite* s = find_suite(o.suite);
        if (!s) {
            std::string names;
            for (const auto& x : suites()) names += " " + x.name;
            throw UsageError("unknown suite " + o.suite + "; known:" + names);
        }
        which.push_back(s);
    } else {
        throw UsageError("verify needs --suite NAME or --all");
    }
    SuiteOptions so;
    so.seed = o.seed;
    so.sign = parse_sign_convention(o.sign);
    auto results = run_suites(which, so);
    bool passed = true;
    json arr = json::array();
    for (const auto& r : results) {
        passed = passed && r.passed;
        if (o.format == "json")
            arr.push_back(to_json(r));
        else
            std::cout << to_text(r);
    }
    if (o.format == "json") std::cout << json{{"schema", 1}, {"suites", arr}, {"passed", passed}}.dump(1) << '\n';
    return passed ? Exit::ok : Exit::verification_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Operads, their Lie algebras and Chevalley-Eilenberg homology"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
        c->add_option("--seed", o.seed, "seed for sampled checks");
    };

    auto* en = app.add_subcommand("enumerate", "list the basis of one arity");
    en->add_option("--operad", o.operad, "tree, tree2, tree-, tree2-, par, par2, endq");
    en->add_option("--arity", o.arity, "arity")->check(CLI::NonNegativeNumber);
    en->add_flag("--count", o.count, "print only the number of elements");
    add_common(en);

    auto* co = app.add_subcommand("compose", "c o_s d with --slot, otherwise gamma(c; d_1..d_k)");
    co->add_option("--operad", o.operad, "operad selector");
    co->add_option("--slot", o.slot, "1-based slot")->check(CLI::PositiveNumber);
    co->add_option("elements", o.args, "c d_1 ... d_k")->required();
    add_common(co);

    auto* br = app.add_subcommand("bracket", "the Lie bracket of two vectors");
    br->add_option("--operad", o.operad, "operad selector");
    br->add_option("vectors", o.args, "u v")->required()->expected(2);
    add_common(br);

    auto* ho = app.add_subcommand("homology", "Chevalley-Eilenberg homology of Lambda_k at one weight");
    ho->add_option("--algebra", o.algebra, "operad:k, e.g. tree2:1, par:0, tree2-:-1");
    ho->add_option("--weight", o.weight, "total weight");
    ho->add_option("--degree", o.degree, "homological degree 0..4 (default: all)");
    ho->add_option("--sign-convention", o.sign, "paper or ce")->check(CLI::IsMember({"paper", "ce"}));
    ho->add_flag("--matrix", o.matrix, "print the boundary block C_p -> C_{p-1} instead");
    add_common(ho);

    auto* ge = app.add_subcommand("generate", "dimensions of the Lie subalgebra spanned by generators");
    ge->add_option("--operad", o.operad, "operad selector");
    ge->add_option("--max-arity", o.max_arity, "truncation arity")->check(CLI::PositiveNumber);
    ge->add_flag("--pairwise", o.pairwise, "close under all pairwise brackets");
    ge->add_option("generators", o.args, "generators")->required();
    add_common(ge);

    auto* ve = app.add_subcommand("verify", "run named verification suites");
    ve->add_option("--suite", o.suite, "suite name");
    ve->add_flag("--all", o.all, "run every suite");
    ve->add_option("--sign-convention", o.sign, "paper or ce")->check(CLI::IsMember({"paper", "ce"}));
    add_common(ve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return Exit::usage;
    }

    try {
        if (*en) return cmd_enumerate(o);
        if (*co) return cmd_compose(o);
        if (*br) return cmd_bracket(o);
        if (*ho) return cmd_homology(o);
        if (*ge) return cmd_generate(o);
        if (*ve) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return Exit::usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return Exit::usage;
}
