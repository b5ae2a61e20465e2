#include "qcanon/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "CLI11.hpp"
#include "qcanon/canon.hpp"
#include "qcanon/conject.hpp"
#include "qcanon/errors.hpp"
#include "qcanon/minors.hpp"
#include "qcanon/suites.hpp"

namespace qcanon::cli {

namespace {

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + " expects comma-separated integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError(flag + " is empty");
    return out;
}

MatIdx parse_matrix(const std::string& text, const std::string& flag) {
    try {
        return MatIdx::parse(text);
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what() + " (expected a literal like \"2,0;0,1\")");
    }
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

std::string canonical_latex(const CanonicalElement& x) {
    if (x.terms.empty()) return "0";
    const MatIdx& any = x.terms.begin()->first;
    Element e(any.rows(), any.cols(), Basis::Norm);
    for (const auto& [a, c] : x.terms) e.add_term(a, c);
    std::string s = e.to_latex();
    const std::string from = "Z\\begin", to = "b\\begin";
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
    return s;
}

struct Runner {
    const Invocation& inv;
    std::ostream& warn;
    Specialization spec;
    TableStore::Options storeOptions;

    Runner(const Invocation& i, std::ostream& w) : inv(i), warn(w), spec(Specialization::parse(i.spec)) {
        storeOptions.cacheDir = resolve_cache_dir(i);
        storeOptions.warn = [this](const std::string& m) { warn << "warning: " << m << '\n'; };
    }

    TableStore store(int rows, int cols) const { return TableStore(Algebra(rows, cols, spec), storeOptions); }

    nlohmann::json inputs() const {
        nlohmann::json j{{"spec", inv.spec}};
        if (inv.matrix) j["matrix"] = inv.matrix->to_string();
        if (inv.left) j["left"] = inv.left->to_string();
        if (inv.right) j["right"] = inv.right->to_string();
        if (!inv.rows.empty()) j["rows"] = inv.rows;
        if (!inv.cols.empty()) j["cols"] = inv.cols;
        if (inv.command == "minor" || inv.command == "conjecture" || inv.command == "verify") j["n"] = inv.n;
        if (inv.command == "conjecture" || inv.command == "verify") j["max_entry"] = inv.maxEntry;
        if (inv.maxMass) j["max_mass"] = *inv.maxMass;
        if (inv.command == "conjecture") {
            j["variant"] = inv.variant;
            j["family"] = inv.family;
        }
        if (inv.command == "verify") j["suite"] = inv.suite;
        return j;
    }

    void element_output(Outcome& o, const Element& x, const std::string& key) const {
        o.report["results"][key] = x.to_json();
        if (inv.format == "latex")
            o.output = x.to_latex() + "\n";
        else
            o.output = x.to_string() + "\n";
    }

    Outcome basis() const {
        Outcome o;
        TableStore s = store(inv.matrix->rows(), inv.matrix->cols());
        element_output(o, s.b(*inv.matrix), "b");
        return o;
    }

    Outcome bar() const {
        Outcome o;
        const Algebra alg(inv.matrix->rows(), inv.matrix->cols(), spec);
        element_output(o, alg.bar(Element::monomial(*inv.matrix)), "bar");
        return o;
    }

    Outcome cell() const {
        Outcome o;
        const Cell c = enumerate_cell(inv.rows, inv.cols);
        TableStore s = store(static_cast<int>(inv.rows.size()), static_cast<int>(inv.cols.size()));
        const auto table = s.table(inv.rows, inv.cols);
        std::vector<MatIdx> members = c.members;
        std::sort(members.begin(), members.end(), [](const MatIdx& a, const MatIdx& b) {
            return a.rho() != b.rho() ? a.rho() > b.rho() : a > b;
        });
        nlohmann::json list = nlohmann::json::array();
        std::ostringstream text;
        text << "cell rows " << join(inv.rows) << " cols " << join(inv.cols) << ": " << members.size() << " members, "
             << c.moveEdges.size() << " moves\n";
        for (const MatIdx& a : members) {
            const Element b = table->b(a);
            list.push_back({{"A", a.to_string()}, {"rho", a.rho()}, {"b", b.to_json()}});
            if (inv.format == "latex")
                text << "b" << a.to_latex() << " &= " << b.to_latex() << " \\\\\n";
            else
                text << "b[" << a.to_string() << "] = " << b.to_string() << "\n";
        }
        o.report["results"] = {{"members", list}, {"moves", c.moveEdges.size()}};
        o.output = text.str();
        if (inv.format == "latex") o.output = "\\begin{align*}\n" + o.output + "\\end{align*}\n";
        return o;
    }

    Outcome product() const {
        Outcome o;
        TableStore s = store(inv.left->rows(), inv.left->cols());
        const StructureConstants sc = structure_constants(*inv.left, *inv.right, s);
        o.report["results"] = {{"expansion", sc.coefficients.to_json()}, {"positive", sc.positive}};
        const std::string lhs = "b[" + inv.left->to_string() + "] b[" + inv.right->to_string() + "]";
        if (inv.format == "latex")
            o.output = "b" + inv.left->to_latex() + " b" + inv.right->to_latex() + " = " +
                       canonical_latex(sc.coefficients) + "\n";
        else
            o.output = lhs + " = " + sc.coefficients.to_string() + "\npositive: " + (sc.positive ? "yes" : "no") + "\n";
        return o;
    }

    Outcome minor() const {
        Outcome o;
        const MinorSpec m{inv.rows, inv.cols};
        TableStore s = store(inv.n, inv.n);
        const Element x = quantum_minor(m, s);
        element_output(o, x, "minor");
        o.report["results"]["matrix"] = m.matrix(inv.n).to_string();
        return o;
    }

    Outcome graph() const {
        Outcome o;
        const HasseGraph g = hasse_graph(*inv.matrix);
        nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
        for (const MatIdx& x : g.nodes) nodes.push_back({{"A", x.to_string()}, {"level", g.level.at(x)}});
        for (const MoveEdge& e : g.edges)
            edges.push_back({{"from", e.from.to_string()}, {"to", e.to.to_string()}, {"label", e.label.to_string()}});
        o.report["results"] = {{"top", g.top.to_string()}, {"tail", g.tail.to_string()}, {"nodes", nodes}, {"edges", edges}};
        o.output = to_dot(g);
        return o;
    }

    Outcome conjecture() const {
        Outcome o;
        std::vector<ConjectureVariant> variants;
        if (inv.variant == "all")
            variants = ConjectureVariant::all();
        else
            variants = {ConjectureVariant::parse(inv.variant)};
        const bool square = inv.family == "square";
        TableStore s = store(2, square ? 2 : 3);
        const std::vector<Cell> cells = square ? small_square_cells(inv.maxEntry) : two_by_three_family(inv.maxEntry);
        const ConjReport rep = conj_check(cells, variants, s);
        o.report["results"] = rep.to_json();
        std::ostringstream text;
        for (const ConjVariantResult& v : rep.variants) {
            text << v.variant.label() << ": " << v.checked << " matrices, " << v.mismatches.size() << " mismatches, "
                 << v.notBarInvariant.size() << " not bar-invariant, match-all " << (v.match_all() ? "yes" : "no")
                 << "\n";
            for (const ConjMismatch& m : v.mismatches)
                text << "  A=" << m.a.to_string() << " B=" << m.b.to_string() << ": conjectured "
                     << m.conjectured.to_string() << ", solver " << m.solver.to_string() << "\n";
        }
        o.output = text.str();
        return o;
    }

    Outcome verify() const {
        Outcome o;
        SuiteOptions so;
        so.n = inv.n;
        so.maxMass = inv.maxMass;
        so.maxEntry = inv.maxEntry;
        so.spec = spec;
        so.cacheDir = storeOptions.cacheDir;
        so.warn = storeOptions.warn;
        so.threads = inv.threads;
        const SuiteReport r = run_suite(inv.suite, so);
        o.report["results"] = r.to_json();
        std::ostringstream text;
        text << "suite " << r.suite << ": " << r.checks.size() << " checks, " << r.failed() << " failed\n";
        for (const SuiteCheck& c : r.checks)
            if (!c.holds) text << "FAIL " << c.name << ": " << c.detail << "\n";
        o.output = text.str();
        o.exitCode = r.all_hold() ? 0 : 1;
        return o;
    }
};

}  // namespace

Invocation parse_invocation(const std::vector<std::string>& args) {
    Invocation inv;
    CLI::App app{"Dual canonical bases of multi-parameter quantum matrix algebras", "qcanon"};
    app.require_subcommand(1, 1);

    std::string matrix, left, right, rows, cols;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", inv.format, "text|json|latex")->check(CLI::IsMember({"text", "json", "latex"}));
        sub->add_option("--spec", inv.spec, "generic|official|ast")->check(CLI::IsMember({"generic", "official", "ast"}));
        sub->add_option("--cache-dir", inv.cacheDir, "table cache directory");
        sub->add_flag("--timing", inv.timing, "add wall time to the report");
    };
    auto* cell = app.add_subcommand("cell", "canonical basis of one cell");
    cell->add_option("--rows", rows, "row sums, e.g. 2,1")->required();
    cell->add_option("--cols", cols, "column sums")->required();
    auto* basis = app.add_subcommand("basis", "b(A)");
    basis->add_option("--matrix", matrix, "matrix literal, e.g. 2,0;0,1")->required();
    auto* bar = app.add_subcommand("bar", "bar(Z(A)) in normalized monomials");
    bar->add_option("--matrix", matrix, "matrix literal")->required();
    auto* product = app.add_subcommand("product", "b(A) b(B) in the canonical basis");
    product->add_option("--left", left, "matrix literal")->required();
    product->add_option("--right", right, "matrix literal")->required();
    auto* minor = app.add_subcommand("minor", "quantum minor as a canonical basis element");
    minor->add_option("--n", inv.n, "algebra size")->required()->check(CLI::Range(1, 6));
    minor->add_option("--rows", rows, "row indices, e.g. 1,2")->required();
    minor->add_option("--cols", cols, "column indices")->required();
    auto* graph = app.add_subcommand("graph", "Hasse graph below A (DOT)");
    graph->add_option("--matrix", matrix, "matrix literal")->required();
    auto* conj = app.add_subcommand("conjecture", "compare the conjectured closed formula with the solver");
    conj->add_option("--n", inv.n, "rows (2)")->check(CLI::Range(2, 2));
    conj->add_option("--max-entry", inv.maxEntry, "entry bound")->check(CLI::Range(0, 4));
    conj->add_option("--variant", inv.variant, "all or e.g. skip-zero-factor/lex-max");
    conj->add_option("--family", inv.family, "square|two-by-three")->check(CLI::IsMember({"square", "two-by-three"}));
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", inv.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", inv.n, "algebra size (exponential)")->check(CLI::Range(2, 4));
    verify->add_option("--max-mass", inv.maxMass, "mass bound")->check(CLI::Range(0, 12));
    verify->add_option("--max-entry", inv.maxEntry, "entry bound")->check(CLI::Range(0, 4));
    verify->add_option("--threads", inv.threads, "worker threads (0: all cores)");
    for (CLI::App* sub : {cell, basis, bar, product, minor, graph, conj, verify}) common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what() + std::string("\nRun with --help for usage."));
    }
    inv.command = app.get_subcommands().front()->get_name();

    if (!matrix.empty()) inv.matrix = parse_matrix(matrix, "--matrix");
    if (!left.empty()) inv.left = parse_matrix(left, "--left");
    if (!right.empty()) inv.right = parse_matrix(right, "--right");
    if (!rows.empty()) inv.rows = parse_ints(rows, "--rows");
    if (!cols.empty()) inv.cols = parse_ints(cols, "--cols");

    if (inv.command == "product" && !inv.left->same_shape(*inv.right))
        throw UsageError("--left and --right must have the same shape");
    if (inv.command == "cell") {
        for (int x : inv.rows)
            if (x < 0) throw UsageError("--rows must be nonnegative");
        for (int x : inv.cols)
            if (x < 0) throw UsageError("--cols must be nonnegative");
        long rs = 0, cs = 0;
        for (int x : inv.rows) rs += x;
        for (int x : inv.cols) cs += x;
        if (rs != cs) throw UsageError("--rows and --cols must have equal totals");
    }
    if (inv.command == "minor") {
        try {
            MinorSpec{inv.rows, inv.cols}.validate(inv.n);
        } catch (const Error& e) {
            throw UsageError(std::string("minor: ") + e.what());
        }
    }
    if (inv.command == "conjecture" && inv.variant != "all") {
        try {
            ConjectureVariant::parse(inv.variant);
        } catch (const Error& e) {
            throw UsageError(std::string("--variant: ") + e.what());
        }
    }
    if (inv.format == "latex" && (inv.command == "graph" || inv.command == "conjecture" || inv.command == "verify"))
        throw UsageError("--format latex is not available for " + inv.command);
    return inv;
}

std::filesystem::path resolve_cache_dir(const Invocation& inv) {
    if (inv.cacheDir) return *inv.cacheDir;
    if (const char* env = std::getenv("QCANON_CACHE"); env && *env) return env;
    return ".qcanon-cache";
}

Outcome execute(const Invocation& inv, std::ostream& warn) {
    const auto start = std::chrono::steady_clock::now();
    const Runner r(inv, warn);
    Outcome o;
    try {
        if (inv.command == "cell") o = r.cell();
        else if (inv.command == "basis") o = r.basis();
        else if (inv.command == "bar") o = r.bar();
        else if (inv.command == "product") o = r.product();
        else if (inv.command == "minor") o = r.minor();
        else if (inv.command == "graph") o = r.graph();
        else if (inv.command == "conjecture") o = r.conjecture();
        else if (inv.command == "verify") o = r.verify();
        else throw UsageError("unknown command " + inv.command);
        o.report["ok"] = o.exitCode == 0;
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        o = Outcome{};
        o.exitCode = 1;
        o.report["ok"] = false;
        o.report["error"] = e.what();
        o.output = std::string("error: ") + e.what() + "\n";
    }
    o.report["command"] = inv.command;
    o.report["inputs"] = r.inputs();
    if (inv.timing) {
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        o.report["timing"] = {{"wall_ms", ms}};
        if (inv.format == "text") o.output += "wall time: " + std::to_string(ms) + " ms\n";
    }
    if (inv.format == "json") o.output = o.report.dump(2) + "\n";
    return o;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    try {
        inv = parse_invocation(args);
    } catch (const UsageError& e) {
        const std::string msg = e.what();
        const std::string prefix = "UsageError: ";
        const bool help = std::find(args.begin(), args.end(), "--help") != args.end() ||
                          std::find(args.begin(), args.end(), "-h") != args.end();
        (help ? out : err) << (msg.rfind(prefix, 0) == 0 ? msg.substr(prefix.size()) : msg) << '\n';
        return help ? 0 : 2;
    }
    const Outcome o = execute(inv, err);
    // runtime errors in text mode go to stderr; verify reports always go to stdout
    if (o.exitCode != 0 && inv.format != "json" && inv.command != "verify")
        err << o.output;
    else
        out << o.output;
    return o.exitCode;
}

}  // namespace qcanon::cli
