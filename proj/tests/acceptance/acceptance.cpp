// Acceptance runner: one line per criterion, exit status 1 if any is red.
// `acceptance 3 13` runs a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "qcanon/canon.hpp"
#include "qcanon/cli.hpp"
#include "qcanon/conject.hpp"
#include "qcanon/errors.hpp"
#include "qcanon/expnat.hpp"
#include "qcanon/minors.hpp"
#include "qcanon/suites.hpp"

using namespace qcanon;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::string tolerance;
    double budgetSeconds;  // 0: none stated
    std::function<Verdict()> run;
};

GammaLaurent Q(int e) { return GammaLaurent(GammaMonomial::q(e)); }
Element Z(const MatIdx& a, const GammaLaurent& c = GammaLaurent(1)) { return Element::monomial(a, c); }
MatIdx M(const char* s) { return MatIdx::parse(s); }

std::vector<MatIdx> two_by_two(int maxEntry) {
    std::vector<MatIdx> out;
    for (int a = 0; a <= maxEntry; ++a)
        for (int b = 0; b <= maxEntry; ++b)
            for (int c = 0; c <= maxEntry; ++c)
                for (int d = 0; d <= maxEntry; ++d) out.push_back(MatIdx{{a, b}, {c, d}});
    return out;
}

std::vector<MatIdx> members_up_to_mass(int n, int maxMass) {
    std::vector<MatIdx> out;
    for (const Cell& c : cells_up_to_mass(n, n, maxMass))
        for (const MatIdx& a : c.members) out.push_back(a);
    return out;
}

std::string count_line(int failed, int total, const std::string& what) {
    std::ostringstream s;
    s << failed << " of " << total << ' ' << what << " failed";
    return s.str();
}

Verdict from_suite(const SuiteReport& r) {
    std::ostringstream s;
    s << r.checks.size() - r.failed() << '/' << r.checks.size() << " checks hold";
    for (const SuiteCheck& c : r.checks)
        if (!c.holds) {
            s << "; first failure: " << c.name;
            break;
        }
    return {r.all_hold(), s.str()};
}

// --- 1
Verdict examples() {
    std::vector<std::string> bad;
    for (const Specialization& sp : {Specialization::generic(), Specialization::official()}) {
        Algebra alg(2, sp);
        TableStore store(alg);
        const std::string tag = " [" + std::string(sp.label()) + "]";
        auto expect = [&](const std::string& what, const Element& got, const Element& want) {
            if (got != want) bad.push_back(what + tag + ": got " + got.to_string());
        };
        expect("b(2,0;0,1)", store.b(M("2,0;0,1")), Z(M("2,0;0,1")) - Z(M("1,1;1,0"), Q(-2)));
        expect("b(1,0;1,1)", store.b(M("1,0;1,1")), Z(M("1,0;1,1")) - Z(M("0,1;2,0"), Q(-1)));
        expect("b(1,1;0,1)", store.b(M("1,1;0,1")), Z(M("1,1;0,1")) - Z(M("0,2;1,0"), Q(-1)));
        expect("Delta", delta2(alg), Z(MatIdx::identity(2)) - Z(MatIdx::anti2(), Q(-1)));
        if (store.b(M("2,0;0,1")).to_string() != "Z[2,0;0,1] - q^-2 Z[1,1;1,0]") bad.push_back("rendering" + tag);
    }
    return {bad.empty(), bad.empty() ? "4 elements x {generic, official} match" : bad.front()};
}

// --- 2
Verdict triangularity() {
    int total = 0;
    std::vector<std::string> bad;
    auto check = [&](const Algebra& alg, const MatIdx& a) {
        ++total;
        const Element bar = alg.bar(Z(a));
        bool ok = bar.coefficient(a) == GammaLaurent(1);
        for (const auto& [b, c] : bar.terms())
            if (b != a && !less_equal(b, a)) ok = false;
        if (!ok) bad.push_back(a.to_string());
    };
    Algebra two(2), three(3);
    for (const MatIdx& a : two_by_two(3)) check(two, a);
    for (const MatIdx& a : members_up_to_mass(3, 4)) check(three, a);
    std::string detail = count_line(static_cast<int>(bad.size()), total, "monomials (M2 entries <= 3, M3 mass <= 4)");
    if (!bad.empty()) detail += "; first " + bad.front();
    return {bad.empty(), detail};
}

// --- 3
Verdict factorization() {
    std::ostringstream s;
    bool pass = true;
    for (const auto& [n, maxMass] : {std::pair{2, 6}, std::pair{3, 4}}) {
        Algebra alg(n);
        int cells = 0, badCells = 0, members = 0, badMembers = 0;
        std::string first;
        for (const Cell& cell : cells_up_to_mass(n, n, maxMass)) {
            ++cells;
            bool cellOk = true;
            for (const MatIdx& a : cell.members) {
                ++members;
                if (bar_via_factorization(Z(a)) != alg.bar(Z(a))) {
                    ++badMembers;
                    cellOk = false;
                    if (first.empty()) first = a.to_string();
                }
            }
            if (!cellOk) ++badCells;
        }
        pass = pass && badCells == 0;
        s << "M" << n << " mass<=" << maxMass << ": " << badCells << '/' << cells << " cells, " << badMembers << '/'
          << members << " members differ";
        if (!first.empty()) s << " (first " << first << ")";
        s << "; ";
    }
    std::string d = s.str();
    return {pass, d.substr(0, d.size() - 2)};
}

// --- 4
Verdict exponential_form() {
    Algebra alg(2);
    int total = 0, bad = 0;
    std::string first;
    for (const Cell& cell : cells_up_to_mass(2, 2, 8)) {
        const BarOperator2x2 op(cell);
        for (const MatIdx& a : cell.members) {
            ++total;
            const Element z = Z(a);
            const bool ok = op.bar(z) == alg.bar(z) && op.t_inv_exp(op.t_exp(z)) == z && op.t_exp(op.t_inv_exp(z)) == z;
            if (!ok && bad++ == 0) first = a.to_string();
        }
    }
    std::string d = count_line(bad, total, "monomials of 2x2 cells with mass <= 8");
    if (bad) d += "; first " + first;
    return {bad == 0, d};
}

// --- 5
Verdict key_recursions() {
    int total = 0, bad = 0;
    std::string first;
    auto note = [&](const IdentityCheck& c) {
        ++total;
        if (!c.holds && bad++ == 0) first = c.name;
    };
    for (const MatIdx& a : two_by_two(3)) {
        // t^r Z(A+I) is nonzero exactly for r <= min(a11, a22) + 1
        const int top = std::min(a(1, 1), a(2, 2)) + 1;
        for (int r = 1; r <= top; ++r) {
            note(tau_recursion(a, r));
            note(mu_recursion(a, r));
        }
    }
    std::string d = count_line(bad, total, "recursion instances");
    if (bad) d += "; first " + first;
    return {bad == 0, d};
}

// --- 6
Verdict delta_product() {
    TableStore store{Algebra(2)};
    int total = 0, bad = 0;
    std::string first;
    for (const MatIdx& a : two_by_two(2))
        for (const IdentityCheck& c : delta_compatibility(a, store).checks) {
            if (c.name.rfind("b(A) f_A^-1 Delta = b(A+I)", 0) != 0) continue;
            ++total;
            if (!c.holds && bad++ == 0) first = c.name;
        }
    std::string d = count_line(bad, total, "matrices");
    if (bad) d += "; first " + first;
    return {bad == 0 && total == 81, d};
}

// --- 7
Verdict two_by_three() {
    Algebra alg(2, 3, Specialization::official());
    TableStore store(alg);
    int bad = 0, total = 0;
    std::set<int> branches;  // 0: b >= a, 1: b < a <= b + c, 2: a > b + c
    std::string first;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c) {
                ++total;
                branches.insert(b >= a ? 0 : (a <= b + c ? 1 : 2));
                const MatIdx target{{a, 0, 0}, {0, b, c}};
                const Element cf = two_by_three_closed_form(alg, a, b, c, GammaMonomial::v(-1));
                if (!equiv_up_to_monomial(cf, store.b(target)) && bad++ == 0) first = target.to_string();
            }
    std::string d = count_line(bad, total, "matrices") + ", " + std::to_string(branches.size()) + " case branches";
    if (bad) d += "; first " + first;
    return {bad == 0 && branches.size() == 3, d};
}

// --- 8
Verdict inductive() {
    TableStore store{Algebra(2, Specialization::official())};
    int total = 0, bad = 0, asym = 0;
    std::string first;
    for (const MatIdx& a : members_up_to_mass(2, 4))
        for (const MatIdx& b : members_up_to_mass(2, 4 - a.mass())) {
            ++total;
            try {
                const InductiveResult r = inductive_product(a, b, store);
                if (r.element != store.b(a + b) && bad++ == 0) first = a.to_string() + " + " + b.to_string();
                for (const auto& [d, c] : r.stripped)
                    if (bar_conj(c) != c) ++asym;
            } catch (const Error& e) {
                if (bad++ == 0) first = a.to_string() + " + " + b.to_string() + ": " + e.what();
            }
        }
    std::string d = count_line(bad, total, "pairs") + ", " + std::to_string(asym) + " non-symmetric stripped coefficients";
    if (bad) d += "; first " + first;
    return {bad == 0 && asym == 0, d};
}

// --- 10
Verdict parameter_independence() {
    int total = 0, bad = 0;
    std::string first;
    const Algebra generic(2), official(2, Specialization::official()), ast(2, Specialization::ast());
    for (const Cell& cell : cells_up_to_mass(2, 2, 5)) {
        ++total;
        const auto g = canonical_basis(generic, cell).h;
        bool ok = canonical_basis(official, cell).h == g && canonical_basis(ast, cell).h == g;
        for (const auto& [a, row] : g)
            for (const auto& [b, c] : row) ok = ok && c.is_pure_q();
        if (!ok && bad++ == 0) first = cell.members.front().to_string();
    }
    std::string d = count_line(bad, total, "cells");
    if (bad) d += "; first " + first;
    return {bad == 0, d};
}

// --- 12
Verdict conjecture() {
    const SuiteReport r = suite_conjecture(SuiteOptions{});
    Verdict v = from_suite(r);
    if (r.extra.contains("match_all")) v.detail += "; match-all " + r.extra["match_all"].dump();
    return v;
}

// --- 14
Verdict antisymmetry() {
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> entry(0, 2);
    auto random_matrix = [&](int n) {
        MatIdx m(n, n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) m.set(i, j, entry(rng));
        return m;
    };
    int bad = 0;
    std::string first;
    const Algebra two(2, Specialization::official()), three(3, Specialization::official());
    for (int k = 0; k < 100; ++k) {
        const Algebra& alg = k < 50 ? two : three;
        const MatIdx a = random_matrix(alg.rows()), b = random_matrix(alg.rows());
        const GammaMonomial prod = alg.leading_product_monomial(a, b) * alg.leading_product_monomial(b, a);
        if (!prod.is_one() && bad++ == 0) first = a.to_string() + ", " + b.to_string() + " -> " + prod.to_string();
    }
    std::string d = count_line(bad, 100, "pairs (50 M2, 50 M3, official)");
    if (bad) d += "; first " + first;
    return {bad == 0, d};
}

// --- 15
Verdict golden() {
    struct Golden {
        const char* file;
        std::vector<std::string> args;
    };
    const std::vector<Golden> goldens{
        {"basis_2001.txt", {"basis", "--matrix", "2,0;0,1"}},
        {"basis_2001.json", {"basis", "--matrix", "2,0;0,1", "--format", "json"}},
        {"basis_1111_official.tex", {"basis", "--matrix", "1,1;1,1", "--spec", "official", "--format", "latex"}},
        {"cell_21_21_official.txt", {"cell", "--rows", "2,1", "--cols", "2,1", "--spec", "official"}},
        {"cell_22_22.txt", {"cell", "--rows", "2,2", "--cols", "2,2"}},
        {"cell_111_111.json", {"cell", "--rows", "1,1,1", "--cols", "1,1,1", "--format", "json"}},
        {"graph_2112.dot", {"graph", "--matrix", "2,1;1,2"}},
        {"graph_1111.json", {"graph", "--matrix", "1,1;1,1", "--format", "json"}},
        {"conjecture_literal.json", {"conjecture", "--n", "2", "--max-entry", "2", "--variant", "literal", "--format", "json"}},
        {"conjecture_2x3_skip.txt", {"conjecture", "--family", "two-by-three", "--variant", "skip-zero-factor"}},
    };
    const fs::path cache = fs::temp_directory_path() / ("qcanon-acceptance-" + std::to_string(::getpid()));
    int bad = 0;
    std::string first;
    for (const Golden& g : goldens) {
        fs::remove_all(cache);
        std::ifstream in(fs::path(QCANON_GOLDEN_DIR) / g.file, std::ios::binary);
        std::stringstream want;
        want << in.rdbuf();
        std::vector<std::string> args = g.args;
        args.insert(args.end(), {"--cache-dir", cache.string()});
        bool ok = !want.str().empty();
        for (int pass = 0; pass < 2; ++pass) {  // cold cache, then warm
            std::ostringstream out, err;
            ok = ok && cli::run(args, out, err) == 0 && out.str() == want.str();
        }
        if (!ok && bad++ == 0) first = g.file;
    }
    fs::remove_all(cache);
    std::string d = count_line(bad, static_cast<int>(goldens.size()), "golden files (cold and warm cache)");
    if (bad) d += "; first " + std::string(first);
    return {bad == 0, d};
}

std::vector<Criterion> criteria() {
    return {
        {1, "2x2 examples and Delta", "exact", 1, examples},
        {2, "bar triangularity", "exact", 0, triangularity},
        {3, "factorized bar = direct bar", "exact", 60, factorization},
        {4, "2x2 exponential form and inverse pair", "exact", 0, exponential_form},
        {5, "key recursions", "exact", 0, key_recursions},
        {6, "b(A) f_A^-1 Delta = b(A+I)", "exact", 0, delta_product},
        {7, "2x3 closed forms up to a monomial", "exact", 0, two_by_three},
        {8, "inductive product (official)", "exact", 0, inductive},
        {9, "positivity of structure constants", "coefficientwise >= 0", 0,
         [] { return from_suite(suite_positivity(SuiteOptions{})); }},
        {10, "parameter independence", "exact", 0, parameter_independence},
        {11, "q-identities", "exact", 0, [] { return from_suite(suite_qidentities(SuiteOptions{})); }},
        {12, "conjecture harness", "deterministic + fixture", 0, conjecture},
        {13, "embedding into U_q^-", "exact, sign-free diagonal", 120,
         [] { return from_suite(suite_embedding(SuiteOptions{})); }},
        {14, "leading monomial antisymmetry", "exact", 0, antisymmetry},
        {15, "CLI golden files", "byte-identical", 0, golden},
    };
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

    int red = 0;
    double totalSeconds = 0;
    for (const Criterion& c : criteria()) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        totalSeconds += secs;
        const bool inBudget = c.budgetSeconds == 0 || secs <= c.budgetSeconds;
        const bool pass = v.pass && inBudget;
        if (!pass) ++red;

        char timing[64];
        if (c.budgetSeconds > 0)
            std::snprintf(timing, sizeof timing, "%.2fs/%gs", secs, c.budgetSeconds);
        else
            std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (pass ? "PASS" : "FAIL") << "  [" << (c.id < 10 ? " " : "") << c.id << "] " << c.title
                  << "  (tolerance: " << c.tolerance << ", " << timing << ")  " << v.detail
                  << (inBudget ? "" : "  OVER TIME BUDGET") << std::endl;
    }
    std::printf("total %.1fs, %d red\n", totalSeconds, red);
    return red == 0 ? 0 : 1;
}
