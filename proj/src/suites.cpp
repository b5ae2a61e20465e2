#include "qcanon/suites.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "qcanon/conject.hpp"
#include "qcanon/errors.hpp"
#include "qcanon/expnat.hpp"
#include "qcanon/minors.hpp"
#include "qcanon/qcomb.hpp"
#include "qcanon/uqminus.hpp"

namespace qcanon {

namespace {

GammaLaurent Q(int e) { return GammaLaurent(GammaMonomial::q(e)); }

Element Z(const MatIdx& a) { return Element::monomial(a); }

std::string margins(const Cell& c) {
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
        return s;
    };
    return "rows " + join(c.rowSums) + " cols " + join(c.colSums);
}

// Runs f(0..count-1) on a few threads; results land in index order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned threads, F&& f) {
    std::vector<R> out(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    auto work = [&] {
        for (std::size_t k; (k = next++) < count;) {
            try {
                out[k] = f(k);
            } catch (...) {
                std::lock_guard lock(failureMutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

TableStore::Options store_options(const SuiteOptions& opt) {
    TableStore::Options o;
    o.cacheDir = opt.cacheDir;
    o.warn = opt.warn;
    return o;
}

std::vector<MatIdx> two_by_two(int maxEntry) {
    std::vector<MatIdx> out;
    for (int a = 0; a <= maxEntry; ++a)
        for (int b = 0; b <= maxEntry; ++b)
            for (int c = 0; c <= maxEntry; ++c)
                for (int d = 0; d <= maxEntry; ++d) out.push_back(MatIdx{{a, b}, {c, d}});
    return out;
}

SuiteCheck check(std::string name, bool holds, std::string detail = {}) {
    return {std::move(name), holds, holds ? std::string() : std::move(detail)};
}

// --- the q^2-commuting operator pair on a truncated two-variable module

using Key = std::pair<int, int>;
using Vec = ModuleVector<Key>;
constexpr int kDepth = 6;

std::vector<Key> pair_domain() {
    std::vector<Key> d;
    for (int a = 0; a <= kDepth; ++a)
        for (int b = 0; a + b <= kDepth; ++b) d.push_back({a, b});
    return d;
}

// X e_ab = q^{2b} (a+1) e_{a+1,b}, Y e_ab = (b+1) e_{a,b+1}; XY = q^2 YX.
LocalOperator<Key> op_x() {
    return LocalOperator<Key>::from_action(
        pair_domain(),
        [](const Key& k) {
            return k.first + k.second < kDepth ? Vec{{{k.first + 1, k.second}, Q(2 * k.second) * q_int(k.first + 1)}}
                                                : Vec{};
        },
        kDepth + 1);
}

LocalOperator<Key> op_y() {
    return LocalOperator<Key>::from_action(
        pair_domain(),
        [](const Key& k) { return k.first + k.second < kDepth ? Vec{{{k.first, k.second + 1}, q_int(k.second + 1)}} : Vec{}; },
        kDepth + 1);
}

}  // namespace

bool SuiteReport::all_hold() const { return failed() == 0; }

int SuiteReport::failed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const SuiteCheck& c) { return !c.holds; }));
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const SuiteCheck& c : checks) {
        nlohmann::json e{{"name", c.name}, {"holds", c.holds}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        list.push_back(std::move(e));
    }
    return {{"suite", suite},
            {"checks", list},
            {"passed", static_cast<int>(checks.size()) - failed()},
            {"failed", failed()},
            {"extra", extra}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"qidentities", "exponential", "minors",
                                                "positivity",  "embedding",   "conjecture"};
    return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& opt) {
    if (name == "qidentities") return suite_qidentities(opt);
    if (name == "exponential") return suite_exponential(opt);
    if (name == "minors") return suite_minors(opt);
    if (name == "positivity") return suite_positivity(opt);
    if (name == "embedding") return suite_embedding(opt);
    if (name == "conjecture") return suite_conjecture(opt);
    throw Error("unknown suite '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

SuiteReport suite_qidentities(const SuiteOptions&) {
    SuiteReport r{"qidentities", {}, nlohmann::json::object()};
    for (int n = 0; n <= 8; ++n) {
        bool rec = true, quot = true;
        for (int i = 0; i <= n; ++i) {
            rec = rec && q_binomial(n + 1, i) == q_binomial(n, i) + Q(2 * n - 2 * i + 2) * q_binomial(n, i - 1);
            quot = quot && q_binomial(n, i) * q_factorial(i) * q_factorial(n - i) == q_factorial(n);
        }
        r.checks.push_back(check("gaussian recursion n=" + std::to_string(n), rec, "recursion fails"));
        r.checks.push_back(check("binomial times factorials n=" + std::to_string(n), quot, "quotient fails"));
    }
    for (int s = 1; s <= 8; ++s) {
        GammaLaurent sum;
        for (int m = 0; m <= s; ++m) {
            const GammaLaurent term = Q(m * (m - 1)) * q_binomial(s, m);
            sum += m % 2 ? -term : term;
        }
        r.checks.push_back(check("alternating sum s=" + std::to_string(s), sum.is_zero(), sum.to_string()));
    }
    const auto x = op_x(), y = op_y(), xy = x + y;
    bool mult = true, mult_inv = true, inverse = true;
    for (const Key& k : pair_domain()) {
        const Vec v{{k, GammaLaurent(1)}};
        mult = mult && q_exp_apply(xy, v, QBase::Q) == q_exp_apply(y, q_exp_apply(x, v, QBase::Q), QBase::Q);
        mult_inv = mult_inv &&
                   q_exp_apply(xy, v, QBase::QInv) == q_exp_apply(x, q_exp_apply(y, v, QBase::QInv), QBase::QInv);
        inverse = inverse && q_exp_apply(xy, q_exp_apply(xy, v, QBase::Q), QBase::QInv, -1) == v;
    }
    r.checks.push_back(check("exp_q(X+Y) = exp_q(Y) exp_q(X) for XY = q^2 YX", mult, "differs"));
    r.checks.push_back(check("exp_{q^-1}(X+Y) = exp_{q^-1}(X) exp_{q^-1}(Y)", mult_inv, "differs"));
    r.checks.push_back(check("exp_{q^-1}(-X) exp_q(X) = id", inverse, "differs"));
    return r;
}

SuiteReport suite_exponential(const SuiteOptions& opt) {
    SuiteReport r{"exponential", {}, nlohmann::json::object()};
    const int n = opt.n;
    const int maxMass = opt.maxMass.value_or(n == 2 ? 6 : 4);
    const Algebra alg(n);
    const FactorOrdering ordering = frozen_ordering();
    r.extra["ordering"] = ordering.label();
    const std::vector<Cell> cells = cells_up_to_mass(n, n, maxMass);
    const auto verdicts = parallel_map<SuiteCheck>(cells.size(), opt.threads, [&](std::size_t k) {
        const Cell& cell = cells[k];
        std::vector<MatIdx> bad;
        for (const MatIdx& a : cell.members)
            if (bar_via_factorization(Z(a), ordering) != alg.bar(Z(a))) bad.push_back(a);
        std::string detail = std::to_string(bad.size()) + " of " + std::to_string(cell.members.size()) + " members differ";
        if (!bad.empty()) detail += ", first " + bad.front().to_string();
        return check("factorized bar, " + margins(cell), bad.empty(), detail);
    });
    r.checks.insert(r.checks.end(), verdicts.begin(), verdicts.end());
    int failingMembers = 0, members = 0;
    for (const Cell& c : cells) members += static_cast<int>(c.members.size());
    for (const SuiteCheck& c : verdicts)
        if (!c.holds) failingMembers += std::stoi(c.detail);
    r.extra["factorization"] = {{"cells", cells.size()}, {"members", members}, {"failing_members", failingMembers}};

    if (n != 2) return r;
    const auto expo = parallel_map<SuiteCheck>(cells.size(), opt.threads, [&](std::size_t k) {
        const Cell& cell = cells[k];
        const BarOperator2x2 op(cell);
        std::string bad;
        for (const MatIdx& a : cell.members) {
            if (op.bar(Z(a)) != alg.bar(Z(a))) bad = "exp form differs at " + a.to_string();
            else if (op.t_inv_exp(op.t_exp(Z(a))) != Z(a) || op.t_exp(op.t_inv_exp(Z(a))) != Z(a))
                bad = "inverse pair fails at " + a.to_string();
            if (!bad.empty()) break;
        }
        return check("exponential form of bar, " + margins(cell), bad.empty(), bad);
    });
    r.checks.insert(r.checks.end(), expo.begin(), expo.end());
    for (const MatIdx& a : two_by_two(3)) {
        for (int s = 1; s <= std::max(1, a.mass()); ++s)
            for (const IdentityCheck& c : {tau_recursion(a, s), mu_recursion(a, s)})
                r.checks.push_back(check(c.name, c.holds, c.lhs + " vs " + c.rhs));
        const IdentityCheck d = difference_closed_form(a);
        r.checks.push_back(check(d.name, d.holds, d.lhs + " vs " + d.rhs));
    }
    return r;
}

SuiteReport suite_minors(const SuiteOptions& opt) {
    SuiteReport r{"minors", {}, nlohmann::json::object()};
    for (const Specialization& spec : {Specialization::generic(), Specialization::official()}) {
        TableStore store(Algebra(2, spec), store_options(opt));
        for (const MatIdx& a : two_by_two(opt.maxEntry)) {
            const DeltaReport d = delta_compatibility(a, store);
            for (const IdentityCheck& c : d.checks)
                r.checks.push_back(check(std::string(spec.label()) + " " + a.to_string() + ": " + c.name, c.holds,
                                         c.lhs + " vs " + c.rhs));
        }
    }
    for (int n = 2; n <= 3; ++n) {
        const Algebra alg(n, opt.spec);
        TableStore store(alg, store_options(opt));
        for (unsigned rm = 1; rm < (1u << n); ++rm)
            for (unsigned cm = 1; cm < (1u << n); ++cm) {
                if (__builtin_popcount(rm) != __builtin_popcount(cm)) continue;
                MinorSpec m;
                for (int k = 0; k < n; ++k) {
                    if (rm & (1u << k)) m.rows.push_back(k + 1);
                    if (cm & (1u << k)) m.cols.push_back(k + 1);
                }
                const Element b = quantum_minor(m, store);
                const bool invariant = alg.bar(b) == b;
                const bool indecomposable = decompose_search(m.matrix(n), store).indecomposable();
                r.checks.push_back(check("n=" + std::to_string(n) + " minor " + m.to_string(),
                                         invariant && indecomposable,
                                         invariant ? "decomposable" : "not bar invariant"));
            }
    }
    return r;
}

std::vector<std::pair<MatIdx, MatIdx>> positivity_pairs_3x3() {
    std::mt19937 rng(20240229u);
    std::uniform_int_distribution<int> pos(0, 8), mass(1, 2);
    auto draw = [&] {
        MatIdx a(3, 3);
        for (int k = mass(rng); k > 0; --k) {
            const int p = pos(rng);
            a.set(p / 3 + 1, p % 3 + 1, a(p / 3 + 1, p % 3 + 1) + 1);
        }
        return a;
    };
    std::vector<std::pair<MatIdx, MatIdx>> out;
    while (out.size() < 20) {
        const MatIdx a = draw(), b = draw();
        out.emplace_back(a, b);
    }
    return out;
}

SuiteReport suite_positivity(const SuiteOptions& opt) {
    SuiteReport r{"positivity", {}, nlohmann::json::object()};
    const int maxMass = opt.maxMass.value_or(5);
    std::vector<std::pair<MatIdx, MatIdx>> pairs;
    std::vector<MatIdx> small;
    for (const Cell& c : cells_up_to_mass(2, 2, maxMass - 1))
        for (const MatIdx& a : c.members)
            if (a.mass() >= 1) small.push_back(a);
    for (const MatIdx& a : small)
        for (const MatIdx& b : small)
            if (a.mass() + b.mass() <= maxMass) pairs.emplace_back(a, b);
    const std::size_t squarePairs = pairs.size();
    for (const auto& p : positivity_pairs_3x3()) pairs.push_back(p);

    TableStore s2(Algebra(2, opt.spec), store_options(opt));
    TableStore s3(Algebra(3, opt.spec), store_options(opt));
    const auto verdicts = parallel_map<SuiteCheck>(pairs.size(), opt.threads, [&](std::size_t k) {
        const auto& [a, b] = pairs[k];
        const StructureConstants sc = structure_constants(a, b, k < squarePairs ? s2 : s3);
        return check("b[" + a.to_string() + "] b[" + b.to_string() + "]", sc.positive, sc.coefficients.to_string());
    });
    r.checks = verdicts;
    r.extra["pairs_2x2"] = squarePairs;
    r.extra["pairs_3x3"] = pairs.size() - squarePairs;
    return r;
}

SuiteReport suite_embedding(const SuiteOptions& opt) {
    SuiteReport r{"embedding", {}, nlohmann::json::object()};
    const EmbeddingReport e = verify_embedding(2, opt.maxMass.value_or(3));
    for (const EmbeddingCheck& c : e.relations) r.checks.push_back(check("relation " + c.name, c.holds, "not radical-zero"));
    for (const EmbeddingCheck& c : e.phiFixed) r.checks.push_back(check(c.name, c.holds, "not Phi-fixed"));

    const UqMinus u(3);
    auto F = [&](FreeWord w) { return FreeElement::word(3, std::move(w)); };
    std::vector<std::pair<std::string, FreeElement>> relations;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (std::abs(i - j) == 1)
                relations.emplace_back("Serre " + std::to_string(i) + "," + std::to_string(j),
                                       F({i, i, j}) - (QRat::q(2) + QRat::q(-2)) * F({i, j, i}) + F({j, i, i}));
            if (std::abs(i - j) > 1)
                relations.emplace_back("commutation " + std::to_string(i) + "," + std::to_string(j),
                                       F({i, j}) - F({j, i}));
        }
    std::vector<FreeWord> words{{}};
    for (std::size_t k = 0; k < words.size(); ++k)
        if (words[k].size() < 4)
            for (int a = 1; a <= 3; ++a) {
                FreeWord w = words[k];
                w.push_back(a);
                words.push_back(w);
            }
    for (const auto& [name, s] : relations) {
        const std::size_t len = s.terms().begin()->first.size();
        std::string bad;
        for (const FreeWord& a : words)
            for (const FreeWord& b : words) {
                if (!bad.empty() || a.size() + b.size() + len > 6) continue;
                if (!u.is_radical_zero(F(a) * s * F(b))) bad = "fails inside a word of length 6";
            }
        r.checks.push_back(check(name + " up to length 6", bad.empty(), bad));
    }

    int plus = 0, minus = 0;
    bool signByParity = true;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (int c = 0; a + b + c <= 4; ++c) {
                if (a + b + c == 0) continue;
                const auto ms = u.pbw_indices({a, b, c});
                std::vector<FreeElement> elems;
                for (const PBWIndex& m : ms) elems.push_back(u.pbw(m));
                std::string bad;
                for (std::size_t x = 0; x < ms.size(); ++x)
                    for (std::size_t y = 0; y < ms.size(); ++y) {
                        const QRat v = u.form(elems[x], elems[y]);
                        if (x != y) {
                            if (!v.is_zero()) bad = "nonzero off-diagonal value " + v.to_string();
                            continue;
                        }
                        const QRat expect = UqMinus::pbw_diagonal_formula(ms[x]);
                        int parts = 0;
                        for (const auto& [root, k] : ms[x]) parts += k;
                        const bool odd = (UqMinus::degree(ms[x]) - parts) % 2;
                        if (v == expect) {
                            ++plus;
                            signByParity = signByParity && !odd;
                        } else if (v == -expect) {
                            ++minus;
                            signByParity = signByParity && odd;
                        } else {
                            bad = "diagonal " + v.to_string() + " vs " + expect.to_string();
                        }
                    }
                r.checks.push_back(check("PBW form, weight (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                             std::to_string(c) + ")",
                                         bad.empty(), bad));
            }
    r.extra["diagonal_sign"] = {{"plus", plus}, {"minus", minus}, {"sign_is_parity_of_deg_minus_parts", signByParity}};
    r.extra["coefficient_map"] = "v -> q^" + std::to_string(e.options.vExponent);
    return r;
}

std::vector<Cell> small_square_cells(int maxEntry) {
    std::vector<Cell> out;
    for (const Cell& c : cells_up_to_mass(2, 2, 4 * maxEntry))
        if (std::all_of(c.members.begin(), c.members.end(), [&](const MatIdx& a) {
                return std::all_of(a.entries().begin(), a.entries().end(), [&](int x) { return x <= maxEntry; });
            }))
            out.push_back(c);
    return out;
}

std::vector<Cell> two_by_three_family(int maxEntry) {
    std::vector<Cell> out;
    for (int a = 0; a <= maxEntry; ++a)
        for (int b = 0; b <= maxEntry; ++b)
            for (int c = 0; c <= maxEntry; ++c) out.push_back(cell_of(MatIdx{{a, 0, 0}, {0, b, c}}));
    return out;
}

SuiteReport suite_conjecture(const SuiteOptions& opt) {
    SuiteReport r{"conjecture", {}, nlohmann::json::object()};
    const auto variants = ConjectureVariant::all();
    const std::vector<Cell> square = small_square_cells(opt.maxEntry), family = two_by_three_family(opt.maxEntry);
    auto run = [&](int cols, const std::vector<Cell>& cells) {
        TableStore store(Algebra(2, cols, opt.spec), store_options(opt));
        return conj_check(cells, variants, store).to_json();
    };
    const nlohmann::json sq = run(2, square), fam = run(3, family);
    r.checks.push_back(check("square report deterministic", sq.dump() == run(2, square).dump(), "reports differ"));
    r.checks.push_back(check("2x3 report deterministic", fam.dump() == run(3, family).dump(), "reports differ"));

    TableStore store{Algebra(2, opt.spec)};
    const MatIdx a = MatIdx{{2, 0}, {0, 1}};
    const ConjReport lit = conj_check({cell_of(a)}, {{ConjectureKind::Literal, PathOrder::LexMax}}, store);
    const auto& mism = lit.variants.front().mismatches;
    const bool fixture = std::any_of(mism.begin(), mism.end(), [&](const ConjMismatch& m) {
        return m.a == a && m.b == a && m.conjectured == Q(-1) && m.solver == GammaLaurent(1);
    });
    r.checks.push_back(check("literal mismatch at [2,0;0,1]: q^-1 vs 1", fixture, "fixture not reproduced"));

    nlohmann::json matchAll = nlohmann::json::object();
    for (const auto& [label, rep] : {std::pair{"square", &sq}, std::pair{"two_by_three", &fam}})
        for (const auto& v : (*rep)["variants"]) matchAll[label][v["variant"].get<std::string>()] = v["match_all"];
    r.extra["match_all"] = matchAll;
    r.extra["square"] = sq;
    r.extra["two_by_three"] = fam;
    return r;
}

}  // namespace qcanon
