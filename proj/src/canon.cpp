#include "qcanon/canon.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

std::string join_ints(const std::vector<int>& v, char sep) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += sep;
        out += std::to_string(v[k]);
    }
    return out;
}

std::set<MatIdx> down_set(const MatIdx& a) {
    const HasseGraph g = hasse_graph(a);
    return {g.nodes.begin(), g.nodes.end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// Bar matrix and the solver

BarMatrix bar_matrix(const Algebra& alg, const Cell& cell) {
    BarMatrix out{cell, {}};
    for (const MatIdx& a : cell.members) {
        const Element bar = alg.bar(Element::monomial(a));
        if (bar.coefficient(a) != GammaLaurent(1))
            throw TriangularityViolation("diagonal bar coefficient at " + a.to_string() + " is " +
                                         bar.coefficient(a).to_string());
        const auto below = down_set(a);
        auto& row = out.rows[a];
        for (const auto& [b, c] : bar.terms()) {
            if (!below.contains(b))
                throw TriangularityViolation("bar(Z(" + a.to_string() + ")) has a term at " + b.to_string());
            row.emplace(b, c);
        }
    }
    return out;
}

CanonicalTable canonical_basis(const Algebra& alg, const Cell& cell) {
    return canonical_basis(alg, bar_matrix(alg, cell));
}

CanonicalTable canonical_basis(const Algebra& alg, const BarMatrix& bars) {
    CanonicalTable table{bars.cell, alg.spec(), {}};
    // Order of processing: rho descending; every C > B has larger rho.
    using Pending = std::map<std::pair<long, MatIdx>, GammaLaurent, std::greater<>>;
    for (const MatIdx& a : bars.cell.members) {
        auto& h = table.h[a];
        h.emplace(a, GammaLaurent(1));
        Pending pending;
        auto push = [&](const MatIdx& c, const GammaLaurent& coef) {
            for (const auto& [b, e] : bars.rows.at(c)) {
                if (b == c) continue;
                pending[{b.rho(), b}] += bar_conj(coef) * e;
            }
        };
        push(a, GammaLaurent(1));
        while (!pending.empty()) {
            auto node = pending.extract(pending.begin());
            const MatIdx& b = node.key().second;
            if (node.mapped().is_zero()) continue;
            // h_AB - bar(h_AB) = sum_{B < C <= A} bar(h_AC) a_CB
            const GammaLaurent hb = solve_bar_equation(node.mapped());
            if (hb.is_zero()) continue;
            h.emplace(b, hb);
            push(b, hb);
        }
    }
    return table;
}

Element CanonicalTable::b(const MatIdx& a) const {
    auto it = h.find(a);
    if (it == h.end()) throw OutOfCell(a.to_string() + " is not in the table's cell");
    Element x(a.rows(), a.cols(), Basis::Norm);
    for (const auto& [c, coef] : it->second) x.add_term(c, coef);
    return x;
}

nlohmann::json CanonicalTable::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [a, row] : h)
        for (const auto& [b, c] : row)
            entries.push_back({{"A", a.to_string()}, {"B", b.to_string()}, {"coeff", qcanon::to_json(c)}});
    const int rows = static_cast<int>(cell.rowSums.size());
    const int cols = static_cast<int>(cell.colSums.size());
    return {{"margins", {{"rows", cell.rowSums}, {"cols", cell.colSums}}},
            {"shape", {rows, cols}},
            {"spec", std::string(spec.label())},
            {"h", entries}};
}

CanonicalTable CanonicalTable::from_json(const nlohmann::json& j) {
    try {
        CanonicalTable t;
        t.cell = enumerate_cell(j.at("margins").at("rows").get<std::vector<int>>(),
                                j.at("margins").at("cols").get<std::vector<int>>());
        t.spec = Specialization::parse(j.at("spec").get<std::string>());
        for (const auto& e : j.at("h")) {
            const MatIdx a = MatIdx::parse(e.at("A").get<std::string>());
            const MatIdx b = MatIdx::parse(e.at("B").get<std::string>());
            if (!t.cell.contains(a) || !t.cell.contains(b)) throw CacheCorrupt("entry outside the cell");
            t.h[a][b] = gamma_laurent_from_json(e.at("coeff"));
        }
        for (const MatIdx& a : t.cell.members) {
            auto it = t.h.find(a);
            if (it == t.h.end() || it->second.count(a) == 0 || it->second.at(a) != GammaLaurent(1))
                throw CacheCorrupt("missing unit diagonal at " + a.to_string());
        }
        return t;
    } catch (const CacheCorrupt&) {
        throw;
    } catch (const std::exception& e) {
        throw CacheCorrupt(e.what());
    }
}

// ---------------------------------------------------------------------------
// Table store

TableStore::TableStore(Algebra alg, Options options) : alg_(std::move(alg)), options_(std::move(options)) {
    if (options_.reuseGeneric && alg_.spec().name() != SpecName::Generic) {
        Options inner = options_;
        inner.reuseGeneric = false;
        generic_ = std::make_unique<TableStore>(Algebra(alg_.rows(), alg_.cols()), inner);
    }
}

std::filesystem::path TableStore::cache_path(const std::vector<int>& rowSums, const std::vector<int>& colSums) const {
    if (!options_.cacheDir) return {};
    return *options_.cacheDir / (std::to_string(alg_.rows()) + "x" + std::to_string(alg_.cols())) /
           (std::string(alg_.spec().label()) + "_r" + join_ints(rowSums, '-') + "_c" + join_ints(colSums, '-') +
            ".json");
}

std::optional<CanonicalTable> TableStore::load(const Key& key) {
    const auto path = cache_path(key.first, key.second);
    if (path.empty() || !std::filesystem::exists(path)) return std::nullopt;
    try {
        std::ifstream in(path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw CacheCorrupt(e.what());
        }
        CanonicalTable t = CanonicalTable::from_json(j);
        if (t.cell.rowSums != key.first || t.cell.colSums != key.second || !(t.spec == alg_.spec()))
            throw CacheCorrupt("cache file does not match its cell");
        return t;
    } catch (const CacheCorrupt& e) {
        if (options_.warn) options_.warn("ignoring corrupt cache file " + path.string() + ": " + e.what());
        return std::nullopt;
    }
}

void TableStore::store(const Key& key, const CanonicalTable& t) const {
    const auto path = cache_path(key.first, key.second);
    if (path.empty()) return;
    static std::atomic<unsigned> counter{0};
    try {
        std::filesystem::create_directories(path.parent_path());
        auto tmp = path;
        tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
        {
            std::ofstream out(tmp);
            out << t.to_json().dump(1) << '\n';
            if (!out) throw std::runtime_error("write failed");
        }
        std::filesystem::rename(tmp, path);
    } catch (const std::exception& e) {
        if (options_.warn) options_.warn("could not write cache file " + path.string() + ": " + e.what());
    }
}

CanonicalTable TableStore::build(const Cell& cell) {
    if (generic_) {
        auto g = generic_->table(cell.rowSums, cell.colSums);
        CanonicalTable t{cell, alg_.spec(), {}};
        bool pure = true;
        for (const auto& [a, row] : g->h)
            for (const auto& [b, c] : row) {
                pure = pure && c.is_pure_q();
                t.h[a][b] = specialize(c, alg_.spec());
            }
        if (pure) return t;
        if (options_.warn) options_.warn("generic table has parameter-dependent coefficients; solving directly");
    }
    return canonical_basis(alg_, cell);
}

std::shared_ptr<const CanonicalTable> TableStore::table(const std::vector<int>& rowSums,
                                                        const std::vector<int>& colSums) {
    const Key key{rowSums, colSums};
    {
        std::lock_guard lock(mutex_);
        if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    }
    std::shared_ptr<const CanonicalTable> t;
    if (auto cached = load(key)) {
        t = std::make_shared<const CanonicalTable>(std::move(*cached));
        std::lock_guard lock(mutex_);
        ++loaded_;
    } else {
        t = std::make_shared<const CanonicalTable>(build(enumerate_cell(rowSums, colSums)));
        store(key, *t);
        std::lock_guard lock(mutex_);
        ++computed_;
    }
    std::lock_guard lock(mutex_);
    return tables_.emplace(key, t).first->second;
}

std::shared_ptr<const CanonicalTable> TableStore::table_of(const MatIdx& a) {
    if (a.rows() != alg_.rows() || a.cols() != alg_.cols()) throw IndexOutOfRange("matrix shape does not match");
    return table(a.row_sums(), a.col_sums());
}

Element TableStore::b(const MatIdx& a) { return table_of(a)->b(a); }

// ---------------------------------------------------------------------------
// Expansions

namespace {

template <class Lookup>
CanonicalElement expand_with(Element x, Lookup&& lookup) {
    CanonicalElement out;
    while (!x.is_zero()) {
        // a term of maximal rho is maximal for <=
        auto top = x.terms().begin();
        for (auto it = x.terms().begin(); it != x.terms().end(); ++it)
            if (it->first.rho() > top->first.rho()) top = it;
        const MatIdx a = top->first;
        const GammaLaurent c = top->second;
        out.terms.emplace(a, c);
        x -= c * lookup(a);
    }
    return out;
}

}  // namespace

CanonicalElement expand_in_canonical(const Element& x, const CanonicalTable& table) {
    if (x.basis() != Basis::Norm) throw Error("expand_in_canonical expects the normalized basis");
    return expand_with(x, [&](const MatIdx& a) { return table.b(a); });
}

CanonicalElement expand_in_canonical(const Element& x, TableStore& store) {
    return expand_with(store.algebra().to_norm(x), [&](const MatIdx& a) { return store.b(a); });
}

std::string CanonicalElement::to_string() const {
    if (terms.empty()) return "0";
    const MatIdx& any = terms.begin()->first;
    Element e(any.rows(), any.cols(), Basis::Norm);
    for (const auto& [a, c] : terms) e.add_term(a, c);
    std::string s = e.to_string();
    for (std::size_t p = s.find("Z["); p != std::string::npos; p = s.find("Z[", p)) s[p] = 'b';
    return s;
}

nlohmann::json CanonicalElement::to_json() const {
    if (terms.empty()) return {{"terms", nlohmann::json::array()}};
    const MatIdx& any = terms.begin()->first;
    Element e(any.rows(), any.cols(), Basis::Norm);
    for (const auto& [a, c] : terms) e.add_term(a, c);
    nlohmann::json j = e.to_json();
    j.erase("basis");
    j["basis"] = "canonical";
    return j;
}

StructureConstants structure_constants(const MatIdx& a, const MatIdx& b, TableStore& store) {
    const Element prod = store.algebra().multiply(store.b(a), store.b(b));
    StructureConstants out{expand_in_canonical(prod, store), true};
    for (const auto& [c, coef] : out.coefficients.terms) out.positive = out.positive && is_nonneg(coef);
    return out;
}

std::optional<GammaMonomial> equiv_up_to_monomial(const Element& x, const Element& y) {
    if (x.basis() != y.basis() || x.size() != y.size()) return std::nullopt;
    if (x.is_zero()) return GammaMonomial{};
    std::optional<GammaMonomial> m;
    for (const auto& [a, cy] : y.terms()) {
        const GammaLaurent cx = x.coefficient(a);
        if (cx.is_zero()) return std::nullopt;
        if (!m) {
            // leading monomials in the group order determine the ratio
            auto lead = [](const GammaLaurent& c) {
                const GammaLaurent::Term* best = &c.terms().front();
                for (const auto& t : c.terms())
                    if (group_less(best->first, t.first)) best = &t;
                return *best;
            };
            const auto lx = lead(cx), ly = lead(cy);
            if (lx.second != ly.second) return std::nullopt;
            m = lx.first / ly.first;
        }
        if (cy * *m != cx) return std::nullopt;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Inductive product

InductiveResult inductive_product(const MatIdx& a, const MatIdx& b, TableStore& store) {
    const Algebra& alg = store.algebra();
    const MatIdx sum = a + b;
    const GammaMonomial g = alg.leading_product_monomial(a, b);
    const Element ba = store.b(a), bb = store.b(b);
    const GammaLaurent q(GammaMonomial::q(1)), qi(GammaMonomial::q(-1));
    const Element num = GammaLaurent(GammaMonomial::q(1) / g) * alg.multiply(ba, bb) -
                        GammaLaurent(GammaMonomial::q(-1) * g) * alg.multiply(bb, ba);
    Element x(alg.rows(), alg.cols(), Basis::Norm);
    for (const auto& [d, c] : num.terms()) x.add_term(d, divide_exact(c, q - qi));

    InductiveResult out{x, g, {}};
    const CanonicalElement expansion = expand_in_canonical(x, store);
    for (const auto& [d, c] : expansion.terms) {
        if (d == sum) {
            if (c != GammaLaurent(1)) throw Error("coefficient of b(A+B) is " + c.to_string() + ", expected 1");
            continue;
        }
        if (bar_conj(c) != c)
            throw NonSymmetricCoefficient("c_D at " + d.to_string() + " is " + c.to_string());
        out.stripped.emplace(d, c);
        out.element -= c * store.b(d);
    }
    if (!expansion.terms.contains(sum)) throw Error("b(A+B) does not occur in the inductive combination");
    return out;
}

// ---------------------------------------------------------------------------
// Decompositions

DecompositionReport decompose_search(const MatIdx& a, TableStore& store) {
    const Algebra& alg = store.algebra();
    DecompositionReport report{a, {}};
    const Element target = store.b(a);
    std::vector<int> e(a.entries().size(), 0);
    const int cols = a.cols();
    while (true) {
        // advance the odometer over 0 <= e <= a
        std::size_t k = 0;
        while (k < e.size() && e[k] == a.entries()[k]) e[k++] = 0;
        if (k == e.size()) break;
        ++e[k];
        MatIdx left(a.rows(), a.cols());
        for (std::size_t p = 0; p < e.size(); ++p) left.set(static_cast<int>(p) / cols + 1, static_cast<int>(p) % cols + 1, e[p]);
        if (left == a) continue;
        const MatIdx right = a - left;
        if (right < left) continue;
        const Element bl = store.b(left), br = store.b(right);
        auto f = equiv_up_to_monomial(alg.multiply(bl, br), target);
        auto r = equiv_up_to_monomial(alg.multiply(br, bl), target);
        if (!f && !r) continue;
        Factorization fac{left, right, f ? *f : *r, f ? r : std::nullopt, false};
        if (!f) std::swap(fac.left, fac.right);
        fac.qCommutes = fac.reversed.has_value();
        report.factorizations.push_back(std::move(fac));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Closed forms

Element element_power(const Algebra& alg, const Element& x, int k) {
    if (k < 0) throw Error("element_power: negative exponent");
    Element out = alg.convert(alg.one(), x.basis());
    for (int i = 0; i < k; ++i) out = alg.multiply(out, x);
    return out;
}

Element two_by_three_closed_form(const Algebra& alg, int a, int b, int c, const GammaMonomial& x) {
    if (alg.rows() != 2 || alg.cols() != 3) throw Error("closed form lives in the 2x3 algebra");
    const GammaLaurent x2(x.pow(2));
    const Element minor12 = alg.word(parse_word("11.22")) - x2 * alg.word(parse_word("12.21"));
    const Element minor13 = alg.word(parse_word("11.23")) - x2 * alg.word(parse_word("13.21"));
    const Element z11 = alg.generator(1, 1), z22 = alg.generator(2, 2), z23 = alg.generator(2, 3);
    std::vector<std::pair<Element, int>> factors;
    if (a <= b) {
        factors = {{minor12, a}, {z22, b - a}, {z23, c}};
    } else if (a >= b + c) {
        factors = {{z11, a - b - c}, {minor12, b}, {minor13, c}};
    } else {
        factors = {{minor12, b}, {minor13, a - b}, {z23, c - a + b}};
    }
    Element out = alg.one(Basis::Plain);
    for (const auto& [f, k] : factors) out = alg.multiply(out, element_power(alg, f, k));
    return alg.to_norm(GammaLaurent(x.pow(-b * c)) * out);
}

}  // namespace qcanon
