#include "qcanon/conject.hpp"

#include <cstdlib>

#include "qcanon/errors.hpp"
#include "qcanon/qcomb.hpp"

namespace qcanon {

namespace {

std::string_view kind_name(ConjectureKind k) {
    switch (k) {
        case ConjectureKind::Literal: return "literal";
        case ConjectureKind::SkipZeroFactor: return "skip-zero-factor";
        case ConjectureKind::BEntries: return "b-entries";
    }
    return "";
}

nlohmann::json margins_json(const Cell& c) { return {{"rows", c.rowSums}, {"cols", c.colSums}}; }

}  // namespace

std::string ConjectureVariant::label() const {
    return std::string(kind_name(kind)) + (order == PathOrder::LexMax ? "/lex-max" : "/lex-min");
}

ConjectureVariant ConjectureVariant::parse(std::string_view text) {
    ConjectureVariant v;
    std::string_view head = text, tail;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        head = text.substr(0, slash);
        tail = text.substr(slash + 1);
    }
    bool found = false;
    for (ConjectureKind k : {ConjectureKind::Literal, ConjectureKind::SkipZeroFactor, ConjectureKind::BEntries})
        if (head == kind_name(k)) {
            v.kind = k;
            found = true;
        }
    if (!found) throw ParseError("unknown conjecture variant '" + std::string(text) + "'");
    if (tail == "lex-min")
        v.order = PathOrder::LexMin;
    else if (!tail.empty() && tail != "lex-max")
        throw ParseError("unknown path order '" + std::string(tail) + "'");
    return v;
}

std::vector<ConjectureVariant> ConjectureVariant::all() {
    std::vector<ConjectureVariant> out;
    for (ConjectureKind k : {ConjectureKind::Literal, ConjectureKind::SkipZeroFactor, ConjectureKind::BEntries})
        for (PathOrder o : {PathOrder::LexMax, PathOrder::LexMin}) out.push_back({k, o});
    return out;
}

GammaLaurent conj_coefficient(const MatIdx& a, const MatIdx& b, const ConjectureVariant& variant) {
    const PrincipalPath path = principal_path(a, b, variant.order);
    const MatIdx& entries = variant.kind == ConjectureKind::BEntries ? b : a;
    GammaLaurent c = (path.length % 2 ? GammaLaurent(-1) : GammaLaurent(1)) * GammaMonomial::q(-path.length);
    for (const MoveLabel& l : all_labels(a.rows(), a.cols())) {
        const auto it = path.multiplicities.find(l);
        const int p = it == path.multiplicities.end() ? 0 : it->second;
        if (p == 0 && variant.kind == ConjectureKind::SkipZeroFactor) continue;
        const int x = entries(l.i, l.j), y = entries(l.s, l.t);
        c = c * GammaMonomial::q(-std::abs(x - y)) * q_binomial(std::min(x, y), p, QBase::QInv);
        if (c.is_zero()) break;
    }
    return c;
}

Element conj_element(const MatIdx& a, const ConjectureVariant& variant) {
    Element out(a.rows(), a.cols(), Basis::Norm);
    for (const MatIdx& b : hasse_graph(a).nodes) out.add_term(b, conj_coefficient(a, b, variant));
    return out;
}

ConjReport conj_check(const std::vector<Cell>& cells, const std::vector<ConjectureVariant>& variants,
                      TableStore& store) {
    ConjReport report{cells, {}};
    for (const ConjectureVariant& v : variants) {
        ConjVariantResult r{v, 0, {}, {}};
        for (const Cell& cell : cells) {
            const auto table = store.table(cell.rowSums, cell.colSums);
            for (const MatIdx& a : cell.members) {
                ++r.checked;
                const Element conj = conj_element(a, v);
                const Element solved = table->b(a);
                for (const MatIdx& b : hasse_graph(a).nodes) {
                    const GammaLaurent x = conj.coefficient(b), y = solved.coefficient(b);
                    if (x != y) r.mismatches.push_back({a, b, x, y});
                }
                if (store.algebra().bar(conj) != conj) r.notBarInvariant.push_back(a);
            }
        }
        report.variants.push_back(std::move(r));
    }
    return report;
}

nlohmann::json ConjReport::to_json() const {
    nlohmann::json j;
    j["cells"] = nlohmann::json::array();
    for (const Cell& c : cells) j["cells"].push_back(margins_json(c));
    j["variants"] = nlohmann::json::array();
    for (const ConjVariantResult& r : variants) {
        nlohmann::json v;
        v["variant"] = r.variant.label();
        v["checked"] = r.checked;
        v["match_all"] = r.match_all();
        v["mismatches"] = nlohmann::json::array();
        for (const ConjMismatch& m : r.mismatches)
            v["mismatches"].push_back({{"A", m.a.to_string()},
                                       {"B", m.b.to_string()},
                                       {"conjectured", m.conjectured.to_string()},
                                       {"solver", m.solver.to_string()}});
        v["not_bar_invariant"] = nlohmann::json::array();
        for (const MatIdx& a : r.notBarInvariant) v["not_bar_invariant"].push_back(a.to_string());
        j["variants"].push_back(std::move(v));
    }
    return j;
}

}  // namespace qcanon
