#include "qcanon/coeff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

std::vector<GammaMonomial::ParamExp> merge_params(const std::vector<GammaMonomial::ParamExp>& a,
                                                  const std::vector<GammaMonomial::ParamExp>& b) {
    std::vector<GammaMonomial::ParamExp> out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            int e = ia->second + ib->second;
            if (e != 0) out.emplace_back(ia->first, e);
            ++ia;
            ++ib;
        }
    }
    return out;
}

std::string exponent_text(int num, int den) {
    // num/den with den in {1,2}
    if (den == 2 && num % 2 != 0) return "{" + std::to_string(num) + "/2}";
    return std::to_string(den == 2 ? num / 2 : num);
}

void normalize_terms(std::vector<GammaLaurent::Term>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t k = 0; k < terms.size();) {
        std::size_t l = k + 1;
        BigInt c = terms[k].second;
        while (l < terms.size() && terms[l].first == terms[k].first) c += terms[l++].second;
        if (c != 0) {
            if (out != k) terms[out].first = std::move(terms[k].first);
            terms[out].second = std::move(c);
            ++out;
        }
        k = l;
    }
    terms.resize(out);
}

// Display order: exponent data descending, v first.
bool display_before(const GammaMonomial& a, const GammaMonomial& b) {
    if (a.v_exp() != b.v_exp()) return a.v_exp() > b.v_exp();
    const auto& pa = a.params();
    const auto& pb = b.params();
    auto ia = pa.begin();
    auto ib = pb.begin();
    while (ia != pa.end() || ib != pb.end()) {
        if (ia != pa.end() && ib != pb.end() && ia->first == ib->first) {
            if (ia->second != ib->second) return ia->second > ib->second;
            ++ia;
            ++ib;
        } else if (ib == pb.end() || (ia != pa.end() && ia->first < ib->first)) {
            return ia->second > 0;
        } else {
            return ib->second < 0;
        }
    }
    return false;
}

std::vector<GammaLaurent::Term> display_sorted(const GammaLaurent& x) {
    std::vector<GammaLaurent::Term> t(x.terms());
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return display_before(a.first, b.first); });
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// GammaMonomial

GammaMonomial GammaMonomial::v(int e) {
    GammaMonomial m;
    m.v_ = e;
    return m;
}

GammaMonomial GammaMonomial::param(ParamKind kind, int i, int j, int e) {
    GammaMonomial m;
    if (i == j || e == 0) return m;
    if (i > j) {
        std::swap(i, j);
        e = -e;
    }
    m.params_.emplace_back(ParamKey{kind, {i, j}}, e);
    return m;
}

GammaMonomial GammaMonomial::p(int i, int j, int e) { return param(ParamKind::P, i, j, e); }
GammaMonomial GammaMonomial::qp(int i, int j, int e) { return param(ParamKind::Q, i, j, e); }

GammaMonomial GammaMonomial::from_parts(int vExp, std::vector<ParamExp> params) {
    GammaMonomial m = v(vExp);
    for (auto& [key, e] : params) {
        GammaMonomial f = param(key.kind, key.index.i, key.index.j, e);
        m.params_ = merge_params(m.params_, f.params_);
    }
    return m;
}

int GammaMonomial::exponent(const ParamKey& key) const {
    auto it = std::lower_bound(params_.begin(), params_.end(), key,
                               [](const ParamExp& pe, const ParamKey& k) { return pe.first < k; });
    return (it != params_.end() && it->first == key) ? it->second : 0;
}

bool GammaMonomial::is_positive() const {
    if (v_ != 0) return v_ < 0;
    return !params_.empty() && params_.front().second < 0;
}

GammaMonomial GammaMonomial::inverse() const { return pow(-1); }

GammaMonomial GammaMonomial::pow(int e) const {
    GammaMonomial m;
    if (e == 0) return m;
    m.v_ = v_ * e;
    m.params_ = params_;
    for (auto& pe : m.params_) pe.second *= e;
    return m;
}

std::optional<GammaMonomial> GammaMonomial::sqrt() const {
    if (v_ % 2 != 0) return std::nullopt;
    GammaMonomial m;
    m.v_ = v_ / 2;
    m.params_ = params_;
    for (auto& pe : m.params_) {
        if (pe.second % 2 != 0) return std::nullopt;
        pe.second /= 2;
    }
    return m;
}

GammaMonomial operator*(const GammaMonomial& a, const GammaMonomial& b) {
    GammaMonomial m;
    m.v_ = a.v_ + b.v_;
    if (b.params_.empty()) {
        m.params_ = a.params_;
    } else if (a.params_.empty()) {
        m.params_ = b.params_;
    } else {
        m.params_ = merge_params(a.params_, b.params_);
    }
    return m;
}

std::string GammaMonomial::to_string() const {
    std::vector<std::string> factors;
    if (v_ != 0) {
        factors.push_back(v_ == 2 ? std::string("q") : "q^" + exponent_text(v_, 2));
    }
    for (const auto& [key, e] : params_) {
        std::string f = (key.kind == ParamKind::P ? "p[" : "Q[") + std::to_string(key.index.i) + "][" +
                        std::to_string(key.index.j) + "]";
        if (e != 1) f += "^" + std::to_string(e);
        factors.push_back(f);
    }
    if (factors.empty()) return "1";
    std::string out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out += "*" + factors[k];
    return out;
}

std::string GammaMonomial::to_latex() const {
    std::string out;
    if (v_ != 0) {
        out += "q";
        if (v_ != 2) out += (v_ % 2 == 0) ? "^{" + std::to_string(v_ / 2) + "}" : "^{" + std::to_string(v_) + "/2}";
    }
    for (const auto& [key, e] : params_) {
        out += (key.kind == ParamKind::P ? "p_{" : "q_{") + std::to_string(key.index.i) +
               std::to_string(key.index.j) + "}";
        if (e != 1) out += "^{" + std::to_string(e) + "}";
    }
    return out;
}

bool group_less(const GammaMonomial& a, const GammaMonomial& b) { return (b / a).is_positive(); }

// ---------------------------------------------------------------------------
// Specialization

Specialization Specialization::parse(std::string_view name) {
    if (name == "generic") return generic();
    if (name == "official") return official();
    if (name == "ast") return ast();
    throw ParseError("unknown specialization '" + std::string(name) + "' (expected generic|official|ast)");
}

std::string_view Specialization::label() const {
    switch (name_) {
        case SpecName::Generic: return "generic";
        case SpecName::Official: return "official";
        case SpecName::Ast: return "ast";
    }
    return "generic";
}

GammaMonomial Specialization::image(const ParamKey& key) const {
    const auto [i, j] = key.index;
    switch (name_) {
        case SpecName::Generic:
            return GammaMonomial::param(key.kind, i, j);
        case SpecName::Official:
            // stored key has i < j, so p_ij = p_ji^{-1} = v and q_ij = q_ji^{-1} = v^{-1}
            return GammaMonomial::v(key.kind == ParamKind::P ? 1 : -1);
        case SpecName::Ast:
            return GammaMonomial::p(i, j);
    }
    return GammaMonomial::param(key.kind, i, j);
}

GammaMonomial Specialization::apply(const GammaMonomial& m) const {
    if (name_ == SpecName::Generic) return m;
    GammaMonomial out = GammaMonomial::v(m.v_exp());
    for (const auto& [key, e] : m.params()) out *= image(key).pow(e);
    return out;
}

// ---------------------------------------------------------------------------
// GammaLaurent

GammaLaurent::GammaLaurent(long c) {
    if (c != 0) terms_.emplace_back(GammaMonomial{}, BigInt(c));
}

GammaLaurent::GammaLaurent(const BigInt& c) {
    if (c != 0) terms_.emplace_back(GammaMonomial{}, c);
}

GammaLaurent::GammaLaurent(const GammaMonomial& m, const BigInt& c) {
    if (c != 0) terms_.emplace_back(m, c);
}

GammaLaurent GammaLaurent::from_terms(std::vector<Term> terms) {
    normalize_terms(terms);
    GammaLaurent x;
    x.terms_ = std::move(terms);
    return x;
}

BigInt GammaLaurent::constant_term() const { return coefficient(GammaMonomial{}); }

BigInt GammaLaurent::coefficient(const GammaMonomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const GammaMonomial& k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : BigInt(0);
}

std::optional<GammaLaurent::Term> GammaLaurent::as_single_term() const {
    if (terms_.size() != 1) return std::nullopt;
    return terms_.front();
}

bool GammaLaurent::is_pure_q() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.is_pure_q(); });
}

GammaLaurent GammaLaurent::operator-() const {
    GammaLaurent x = *this;
    for (auto& t : x.terms_) t.second = -t.second;
    return x;
}

GammaLaurent& GammaLaurent::operator+=(const GammaLaurent& y) {
    if (y.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + y.terms_.size());
    auto ia = terms_.begin();
    auto ib = y.terms_.begin();
    while (ia != terms_.end() || ib != y.terms_.end()) {
        if (ib == y.terms_.end() || (ia != terms_.end() && ia->first < ib->first)) {
            out.push_back(std::move(*ia++));
        } else if (ia == terms_.end() || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            BigInt c = ia->second + ib->second;
            if (c != 0) out.emplace_back(std::move(ia->first), std::move(c));
            ++ia;
            ++ib;
        }
    }
    terms_ = std::move(out);
    return *this;
}

GammaLaurent& GammaLaurent::operator-=(const GammaLaurent& y) { return *this += -y; }

GammaLaurent operator*(const GammaLaurent& x, const GammaLaurent& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<GammaLaurent::Term> prod;
    prod.reserve(x.size() * y.size());
    for (const auto& [mx, cx] : x.terms_)
        for (const auto& [my, cy] : y.terms_) prod.emplace_back(mx * my, cx * cy);
    return GammaLaurent::from_terms(std::move(prod));
}

GammaLaurent operator*(const GammaLaurent& x, const GammaMonomial& m) {
    if (m.is_one()) return x;
    std::vector<GammaLaurent::Term> prod;
    prod.reserve(x.size());
    for (const auto& [mx, cx] : x.terms_) prod.emplace_back(mx * m, cx);
    return GammaLaurent::from_terms(std::move(prod));
}

std::string bigint_to_string(const BigInt& c) { return c.str(); }

std::string GammaLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : display_sorted(*this)) {
        BigInt a = c < 0 ? BigInt(-c) : c;
        std::string body;
        if (m.is_one()) {
            body = a.str();
        } else if (a == 1) {
            body = m.to_string();
        } else {
            body = a.str() + "*" + m.to_string();
        }
        if (first) {
            out = (c < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (c < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

std::string GammaLaurent::to_latex() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : display_sorted(*this)) {
        BigInt a = c < 0 ? BigInt(-c) : c;
        std::string body = m.is_one() ? a.str() : (a == 1 ? m.to_latex() : a.str() + m.to_latex());
        if (first) {
            out = (c < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (c < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Free functions

GammaLaurent bar_conj(const GammaLaurent& x) {
    std::vector<GammaLaurent::Term> t;
    t.reserve(x.size());
    for (const auto& [m, c] : x) t.emplace_back(m.inverse(), c);
    return GammaLaurent::from_terms(std::move(t));
}

GammaLaurent solve_bar_equation(const GammaLaurent& g) {
    if (bar_conj(g) != -g) throw NotAntisymmetric("bar(g) != -g for g = " + g.to_string());
    std::vector<GammaLaurent::Term> t;
    for (const auto& [m, c] : g)
        if (m.is_positive()) t.emplace_back(m, c);
    return GammaLaurent::from_terms(std::move(t));
}

GammaLaurent specialize(const GammaLaurent& x, const Specialization& s) {
    if (s.name() == SpecName::Generic) return x;
    std::vector<GammaLaurent::Term> t;
    t.reserve(x.size());
    for (const auto& [m, c] : x) t.emplace_back(s.apply(m), c);
    return GammaLaurent::from_terms(std::move(t));
}

bool is_nonneg(const GammaLaurent& x) {
    return std::all_of(x.begin(), x.end(), [](const auto& t) { return t.second > 0; });
}

GammaLaurent power(const GammaLaurent& x, int e) {
    GammaLaurent r(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

namespace {

// Exponent vector over a fixed variable list (v first, then the parameter keys).
struct ExponentBox {
    std::vector<ParamKey> keys;
    std::vector<int> lo;
    std::vector<int> hi;
};

std::vector<int> exponents(const GammaMonomial& m, const std::vector<ParamKey>& keys) {
    std::vector<int> e;
    e.reserve(keys.size() + 1);
    e.push_back(m.v_exp());
    for (const auto& k : keys) e.push_back(m.exponent(k));
    return e;
}

std::vector<ParamKey> collect_keys(const GammaLaurent& a, const GammaLaurent& b) {
    std::vector<ParamKey> keys;
    for (const auto* x : {&a, &b})
        for (const auto& [m, c] : *x)
            for (const auto& [k, e] : m.params()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

}  // namespace

GammaLaurent divide_exact(const GammaLaurent& x, const GammaLaurent& d) {
    if (d.is_zero()) throw NotDivisible("division by zero");
    if (x.is_zero()) return {};
    if (auto single = d.as_single_term()) {
        GammaMonomial inv = single->first.inverse();
        std::vector<GammaLaurent::Term> t;
        for (const auto& [m, c] : x) {
            if (c % single->second != 0) throw NotDivisible(x.to_string() + " by " + d.to_string());
            t.emplace_back(m * inv, c / single->second);
        }
        return GammaLaurent::from_terms(std::move(t));
    }

    // Per-variable degree bounds of the quotient are forced (degrees add under
    // multiplication in a domain); any candidate term outside them means no
    // exact quotient exists. Leading terms are taken in lexicographic order.
    const auto keys = collect_keys(x, d);
    const std::size_t nv = keys.size() + 1;
    auto bounds = [&](const GammaLaurent& y) {
        std::vector<int> lo(nv, 0), hi(nv, 0);
        bool first = true;
        for (const auto& [m, c] : y) {
            auto e = exponents(m, keys);
            for (std::size_t k = 0; k < nv; ++k) {
                lo[k] = first ? e[k] : std::min(lo[k], e[k]);
                hi[k] = first ? e[k] : std::max(hi[k], e[k]);
            }
            first = false;
        }
        return std::pair{lo, hi};
    };
    auto [xlo, xhi] = bounds(x);
    auto [dlo, dhi] = bounds(d);

    auto lex_leading = [&](const GammaLaurent& y) {
        const GammaLaurent::Term* best = nullptr;
        std::vector<int> bestE;
        for (const auto& t : y) {
            auto e = exponents(t.first, keys);
            if (!best || e > bestE) {
                best = &t;
                bestE = std::move(e);
            }
        }
        return *best;
    };

    const auto lead_d = lex_leading(d);
    GammaLaurent rem = x;
    std::vector<GammaLaurent::Term> quotient;
    while (!rem.is_zero()) {
        const auto lead_r = lex_leading(rem);
        if (lead_r.second % lead_d.second != 0) throw NotDivisible(x.to_string() + " by " + d.to_string());
        GammaMonomial qm = lead_r.first / lead_d.first;
        auto qe = exponents(qm, keys);
        for (std::size_t k = 0; k < nv; ++k)
            if (qe[k] < xlo[k] - dlo[k] || qe[k] > xhi[k] - dhi[k])
                throw NotDivisible(x.to_string() + " by " + d.to_string());
        GammaLaurent qt(qm, lead_r.second / lead_d.second);
        rem -= qt * d;
        quotient.emplace_back(qm, lead_r.second / lead_d.second);
    }
    return GammaLaurent::from_terms(std::move(quotient));
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const GammaMonomial& m) {
    nlohmann::json p = nlohmann::json::object();
    nlohmann::json q = nlohmann::json::object();
    for (const auto& [key, e] : m.params()) {
        auto name = std::to_string(key.index.i) + "," + std::to_string(key.index.j);
        (key.kind == ParamKind::P ? p : q)[name] = e;
    }
    return {{"v", m.v_exp()}, {"p", p}, {"Q", q}};
}

nlohmann::json to_json(const GammaLaurent& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : display_sorted(x)) {
        nlohmann::json t = to_json(m);
        if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max()) {
            t["coeff"] = static_cast<std::int64_t>(c);
        } else {
            t["coeff"] = c.str();
        }
        arr.push_back(std::move(t));
    }
    return arr;
}

GammaLaurent gamma_laurent_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("coefficient must be a JSON array");
    std::vector<GammaLaurent::Term> terms;
    for (const auto& t : j) {
        std::vector<GammaMonomial::ParamExp> params;
        for (const char* kind : {"p", "Q"}) {
            if (!t.contains(kind)) continue;
            for (const auto& [name, e] : t.at(kind).items()) {
                auto comma = name.find(',');
                if (comma == std::string::npos) throw ParseError("bad parameter index '" + name + "'");
                ParamKey key{kind[0] == 'p' ? ParamKind::P : ParamKind::Q,
                             {std::stoi(name.substr(0, comma)), std::stoi(name.substr(comma + 1))}};
                params.emplace_back(key, e.get<int>());
            }
        }
        const auto& c = t.at("coeff");
        BigInt coeff = c.is_string() ? BigInt(c.get<std::string>()) : BigInt(c.get<std::int64_t>());
        terms.emplace_back(GammaMonomial::from_parts(t.at("v").get<int>(), std::move(params)), coeff);
    }
    return GammaLaurent::from_terms(std::move(terms));
}

}  // namespace qcanon
