#include "qcanon/oqpq.hpp"

#include <algorithm>
#include <sstream>

#include "qcanon/errors.hpp"

namespace qcanon {

// ---------------------------------------------------------------------------
// Words

Word parse_word(std::string_view literal) {
    Word w;
    std::size_t p = 0;
    while (p < literal.size()) {
        std::size_t e = literal.find('.', p);
        if (e == std::string_view::npos) e = literal.size();
        auto tok = literal.substr(p, e - p);
        if (tok.size() != 2 || !std::isdigit(static_cast<unsigned char>(tok[0])) ||
            !std::isdigit(static_cast<unsigned char>(tok[1])) || tok[0] == '0' || tok[1] == '0')
            throw ParseError("bad word literal '" + std::string(literal) + "'");
        w.push_back({tok[0] - '0', tok[1] - '0'});
        p = e + 1;
    }
    return w;
}

std::string word_to_string(const Word& w) {
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += '.';
        out += std::to_string(w[k].i) + std::to_string(w[k].j);
    }
    return out;
}

Word sorted_word(const MatIdx& a) {
    Word w;
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            for (int k = 0; k < a(i, j); ++k) w.push_back({i, j});
    return w;
}

// ---------------------------------------------------------------------------
// Element

Element Element::monomial(const MatIdx& a, const GammaLaurent& c, Basis basis) {
    Element x(a.rows(), a.cols(), basis);
    x.add_term(a, c);
    return x;
}

void Element::check_shape(const MatIdx& a) const {
    if (a.rows() != rows_ || a.cols() != cols_) throw IndexOutOfRange("matrix shape does not match element");
}

GammaLaurent Element::coefficient(const MatIdx& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? GammaLaurent() : it->second;
}

void Element::add_term(const MatIdx& a, const GammaLaurent& c) {
    if (c.is_zero()) return;
    check_shape(a);
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& y) {
    if (y.basis_ != basis_) throw Error("adding elements in different bases");
    for (const auto& [a, c] : y.terms_) add_term(a, c);
    return *this;
}

Element& Element::operator-=(const Element& y) { return *this += -y; }

Element Element::operator-() const {
    Element x = *this;
    for (auto& [a, c] : x.terms_) c = -c;
    return x;
}

Element operator*(const GammaLaurent& c, const Element& x) {
    Element y(x.rows_, x.cols_, x.basis_);
    for (const auto& [a, d] : x.terms_) y.add_term(a, c * d);
    return y;
}

std::vector<std::pair<MatIdx, GammaLaurent>> Element::ordered_terms() const {
    std::vector<std::pair<MatIdx, GammaLaurent>> t(terms_.begin(), terms_.end());
    std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) {
        long rx = x.first.rho(), ry = y.first.rho();
        return rx != ry ? rx > ry : y.first < x.first;
    });
    return t;
}

namespace {

template <class Fc, class Fm>
std::string render(const std::vector<std::pair<MatIdx, GammaLaurent>>& terms, Fc coeffText, Fm monoText) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [a, c] : terms) {
        bool negative = false;
        std::string coeff;
        if (auto single = c.as_single_term()) {
            negative = single->second < 0;
            GammaLaurent absC(single->first, negative ? BigInt(-single->second) : single->second);
            if (!(single->first.is_one() && absC.constant_term() == 1)) coeff = coeffText(absC) + " ";
        } else {
            coeff = "(" + coeffText(c) + ") ";
        }
        if (first) {
            out += (negative ? "-" : "") + coeff + monoText(a);
            first = false;
        } else {
            out += (negative ? " - " : " + ") + coeff + monoText(a);
        }
    }
    return out;
}

}  // namespace

std::string Element::to_string() const {
    const char* prefix = basis_ == Basis::Norm ? "Z[" : "Z^[";
    return render(
        ordered_terms(), [](const GammaLaurent& c) { return c.to_string(); },
        [prefix](const MatIdx& a) { return prefix + a.to_string() + "]"; });
}

std::string Element::to_latex() const {
    const bool norm = basis_ == Basis::Norm;
    return render(
        ordered_terms(), [](const GammaLaurent& c) { return c.to_latex(); },
        [norm](const MatIdx& a) { return (norm ? std::string("Z") : std::string("Z^")) + a.to_latex(); });
}

nlohmann::json Element::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [a, c] : ordered_terms()) terms.push_back({{"A", a.to_string()}, {"coeff", qcanon::to_json(c)}});
    return {{"basis", basis_ == Basis::Norm ? "norm" : "plain"}, {"terms", terms}};
}

Element specialize(const Element& x, const Specialization& s) {
    Element y(x.rows(), x.cols(), x.basis());
    for (const auto& [a, c] : x.terms()) y.add_term(a, specialize(c, s));
    return y;
}

// ---------------------------------------------------------------------------
// Algebra

struct Algebra::Caches {
    std::mutex mutex;
    std::map<std::pair<MatIdx, GenIndex>, PlainTerms> rightMul;
    std::map<std::pair<MatIdx, MatIdx>, PlainTerms> products;
    std::map<MatIdx, PlainTerms> reversed;
};

Algebra::Algebra(int rows, int cols, Specialization spec)
    : rows_(rows), cols_(cols), spec_(spec), caches_(std::make_shared<Caches>()) {
    if (rows < 1 || cols < 1) throw Error("algebra size must be positive");
}

Relation Algebra::relation(const GenIndex& upper, const GenIndex& lower) const {
    if (!(lower < upper)) throw Error("relation requires upper > lower");
    const auto [s, t] = upper;
    const auto [i, j] = lower;
    Relation r{upper, lower, {}, {}, {}, {}};
    if (s > i && t > j) {
        r.lambda = GammaLaurent(spec_.apply(GammaMonomial::p(s, i, 2) * GammaMonomial::qp(t, j, 2)));
        r.extra = (GammaLaurent(GammaMonomial::q(2)) - GammaLaurent(1)) * spec_.apply(GammaMonomial::p(s, i, 2));
        r.extraLeft = {i, t};
        r.extraRight = {s, j};
    } else if (s > i) {
        r.lambda = GammaLaurent(
            spec_.apply(GammaMonomial::q(2) * GammaMonomial::p(s, i, 2) * GammaMonomial::qp(j, t, -2)));
    } else {
        r.lambda = GammaLaurent(spec_.apply(GammaMonomial::qp(t, j, 2)));
    }
    return r;
}

std::vector<Relation> Algebra::relations() const {
    std::vector<Relation> out;
    for (int i = 1; i <= rows_; ++i)
        for (int j = 1; j <= cols_; ++j)
            for (int s = 1; s <= rows_; ++s)
                for (int t = 1; t <= cols_; ++t)
                    if (GenIndex{i, j} < GenIndex{s, t}) out.push_back(relation({s, t}, {i, j}));
    return out;
}

GammaMonomial Algebra::d_factor(const MatIdx& a) const {
    GammaMonomial d;
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j) {
            const int aij = a(i, j);
            if (aij == 0) continue;
            for (int s = i; s <= a.rows(); ++s)
                for (int t = (s == i ? j + 1 : 1); t <= a.cols(); ++t) {
                    const int m = aij * a(s, t);
                    if (m == 0) continue;
                    if (s > i && t > j) {
                        d *= GammaMonomial::p(s, i, m) * GammaMonomial::qp(t, j, m);
                    } else if (s > i) {
                        d *= GammaMonomial::q(m) * GammaMonomial::p(s, i, m) * GammaMonomial::qp(j, t, -m);
                    } else {
                        d *= GammaMonomial::qp(t, j, m);
                    }
                }
        }
    return spec_.apply(d);
}

void Algebra::check(const Element& x) const {
    if (x.rows() != rows_ || x.cols() != cols_) throw IndexOutOfRange("element shape does not match algebra");
}

namespace {

void accumulate(std::map<MatIdx, GammaLaurent>& acc, const MatIdx& a, const GammaLaurent& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

}  // namespace

Algebra::PlainTerms Algebra::right_mul(const MatIdx& a, const GenIndex& g) const {
    const auto key = std::make_pair(a, g);
    {
        std::lock_guard lock(caches_->mutex);
        if (auto it = caches_->rightMul.find(key); it != caches_->rightMul.end()) return it->second;
    }
    // largest generator present in Z^A
    GenIndex h{0, 0};
    for (int i = a.rows(); i >= 1 && h.i == 0; --i)
        for (int j = a.cols(); j >= 1; --j)
            if (a(i, j) > 0) {
                h = {i, j};
                break;
            }
    PlainTerms out;
    if (h.i == 0 || !(g < h)) {
        MatIdx b = a;
        b.set(g.i, g.j, a(g.i, g.j) + 1);
        out.emplace(std::move(b), GammaLaurent(1));
    } else {
        // Z^A Z_g = Z^{A-h} (Z_h Z_g) = lambda Z^{A-h} Z_g Z_h + extra Z^{A-h} Z_it Z_sj
        MatIdx rest = a;
        rest.set(h.i, h.j, a(h.i, h.j) - 1);
        const Relation rel = relation(h, g);
        for (const auto& [b, c] : right_mul(rest, g)) {
            MatIdx bh = b;
            bh.set(h.i, h.j, b(h.i, h.j) + 1);
            accumulate(out, bh, c * rel.lambda);
        }
        if (!rel.extra.is_zero()) {
            for (const auto& [b, c] : right_mul(rest, rel.extraLeft))
                for (const auto& [d, e] : right_mul(b, rel.extraRight)) accumulate(out, d, c * e * rel.extra);
        }
    }
    std::lock_guard lock(caches_->mutex);
    caches_->rightMul.emplace(key, out);
    return out;
}

Algebra::PlainTerms Algebra::plain_product(const MatIdx& a, const MatIdx& b) const {
    const auto key = std::make_pair(a, b);
    {
        std::lock_guard lock(caches_->mutex);
        if (auto it = caches_->products.find(key); it != caches_->products.end()) return it->second;
    }
    PlainTerms cur{{a, GammaLaurent(1)}};
    for (const auto& g : sorted_word(b)) {
        PlainTerms next;
        for (const auto& [c, coef] : cur)
            for (const auto& [d, e] : right_mul(c, g)) accumulate(next, d, coef * e);
        cur = std::move(next);
    }
    std::lock_guard lock(caches_->mutex);
    caches_->products.emplace(key, cur);
    return cur;
}

Algebra::PlainTerms Algebra::reversed(const MatIdx& a) const {
    {
        std::lock_guard lock(caches_->mutex);
        if (auto it = caches_->reversed.find(a); it != caches_->reversed.end()) return it->second;
    }
    Word w = sorted_word(a);
    std::reverse(w.begin(), w.end());
    PlainTerms cur{{MatIdx(rows_, cols_), GammaLaurent(1)}};
    for (const auto& g : w) {
        PlainTerms next;
        for (const auto& [c, coef] : cur)
            for (const auto& [d, e] : right_mul(c, g)) accumulate(next, d, coef * e);
        cur = std::move(next);
    }
    std::lock_guard lock(caches_->mutex);
    caches_->reversed.emplace(a, cur);
    return cur;
}

GammaLaurent Algebra::reversal_coefficient(const MatIdx& a) const {
    const auto r = reversed(a);
    auto it = r.find(a);
    return it == r.end() ? GammaLaurent() : it->second;
}

Element Algebra::normal_form(const std::vector<std::pair<GammaLaurent, Word>>& words) const {
    Element out(rows_, cols_, Basis::Plain);
    for (const auto& [coef, w] : words) {
        PlainTerms cur{{MatIdx(rows_, cols_), coef}};
        for (const auto& g : w) {
            if (g.i < 1 || g.i > rows_ || g.j < 1 || g.j > cols_) throw IndexOutOfRange("generator out of range");
            PlainTerms next;
            for (const auto& [c, cc] : cur)
                for (const auto& [d, e] : right_mul(c, g)) accumulate(next, d, cc * e);
            cur = std::move(next);
        }
        for (const auto& [a, c] : cur) out.add_term(a, c);
    }
    return out;
}

Element Algebra::generator(int i, int j, Basis basis) const {
    // D(E_ij) = 1, so Z_ij = Z^{E_ij} = Z(E_ij)
    return Element::monomial(MatIdx::unit(rows_, cols_, i, j), GammaLaurent(1), basis);
}

Element Algebra::one(Basis basis) const { return Element::monomial(MatIdx(rows_, cols_), GammaLaurent(1), basis); }

Element Algebra::to_norm(const Element& x) const {
    check(x);
    if (x.basis() == Basis::Norm) return x;
    Element y(rows_, cols_, Basis::Norm);
    for (const auto& [a, c] : x.terms()) y.add_term(a, c * d_factor(a).inverse());
    return y;
}

Element Algebra::to_plain(const Element& x) const {
    check(x);
    if (x.basis() == Basis::Plain) return x;
    Element y(rows_, cols_, Basis::Plain);
    for (const auto& [a, c] : x.terms()) y.add_term(a, c * d_factor(a));
    return y;
}

Element Algebra::multiply(const Element& x, const Element& y) const {
    const Element px = to_plain(x);
    const Element py = to_plain(y);
    std::map<MatIdx, GammaLaurent> acc;
    for (const auto& [a, ca] : px.terms())
        for (const auto& [b, cb] : py.terms()) {
            const GammaLaurent cab = ca * cb;
            for (const auto& [d, e] : plain_product(a, b)) accumulate(acc, d, cab * e);
        }
    Element out(rows_, cols_, Basis::Plain);
    for (const auto& [a, c] : acc) out.add_term(a, c);
    return convert(out, x.basis());
}

Element Algebra::bar(const Element& x) const {
    const Element px = to_plain(x);
    std::map<MatIdx, GammaLaurent> acc;
    for (const auto& [a, c] : px.terms()) {
        const GammaLaurent bc = bar_conj(c);
        for (const auto& [d, e] : reversed(a)) accumulate(acc, d, bc * e);
    }
    Element out(rows_, cols_, Basis::Plain);
    for (const auto& [a, c] : acc) out.add_term(a, c);
    return convert(out, x.basis());
}

GammaMonomial Algebra::leading_product_monomial(const MatIdx& a, const MatIdx& b) const {
    const Element prod = multiply(Element::monomial(a), Element::monomial(b));
    const GammaLaurent lead = prod.coefficient(a + b);
    auto single = lead.as_single_term();
    if (!single || single->second != 1)
        throw Error("leading coefficient of Z(A)Z(B) is not a monomial: " + lead.to_string());
    return single->first;
}

// ---------------------------------------------------------------------------
// Bi-character twist

bool TwistReport::all_match() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const TwistVerdict& v) { return v.match; });
}

TwistReport twist_check(int n, bool trivialTwist) {
    if (n < 2) throw Error("twist_check requires n >= 2");
    TwistReport report;
    report.n = n;
    report.trivialTwist = trivialTwist;
    const Algebra alg(n);
    const GammaLaurent qsq(GammaMonomial::q(2));

    auto twist = [&](const GenIndex& x, const GenIndex& y) {
        if (trivialTwist) return GammaMonomial{};
        return GammaMonomial::p(x.i, y.i) * GammaMonomial::qp(x.j, y.j);
    };
    auto rhs_text = [](const GammaLaurent& lambda, const GammaLaurent& extra, const GenIndex& g1, const GenIndex& g2,
                       const GenIndex& a, const GenIndex& b) {
        std::string out = "(" + lambda.to_string() + ") Z" + std::to_string(g1.i) + std::to_string(g1.j) + " Z" +
                          std::to_string(g2.i) + std::to_string(g2.j);
        if (!extra.is_zero())
            out += " + (" + extra.to_string() + ") Z" + std::to_string(a.i) + std::to_string(a.j) + " Z" +
                   std::to_string(b.i) + std::to_string(b.j);
        return out;
    };

    for (const Relation& target : alg.relations()) {
        const GenIndex g2 = target.upper;
        const GenIndex g1 = target.lower;
        // Dipper-Donkin relation for the same pair
        GammaLaurent ddLambda(1);
        GammaLaurent ddExtra;
        if (g2.i > g1.i && g2.j > g1.j) {
            ddExtra = qsq - GammaLaurent(1);
        } else if (g2.i > g1.i) {
            ddLambda = qsq;
        }
        // g2 * g1 = tau(g2,g1) g2 g1, and old products rewritten via a b = tau(a,b)^{-1} a * b
        const GammaMonomial t21 = twist(g2, g1);
        const GammaLaurent lambda = ddLambda * (t21 / twist(g1, g2));
        const GammaLaurent extra = ddExtra.is_zero()
                                       ? GammaLaurent()
                                       : ddExtra * (t21 / twist(target.extraLeft, target.extraRight));
        TwistVerdict v;
        v.upper = g2;
        v.lower = g1;
        v.twisted = rhs_text(lambda, extra, g1, g2, target.extraLeft, target.extraRight);
        if (trivialTwist) {
            v.expected = rhs_text(ddLambda, ddExtra, g1, g2, target.extraLeft, target.extraRight);
            v.match = lambda == ddLambda && extra == ddExtra;
        } else {
            v.expected = rhs_text(target.lambda, target.extra, g1, g2, target.extraLeft, target.extraRight);
            v.match = lambda == target.lambda && extra == target.extra;
        }
        report.verdicts.push_back(std::move(v));
    }
    return report;
}

}  // namespace qcanon
