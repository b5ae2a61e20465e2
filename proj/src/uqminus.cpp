#include "qcanon/uqminus.hpp"

#include <algorithm>
#include <cstdlib>

#include "qcanon/canon.hpp"
#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

using Poly = QRat::Poly;

Poly poly_of(std::vector<BigInt> c) {
    Poly p(c.begin(), c.end());
    p.normalize();
    return p;
}

bool poly_is_zero(const Poly& p) { return p.size() == 0; }

int low_zeros(const Poly& p) {
    int k = 0;
    while (k < static_cast<int>(p.size()) && p[k] == 0) ++k;
    return k;
}

Poly drop_low(const Poly& p, int k) {
    std::vector<BigInt> c(p.data().begin() + k, p.data().end());
    return poly_of(std::move(c));
}

Poly times_q(const Poly& p, int k) {
    if (k == 0) return p;
    std::vector<BigInt> c(static_cast<std::size_t>(k), BigInt(0));
    c.insert(c.end(), p.data().begin(), p.data().end());
    return poly_of(std::move(c));
}

Poly reversed(const Poly& p) {
    std::vector<BigInt> c(p.data().rbegin(), p.data().rend());
    return poly_of(std::move(c));
}

bool is_one(const Poly& p) { return p.size() == 1 && p[0] == 1; }

BigInt int_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BigInt content(const Poly& p) {
    BigInt g = 0;
    for (const BigInt& c : p.data()) g = int_gcd(g, c);
    return g;
}

Poly scaled_down(const Poly& p, const BigInt& d) {
    std::vector<BigInt> c;
    for (const BigInt& x : p.data()) c.push_back(x / d);
    return poly_of(std::move(c));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

std::uint64_t poly_mod(const Poly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t k = f.size(); k-- > 0;) {
        BigInt c = f[k] % BigInt(p);
        if (c < 0) c += p;
        acc = (mulmod(acc, x, p) + static_cast<std::uint64_t>(c)) % p;
    }
    return acc;
}

// Laurent rendering of q^shift * f.
std::string laurent_string(const Poly& f, int shift) {
    std::string out;
    for (std::size_t k = f.size(); k-- > 0;) {
        const BigInt& c = f[k];
        if (c == 0) continue;
        const int e = static_cast<int>(k) + shift;
        const BigInt a = c < 0 ? BigInt(-c) : c;
        std::string mono = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
        std::string body = mono.empty() ? a.str() : (a == 1 ? mono : a.str() + "*" + mono);
        if (out.empty())
            out = (c < 0 ? "-" : "") + body;
        else
            out += (c < 0 ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

int cartan(int a, int b) {
    if (a == b) return 2;
    return std::abs(a - b) == 1 ? -1 : 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// QRat

QRat::QRat(long c) : num_(poly_of({BigInt(c)})) { normalize(); }

QRat QRat::q(int e) {
    QRat x(1);
    x.shift_ = e;
    return x;
}

QRat QRat::laurent(const std::map<int, BigInt>& coeffs) {
    QRat x;
    if (coeffs.empty()) return x;
    const int lo = coeffs.begin()->first, hi = coeffs.rbegin()->first;
    std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1), BigInt(0));
    for (const auto& [e, v] : coeffs) c[e - lo] = v;
    x.num_ = poly_of(std::move(c));
    x.shift_ = lo;
    x.normalize();
    return x;
}

void QRat::normalize() {
    num_.normalize();
    den_.normalize();
    if (poly_is_zero(den_)) throw Error("QRat: zero denominator");
    if (poly_is_zero(num_)) {
        shift_ = 0;
        den_ = poly_of({BigInt(1)});
        return;
    }
    if (int k = low_zeros(num_)) {
        num_ = drop_low(num_, k);
        shift_ += k;
    }
    if (int k = low_zeros(den_)) {
        den_ = drop_low(den_, k);
        shift_ -= k;
    }
    if (!is_one(den_)) {
        if (den_.size() > 1) {
            const Poly g = boost::math::tools::gcd(num_, den_);
            if (g.size() > 1) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        const BigInt c = int_gcd(content(num_), content(den_));
        if (c > 1) {
            num_ = scaled_down(num_, c);
            den_ = scaled_down(den_, c);
        }
        if (den_[den_.size() - 1] < 0) {
            num_ = scaled_down(num_, BigInt(-1));
            den_ = scaled_down(den_, BigInt(-1));
        }
    }
}

bool QRat::operator==(const QRat& o) const {
    return shift_ == o.shift_ && num_.data() == o.num_.data() && den_.data() == o.den_.data();
}

QRat QRat::operator-() const {
    QRat x = *this;
    x.num_ = scaled_down(num_, BigInt(-1));
    return x;
}

QRat& QRat::operator+=(const QRat& y) {
    if (y.is_zero()) return *this;
    if (is_zero()) return *this = y;
    const int lo = std::min(shift_, y.shift_);
    const Poly a = times_q(num_, shift_ - lo), b = times_q(y.num_, y.shift_ - lo);
    if (den_.data() == y.den_.data()) {
        num_ = a + b;
    } else {
        num_ = a * y.den_ + b * den_;
        den_ = den_ * y.den_;
    }
    shift_ = lo;
    normalize();
    return *this;
}

QRat operator*(const QRat& x, const QRat& y) {
    if (x.is_zero() || y.is_zero()) return QRat();
    QRat z;
    z.shift_ = x.shift_ + y.shift_;
    z.num_ = x.num_ * y.num_;
    z.den_ = x.den_ * y.den_;
    if (!is_one(z.den_)) z.normalize();
    return z;
}

QRat operator/(const QRat& x, const QRat& y) {
    if (y.is_zero()) throw Error("QRat: division by zero");
    if (x.is_zero()) return QRat();
    QRat z;
    z.shift_ = x.shift_ - y.shift_;
    z.num_ = x.num_ * y.den_;
    z.den_ = x.den_ * y.num_;
    z.normalize();
    return z;
}

QRat QRat::bar() const {
    if (is_zero()) return *this;
    QRat z;
    z.shift_ = -shift_ - static_cast<int>(num_.degree()) + static_cast<int>(den_.degree());
    z.num_ = reversed(num_);
    z.den_ = reversed(den_);
    z.normalize();
    return z;
}

std::uint64_t QRat::eval_mod(std::uint64_t x, std::uint64_t p) const {
    const std::uint64_t d = poly_mod(den_, x, p);
    if (d == 0) throw Error("QRat: denominator vanishes at the evaluation point");
    std::uint64_t v = mulmod(poly_mod(num_, x, p), powmod(d, p - 2, p), p);
    const std::uint64_t s = powmod(shift_ >= 0 ? x : powmod(x, p - 2, p), static_cast<std::uint64_t>(std::abs(shift_)), p);
    return mulmod(v, s, p);
}

std::string QRat::to_string() const {
    std::string num = laurent_string(num_, shift_);
    if (is_one(den_)) return num;
    auto wrap = [](const std::string& s) { return s.find(' ') == std::string::npos ? s : "(" + s + ")"; };
    return wrap(num) + "/" + wrap(laurent_string(den_, 0));
}

// ---------------------------------------------------------------------------
// FreeElement

FreeElement FreeElement::word(int rank, FreeWord w, const QRat& c) {
    for (int a : w)
        if (a < 1 || a > rank) throw IndexOutOfRange("F_" + std::to_string(a) + " outside 1.." + std::to_string(rank));
    FreeElement x(rank);
    x.add_term(w, c);
    return x;
}

QRat FreeElement::coefficient(const FreeWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? QRat() : it->second;
}

void FreeElement::add_term(const FreeWord& w, const QRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FreeElement& FreeElement::operator+=(const FreeElement& y) {
    if (rank_ == 0) rank_ = y.rank_;
    for (const auto& [w, c] : y.terms_) add_term(w, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& y) {
    if (rank_ == 0) rank_ = y.rank_;
    for (const auto& [w, c] : y.terms_) add_term(w, -c);
    return *this;
}

FreeElement operator*(const QRat& c, const FreeElement& x) {
    FreeElement out(x.rank_);
    if (c.is_zero()) return out;
    for (const auto& [w, d] : x.terms_) out.terms_.emplace(w, c * d);
    return out;
}

FreeElement operator*(const FreeElement& x, const FreeElement& y) {
    FreeElement out(std::max(x.rank_, y.rank_));
    for (const auto& [u, c] : x.terms_)
        for (const auto& [w, d] : y.terms_) {
            FreeWord uw = u;
            uw.insert(uw.end(), w.begin(), w.end());
            out.add_term(uw, c * d);
        }
    return out;
}

std::map<std::vector<int>, FreeElement> FreeElement::by_weight() const {
    std::map<std::vector<int>, FreeElement> out;
    for (const auto& [w, c] : terms_) {
        auto [it, inserted] = out.try_emplace(weight_of(w, rank_), rank_);
        it->second.add_term(w, c);
    }
    return out;
}

std::string FreeElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string word;
        for (int a : it->first) word += "F" + std::to_string(a);
        if (word.empty()) word = "1";
        const std::string c = it->second.to_string();
        std::string term;
        if (c == "1")
            term = word;
        else if (c == "-1")
            term = "-" + word;
        else
            term = (c.find_first_of(" /") == std::string::npos ? c : "(" + c + ")") + " " + word;
        if (first)
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// weights, r, Phi

Weight weight_of(const FreeWord& w, int rank) {
    Weight out(static_cast<std::size_t>(rank), 0);
    for (int a : w) ++out.at(static_cast<std::size_t>(a - 1));
    return out;
}

int weight_form(const Weight& x, const Weight& y) {
    if (x.size() != y.size()) throw Error("weight_form: lengths differ");
    int s = 0;
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < y.size(); ++b)
            if (x[a] && y[b]) s += x[a] * y[b] * cartan(static_cast<int>(a), static_cast<int>(b));
    return s;
}

Tensor r_map(const FreeElement& x) {
    Tensor out;
    for (const auto& [w, c] : x.terms()) {
        const int k = static_cast<int>(w.size());
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            // bit set: the letter goes to the left factor
            FreeWord left, right;
            int twist = 0;
            for (int p = 0; p < k; ++p) {
                if (mask & (1u << p)) {
                    left.push_back(w[p]);
                } else {
                    right.push_back(w[p]);
                    for (int t = p + 1; t < k; ++t)
                        if (mask & (1u << t)) twist += 2 * cartan(w[p], w[t]);
                }
            }
            QRat& slot = out[{left, right}];
            slot += QRat::q(twist) * c;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

FreeElement q_commutator(const FreeElement& x, const FreeElement& y) {
    const auto wx = x.by_weight(), wy = y.by_weight();
    if (wx.size() != 1 || wy.size() != 1) throw Error("q_commutator needs homogeneous nonzero arguments");
    const int e = -2 * weight_form(wx.begin()->first, wy.begin()->first);
    return x * y - QRat::q(e) * (y * x);
}

FreeElement phi(const FreeElement& x) {
    FreeElement out(x.rank());
    for (const auto& [w, c] : x.terms()) out.add_term(FreeWord(w.rbegin(), w.rend()), c.bar());
    return out;
}

bool root_less(const Root& a, const Root& b) { return a.j < b.j || (a.j == b.j && a.i < b.i); }

// ---------------------------------------------------------------------------
// UqMinus

struct UqMinus::Memo {
    std::mutex mutex;
    std::map<std::pair<FreeWord, FreeWord>, QRat> forms;
    std::map<Weight, std::vector<FreeWord>> testWords;
    std::map<Root, FreeElement> roots[3];
};

UqMinus::UqMinus(int rank) : rank_(rank), memo_(std::make_shared<Memo>()) {
    if (rank < 1) throw Error("UqMinus: rank >= 1");
}

QRat UqMinus::word_form(const FreeWord& x, const FreeWord& y) const {
    if (x.size() != y.size()) return QRat();
    if (y.empty()) return QRat(1);
    if (weight_of(x, rank_) != weight_of(y, rank_)) return QRat();
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->forms.find({x, y});
        if (it != memo_->forms.end()) return it->second;
    }
    const int j = y.back();
    const FreeWord head(y.begin(), y.end() - 1);
    QRat value;
    for (std::size_t p = 0; p < x.size(); ++p) {
        if (x[p] != j) continue;
        int e = 0;
        for (std::size_t k = p + 1; k < x.size(); ++k) e += 2 * cartan(j, x[k]);
        FreeWord rest = x;
        rest.erase(rest.begin() + static_cast<long>(p));
        value += QRat::q(e) * word_form(rest, head);
    }
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->forms.emplace(std::make_pair(x, y), value);
    return value;
}

QRat UqMinus::form(const FreeElement& x, const FreeElement& y) const {
    QRat s;
    for (const auto& [u, c] : x.terms())
        for (const auto& [w, d] : y.terms()) {
            const QRat f = word_form(u, w);
            if (!f.is_zero()) s += c * d * f;
        }
    return s;
}

std::vector<Root> UqMinus::roots() const {
    std::vector<Root> out;
    for (int j = 1; j <= rank_; ++j)
        for (int i = 1; i <= j; ++i) out.push_back({i, j});
    return out;  // already in root order
}

int UqMinus::degree(const PBWIndex& m) {
    int d = 0;
    for (const auto& [r, k] : m) d += k * (r.j - r.i + 1);
    return d;
}

Weight UqMinus::weight(const PBWIndex& m) const {
    Weight w(static_cast<std::size_t>(rank_), 0);
    for (const auto& [r, k] : m)
        for (int a = r.i; a <= r.j; ++a) w.at(static_cast<std::size_t>(a - 1)) += k;
    return w;
}

std::vector<PBWIndex> UqMinus::pbw_indices(const Weight& w) const {
    const std::vector<Root> rs = roots();
    std::vector<PBWIndex> out;
    PBWIndex cur;
    Weight left = w;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == rs.size()) {
            if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) out.push_back(cur);
            return;
        }
        const Root r = rs[k];
        int most = 1 << 30;
        for (int a = r.i; a <= r.j; ++a) most = std::min(most, left[a - 1]);
        for (int m = 0; m <= most; ++m) {
            for (int a = r.i; a <= r.j; ++a) left[a - 1] -= m;
            if (m) cur[r] = m;
            self(self, k + 1);
            cur.erase(r);
            for (int a = r.i; a <= r.j; ++a) left[a - 1] += m;
        }
    };
    rec(rec, 0);
    return out;
}

const std::vector<FreeWord>& UqMinus::test_words(const Weight& w) const {
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->testWords.find(w);
        if (it != memo_->testWords.end()) return it->second;
    }
    const std::size_t dim = pbw_indices(w).size();
    FreeWord sorted;
    for (int a = 1; a <= rank_; ++a) sorted.insert(sorted.end(), static_cast<std::size_t>(w.at(a - 1)), a);
    std::vector<FreeWord> all;
    do all.push_back(sorted);
    while (std::next_permutation(sorted.begin(), sorted.end()));

    // Rows (w_a, .) mod a prime at a fixed point; independent rows prove
    // independence over Q(q), and dim of them span the weight space.
    constexpr std::uint64_t p = (1ull << 61) - 1;
    constexpr std::uint64_t x = 1000003;
    std::vector<FreeWord> chosen;
    std::vector<std::vector<std::uint64_t>> basis;  // echelon rows
    std::vector<std::size_t> pivots;
    for (const FreeWord& cand : all) {
        if (chosen.size() == dim) break;
        std::vector<std::uint64_t> row;
        row.reserve(all.size());
        for (const FreeWord& col : all) row.push_back(word_form(cand, col).eval_mod(x, p));
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const std::uint64_t f = row[pivots[b]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] + p - mulmod(f, basis[b][c], p)) % p;
        }
        auto piv = std::find_if(row.begin(), row.end(), [](std::uint64_t v) { return v != 0; });
        if (piv == row.end()) continue;
        const std::uint64_t inv = powmod(*piv, p - 2, p);
        for (auto& v : row) v = mulmod(v, inv, p);
        pivots.push_back(static_cast<std::size_t>(piv - row.begin()));
        basis.push_back(std::move(row));
        chosen.push_back(cand);
    }
    if (chosen.size() != dim) throw Error("test_words: weight space not spanned");
    std::lock_guard<std::mutex> lock(memo_->mutex);
    return memo_->testWords.emplace(w, std::move(chosen)).first->second;
}

bool UqMinus::is_radical_zero(const FreeElement& x) const {
    for (const auto& [w, part] : x.by_weight()) {
        if (std::all_of(w.begin(), w.end(), [](int a) { return a == 0; })) {
            if (!part.is_zero()) return false;
            continue;
        }
        for (const FreeWord& t : test_words(w))
            if (!form(part, FreeElement::word(rank_, t)).is_zero()) return false;
    }
    return true;
}

FreeElement UqMinus::root_vector(const Root& r, RootKind kind) const {
    if (r.i < 1 || r.j > rank_ || r.i > r.j) throw IndexOutOfRange("root (" + std::to_string(r.i) + "," +
                                                                  std::to_string(r.j) + ") outside the root system");
    const int slot = static_cast<int>(kind);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->roots[slot].find(r);
        if (it != memo_->roots[slot].end()) return it->second;
    }
    const FreeElement fj = FreeElement::generator(rank_, r.j);
    FreeElement out;
    if (r.i == r.j) {
        out = fj;
    } else {
        switch (kind) {
            case RootKind::Plain:
                out = q_commutator(fj, root_vector({r.i, r.j - 1}, RootKind::Plain));
                break;
            case RootKind::DualScaled: {
                QRat scale(1);
                for (int k = 0; k < r.j - r.i; ++k) scale = scale / (QRat(1) - QRat::q(4));
                out = scale * root_vector(r, RootKind::Plain);
                break;
            }
            case RootKind::DualRecursive: {
                const FreeElement prev = root_vector({r.i, r.j - 1}, RootKind::DualRecursive);
                const QRat d = QRat::q(2) - QRat::q(-2);
                out = (QRat::q(1) / d) * (fj * prev) - (QRat::q(-1) / d) * (prev * fj);
                break;
            }
        }
    }
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->roots[slot].emplace(r, out);
    return out;
}

namespace {

QRat divided_factorial(int k, DividedPower dp) {
    QRat f(1);
    for (int t = 1; t <= k; ++t) {
        QRat bracket;
        if (dp == DividedPower::Unbalanced)
            for (int s = 0; s < t; ++s) bracket += QRat::q(4 * s);
        else
            for (int s = 0; s < t; ++s) bracket += QRat::q(2 * (t - 1) - 4 * s);
        f = f * bracket;
    }
    return f;
}

std::vector<std::pair<Root, int>> ordered(const PBWIndex& m, FactorOrder order) {
    std::vector<std::pair<Root, int>> out(m.begin(), m.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return root_less(a.first, b.first); });
    if (order == FactorOrder::Descending) std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

FreeElement UqMinus::pbw(const PBWIndex& m, DividedPower dp, FactorOrder order) const {
    FreeElement out = FreeElement::one(rank_);
    for (const auto& [r, k] : ordered(m, order)) {
        if (k == 0) continue;
        const FreeElement f = root_vector(r, RootKind::Plain);
        FreeElement power = FreeElement::one(rank_);
        for (int t = 0; t < k; ++t) power = power * f;
        out = out * ((QRat(1) / divided_factorial(k, dp)) * power);
    }
    return out;
}

FreeElement UqMinus::pbw_dual(const PBWIndex& m, bool normalized, FactorOrder order) const {
    FreeElement out = FreeElement::one(rank_);
    for (const auto& [r, k] : ordered(m, order)) {
        if (k == 0) continue;
        const FreeElement f = root_vector(r, RootKind::DualScaled);
        FreeElement power = FreeElement::one(rank_);
        for (int t = 0; t < k; ++t) power = power * f;
        out = out * (QRat::q(k * (k - 1) / 2) * power);
    }
    if (normalized) {
        const Weight w = weight(m);
        out = QRat::q(weight_form(w, w) / 2 - degree(m)) * out;
    }
    return out;
}

QRat UqMinus::pbw_diagonal_formula(const PBWIndex& m) {
    QRat out(1);
    for (int t = 0; t < degree(m); ++t) out = out * (QRat(1) - QRat::q(4));
    for (const auto& [r, k] : m)
        for (int t = 1; t <= k; ++t) out = out / (QRat(1) - QRat::q(4 * t));
    return out;
}

// ---------------------------------------------------------------------------
// embedding

Root embedded_root(int i, int j, int n) {
    if (i < 1 || i > n || j < 1 || j > n) throw IndexOutOfRange("Z_" + std::to_string(i) + std::to_string(j));
    return {i, j + n - 1};
}

namespace {

QRat map_coefficient(const GammaLaurent& c, int vExponent) {
    std::map<int, BigInt> coeffs;
    for (const auto& [m, a] : c) {
        if (!m.params().empty()) throw Error("embed: coefficient " + c.to_string() + " has parameters");
        coeffs[vExponent * m.v_exp()] += a;
    }
    return QRat::laurent(coeffs);
}

}  // namespace

FreeElement embed(const Element& x, const Algebra& alg, const UqMinus& u, const EmbeddingOptions& opt) {
    const int n = alg.rows();
    if (alg.cols() != n || x.rows() != n || x.cols() != n) throw IndexOutOfRange("embed needs square matrices");
    if (u.rank() != 2 * n - 1) throw Error("embed needs type A_" + std::to_string(2 * n - 1));
    std::map<GenIndex, FreeElement> images;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) images[{i, j}] = u.root_vector(embedded_root(i, j, n), opt.kind);
    FreeElement out(u.rank());
    const Element plain = alg.to_plain(x);
    for (const auto& [a, c] : plain.terms()) {
        FreeElement term = FreeElement::one(u.rank());
        for (const GenIndex& g : sorted_word(a)) term = term * images.at(g);
        out += map_coefficient(c, opt.vExponent) * term;
    }
    return out;
}

bool EmbeddingReport::all_hold() const {
    auto ok = [](const std::vector<EmbeddingCheck>& v) {
        return std::all_of(v.begin(), v.end(), [](const EmbeddingCheck& c) { return c.holds; });
    };
    return ok(relations) && ok(phiFixed);
}

EmbeddingReport verify_embedding(int n, int maxMass, const EmbeddingOptions& opt) {
    const Algebra alg(n, Specialization::official());
    const UqMinus u(2 * n - 1);
    EmbeddingReport report{n, opt, {}, {}};
    auto gen = [&](const GenIndex& g) {
        return embed(Element::monomial(MatIdx::unit(n, n, g.i, g.j), GammaLaurent(1), Basis::Plain), alg, u, opt);
    };
    auto name = [](const GenIndex& g) { return "Z" + std::to_string(g.i) + std::to_string(g.j); };
    for (const Relation& r : alg.relations()) {
        FreeElement diff = gen(r.upper) * gen(r.lower) - map_coefficient(r.lambda, opt.vExponent) * (gen(r.lower) * gen(r.upper));
        std::string label = name(r.upper) + " " + name(r.lower) + " = (" + r.lambda.to_string() + ") " +
                            name(r.lower) + " " + name(r.upper);
        if (!r.extra.is_zero()) {
            diff -= map_coefficient(r.extra, opt.vExponent) * (gen(r.extraLeft) * gen(r.extraRight));
            label += " + (" + r.extra.to_string() + ") " + name(r.extraLeft) + " " + name(r.extraRight);
        }
        report.relations.push_back({label, u.is_radical_zero(diff)});
    }
    TableStore store(alg);
    for (const Cell& cell : cells_up_to_mass(n, n, maxMass))
        for (const MatIdx& a : cell.members) {
            const FreeElement e = embed(store.b(a), alg, u, opt);
            report.phiFixed.push_back({"Phi fixes embed(b(" + a.to_string() + "))", u.equal_mod_radical(phi(e), e)});
        }
    return report;
}

}  // namespace qcanon
