#include "qcanon/expnat.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

const MoveLabel kLabel2x2{1, 1, 2, 2};

ModuleVector<MatIdx> to_vector(const Element& x) {
    if (x.basis() != Basis::Norm) throw Error("local operators act on the normalized basis");
    return {x.terms().begin(), x.terms().end()};
}

Element from_vector(int rows, int cols, const ModuleVector<MatIdx>& v) {
    Element x(rows, cols, Basis::Norm);
    for (const auto& [a, c] : v) x.add_term(a, c);
    return x;
}

GammaLaurent q_pow(int e) { return GammaLaurent(GammaMonomial::q(e)); }

int nilpotency_bound(const Cell& cell, const MoveLabel& l) {
    int bound = 1;
    for (const MatIdx& a : cell.members) bound = std::max(bound, std::min(a(l.i, l.j), a(l.s, l.t)) + 1);
    return bound;
}

}  // namespace

GammaLaurent local_coefficient(int a, int b, LocalKind kind) {
    GammaLaurent c;
    if (a <= 0 || b <= 0) return c;
    for (int s = std::abs(a - b) + 1; s <= a + b - 1; s += 2) c += q_pow(kind == LocalKind::T ? -s : s);
    return c;
}

Element local_apply(const MoveLabel& label, LocalKind kind, const Element& x) {
    if (x.basis() != Basis::Norm) throw Error("local operators act on the normalized basis");
    Element out(x.rows(), x.cols(), Basis::Norm);
    for (const auto& [a, c] : x.terms()) {
        const GammaLaurent k = local_coefficient(a(label.i, label.j), a(label.s, label.t), kind);
        if (!k.is_zero()) out.add_term(apply_move(a, label), c * k);
    }
    return out;
}

LocalOperator<MatIdx> local_operator(const Cell& cell, const MoveLabel& label, int tSign, int tbarSign) {
    return LocalOperator<MatIdx>::from_action(
        cell.members,
        [&](const MatIdx& a) {
            ModuleVector<MatIdx> img;
            const int x = a(label.i, label.j), y = a(label.s, label.t);
            GammaLaurent c = GammaLaurent(tSign) * local_coefficient(x, y, LocalKind::T) +
                             GammaLaurent(tbarSign) * local_coefficient(x, y, LocalKind::TBar);
            if (!c.is_zero()) img.emplace(apply_move(a, label), std::move(c));
            return img;
        },
        nilpotency_bound(cell, label));
}

// ---------------------------------------------------------------------------
// 2x2

BarOperator2x2::BarOperator2x2(const Cell& cell)
    : cell_(cell), t_(local_operator(cell, kLabel2x2, 1, 0)), h_(local_operator(cell, kLabel2x2, -1, 1)) {
    if (cell.rowSums.size() != 2 || cell.colSums.size() != 2) throw Error("bar_operator_2x2 needs a 2x2 cell");
}

Element BarOperator2x2::apply(const LocalOperator<MatIdx>& op, const Element& x, QBase base) const {
    return from_vector(2, 2, q_exp_apply(op, to_vector(x), base, 1));
}

Element BarOperator2x2::bar(const Element& x) const { return apply(h_, x, QBase::QInv); }
Element BarOperator2x2::t_exp(const Element& x) const { return apply(t_, x, QBase::Q); }
Element BarOperator2x2::t_inv_exp(const Element& x) const {
    return from_vector(2, 2, q_exp_apply(t_, to_vector(x), QBase::QInv, -1));
}

BarOperator2x2 bar_operator_2x2(const Cell& cell) { return BarOperator2x2(cell); }

// ---------------------------------------------------------------------------
// Factorization

std::string FactorOrdering::label() const {
    return std::string(upperAscending ? "upper-asc" : "upper-desc") + "/" +
           (lowerAscending ? "lower-asc" : "lower-desc") + "/" +
           (leftmostFirst ? "leftmost-first" : "rightmost-first");
}

std::vector<FactorOrdering> FactorOrdering::all() {
    std::vector<FactorOrdering> out;
    for (bool u : {true, false})
        for (bool l : {true, false})
            for (bool f : {false, true}) out.push_back({u, l, f});
    return out;
}

FactorOrdering frozen_ordering() { return {true, true, false}; }

std::vector<MoveLabel> product_labels(int n, const FactorOrdering& ordering) {
    std::vector<MoveLabel> labels = all_labels(n, n);
    std::stable_sort(labels.begin(), labels.end(), [&](const MoveLabel& x, const MoveLabel& y) {
        const auto ux = std::make_pair(x.i, x.j), uy = std::make_pair(y.i, y.j);
        if (ux != uy) return ordering.upperAscending ? ux < uy : uy < ux;
        const auto lx = std::make_pair(x.s, x.t), ly = std::make_pair(y.s, y.t);
        return ordering.lowerAscending ? lx < ly : ly < lx;
    });
    return labels;
}

Element bar_via_factorization(const Element& x, const FactorOrdering& ordering) {
    if (x.rows() != x.cols()) throw Error("factorization is stated for square matrices");
    std::vector<MoveLabel> labels = product_labels(x.rows(), ordering);
    if (!ordering.leftmostFirst) std::reverse(labels.begin(), labels.end());
    // group by cell, build each local exponential once per cell
    std::map<std::pair<std::vector<int>, std::vector<int>>, ModuleVector<MatIdx>> byCell;
    for (const auto& [a, c] : to_vector(x)) byCell[{a.row_sums(), a.col_sums()}].emplace(a, c);
    Element out(x.rows(), x.cols(), Basis::Norm);
    for (auto& [margins, v] : byCell) {
        const Cell cell = enumerate_cell(margins.first, margins.second);
        for (const MoveLabel& l : labels) v = q_exp_apply(local_operator(cell, l, -1, 1), v, QBase::QInv, 1);
        out += from_vector(x.rows(), x.cols(), v);
    }
    return out;
}

std::vector<OrderingVerdict> ordering_experiment(const Algebra& alg, const Cell& cell) {
    std::vector<OrderingVerdict> out;
    for (const FactorOrdering& o : FactorOrdering::all()) {
        OrderingVerdict v{o, true, {}};
        for (const MatIdx& a : cell.members) {
            const Element z = Element::monomial(a);
            if (bar_via_factorization(z, o) != alg.bar(z)) {
                v.agrees = false;
                v.failures.push_back(a);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// tau, mu and the recursions

TauMu tau_mu(const MatIdx& c, int i) {
    if (c.rows() != 2 || c.cols() != 2) throw Error("tau_mu is defined for 2x2 matrices");
    if (i < 0) throw Error("tau_mu: negative iteration count");
    Element t = Element::monomial(c), m = Element::monomial(c);
    for (int k = 0; k < i; ++k) {
        t = local_apply(kLabel2x2, LocalKind::T, t);
        m = local_apply(kLabel2x2, LocalKind::TBar, m) - local_apply(kLabel2x2, LocalKind::T, m);
    }
    TauMu out{c, i, {}, {}};
    // the only possible support is C - iI + iE
    for (const auto& [a, coef] : t.terms()) out.tau = coef;
    for (const auto& [a, coef] : m.terms()) out.mu = coef;
    return out;
}

namespace {

GammaLaurent over_factorial(const GammaLaurent& x, int r) { return divide_exact(x, q_factorial(r, QBase::QInv)); }

IdentityCheck checked(std::string name, GammaLaurent (*lhs)(const MatIdx&, int),
                      GammaLaurent (*rhs)(const MatIdx&, int), const MatIdx& a, int r) {
    IdentityCheck c{std::move(name), false, "", ""};
    try {
        const GammaLaurent l = lhs(a, r), rr = rhs(a, r);
        c.lhs = l.to_string();
        c.rhs = rr.to_string();
        c.holds = l == rr;
    } catch (const NotDivisible& e) {
        c.lhs = e.what();
    }
    return c;
}

int trace(const MatIdx& a) { return a(1, 1) + a(2, 2); }

}  // namespace

IdentityCheck tau_recursion(const MatIdx& a, int r) {
    if (r < 1) throw Error("tau_recursion: r >= 1");
    return checked(
        "tau recursion at A=" + a.to_string() + ", r=" + std::to_string(r),
        [](const MatIdx& m, int k) { return over_factorial(tau_mu(m + MatIdx::identity(2), k).tau, k); },
        [](const MatIdx& m, int k) {
            return over_factorial(tau_mu(m, k).tau, k) +
                   q_pow(-(trace(m) - 2 * (k - 1)) - 1) * over_factorial(tau_mu(m, k - 1).tau, k - 1);
        },
        a, r);
}

IdentityCheck mu_recursion(const MatIdx& a, int s) {
    if (s < 1) throw Error("mu_recursion: s >= 1");
    return checked(
        "mu recursion at A=" + a.to_string() + ", s=" + std::to_string(s),
        [](const MatIdx& m, int k) { return over_factorial(tau_mu(m + MatIdx::identity(2), k).mu, k); },
        [](const MatIdx& m, int k) {
            const GammaLaurent prev = over_factorial(tau_mu(m, k - 1).mu, k - 1);
            return over_factorial(tau_mu(m, k).mu, k) - q_pow(-(trace(m) - 2 * (k - 1)) - 1) * prev +
                   q_pow(trace(m) + 1) * prev;
        },
        a, s);
}

IdentityCheck difference_closed_form(const MatIdx& a) {
    IdentityCheck c{"(tbar - t) closed form at A=" + a.to_string(), false, "", ""};
    const Element z = Element::monomial(a);
    const Element d = local_apply(kLabel2x2, LocalKind::TBar, z) - local_apply(kLabel2x2, LocalKind::T, z);
    const int x = a(1, 1), y = a(2, 2);
    GammaLaurent rhs;
    if (x > 0 && y > 0) rhs = divide_exact((q_pow(x) - q_pow(-x)) * (q_pow(y) - q_pow(-y)), q_pow(1) - q_pow(-1));
    const GammaLaurent lhs = d.is_zero() ? GammaLaurent() : d.terms().begin()->second;
    c.lhs = lhs.to_string();
    c.rhs = rhs.to_string();
    c.holds = lhs == rhs && (d.is_zero() || d.terms().begin()->first == apply_move(a, kLabel2x2));
    return c;
}

}  // namespace qcanon
