#include "qcanon/minors.hpp"

#include <algorithm>

#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

GammaLaurent spec_of(const Algebra& alg, const GammaMonomial& m) { return GammaLaurent(alg.spec().apply(m)); }

void require_2x2(const Algebra& alg, const char* what) {
    if (alg.rows() != 2 || alg.cols() != 2) throw Error(std::string(what) + " needs the 2x2 algebra");
}

IdentityCheck compare(std::string name, const Element& lhs, const Element& rhs) {
    return {std::move(name), lhs == rhs, lhs.to_string(), rhs.to_string()};
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
    return out;
}

}  // namespace

void MinorSpec::validate(int n) const {
    if (rows.empty() || rows.size() != cols.size()) throw Error("minor needs |I| = |J| >= 1");
    for (const auto* v : {&rows, &cols}) {
        if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end())
            throw Error("minor indices must be strictly increasing");
        if (v->front() < 1 || v->back() > n)
            throw IndexOutOfRange("minor index outside 1.." + std::to_string(n));
    }
}

MatIdx MinorSpec::matrix(int n) const {
    validate(n);
    MatIdx m(n, n);
    for (std::size_t k = 0; k < rows.size(); ++k) m.set(rows[k], cols[k], 1);
    return m;
}

std::string MinorSpec::to_string() const { return "rows " + join(rows) + " cols " + join(cols); }

Element det_q(const Algebra& alg) {
    require_2x2(alg, "det_q");
    const Element z11 = alg.generator(1, 1), z12 = alg.generator(1, 2);
    const Element z21 = alg.generator(2, 1), z22 = alg.generator(2, 2);
    return alg.multiply(z11, z22) - spec_of(alg, GammaMonomial::qp(2, 1, -2)) * alg.multiply(z12, z21);
}

Element delta2(const Algebra& alg) {
    const GammaMonomial pq = GammaMonomial::p(2, 1) * GammaMonomial::qp(2, 1);
    return alg.to_norm(spec_of(alg, pq) * det_q(alg));
}

GammaMonomial f_factor(const MatIdx& a) {
    if (a.rows() != 2 || a.cols() != 2) throw Error("f_factor needs a 2x2 matrix");
    const int r = a(2, 1) + a(2, 2) - a(1, 1) - a(1, 2);
    const int c = a(1, 2) + a(2, 2) - a(1, 1) - a(2, 1);
    return GammaMonomial::q(a(2, 1) - a(1, 2)) * GammaMonomial::p(2, 1, r) * GammaMonomial::qp(2, 1, c);
}

Element quantum_minor(const MinorSpec& spec, TableStore& store) {
    const Algebra& alg = store.algebra();
    if (alg.rows() != alg.cols()) throw Error("quantum minors need a square algebra");
    return store.b(spec.matrix(alg.rows()));
}

bool DeltaReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

DeltaReport delta_compatibility(const MatIdx& a, TableStore& store) {
    const Algebra& alg = store.algebra();
    require_2x2(alg, "delta_compatibility");
    if (a.rows() != 2 || a.cols() != 2) throw Error("delta_compatibility needs a 2x2 matrix");
    DeltaReport report{a, {}};
    const std::string at = " at A=" + a.to_string();
    const Element delta = delta2(alg);
    const GammaLaurent f = spec_of(alg, f_factor(a));
    const GammaLaurent fInv = spec_of(alg, f_factor(a).inverse());
    const MatIdx plusI = a + MatIdx::identity(2), plusE = a + MatIdx::anti2();

    const Element za = Element::monomial(a);
    report.checks.push_back(compare(
        "Z(A) Delta = f_A (Z(A+I) - q^(-tr A - 1) Z(A+E))" + at, alg.multiply(za, delta),
        f * (Element::monomial(plusI) -
             Element::monomial(plusE, GammaLaurent(GammaMonomial::q(-(a(1, 1) + a(2, 2)) - 1))))));

    const Element zaPlain = Element::monomial(a, GammaLaurent(1), Basis::Plain);
    report.checks.push_back(compare("Z^A Delta = f_A^2 Delta Z^A" + at, alg.to_norm(alg.multiply(zaPlain, delta)),
                                    alg.to_norm(f * f * alg.multiply(delta, zaPlain))));

    report.checks.push_back(
        compare("b(A) f_A^-1 Delta = b(A+I)" + at, alg.multiply(store.b(a), fInv * delta), store.b(plusI)));

    report.checks.push_back(compare("bar(Delta) = Delta", alg.bar(delta), delta));

    const Element det = det_q(alg);
    const GammaLaurent diag = spec_of(alg, GammaMonomial::p(2, 1, 2) * GammaMonomial::qp(2, 1, 2));
    const GammaLaurent anti =
        spec_of(alg, GammaMonomial::q(2) * GammaMonomial::p(2, 1, 2) * GammaMonomial::qp(2, 1, -2));
    const Element z11 = alg.generator(1, 1), z12 = alg.generator(1, 2);
    const Element z21 = alg.generator(2, 1), z22 = alg.generator(2, 2);
    report.checks.push_back(compare("det_q Z11 = p21^2 q21^2 Z11 det_q", alg.multiply(det, z11),
                                    diag * alg.multiply(z11, det)));
    report.checks.push_back(compare("Z22 det_q = p21^2 q21^2 det_q Z22", alg.multiply(z22, det),
                                    diag * alg.multiply(det, z22)));
    report.checks.push_back(compare("det_q Z12 = q^2 p21^2 q21^-2 Z12 det_q", alg.multiply(det, z12),
                                    anti * alg.multiply(z12, det)));
    report.checks.push_back(compare("Z21 det_q = q^2 p21^2 q21^-2 det_q Z21", alg.multiply(z21, det),
                                    anti * alg.multiply(det, z21)));
    return report;
}

}  // namespace qcanon
