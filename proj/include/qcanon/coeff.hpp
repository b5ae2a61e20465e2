#pragma once

// Exact arithmetic in the group ring Z[Gamma], Gamma the free abelian group on
// v (v^2 = q), the row parameters p_ij and the column parameters q_ij.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace qcanon {

using BigInt = boost::multiprecision::cpp_int;

enum class ParamKind : std::uint8_t { P = 0, Q = 1 };

/// Index pair of a deformation parameter, always stored with i < j.
struct ParamIndex {
    int i = 0;
    int j = 0;
    auto operator<=>(const ParamIndex&) const = default;
};

/// Variable order: all p's before all q's, each block lexicographic in (i,j).
struct ParamKey {
    ParamKind kind = ParamKind::P;
    ParamIndex index;
    auto operator<=>(const ParamKey&) const = default;
};

class GammaMonomial {
public:
    using ParamExp = std::pair<ParamKey, int>;

    GammaMonomial() = default;

    static GammaMonomial v(int e);
    /// q^e, i.e. v^{2e}.
    static GammaMonomial q(int e) { return v(2 * e); }
    /// p_ij^e for any i != j (p_ji = p_ij^{-1}); p_ii = 1.
    static GammaMonomial p(int i, int j, int e = 1);
    /// The column parameter q_ij^e, with the same index conventions as p().
    static GammaMonomial qp(int i, int j, int e = 1);
    static GammaMonomial param(ParamKind kind, int i, int j, int e = 1);
    /// Builds from raw data; zero exponents are dropped, keys are merged.
    static GammaMonomial from_parts(int vExp, std::vector<ParamExp> params);

    int v_exp() const { return v_; }
    int exponent(const ParamKey& key) const;
    const std::vector<ParamExp>& params() const { return params_; }

    bool is_one() const { return v_ == 0 && params_.empty(); }
    /// True iff the monomial is a power of q (even v-exponent, no parameters).
    bool is_pure_q() const { return params_.empty() && v_ % 2 == 0; }
    /// Membership in Gamma_+: the first nonzero exponent (v, p's, q's) is negative.
    bool is_positive() const;

    GammaMonomial inverse() const;
    GammaMonomial pow(int e) const;
    /// Monomial square root, if every exponent is even.
    std::optional<GammaMonomial> sqrt() const;

    friend GammaMonomial operator*(const GammaMonomial& a, const GammaMonomial& b);
    friend GammaMonomial operator/(const GammaMonomial& a, const GammaMonomial& b) {
        return a * b.inverse();
    }
    GammaMonomial& operator*=(const GammaMonomial& b) { return *this = *this * b; }

    /// Storage order (lexicographic on the exponent data); not the group order.
    auto operator<=>(const GammaMonomial&) const = default;

    std::string to_string() const;
    std::string to_latex() const;

private:
    int v_ = 0;
    std::vector<ParamExp> params_;  // sorted by key, no zero exponents
};

/// The compatible total order of Gamma: a < b iff b/a lies in Gamma_+.
bool group_less(const GammaMonomial& a, const GammaMonomial& b);

enum class SpecName { Generic, Official, Ast };

/// A group homomorphism Gamma -> Gamma fixing v, used to specialize parameters.
class Specialization {
public:
    Specialization() = default;
    static Specialization generic() { return Specialization(SpecName::Generic); }
    /// p_si = q^{-1/2}, q_ts = q^{1/2} for s > i, t > s.
    static Specialization official() { return Specialization(SpecName::Official); }
    /// q_ij = p_ij.
    static Specialization ast() { return Specialization(SpecName::Ast); }
    static Specialization parse(std::string_view name);

    SpecName name() const { return name_; }
    std::string_view label() const;
    GammaMonomial image(const ParamKey& key) const;
    GammaMonomial apply(const GammaMonomial& m) const;

    bool operator==(const Specialization&) const = default;

private:
    explicit Specialization(SpecName n) : name_(n) {}
    SpecName name_ = SpecName::Generic;
};

/// A finite Z-linear combination of Gamma monomials in canonical form.
class GammaLaurent {
public:
    using Term = std::pair<GammaMonomial, BigInt>;

    GammaLaurent() = default;
    GammaLaurent(long c);  // NOLINT(google-explicit-constructor)
    GammaLaurent(const BigInt& c);  // NOLINT(google-explicit-constructor)
    GammaLaurent(const GammaMonomial& m, const BigInt& c = 1);  // NOLINT
    static GammaLaurent from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    /// Coefficient of the monomial 1.
    BigInt constant_term() const;
    BigInt coefficient(const GammaMonomial& m) const;
    /// The pair (m, c) when the value is c*m with a single term.
    std::optional<Term> as_single_term() const;
    /// Every monomial is a power of q.
    bool is_pure_q() const;

    GammaLaurent operator-() const;
    GammaLaurent& operator+=(const GammaLaurent& y);
    GammaLaurent& operator-=(const GammaLaurent& y);
    GammaLaurent& operator*=(const GammaLaurent& y) { return *this = *this * y; }
    friend GammaLaurent operator+(GammaLaurent x, const GammaLaurent& y) { return x += y; }
    friend GammaLaurent operator-(GammaLaurent x, const GammaLaurent& y) { return x -= y; }
    friend GammaLaurent operator*(const GammaLaurent& x, const GammaLaurent& y);
    friend GammaLaurent operator*(const GammaLaurent& x, const GammaMonomial& m);
    friend GammaLaurent operator*(const GammaMonomial& m, const GammaLaurent& x) { return x * m; }

    bool operator==(const GammaLaurent&) const = default;

    /// Display form, e.g. "q - q^-1" or "1 + q^-1*p[1][2]^-1".
    std::string to_string() const;
    std::string to_latex() const;

private:
    std::vector<Term> terms_;  // sorted by monomial storage order, no zero coefficients
};

GammaLaurent bar_conj(const GammaLaurent& x);
/// h supported on Gamma_+ with h - bar(h) = g; throws NotAntisymmetric unless bar(g) = -g.
GammaLaurent solve_bar_equation(const GammaLaurent& g);
GammaLaurent specialize(const GammaLaurent& x, const Specialization& s);
/// Exact quotient x/d in Z[Gamma]; throws NotDivisible.
GammaLaurent divide_exact(const GammaLaurent& x, const GammaLaurent& d);
bool is_nonneg(const GammaLaurent& x);
/// x^e for e >= 0.
GammaLaurent power(const GammaLaurent& x, int e);

std::string bigint_to_string(const BigInt& c);

nlohmann::json to_json(const GammaMonomial& m);
nlohmann::json to_json(const GammaLaurent& x);
GammaLaurent gamma_laurent_from_json(const nlohmann::json& j);

}  // namespace qcanon
