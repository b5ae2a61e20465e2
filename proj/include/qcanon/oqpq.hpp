#pragma once

// The multi-parameter quantum matrix algebra: generators Z_ij, rewriting to
// the lexicographically sorted PBW monomials Z^A, the normalized monomials
// Z(A) = D(A) Z^A, products and the bar anti-automorphism.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcanon/coeff.hpp"
#include "qcanon/matgrid.hpp"

namespace qcanon {

/// Generator Z_ij; generators are ordered row-major.
struct GenIndex {
    int i = 0;
    int j = 0;
    auto operator<=>(const GenIndex&) const = default;
};

using Word = std::vector<GenIndex>;

/// "22.11" -> Z_22 Z_11 (two digits per generator, '.'-separated).
Word parse_word(std::string_view literal);
std::string word_to_string(const Word& w);
/// The sorted word of Z^A.
Word sorted_word(const MatIdx& a);

enum class Basis { Plain, Norm };

/// A finite combination of PBW monomials, Z^A (Plain) or Z(A) (Norm).
class Element {
public:
    using Terms = std::map<MatIdx, GammaLaurent>;

    Element() = default;
    Element(int rows, int cols, Basis basis) : rows_(rows), cols_(cols), basis_(basis) {}
    static Element monomial(const MatIdx& a, const GammaLaurent& c = GammaLaurent(1), Basis basis = Basis::Norm);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Basis basis() const { return basis_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    GammaLaurent coefficient(const MatIdx& a) const;

    void add_term(const MatIdx& a, const GammaLaurent& c);
    Element& operator+=(const Element& y);
    Element& operator-=(const Element& y);
    friend Element operator+(Element x, const Element& y) { return x += y; }
    friend Element operator-(Element x, const Element& y) { return x -= y; }
    Element operator-() const;
    friend Element operator*(const GammaLaurent& c, const Element& x);

    bool operator==(const Element& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && basis_ == o.basis_ && terms_ == o.terms_;
    }

    /// Terms from the top of the order down (rho descending, then matrix descending).
    std::vector<std::pair<MatIdx, GammaLaurent>> ordered_terms() const;

    /// "Z[2,0;0,1] - q^-2 Z[1,1;1,0]"; Plain monomials print as "Z^[...]".
    std::string to_string() const;
    std::string to_latex() const;
    nlohmann::json to_json() const;

private:
    void check_shape(const MatIdx& a) const;

    int rows_ = 0;
    int cols_ = 0;
    Basis basis_ = Basis::Norm;
    Terms terms_;
};

/// Applies a specialization to every coefficient.
Element specialize(const Element& x, const Specialization& s);

/// One defining relation g2 g1 = lambda g1 g2 [+ extra * Z_it Z_sj], for g2 > g1.
struct Relation {
    GenIndex upper;  // g2, the larger generator written first
    GenIndex lower;  // g1
    GammaLaurent lambda;
    GammaLaurent extra;  // zero unless rows and columns both increase
    GenIndex extraLeft;
    GenIndex extraRight;
};

/// O_{q,P,Q}(M(rows x cols)) over a chosen specialization of the parameters.
/// Internal product caches are guarded; the object is safe to share.
class Algebra {
public:
    explicit Algebra(int n, Specialization spec = Specialization::generic()) : Algebra(n, n, spec) {}
    Algebra(int rows, int cols, Specialization spec = Specialization::generic());

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Specialization& spec() const { return spec_; }

    /// The relation for the ordered pair g2 > g1.
    Relation relation(const GenIndex& upper, const GenIndex& lower) const;
    /// All relations, g2 > g1, in lexicographic order of (g1, g2).
    std::vector<Relation> relations() const;

    /// Normalization D(A) (closed form, then specialized).
    GammaMonomial d_factor(const MatIdx& a) const;
    /// Leading coefficient of the normal form of the reversed word of Z^A.
    GammaLaurent reversal_coefficient(const MatIdx& a) const;

    Element normal_form(const std::vector<std::pair<GammaLaurent, Word>>& words) const;
    Element word(const Word& w) const { return normal_form({{GammaLaurent(1), w}}); }
    Element generator(int i, int j, Basis basis = Basis::Plain) const;

    Element to_norm(const Element& x) const;
    Element to_plain(const Element& x) const;
    Element convert(const Element& x, Basis basis) const { return basis == Basis::Norm ? to_norm(x) : to_plain(x); }

    Element multiply(const Element& x, const Element& y) const;
    Element bar(const Element& x) const;
    /// g with Z(A)Z(B) = g Z(A+B) + lower terms.
    GammaMonomial leading_product_monomial(const MatIdx& a, const MatIdx& b) const;

    Element one(Basis basis = Basis::Norm) const;

private:
    using PlainTerms = std::map<MatIdx, GammaLaurent>;

    PlainTerms right_mul(const MatIdx& a, const GenIndex& g) const;
    PlainTerms plain_product(const MatIdx& a, const MatIdx& b) const;
    PlainTerms reversed(const MatIdx& a) const;
    void check(const Element& x) const;

    int rows_;
    int cols_;
    Specialization spec_;

    struct Caches;
    std::shared_ptr<Caches> caches_;
};

/// Per-relation verdict of the bi-character twist of the Dipper-Donkin relations.
struct TwistVerdict {
    GenIndex upper;
    GenIndex lower;
    std::string expected;  // O_{q,P,Q} relation right-hand side
    std::string twisted;   // twisted Dipper-Donkin right-hand side
    bool match = false;
};

struct TwistReport {
    int n = 0;
    bool trivialTwist = false;
    std::vector<TwistVerdict> verdicts;
    bool all_match() const;
};

/// Twists D_q(n) by phi(e_i,e_j) = p_ij, psi(e_i,e_j) = q_ij and compares
/// with the defining relations; with trivialTwist the comparison target is
/// D_q(n) itself.
TwistReport twist_check(int n, bool trivialTwist = false);

}  // namespace qcanon
