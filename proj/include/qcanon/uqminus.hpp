#pragma once

// The negative part U_q(n^-) of type A_N as a free algebra on F_1..F_N modulo
// the radical of Lusztig's form: twisted coproduct r, the form, root vectors,
// PBW elements, the anti-automorphism Phi and the embedding of O_q(M(n)).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/polynomial.hpp>

#include "qcanon/coeff.hpp"
#include "qcanon/oqpq.hpp"

namespace qcanon {

/// Exact element of Q(q): q^shift * num(q) / den(q), with num and den coprime,
/// both with nonzero constant term, and den's leading coefficient positive.
class QRat {
public:
    using Poly = boost::math::tools::polynomial<BigInt>;

    QRat() = default;
    QRat(long c);  // NOLINT(google-explicit-constructor)
    static QRat q(int e);
    /// sum c_k q^k.
    static QRat laurent(const std::map<int, BigInt>& coeffs);

    bool is_zero() const { return num_.size() == 0; }
    bool is_laurent() const { return den_.size() == 1 && den_[0] == 1; }
    bool operator==(const QRat& o) const;
    bool operator!=(const QRat& o) const { return !(*this == o); }

    QRat operator-() const;
    QRat& operator+=(const QRat& y);
    QRat& operator-=(const QRat& y) { return *this += -y; }
    friend QRat operator+(QRat x, const QRat& y) { return x += y; }
    friend QRat operator-(QRat x, const QRat& y) { return x -= y; }
    friend QRat operator*(const QRat& x, const QRat& y);
    /// Throws Error on division by zero.
    friend QRat operator/(const QRat& x, const QRat& y);

    /// q -> q^-1.
    QRat bar() const;
    /// Value at q = x modulo the prime p (x invertible mod p); throws if den vanishes.
    std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;

    /// "(q^4 - 1)/(q^2 + 1)", "q^-2", "-1".
    std::string to_string() const;

private:
    void normalize();

    int shift_ = 0;
    Poly num_;
    Poly den_ = Poly(BigInt(1));
};

using FreeWord = std::vector<int>;

/// Finite combination of words in F_1..F_N with coefficients in Q(q).
class FreeElement {
public:
    using Terms = std::map<FreeWord, QRat>;

    FreeElement() = default;
    explicit FreeElement(int rank) : rank_(rank) {}
    static FreeElement word(int rank, FreeWord w, const QRat& c = QRat(1));
    static FreeElement one(int rank) { return word(rank, {}); }
    static FreeElement generator(int rank, int i) { return word(rank, {i}); }

    int rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    QRat coefficient(const FreeWord& w) const;

    void add_term(const FreeWord& w, const QRat& c);
    FreeElement& operator+=(const FreeElement& y);
    FreeElement& operator-=(const FreeElement& y);
    friend FreeElement operator+(FreeElement x, const FreeElement& y) { return x += y; }
    friend FreeElement operator-(FreeElement x, const FreeElement& y) { return x -= y; }
    friend FreeElement operator*(const QRat& c, const FreeElement& x);
    friend FreeElement operator*(const FreeElement& x, const FreeElement& y);
    bool operator==(const FreeElement& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

    /// Splits into weight-homogeneous components.
    std::map<std::vector<int>, FreeElement> by_weight() const;
    /// "F2F1 - q^2 F1F2"
    std::string to_string() const;

private:
    int rank_ = 0;
    Terms terms_;
};

using Weight = std::vector<int>;

/// Simple-root multiplicities of a word.
Weight weight_of(const FreeWord& w, int rank);
/// Cartan pairing of type A: (a_i,a_i) = 2, (a_i,a_{i+1}) = -1.
int weight_form(const Weight& x, const Weight& y);

/// r on a combination: sum of (left word, right word) pairs.
using Tensor = std::map<std::pair<FreeWord, FreeWord>, QRat>;
Tensor r_map(const FreeElement& x);

/// xy - q^{-2(wt x, wt y)} yx for homogeneous x, y.
FreeElement q_commutator(const FreeElement& x, const FreeElement& y);

/// Words reversed, q -> q^-1.
FreeElement phi(const FreeElement& x);

enum class RootKind { Plain, DualScaled, DualRecursive };
enum class DividedPower {
    Balanced,  // [k] = (q^{2k} - q^{-2k}) / (q^2 - q^{-2})
    Unbalanced // [k] = 1 + q^4 + ... + q^{4(k-1)}
};

/// Direction in which PBW factors follow the root order, left to right.
enum class FactorOrder { Ascending, Descending };

/// Positive root a_i + ... + a_j.
struct Root {
    int i = 0;
    int j = 0;
    auto operator<=>(const Root&) const = default;
};

/// a_ij <= a_kl iff j < l, or j == l and i < k.
bool root_less(const Root& a, const Root& b);

using PBWIndex = std::map<Root, int>;

/// The form, radical tests and PBW data of U_q(n^-) of type A_rank.
/// Memo tables are guarded; safe to share.
class UqMinus {
public:
    explicit UqMinus(int rank);

    int rank() const { return rank_; }

    /// Lusztig's form; zero across different weights.
    QRat form(const FreeElement& x, const FreeElement& y) const;
    QRat word_form(const FreeWord& x, const FreeWord& y) const;

    /// (x, w) = 0 for every word w of each weight component.
    bool is_radical_zero(const FreeElement& x) const;
    bool equal_mod_radical(const FreeElement& x, const FreeElement& y) const { return is_radical_zero(x - y); }

    FreeElement root_vector(const Root& r, RootKind kind) const;
    /// prod F_ij^m / [m]!, factors in root order.
    FreeElement pbw(const PBWIndex& m, DividedPower dp = DividedPower::Unbalanced,
                    FactorOrder order = FactorOrder::Descending) const;
    /// prod q^{binom(m,2)} F*_ij^m (scaled root vectors), optionally times q^{|m|^2/2 - deg m}.
    FreeElement pbw_dual(const PBWIndex& m, bool normalized, FactorOrder order = FactorOrder::Descending) const;
    /// (1 - q^4)^deg / prod phi_m(q^4).
    static QRat pbw_diagonal_formula(const PBWIndex& m);

    static int degree(const PBWIndex& m);
    Weight weight(const PBWIndex& m) const;
    /// All PBW indices of a given weight.
    std::vector<PBWIndex> pbw_indices(const Weight& w) const;
    std::vector<Root> roots() const;

    /// Words pairing nondegenerately with the weight space (size = its dimension).
    const std::vector<FreeWord>& test_words(const Weight& w) const;

private:
    int rank_;
    struct Memo;
    std::shared_ptr<Memo> memo_;
};

/// Z_ij -> dual root vector at (i, j + n - 1); coefficients v^k -> q^{vExponent k}.
struct EmbeddingOptions {
    int vExponent = 1;
    RootKind kind = RootKind::DualRecursive;
};

/// Image of an OFFICIAL element of O_q(M(n)) in U_q(n^-) of type A_{2n-1}.
/// Throws IndexOutOfRange for bad shapes, Error on non-q coefficients.
FreeElement embed(const Element& x, const Algebra& alg, const UqMinus& u, const EmbeddingOptions& opt = {});
Root embedded_root(int i, int j, int n);

struct EmbeddingCheck {
    std::string name;
    bool holds = false;
};

struct EmbeddingReport {
    int n = 0;
    EmbeddingOptions options;
    std::vector<EmbeddingCheck> relations;  // relation images radical-zero
    std::vector<EmbeddingCheck> phiFixed;   // Phi(embed b(A)) = embed b(A)
    bool all_hold() const;
};

/// Relations and Phi-fixedness of embedded canonical elements with mass <= maxMass.
EmbeddingReport verify_embedding(int n, int maxMass = 3, const EmbeddingOptions& opt = {});

}  // namespace qcanon
