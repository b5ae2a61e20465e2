#pragma once

// Local operators T_ij^st and their conjugates on normalized monomials, the
// q-exponential form of the 2x2 bar matrix, and the factorization of the
// bar action into local exponentials.

#include <string>
#include <vector>

#include "qcanon/coeff.hpp"
#include "qcanon/matgrid.hpp"
#include "qcanon/oqpq.hpp"
#include "qcanon/qcomb.hpp"

namespace qcanon {

enum class LocalKind { T, TBar };

/// sum of q^{-s} (T) or q^{s} (TBar) for s = |a-b|+1, |a-b|+3, ..., a+b-1.
GammaLaurent local_coefficient(int a, int b, LocalKind kind);

/// Termwise action on a NORM element.
Element local_apply(const MoveLabel& label, LocalKind kind, const Element& x);

/// tSign * T + tbarSign * TBar at one label, as an operator on a cell.
LocalOperator<MatIdx> local_operator(const Cell& cell, const MoveLabel& label, int tSign, int tbarSign);

/// The 2x2 exponentials exp_{q^-1}(-t + tbar), exp_q(t), exp_{q^-1}(-t) on one cell.
class BarOperator2x2 {
public:
    explicit BarOperator2x2(const Cell& cell);

    Element bar(const Element& x) const;       // exp_{q^-1}(-t + tbar)
    Element t_exp(const Element& x) const;     // exp_q(t)
    Element t_inv_exp(const Element& x) const; // exp_{q^-1}(-t)

private:
    Element apply(const LocalOperator<MatIdx>& op, const Element& x, QBase base) const;

    Cell cell_;
    LocalOperator<MatIdx> t_;
    LocalOperator<MatIdx> h_;
};

BarOperator2x2 bar_operator_2x2(const Cell& cell);

/// How the factors of the product over labels are arranged and applied.
struct FactorOrdering {
    bool upperAscending = true;  // order of (i,j)
    bool lowerAscending = true;  // order of (s,t) within equal (i,j)
    bool leftmostFirst = false;  // the leftmost factor acts first on the vector

    bool operator==(const FactorOrdering&) const = default;
    std::string label() const;
    static std::vector<FactorOrdering> all();
};

/// Double lexicographic, composed as a matrix product on coordinate columns
/// (rightmost factor first). Agrees with the bar action for n = 2 only; see README.
FactorOrdering frozen_ordering();

/// Labels in the product, left to right.
std::vector<MoveLabel> product_labels(int n, const FactorOrdering& ordering);

/// Applies prod exp_{q^-1}(-T_ij^st + TBar_ij^st) to a NORM element of a square algebra.
Element bar_via_factorization(const Element& x, const FactorOrdering& ordering = frozen_ordering());

struct OrderingVerdict {
    FactorOrdering ordering;
    bool agrees = false;
    std::vector<MatIdx> failures;
};

/// Compares every ordering with the direct bar action on a cell.
std::vector<OrderingVerdict> ordering_experiment(const Algebra& alg, const Cell& cell);

struct TauMu {
    MatIdx c;
    int i = 0;
    GammaLaurent tau;
    GammaLaurent mu;
};

/// t^i Z(C) = tau Z(C - iI + iE) and (-t + tbar)^i Z(C) = mu Z(C - iI + iE).
TauMu tau_mu(const MatIdx& c, int i);

struct IdentityCheck {
    std::string name;
    bool holds = false;
    std::string lhs;
    std::string rhs;
};

/// The tau recursion relating A+I to A at iteration r >= 1.
IdentityCheck tau_recursion(const MatIdx& a, int r);
/// The mu recursion relating A+I to A at iteration s >= 1.
IdentityCheck mu_recursion(const MatIdx& a, int s);
/// (tbar - t) Z(A) = (q^a - q^-a)(q^b - q^-b)/(q - q^-1) Z(A - I + E).
IdentityCheck difference_closed_form(const MatIdx& a);

}  // namespace qcanon
