#pragma once

// The conjectured closed formula for b(A) as a product over principal-path
// label counts, its interpretation variants, and a harness comparing it with
// the solver.

#include <string>
#include <string_view>
#include <vector>

#include "qcanon/canon.hpp"
#include "qcanon/matgrid.hpp"

namespace qcanon {

enum class ConjectureKind {
    Literal,         // every label contributes q^{-|a_ij - a_st|}, entries of A
    SkipZeroFactor,  // labels absent from the principal path contribute 1
    BEntries,        // as Literal, entries read from B
};

struct ConjectureVariant {
    ConjectureKind kind = ConjectureKind::SkipZeroFactor;
    PathOrder order = PathOrder::LexMax;

    bool operator==(const ConjectureVariant&) const = default;
    /// "skip-zero-factor/lex-max"
    std::string label() const;
    /// Accepts "literal", "skip-zero-factor", "b-entries", optionally followed by "/lex-max" or "/lex-min".
    static ConjectureVariant parse(std::string_view text);
    static std::vector<ConjectureVariant> all();
};

/// (-q^-1)^l prod_labels q^{-|a_ij - a_st|} binom(min(a_ij, a_st), p_ij^st(B))_{q^-2}.
/// The binomial is the Gaussian polynomial in q^-2. Throws NotComparable unless B <= A.
GammaLaurent conj_coefficient(const MatIdx& a, const MatIdx& b, const ConjectureVariant& variant);

/// sum over B <= A of conj_coefficient(A, B) Z(B), NORM basis.
Element conj_element(const MatIdx& a, const ConjectureVariant& variant);

struct ConjMismatch {
    MatIdx a;
    MatIdx b;
    GammaLaurent conjectured;
    GammaLaurent solver;
};

struct ConjVariantResult {
    ConjectureVariant variant;
    int checked = 0;
    std::vector<ConjMismatch> mismatches;
    std::vector<MatIdx> notBarInvariant;
    bool match_all() const { return mismatches.empty(); }
};

struct ConjReport {
    std::vector<Cell> cells;
    std::vector<ConjVariantResult> variants;

    nlohmann::json to_json() const;
};

/// Compares conj_element with the solver's b(A) for every member of every cell,
/// and records separately whether each conj_element is bar invariant.
ConjReport conj_check(const std::vector<Cell>& cells, const std::vector<ConjectureVariant>& variants,
                      TableStore& store);

}  // namespace qcanon
