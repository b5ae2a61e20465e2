#pragma once

// Lusztig's elementary method on one cell at a time: the bar matrix, the
// bar-invariant unitriangular basis b(A), expansions in that basis, the
// inductive product and structure constants.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qcanon/coeff.hpp"
#include "qcanon/matgrid.hpp"
#include "qcanon/oqpq.hpp"

namespace qcanon {

/// bar(Z(A)) = sum_B rows[A][B] Z(B) for A in the cell.
struct BarMatrix {
    Cell cell;
    std::map<MatIdx, std::map<MatIdx, GammaLaurent>> rows;
};

/// Throws TriangularityViolation unless every row is unitriangular w.r.t. <=.
BarMatrix bar_matrix(const Algebra& alg, const Cell& cell);

/// b(A) = sum_B h[A][B] Z(B).
struct CanonicalTable {
    Cell cell;
    Specialization spec;
    std::map<MatIdx, std::map<MatIdx, GammaLaurent>> h;

    Element b(const MatIdx& a) const;
    nlohmann::json to_json() const;
    /// Throws CacheCorrupt on malformed or inconsistent data.
    static CanonicalTable from_json(const nlohmann::json& j);
};

CanonicalTable canonical_basis(const Algebra& alg, const Cell& cell);
CanonicalTable canonical_basis(const Algebra& alg, const BarMatrix& bars);

/// Coordinates in the basis {b(A)}.
struct CanonicalElement {
    std::map<MatIdx, GammaLaurent> terms;

    bool operator==(const CanonicalElement&) const = default;
    /// "b[2,0;0,1] + q^-1 b[1,1;1,0]", same term order as Element.
    std::string to_string() const;
    nlohmann::json to_json() const;
};

/// Per-cell tables for one algebra, memoized in memory and optionally on disk.
class TableStore {
public:
    struct Options {
        std::optional<std::filesystem::path> cacheDir;
        /// Solve under GENERIC and specialize (the coefficients are parameter free).
        bool reuseGeneric = true;
        std::function<void(const std::string&)> warn;
    };

    explicit TableStore(Algebra alg) : TableStore(std::move(alg), Options{}) {}
    TableStore(Algebra alg, Options options);

    const Algebra& algebra() const { return alg_; }
    std::shared_ptr<const CanonicalTable> table(const std::vector<int>& rowSums, const std::vector<int>& colSums);
    std::shared_ptr<const CanonicalTable> table_of(const MatIdx& a);
    Element b(const MatIdx& a);

    int computed() const { return computed_; }
    int loaded() const { return loaded_; }
    /// Path of the cache file of a cell (empty without a cache dir).
    std::filesystem::path cache_path(const std::vector<int>& rowSums, const std::vector<int>& colSums) const;

private:
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    CanonicalTable build(const Cell& cell);
    std::optional<CanonicalTable> load(const Key& key);
    void store(const Key& key, const CanonicalTable& t) const;

    Algebra alg_;
    Options options_;
    std::unique_ptr<TableStore> generic_;
    std::mutex mutex_;
    std::map<Key, std::shared_ptr<const CanonicalTable>> tables_;
    int computed_ = 0;
    int loaded_ = 0;
};

/// Throws OutOfCell if the support leaves the table's cell.
CanonicalElement expand_in_canonical(const Element& x, const CanonicalTable& table);
CanonicalElement expand_in_canonical(const Element& x, TableStore& store);

struct StructureConstants {
    CanonicalElement coefficients;
    bool positive = true;
};

StructureConstants structure_constants(const MatIdx& a, const MatIdx& b, TableStore& store);

/// m with x = m y, if any.
std::optional<GammaMonomial> equiv_up_to_monomial(const Element& x, const Element& y);

struct InductiveResult {
    Element element;                          // b(A+B)
    GammaMonomial lead;                       // g_AB
    std::map<MatIdx, GammaLaurent> stripped;  // c_D for D < A+B
};

/// (q g^{-1} b(A)b(B) - q^{-1} g b(B)b(A)) / (q - q^{-1}) with g = g_AB, expanded
/// in the b-basis. Throws NotDivisible, NonSymmetricCoefficient, or Error if the
/// coefficient of b(A+B) is not 1.
InductiveResult inductive_product(const MatIdx& a, const MatIdx& b, TableStore& store);

struct Factorization {
    MatIdx left;
    MatIdx right;
    GammaMonomial factor;                    // b(left) b(right) = factor b(A)
    std::optional<GammaMonomial> reversed;   // b(right) b(left) = reversed b(A)
    bool qCommutes = false;                  // both orders are monomial multiples of b(A)
};

struct DecompositionReport {
    MatIdx target;
    std::vector<Factorization> factorizations;  // left < right or left == right
    bool indecomposable() const { return factorizations.empty(); }
};

DecompositionReport decompose_search(const MatIdx& a, TableStore& store);

/// The closed-form element for [[a,0,0],[0,b,c]] built from the 2x2 minors
/// Z11 Z2k - x^2 Z1k Z21, where x stands for the closed form's q; NORM basis.
Element two_by_three_closed_form(const Algebra& alg, int a, int b, int c, const GammaMonomial& x);

/// x^k in the algebra, k >= 0.
Element element_power(const Algebra& alg, const Element& x, int k);

}  // namespace qcanon
