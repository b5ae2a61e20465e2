#pragma once

// Verification suites shared by `qcanon verify` and the acceptance runner.
// Each returns per-check verdicts; nothing throws for a failed identity.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcanon/canon.hpp"
#include "qcanon/coeff.hpp"

namespace qcanon {

struct SuiteCheck {
    std::string name;
    bool holds = false;
    std::string detail;  // empty when it holds
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCheck> checks;
    nlohmann::json extra = nlohmann::json::object();  // suite-specific findings

    bool all_hold() const;
    int failed() const;
    nlohmann::json to_json() const;
};

struct SuiteOptions {
    int n = 2;
    std::optional<int> maxMass;  // suite default when unset
    int maxEntry = 2;
    Specialization spec = Specialization::generic();
    std::optional<std::filesystem::path> cacheDir;
    std::function<void(const std::string&)> warn;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Names accepted by run_suite, in documentation order.
const std::vector<std::string>& suite_names();

/// Throws Error for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opt);

/// Gaussian recursion, alternating sums (s <= 8), exp_q of a sum of a q^2-commuting
/// pair, and exp_q(X) exp_{q^-1}(-X) = id.
SuiteReport suite_qidentities(const SuiteOptions& opt);
/// Factorized bar = direct bar on every n x n cell of mass <= maxMass (default 6);
/// for n = 2 also the exponential form of the bar, the inverse pair and the key recursions.
SuiteReport suite_exponential(const SuiteOptions& opt);
/// Delta identities for 2x2 entries <= maxEntry; minors bar-invariant and indecomposable for n <= 3.
SuiteReport suite_minors(const SuiteOptions& opt);
/// Structure constants of b(A) b(B) nonnegative: 2x2 with mass(A)+mass(B) <= maxMass
/// (default 5) plus 20 fixed 3x3 pairs of mass <= 2 each.
SuiteReport suite_positivity(const SuiteOptions& opt);
/// Embedding relations and Phi-fixedness (mass <= maxMass, default 3), Serre families
/// to length 6, PBW orthogonality and diagonal values up to sign for deg <= 4.
SuiteReport suite_embedding(const SuiteOptions& opt);
/// Conjecture harness on 2x2 cells with entries <= maxEntry and the 2x3 family;
/// checks determinism and the literal fixture, records match-all per variant.
SuiteReport suite_conjecture(const SuiteOptions& opt);

/// The 20 fixed 3x3 pairs (mt19937, fixed seed) used by the positivity suite.
std::vector<std::pair<MatIdx, MatIdx>> positivity_pairs_3x3();

/// 2x2 cells in which every member has entries <= maxEntry.
std::vector<Cell> small_square_cells(int maxEntry);
/// Cells of [[a,0,0],[0,b,c]], a,b,c <= maxEntry.
std::vector<Cell> two_by_three_family(int maxEntry);

}  // namespace qcanon
