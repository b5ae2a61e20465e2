#pragma once

// Quantum minors: the 2x2 determinant and its normalized form Delta, the
// factor f_A, general minors realized as canonical basis elements, and the
// identities relating Delta to the canonical basis.

#include <string>
#include <vector>

#include "qcanon/canon.hpp"
#include "qcanon/coeff.hpp"
#include "qcanon/expnat.hpp"
#include "qcanon/oqpq.hpp"

namespace qcanon {

/// Rows I and columns J of a minor, strictly increasing, |I| = |J|.
struct MinorSpec {
    std::vector<int> rows;
    std::vector<int> cols;

    /// Throws Error on bad shape or ordering, IndexOutOfRange outside 1..n.
    void validate(int n) const;
    /// sum_k E_{i_k j_k} in an n x n grid.
    MatIdx matrix(int n) const;
    std::string to_string() const;
};

/// Z11 Z22 - q21^{-2} Z12 Z21, in the PLAIN basis of a 2x2 algebra.
Element det_q(const Algebra& alg);
/// p21 q21 det_q, in the NORM basis.
Element delta2(const Algebra& alg);

/// q^{a21 - a12} p21^{r2 - r1} q21^{c2 - c1}, unspecialized.
GammaMonomial f_factor(const MatIdx& a);

/// b(M(spec)) from the store's algebra.
Element quantum_minor(const MinorSpec& spec, TableStore& store);

struct DeltaReport {
    MatIdx a;
    std::vector<IdentityCheck> checks;
    bool all_hold() const;
};

/// Z(A) Delta, Z^A Delta = f^2 Delta Z^A, b(A) f^-1 Delta = b(A+I), bar(Delta) = Delta
/// and the four generator covariance relations, by direct multiplication. n = 2.
DeltaReport delta_compatibility(const MatIdx& a, TableStore& store);

}  // namespace qcanon
