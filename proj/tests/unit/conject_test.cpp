#include <gtest/gtest.h>

#include "printers.hpp"
#include "qcanon/conject.hpp"
#include "qcanon/errors.hpp"

using namespace qcanon;

namespace {

GammaLaurent Q(int e) { return GammaLaurent(GammaMonomial::q(e)); }

const MatIdx I2 = MatIdx::identity(2);
const MatIdx E2 = MatIdx::anti2();

MatIdx M(const char* s) { return MatIdx::parse(s); }
Element Z(const MatIdx& a, const GammaLaurent& c = GammaLaurent(1)) { return Element::monomial(a, c); }

const ConjectureVariant kLiteral{ConjectureKind::Literal, PathOrder::LexMax};
const ConjectureVariant kSkip{ConjectureKind::SkipZeroFactor, PathOrder::LexMax};

std::vector<Cell> small_2x2_cells() {
    std::vector<Cell> out;
    for (const Cell& c : cells_up_to_mass(2, 2, 8))
        if (std::all_of(c.members.begin(), c.members.end(), [](const MatIdx& a) {
                return std::all_of(a.entries().begin(), a.entries().end(), [](int x) { return x <= 2; });
            }))
            out.push_back(c);
    return out;
}

}  // namespace

TEST(Conject, VariantLabels) {
    EXPECT_EQ(kSkip.label(), "skip-zero-factor/lex-max");
    EXPECT_EQ(ConjectureVariant::parse("b-entries/lex-min"), (ConjectureVariant{ConjectureKind::BEntries, PathOrder::LexMin}));
    EXPECT_EQ(ConjectureVariant::parse("literal"), kLiteral);
    EXPECT_THROW(ConjectureVariant::parse("exact"), ParseError);
    EXPECT_THROW(ConjectureVariant::parse("literal/sideways"), ParseError);
    EXPECT_EQ(ConjectureVariant::all().size(), 6u);
}

TEST(Conject, CoefficientExamples) {
    EXPECT_EQ(conj_coefficient(I2, E2, kSkip), -Q(-1));
    EXPECT_EQ(conj_coefficient(M("2,0;0,1"), M("2,0;0,1"), kLiteral), Q(-1));
    EXPECT_EQ(conj_coefficient(M("2,0;0,1"), M("2,0;0,1"), kSkip), GammaLaurent(1));
    EXPECT_THROW(conj_coefficient(E2, I2, kSkip), NotComparable);
}

TEST(Conject, ElementExamples) {
    EXPECT_EQ(conj_element(I2, kSkip), Z(I2) - Z(E2, Q(-1)));
    EXPECT_EQ(conj_element(E2, kSkip), Z(E2));
    EXPECT_EQ(conj_element(M("2,0;0,1"), kSkip), Z(M("2,0;0,1")) - Z(M("1,1;1,0"), Q(-2)));
}

TEST(Conject, DiagonalIsOneWhenSkipping) {
    for (const Cell& c : cells_up_to_mass(3, 3, 4))
        for (const MatIdx& a : c.members) ASSERT_EQ(conj_coefficient(a, a, kSkip), GammaLaurent(1)) << a.to_string();
}

TEST(Conject, LiteralFixtureAtTwoZeroZeroOne) {
    TableStore store{Algebra(2)};
    const ConjReport r = conj_check({cell_of(M("2,0;0,1"))}, {kLiteral}, store);
    ASSERT_EQ(r.variants.size(), 1u);
    const auto& mism = r.variants[0].mismatches;
    const auto it = std::find_if(mism.begin(), mism.end(), [](const ConjMismatch& m) {
        return m.a == M("2,0;0,1") && m.b == M("2,0;0,1");
    });
    ASSERT_NE(it, mism.end());
    EXPECT_EQ(it->conjectured, Q(-1));
    EXPECT_EQ(it->solver, GammaLaurent(1));
}

TEST(Conject, SkipZeroMatchesSmallTwoByTwo) {
    TableStore store{Algebra(2)};
    const ConjReport r = conj_check(small_2x2_cells(), {kSkip}, store);
    EXPECT_TRUE(r.variants[0].match_all());
    EXPECT_TRUE(r.variants[0].notBarInvariant.empty());
    EXPECT_EQ(r.variants[0].checked, 46);
}

// Beyond entries 2 the per-label factor q^{-|a_ij - a_st|} is off by a power:
// for [[3,0],[0,2]] two moves down the solver has q^-4, the formula q^-3.
TEST(Conject, SkipZeroDisagreesBeyondEntriesTwo) {
    TableStore store{Algebra(2)};
    EXPECT_EQ(conj_coefficient(M("3,0;0,2"), M("1,2;2,0"), kSkip), Q(-3));
    EXPECT_EQ(store.b(M("3,0;0,2")).coefficient(M("1,2;2,0")), Q(-4));
}

TEST(Conject, ReportIsDeterministic) {
    TableStore s1{Algebra(2, 3)}, s2{Algebra(2, 3)};
    std::vector<Cell> cells;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c) cells.push_back(cell_of(MatIdx{{a, 0, 0}, {0, b, c}}));
    const std::string x = conj_check(cells, ConjectureVariant::all(), s1).to_json().dump();
    const std::string y = conj_check(cells, ConjectureVariant::all(), s2).to_json().dump();
    EXPECT_EQ(x, y);
}
