#include <random>

#include <gtest/gtest.h>

#include "printers.hpp"

#include "qcanon/coeff.hpp"
#include "qcanon/errors.hpp"

using namespace qcanon;

namespace {

GammaLaurent Q(int e) { return GammaLaurent(GammaMonomial::q(e)); }

// Random element with small exponents over p12, p13, q12 and v.
GammaLaurent random_laurent(std::mt19937& rng, int terms = 4) {
    std::uniform_int_distribution<int> e(-3, 3);
    std::uniform_int_distribution<int> c(-4, 4);
    GammaLaurent x;
    for (int k = 0; k < terms; ++k) {
        GammaMonomial m = GammaMonomial::v(e(rng)) * GammaMonomial::p(1, 2, e(rng)) *
                          GammaMonomial::p(1, 3, e(rng)) * GammaMonomial::qp(1, 2, e(rng));
        x += GammaLaurent(m, c(rng));
    }
    return x;
}

}  // namespace

TEST(Coeff, Arithmetic) {
    EXPECT_EQ(Q(1) + GammaLaurent(1) + GammaLaurent(-1), Q(1));
    EXPECT_EQ((Q(1) - Q(-1)) * (Q(1) + Q(-1)), Q(2) - Q(-2));
    GammaMonomial m = GammaMonomial::p(2, 1) * GammaMonomial::qp(2, 1);
    EXPECT_TRUE((GammaLaurent(m) * GammaLaurent(m.inverse())) == GammaLaurent(1));
    EXPECT_TRUE((Q(1) - Q(1)).is_zero());
}

TEST(Coeff, SwappedIndicesInvert) {
    EXPECT_EQ(GammaMonomial::p(2, 1), GammaMonomial::p(1, 2).inverse());
    EXPECT_EQ(GammaMonomial::qp(3, 1, 2), GammaMonomial::qp(1, 3, -2));
    EXPECT_TRUE(GammaMonomial::p(2, 2).is_one());
}

TEST(Coeff, BarConj) {
    EXPECT_EQ(bar_conj(Q(1) - Q(-1)), Q(-1) - Q(1));
    GammaMonomial m = GammaMonomial::p(2, 1) * GammaMonomial::qp(2, 1);
    EXPECT_EQ(bar_conj(GammaLaurent(m)), GammaLaurent(m.inverse()));
    EXPECT_EQ(bar_conj(GammaLaurent(3)), GammaLaurent(3));
}

TEST(Coeff, SolveBarEquation) {
    EXPECT_EQ(solve_bar_equation(Q(1) - Q(-1)), -Q(-1));
    EXPECT_TRUE(solve_bar_equation(GammaLaurent()).is_zero());
    EXPECT_THROW(solve_bar_equation(GammaLaurent(1)), NotAntisymmetric);
}

TEST(Coeff, Specialize) {
    GammaMonomial pq = GammaMonomial::p(2, 1) * GammaMonomial::qp(2, 1);
    EXPECT_EQ(specialize(GammaLaurent(pq), Specialization::official()), GammaLaurent(1));
    EXPECT_EQ(specialize(GammaLaurent(GammaMonomial::q(1) * GammaMonomial::p(2, 1)), Specialization::official()),
              GammaLaurent(GammaMonomial::v(1)));
    GammaLaurent x = GammaLaurent(pq, 3) + Q(-2);
    EXPECT_EQ(specialize(x, Specialization::generic()), x);
    EXPECT_EQ(specialize(GammaLaurent(GammaMonomial::qp(1, 2)), Specialization::ast()),
              GammaLaurent(GammaMonomial::p(1, 2)));
}

TEST(Coeff, DivideExact) {
    EXPECT_EQ(divide_exact(Q(2) - Q(-2), Q(1) - Q(-1)), Q(1) + Q(-1));
    EXPECT_EQ(divide_exact(Q(1) - Q(-1), Q(1) - Q(-1)), GammaLaurent(1));
    EXPECT_THROW(divide_exact(GammaLaurent(1), Q(1) - Q(-1)), NotDivisible);
}

TEST(Coeff, IsNonneg) {
    EXPECT_TRUE(is_nonneg(GammaLaurent(1) + GammaLaurent(GammaMonomial::q(-1) * GammaMonomial::p(1, 2))));
    EXPECT_FALSE(is_nonneg(Q(1) - Q(-1)));
    EXPECT_TRUE(is_nonneg(GammaLaurent()));
}

TEST(Coeff, Rendering) {
    EXPECT_EQ((Q(1) - Q(-1)).to_string(), "q - q^-1");
    EXPECT_EQ(GammaLaurent(GammaMonomial::v(1)).to_string(), "q^{1/2}");
    EXPECT_EQ(GammaLaurent().to_string(), "0");
}

TEST(Coeff, JsonRoundTrip) {
    std::mt19937 rng(11);
    for (int k = 0; k < 50; ++k) {
        GammaLaurent x = random_laurent(rng);
        EXPECT_EQ(gamma_laurent_from_json(to_json(x)), x);
    }
}

TEST(CoeffProperty, BarIsInvolutiveRingHom) {
    std::mt19937 rng(1);
    for (int k = 0; k < 200; ++k) {
        GammaLaurent x = random_laurent(rng), y = random_laurent(rng);
        EXPECT_EQ(bar_conj(bar_conj(x)), x);
        EXPECT_EQ(bar_conj(x * y), bar_conj(x) * bar_conj(y));
        EXPECT_EQ(bar_conj(x + y), bar_conj(x) + bar_conj(y));
    }
}

TEST(CoeffProperty, OrderCompatibleWithMultiplication) {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> e(-3, 3);
    auto mono = [&] {
        return GammaMonomial::v(e(rng)) * GammaMonomial::p(1, 2, e(rng)) * GammaMonomial::qp(2, 3, e(rng));
    };
    for (int k = 0; k < 300; ++k) {
        GammaMonomial a = mono(), b = mono(), c = mono();
        EXPECT_EQ(group_less(a, b), group_less(a * c, b * c));
        if (!(a == b)) EXPECT_NE(group_less(a, b), group_less(b, a));
    }
}

TEST(CoeffProperty, SolveBarEquationRoundTrip) {
    std::mt19937 rng(3);
    for (int k = 0; k < 200; ++k) {
        GammaLaurent x = random_laurent(rng);
        GammaLaurent g = x - bar_conj(x);
        GammaLaurent h = solve_bar_equation(g);
        EXPECT_EQ(h - bar_conj(h), g);
        for (const auto& [m, c] : h) EXPECT_TRUE(m.is_positive());
    }
}

TEST(CoeffProperty, SpecializeCommutesWithBar) {
    std::mt19937 rng(4);
    for (auto s : {Specialization::generic(), Specialization::official(), Specialization::ast()})
        for (int k = 0; k < 100; ++k) {
            GammaLaurent x = random_laurent(rng);
            EXPECT_EQ(specialize(bar_conj(x), s), bar_conj(specialize(x, s)));
        }
}

TEST(CoeffProperty, DivideExactInvertsMultiplication) {
    std::mt19937 rng(5);
    for (int k = 0; k < 100; ++k) {
        GammaLaurent x = random_laurent(rng, 3), d = random_laurent(rng, 2);
        if (d.is_zero()) continue;
        EXPECT_EQ(divide_exact(x * d, d), x);
    }
}
