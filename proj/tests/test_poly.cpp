#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "toric/elimination.hpp"
#include "toric/poly.hpp"

using namespace toric;
using toric::testing::eval;
using toric::testing::random_point;
using toric::testing::random_polynomial;

namespace {

ContextPtr xyz() { return make_context({"x", "y", "z"}); }

}  // namespace

TEST(Polynomial, ParseAndPrintRoundTrip) {
    auto c = xyz();
    auto f = parse_polynomial(c, "3*x^2*y - 2*z + 7 - x^2*y");
    EXPECT_EQ(f.to_string(), "2*x^2*y - 2*z + 7");
    EXPECT_EQ(parse_polynomial(c, f.to_string()), f);
    EXPECT_EQ(f.size(), 3u);
    EXPECT_EQ(f.total_degree(), 3);
}

TEST(Polynomial, ParseRejectsUnknownVariable) {
    EXPECT_THROW(parse_polynomial(xyz(), "x + w"), PreconditionError);
}

TEST(Polynomial, ArithmeticAgreesWithEvaluation) {
    std::mt19937_64 rng(7);
    auto c = xyz();
    for (int k = 0; k < 50; ++k) {
        auto f = random_polynomial(rng, c, 6, 4), g = random_polynomial(rng, c, 5, 3);
        auto p = random_point(rng, 3);
        EXPECT_EQ(eval(f * g, p), eval(f, p) * eval(g, p));
        EXPECT_EQ(eval(f + g, p), eval(f, p) + eval(g, p));
        EXPECT_EQ(eval(f - g, p), eval(f, p) - eval(g, p));
        EXPECT_EQ(eval(f.pow(3), p), eval(f, p) * eval(f, p) * eval(f, p));
    }
}

TEST(Polynomial, LargeCoefficientsPromote) {
    auto c = xyz();
    auto x = Polynomial::variable(c, 0);
    auto f = (x * Integer(1000000007) + Polynomial::constant(c, 1)).pow(6);
    EXPECT_EQ(f.coefficient_of(std::vector<Exponent>{6, 0, 0}), Integer::pow(Integer(1000000007), 6));
}

TEST(Polynomial, ExactDivisionRecoversFactor) {
    std::mt19937_64 rng(11);
    auto c = xyz();
    for (int k = 0; k < 30; ++k) {
        auto f = random_polynomial(rng, c, 7, 4), g = random_polynomial(rng, c, 4, 3);
        if (g.is_zero()) continue;
        EXPECT_EQ(exact_divide(f * g, g), f);
    }
}

TEST(Polynomial, InexactDivisionIsDetected) {
    auto c = xyz();
    auto f = parse_polynomial(c, "x^2 + y");
    auto g = parse_polynomial(c, "x + 1");
    EXPECT_FALSE(try_exact_divide(f, g).has_value());
    EXPECT_THROW(exact_divide(f, g), InexactDivision);
    EXPECT_FALSE(try_exact_divide(parse_polynomial(c, "3*x"), Polynomial::constant(c, 2)).has_value());
}

TEST(Polynomial, ContentAndPrimitivePart) {
    auto c = xyz();
    auto f = parse_polynomial(c, "-6*x^3*y + 4*x^2*y^2");
    auto d = integer_content_and_primitive(f);
    EXPECT_EQ(d.content, Integer(2));
    EXPECT_EQ(d.monomial.exponents, (std::vector<Exponent>{2, 1, 0}));
    EXPECT_EQ(d.primitive.to_string(), "3*x - 2*y");
}

TEST(Polynomial, ReciprocalClearsDenominators) {
    auto c = xyz();
    auto f = parse_polynomial(c, "x^2*y + 3*z");
    auto [r, shift] = reciprocal(f);
    EXPECT_EQ(shift.exponents, (std::vector<Exponent>{2, 1, 1}));
    EXPECT_EQ(r, parse_polynomial(c, "z + 3*x^2*y"));
}

TEST(Polynomial, SubstitutionWithDenominators) {
    auto src = make_context({"a", "b"});
    auto dst = make_context({"s"});
    Substitution sub(src, dst);
    sub.map("a", Integer(1), Integer(2), "s", 1).map("b", Integer(3), Integer(1), "s", -1);
    auto r = sub.apply(parse_polynomial(src, "a^2 + b"));
    // s^2/4 + 3/s = (s^3 + 12) / (4 s)
    EXPECT_EQ(r.numerator, parse_polynomial(dst, "s^3 + 12"));
    EXPECT_EQ(r.denominator, Integer(4));
    EXPECT_EQ(r.denominator_monomial.exponents, (std::vector<Exponent>{1}));
}

TEST(Resultant, LinearFormsSignConvention) {
    auto c = make_context({"a", "b"});
    auto one = Polynomial::constant(c, 1);
    auto f = UniPoly::linear(-Polynomial::variable(c, 0), one);
    auto g = UniPoly::linear(-Polynomial::variable(c, 1), one);
    EXPECT_EQ(sylvester_resultant(f, g), parse_polynomial(c, "a - b"));
}

TEST(Resultant, ProductFormulaOverIntegerRoots) {
    // Res(f, g) = lc(f)^deg g * prod_{f(r)=0} g(r)
    auto c = make_context({"u"});
    auto k = [&](long v) { return Polynomial::constant(c, v); };
    // f = 2 (t - 1)(t - 2)(t + 3), g = t^2 - 5
    UniPoly f(c, {k(12), k(-14), k(0), k(2)});
    UniPoly g(c, {k(-5), k(0), k(1)});
    long want = 4;
    for (long r : {1L, 2L, -3L}) want *= r * r - 5;
    EXPECT_EQ(sylvester_resultant(f, g), k(want));
    // Res(g, f) = (-1)^{3*2} Res(f, g)
    EXPECT_EQ(sylvester_resultant(g, f), k(want));
}

TEST(Resultant, FormalDegreeBelowActual) {
    // Padding the formal degree of f by one multiplies by lc(g)^{+1} up to sign.
    auto c = make_context({"u"});
    auto k = [&](long v) { return Polynomial::constant(c, v); };
    UniPoly f(c, {k(1), k(1)});
    UniPoly g(c, {k(3), k(0), k(2)});
    auto r1 = sylvester_resultant(f, 1, g, 2);
    auto r2 = sylvester_resultant(f, 2, g, 2);
    EXPECT_EQ(r2, r1 * Integer(2));
}

TEST(Determinant, StrategiesAgree) {
    std::mt19937_64 rng(3);
    auto c = make_context({"x", "y"});
    for (std::size_t n : {2u, 3u, 4u, 5u}) {
        for (int rep = 0; rep < 4; ++rep) {
            PolyMatrix m(c, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m.at(i, j) = random_polynomial(rng, c, 2, 2, 4);
            auto d = cofactor_determinant(m);
            EXPECT_EQ(determinant(m), d);
            for (std::size_t k = 1; k < n; ++k) EXPECT_EQ(block_laplace_determinant(m, k), d);
        }
    }
}

TEST(Resultant, SylvesterRoutesAgreeWithEvaluation) {
    // Resultant commutes with specialization of coefficient variables.
    std::mt19937_64 rng(5);
    auto c = make_context({"p", "q"});
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Polynomial> fc, gc;
        for (int k = 0; k < 4; ++k) fc.push_back(random_polynomial(rng, c, 2, 1, 3));
        for (int k = 0; k < 3; ++k) gc.push_back(random_polynomial(rng, c, 2, 1, 3));
        fc.back() += Polynomial::constant(c, 5);
        gc.back() += Polynomial::constant(c, 5);
        UniPoly f(c, fc), g(c, gc);
        auto res = sylvester_resultant(f, 3, g, 2);
        auto bareiss = determinant(sylvester_matrix(f, 3, g, 2));
        EXPECT_EQ(res, bareiss);
    }
}
