#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "toric/discriminant.hpp"

using namespace toric;
using toric::testing::eval;
using toric::testing::random_nonzero_rational;

namespace {

BConfig intro_b() { return validate_b({{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}, {-2, 0}, {0, -2}, {2, 2}}); }
ContextPtr intro_x() { return x_context(9, {"a", "b", "c", "d", "e", "f", "g", "h", "i"}); }

bool equal_up_to_sign(const Polynomial& f, const Polynomial& g) { return f == g || f == -g; }

BConfig random_disc_b(std::mt19937_64& rng, std::int64_t max_degree) {
    while (true) {
        auto b = toric::testing::random_b(rng, 6, 3, true);
        if (is_prime(b) && compute_stats(b).degree <= max_degree) return b;
    }
}

}  // namespace

TEST(FullDiscriminant, IntroductionFactorization) {
    auto x = intro_x();
    auto e = dual_full_discriminant(intro_b(), x);
    EXPECT_EQ(e.size(), 12u);
    Polynomial want = Polynomial::constant(x, 16384);
    for (const char* f : {"a*e*h^2 - b*d*g^2", "a*f*i^2 - c*d*g^2", "b*f*i^2 - c*e*h^2",
                          "a^2*e^2*f^2*h^4*i^4 + b^2*d^2*f^2*g^4*i^4 + c^2*d^2*e^2*g^4*h^4"
                          " - 2*a*b*d*e*f^2*g^2*h^2*i^4 - 2*a*c*d*f*e^2*g^2*h^4*i^2 - 2*b*c*e*f*d^2*g^4*h^2*i^2"})
        want *= parse_polynomial(x, f);
    EXPECT_TRUE(equal_up_to_sign(e, want));
}

TEST(FullDiscriminant, FastRouteRejectsOffAxisLines) {
    EXPECT_TRUE(has_off_axis_relevant_line(intro_b()));
    EXPECT_THROW(fast_dual_full_discriminant(intro_b()), PreconditionError);
}

TEST(FullDiscriminant, RoutesAgree) {
    std::mt19937_64 rng(61);
    int done = 0;
    while (done < 8) {
        auto b = random_disc_b(rng, 8);
        if (has_off_axis_relevant_line(b)) continue;
        ++done;
        auto x = x_context(b.size());
        auto e = dual_full_discriminant(b, x);
        EXPECT_EQ(fast_dual_full_discriminant(b, x), e);
        auto y = chow_context(b.size());
        EXPECT_EQ(dual_full_discriminant_from_chow(b, chow_form(b, y).polynomial, x), e);
    }
}

TEST(FullDiscriminant, ReciprocityIsAnInvolution) {
    auto b = intro_b();
    auto e = dual_full_discriminant(b);
    auto full = full_discriminant_from_dual(b, e);
    EXPECT_EQ(reciprocity(full, 13), e);
    EXPECT_THROW(reciprocity(e, 1), InternalError);
}

TEST(Residual, IntroductionMultiplicities) {
    auto rf = residual_factors(intro_b());
    EXPECT_TRUE(rf.notes.empty());
    ASSERT_EQ(rf.multiplicities.size(), 6u);
    for (const auto& m : rf.multiplicities) EXPECT_EQ(m.found, m.expected);
    EXPECT_EQ(rf.degree1, 2);
    EXPECT_EQ(rf.degree2, 2);
}

TEST(Residual, ZeroRowsRejected) {
    auto b = validate_b({{1, 0}, {0, 1}, {-1, -1}, {0, 0}});
    EXPECT_THROW(residual_factors(b), PreconditionError);
    EXPECT_THROW(a_discriminant(b), PreconditionError);
}

TEST(ADiscriminant, Introduction) {
    auto x = intro_x();
    auto r = a_discriminant(intro_b(), x);
    EXPECT_EQ(r.D_A.size(), 6u);
    EXPECT_EQ(r.D_A.total_degree(), 10);
    EXPECT_EQ(r.facets.size(), 3u);
    ASSERT_TRUE(r.E_A.has_value());
    // E_A = nu' x^u' D_A prod D_v
    Polynomial rebuilt = Polynomial::term(x, r.u_prime.exponents, r.nu_prime) * r.D_A;
    for (const auto& f : r.facets) rebuilt *= primitive_part(f.binomial);
    EXPECT_EQ(rebuilt, *r.E_A);
}

TEST(ADiscriminant, TwistedCubic) {
    auto b = gale_dual_b(AConfig{{{1, 1, 1, 1}, {0, 1, 2, 3}}});
    auto x = x_context(4);
    auto r = a_discriminant(b, x);
    auto want = parse_polynomial(x, "27*x1^2*x4^2 - 18*x1*x2*x3*x4 + 4*x1*x3^3 + 4*x2^3*x4 - x2^2*x3^2");
    EXPECT_TRUE(equal_up_to_sign(r.D_A, want));
    ASSERT_TRUE(r.E_A.has_value());
    EXPECT_TRUE(r.facets.empty());
    EXPECT_TRUE(exact_divide(*r.E_A, r.D_A).is_monomial());
}

TEST(ADiscriminant, CentrallySymmetricIsTrivial) {
    auto r = a_discriminant(validate_b({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, -1}}));
    EXPECT_TRUE(r.D_A.is_one());
}

TEST(ADiscriminant, ResidualDefinitionRecovered) {
    // D_A = (1/nu) x^u r_B(1/x)
    auto b = intro_b();
    auto x = intro_x();
    auto r = a_discriminant(b, x, {false});
    std::mt19937_64 rng(63);
    for (int k = 0; k < 5; ++k) {
        auto p = toric::testing::random_point(rng, 9);
        std::vector<mpq_class> inv(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) inv[i] = 1 / p[i];
        mpq_class rhs = eval(r.r_B, inv) / mpq_class(r.nu.to_mpz());
        for (std::size_t i = 0; i < p.size(); ++i)
            for (Exponent e = 0; e < r.u.exponents[i]; ++e) rhs *= p[i];
        EXPECT_EQ(eval(r.D_A, p), rhs);
    }
}

TEST(ADiscriminant, VanishesOnParametrizedLocus) {
    std::mt19937_64 rng(67);
    for (int c = 0; c < 6; ++c) {
        auto b = random_disc_b(rng, 10);
        auto r = a_discriminant(b);
        ASSERT_TRUE(r.E_A.has_value());
        int hits = 0;
        for (int k = 0; k < 40 && hits < 10; ++k) {
            std::vector<mpq_class> s(b.size() - 2);
            for (auto& v : s) v = random_nonzero_rational(rng, -5, 5);
            auto pt = discriminant_locus_point(b, random_nonzero_rational(rng, -6, 6), s);
            if (!pt) continue;
            ++hits;
            EXPECT_EQ(eval(r.D_A, *pt), 0);
            EXPECT_EQ(eval(*r.E_A, *pt), 0);
        }
        EXPECT_GT(hits, 0);
    }
}

TEST(Locus, RightInverse) {
    std::mt19937_64 rng(71);
    for (int k = 0; k < 50; ++k) {
        auto b = toric::testing::random_b(rng, 8, 5, false);
        if (!is_prime(b)) {
            EXPECT_THROW(integer_right_inverse(b), NotPrime);
            continue;
        }
        auto c = integer_right_inverse(b);
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t m = 0; m < 2; ++m) {
                std::int64_t s = 0;
                for (std::size_t i = 0; i < b.size(); ++i) s += b[i][l] * c[i][m];
                EXPECT_EQ(s, l == m ? 1 : 0);
            }
    }
}

TEST(Horn, LiftMatchesResidualRoute) {
    auto x = intro_x();
    auto hc = horn_implicitize(intro_b(), x);
    EXPECT_TRUE(equal_up_to_sign(hc.lifted, a_discriminant(intro_b(), x, {false}).D_A));
    std::mt19937_64 rng(73);
    for (int k = 0; k < 8; ++k) {
        auto b = random_disc_b(rng, 10);
        auto xb = x_context(b.size());
        EXPECT_TRUE(equal_up_to_sign(horn_implicitize(b, xb).lifted, a_discriminant(b, xb, {false}).D_A));
    }
}

TEST(Horn, CurvePassesThroughUniformization) {
    auto hc = horn_implicitize(intro_b());
    for (long t : {2L, 3L, -5L, 7L}) {
        auto w = horn_point(intro_b(), mpq_class(t, 3));
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(eval(hc.delta, {(*w)[0], (*w)[1]}), 0);
    }
    EXPECT_FALSE(horn_point(intro_b(), mpq_class(0)).has_value());
}
