#include <gtest/gtest.h>

#include <apolar/random.hpp>
#include <apolar/secant.hpp>
#include <apolar/tangent.hpp>

#include "oracles.hpp"

using namespace apolar;

TEST(InSigma2, Examples)
{
    for (unsigned d = 3; d <= 7; ++d) {
        Exponent a(3), b(3), c(3);
        a[0] = d;
        b[1] = d;
        c[0] = d - 1;
        c[1] = 1;
        EXPECT_TRUE(in_sigma2(Form::monomial(a) + Form::monomial(b)));
        EXPECT_FALSE(in_sigma2(canonical_form(OrbitClass::Fermat, d, 2)));
        EXPECT_TRUE(in_sigma2(Form::monomial(c)));
        EXPECT_EQ(oracle::flattening_rank(Form::monomial(c), 2), 2u);
    }
    EXPECT_THROW(in_sigma2(parse_form("x0")), PreconditionError);
}

TEST(InSigma3, Examples)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_TRUE(in_sigma3(sample_rank_le(3, 4 + seed % 3, 2 + seed % 3, seed)));
    }
    EXPECT_TRUE(in_sigma3(sample_rank_le(3, 5, 3, 7)));
    for (unsigned d = 4; d <= 7; ++d) {
        EXPECT_TRUE(in_sigma3(canonical_form(OrbitClass::Mixed, d, 2)));
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Form g = random_form(3, 4, seed);
        EXPECT_FALSE(in_sigma3(g));
        EXPECT_EQ(oracle::flattening_rank(g, 2), 6u);
    }
    EXPECT_THROW(in_sigma3(parse_form("x0*x1")), PreconditionError);
}

TEST(InSigma3, CubicCaveat)
{
    const auto v = membership(canonical_form(OrbitClass::Fermat, 3, 2));
    EXPECT_TRUE(v.in_sigma3);
    ASSERT_TRUE(v.caveat.has_value());
    EXPECT_EQ(*v.caveat, d3_caveat);
    EXPECT_FALSE(membership(canonical_form(OrbitClass::Fermat, 4, 2)).caveat.has_value());
}

TEST(DegenerateLocus, Examples)
{
    const Form fd = canonical_form(OrbitClass::DegenerateBinary, 4, 3);
    EXPECT_EQ(fd, parse_form("x0^4 + x1^4 + x0^4 + 4*x0^3*x1 + 6*x0^2*x1^2 + 4*x0*x1^3 + x1^4", 4));
    EXPECT_TRUE(in_degenerate_locus(fd));
    EXPECT_TRUE(in_degenerate_locus(canonical_form(OrbitClass::DegenerateBinary, 4, 2)));
    EXPECT_FALSE(in_degenerate_locus(canonical_form(OrbitClass::Fermat, 4, 2)));
    EXPECT_FALSE(in_degenerate_locus(parse_form("x0^4 + x1^4", 3)));
    EXPECT_THROW(in_degenerate_locus(canonical_form(OrbitClass::Fermat, 3, 2)), PreconditionError);
}

TEST(BorderRankLowerBound, Examples)
{
    for (unsigned d = 3; d <= 7; ++d) {
        Exponent a(3), c(3);
        a[0] = d;
        c[0] = d - 1;
        c[1] = 1;
        EXPECT_EQ(border_rank_lower_bound(Form::monomial(a)), 1u);
        EXPECT_EQ(border_rank_lower_bound(Form::monomial(c)), 2u);
        EXPECT_EQ(border_rank_lower_bound(canonical_form(OrbitClass::Fermat, d, 2)), 3u);
    }
}

TEST(ExpectedCodim, Examples)
{
    EXPECT_EQ(expected_codim(4, 2), 6);
    EXPECT_EQ(expected_codim(4, 3), 23);
    EXPECT_EQ(expected_codim(3, 2), 1);
    for (unsigned d = 3; d <= 10; ++d) {
        for (unsigned n = 2; n <= 5; ++n) {
            EXPECT_EQ(expected_codim(d, n), oracle::expected_codim(d, n));
        }
    }
    EXPECT_THROW(expected_codim(2, 2), PreconditionError);
    EXPECT_THROW(expected_codim(4, 1), PreconditionError);
}

TEST(Membership, WitnessRanksAndZeroForm)
{
    const auto v = membership(canonical_form(OrbitClass::Unmixed, 6, 2));
    EXPECT_FALSE(v.in_sigma2);
    EXPECT_TRUE(v.in_sigma3);
    EXPECT_FALSE(v.witness_ranks.empty());
    for (const auto &[k, r] : v.witness_ranks) {
        EXPECT_EQ(r, oracle::flattening_rank(canonical_form(OrbitClass::Unmixed, 6, 2), k));
    }
    const auto z = membership(Form(3, 4));
    EXPECT_TRUE(z.in_sigma1 && z.in_sigma2 && z.in_sigma3);
    EXPECT_FALSE(z.in_D);
    ASSERT_TRUE(z.caveat.has_value());
    EXPECT_EQ(*z.caveat, zero_form_note);
}
