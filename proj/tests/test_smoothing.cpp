#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "corpus.hpp"
#include "kwent/ball_spectra.hpp"
#include "kwent/entropy_bounds.hpp"
#include "kwent/errors.hpp"
#include "kwent/smoothing.hpp"
#include "oracles.hpp"

namespace kwent {
namespace {

Distribution hamming(int m) { return Distribution(uniform_code_space(hamming_code(m))); }

const ChainLine& line(const ChainReport& r, const std::string& label) {
    for (const auto& l : r.lines) {
        if (l.label == label) return l;
    }
    throw std::runtime_error("no line " + label);
}

TEST(Smooth, RadiusZeroIsIdentity) {
    const Distribution x = hamming(3);
    const Distribution z = smooth(x, lambda_ball(7, 0));
    for (std::uint64_t v = 0; v < 128; ++v) EXPECT_NEAR(z.density()[v], x.density()[v], 1e-12);
}

TEST(Smooth, PointMassAtOriginGivesBallDensity) {
    const BallSpectrum s = lambda_ball(8, 2);
    const Distribution z = smooth(Distribution(SampleSpace::point_mass(8)), s);
    const Density d = ball_eigenfunction(s);
    for (std::uint64_t v = 0; v < 256; ++v) EXPECT_NEAR(z.density()[v], d[v], 1e-10);
}

TEST(Smooth, UniformStaysUniform) {
    const Distribution z = smooth(Distribution(SampleSpace::uniform(6)), lambda_ball(6, 2));
    for (std::uint64_t v = 0; v < 64; ++v) EXPECT_NEAR(z.density()[v], 1.0, 1e-12);
}

TEST(Smooth, DimensionMismatch) {
    EXPECT_THROW(smooth(hamming(3), lambda_ball(8, 1)), DimensionMismatch);
}

TEST(VerifySmoothing, HammingSevenAcrossRadii) {
    for (int r = 1; r <= 3; ++r) {
        const SmoothingReport rep = verify_smoothing(hamming(3), lambda_ball(7, r));
        EXPECT_TRUE(rep.all_pass()) << r;
        EXPECT_EQ(rep.order_x, 3);
        EXPECT_GE(rep.order_z, 3);
        EXPECT_TRUE(rep.marginal_checked);
        EXPECT_LT(rep.max_pointwise_error, 1e-12);
    }
}

TEST(VerifySmoothing, PointMassIsVacuousAndZEqualsY) {
    const SmoothingReport rep = verify_smoothing(Distribution(SampleSpace::point_mass(6)), lambda_ball(6, 1));
    EXPECT_TRUE(rep.all_pass());
    EXPECT_EQ(rep.order_x, 0);
    EXPECT_DOUBLE_EQ(rep.h_x, 0.0);
    EXPECT_NEAR(rep.h_y, rep.h_z, 1e-12);
}

TEST(VerifySmoothing, RandomKwiseInputs) {
    testing::Rng rng(51);
    for (int trial = 0; trial < 6; ++trial) {
        const Distribution x(testing::random_kwise_space(9, 2 + trial % 3, rng));
        const SmoothingReport rep = verify_smoothing(x, lambda_ball(9, 1 + trial % 3));
        EXPECT_TRUE(rep.all_pass()) << trial;
    }
}

TEST(Theorem2Chain, HammingIsTight) {
    for (int m : {2, 3, 4}) {
        const int n = (1 << m) - 1;
        const ChainReport r = theorem2_chain(hamming(m));
        EXPECT_TRUE(r.all_pass()) << n;
        EXPECT_NEAR(r.e_g_sq, n + 1.0, 1e-9);
        EXPECT_NEAR(r.h_x, n - m, 1e-12);
        EXPECT_NEAR(r.h2_z, n - m, 1e-12);
        EXPECT_NEAR(line(r, "<Af,f> >= 0").slack, 0.0, 1e-9);
    }
}

TEST(Theorem2Chain, UniformHasFullSlack) {
    const ChainReport r = theorem2_chain(Distribution(SampleSpace::uniform(8)));
    EXPECT_TRUE(r.all_pass());
    EXPECT_DOUBLE_EQ(r.e_g_sq, 1.0);
    EXPECT_NEAR(line(r, "E[f^2] <= n + 1").slack, 8.0, 1e-12);
}

TEST(Theorem2Chain, EvenNMiddleLevelCarriesZeroWeight) {
    // Order 4 at n = 8 leaves Fourier weight on levels 5 and up only.
    testing::Rng rng(52);
    const Distribution x(uniform_code_space(testing::random_code_with_order(8, 4, rng)));
    const ChainReport r = theorem2_chain(x);
    EXPECT_TRUE(r.all_pass());
    for (int j = 1; j <= 4; ++j) EXPECT_NEAR(r.level_weights[static_cast<std::size_t>(j)], 0.0, 1e-12);
}

TEST(Theorem2Chain, PreconditionNamesLevel) {
    try {
        theorem2_chain(Distribution(uniform_code_space(simplex_code(3))));
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("level 3"), std::string::npos) << e.what();
    }
    // Reading n/2 as 4 at n = 7 asks for more than the Hamming space has.
    EXPECT_THROW(theorem2_chain(hamming(3), HalfRounding::ceil), PreconditionError);
}

TEST(Theorem1Chain, HammingFifteenAtFour) {
    const ChainReport r = theorem1_chain(hamming(4), 4);
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.r, 3);
    EXPECT_NEAR(r.lambda_r, 8.608477839577311, 1e-9);
    EXPECT_TRUE(r.final_check);
    EXPECT_LE(r.lb_stated, r.lhs_rayleigh + 1e-8);
    EXPECT_LE(r.lhs_rayleigh, r.ub_stated + 1e-8);
    EXPECT_NEAR(r.bound, 0.26418798108104635, 1e-12);
    EXPECT_GE(r.h_x, r.bound);
}

TEST(Theorem1Chain, HammingSevenAtThree) {
    const ChainReport r = theorem1_chain(hamming(3), 3);
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.r, 1);
    EXPECT_NEAR(r.lambda_r, std::sqrt(7.0), 1e-10);
    EXPECT_LE(r.lb_stated, r.lhs_rayleigh + 1e-8);
    EXPECT_LE(r.lhs_rayleigh, r.ub_stated + 1e-8);
    EXPECT_LE((r.lambda_r - 1.0) * r.e_g_sq, 7.0 + 1e-8);
}

TEST(Theorem1Chain, UniformInput) {
    const ChainReport r = theorem1_chain(Distribution(SampleSpace::uniform(10)), 3);
    EXPECT_TRUE(r.all_pass());
    EXPECT_NEAR(r.e_g_sq, 1.0, 1e-12);
}

TEST(Theorem1Chain, RecordsAllThreeCaps) {
    const ChainReport r = theorem1_chain(hamming(4), 4);
    EXPECT_NEAR(r.cap_binom_r, std::log2(455.0), 1e-12);
    EXPECT_NEAR(r.cap_ball, std::log2(576.0), 1e-12);
    EXPECT_NEAR(r.cap_entropy_fn, 15 * binary_entropy(0.2), 1e-12);
    // The single-shell cap is not an upper bound on H(Y) here.
    const ChainLine& l = line(r, "H(Y) <= log2 C(n,r)");
    EXPECT_FALSE(l.certified);
    EXPECT_FALSE(l.pass);
    EXPECT_TRUE(line(r, "H(Y) <= log2 |B_r|").pass);
}

TEST(Theorem1Chain, RadiusBeyondHalfFallsBackToBallVolume) {
    const ChainReport r = theorem1_chain(Distribution(SampleSpace::uniform(7)), 1);
    EXPECT_EQ(r.r, 4);
    EXPECT_TRUE(r.all_pass());
    EXPECT_FALSE(line(r, "log2 |B_r| <= n H(r/n)").certified);
    EXPECT_NEAR(r.bound, 7 - std::log2(7.0) - log2_ball_volume(7, 4), 1e-12);
}

TEST(Theorem1Chain, DegeneratesToHalfChainAtOddN) {
    for (int m : {2, 3, 4}) {
        const int n = (1 << m) - 1;
        const Distribution x = hamming(m);
        const ChainReport one = theorem1_chain(x, (n + 1) / 2);
        const ChainReport two = theorem2_chain(x);
        EXPECT_EQ(one.r, 0);
        EXPECT_TRUE(one.all_pass());
        EXPECT_NEAR(one.e_g_sq, two.e_g_sq, 1e-12);
        EXPECT_NEAR(one.bound, two.bound, 1e-12);
        EXPECT_NEAR(one.h2_z, two.h2_z, 1e-12);
    }
}

TEST(Theorem1Chain, Preconditions) {
    EXPECT_THROW(theorem1_chain(Distribution(SampleSpace::point_mass(6)), 2), PreconditionError);
    EXPECT_NO_THROW(theorem1_chain(Distribution(SampleSpace::point_mass(6)), 1));
    EXPECT_THROW(theorem1_chain(hamming(3), 8), DomainError);
}

TEST(ChainOutput, TextAndCsv) {
    const ChainReport r = theorem1_chain(hamming(3), 3);
    std::ostringstream text;
    write_chain_text(text, r);
    EXPECT_NE(text.str().find("PASS"), std::string::npos);
    EXPECT_EQ(text.str().find("FAIL"), std::string::npos);
    const auto commas = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    EXPECT_EQ(commas(chain_csv_header()), commas(chain_csv_row(r)));
}

}  // namespace
}  // namespace kwent
