#include <gtest/gtest.h>

#include <bit>
#include <sstream>

#include "corpus.hpp"
#include "kwent/errors.hpp"
#include "kwent/gf2_codes.hpp"
#include "oracles.hpp"

namespace kwent {
namespace {

TEST(Bitstring, ParsesMostSignificantFirst) {
    EXPECT_EQ(parse_bitstring("100"), 0b100u);
    EXPECT_EQ(to_bitstring(0b011, 5), "00011");
    EXPECT_THROW(parse_bitstring("10a"), DomainError);
}

TEST(BinaryMatrix, IdentityHasFullRankAndTrivialNullspace) {
    const BinaryMatrix id = BinaryMatrix::identity(5);
    EXPECT_EQ(id.rank(), 5);
    EXPECT_TRUE(id.get(0, 0));
    EXPECT_FALSE(id.get(0, 1));
    EXPECT_EQ(id.nullspace().rows(), 0);
}

TEST(BinaryMatrix, RankOfDependentRows) {
    const auto m = BinaryMatrix::from_bitstrings({"1100", "0110", "1010"});
    EXPECT_EQ(m.rank(), 2);
    const BinaryMatrix ns = m.nullspace();
    EXPECT_EQ(ns.rows(), 2);
    for (std::uint64_t v : ns.row_bits()) {
        for (std::uint64_t r : m.row_bits()) EXPECT_EQ(std::popcount(v & r) % 2, 0);
    }
}

TEST(LinearCode, RejectsDependentGenerator) {
    EXPECT_THROW(LinearCode(BinaryMatrix::from_bitstrings({"110", "110"})), ValidationError);
    EXPECT_EQ(LinearCode::span_of(BinaryMatrix::from_bitstrings({"110", "110"})).dimension(), 1);
}

TEST(HammingCode, RepetitionCodeAtMTwo) {
    const LinearCode h = hamming_code(2);
    EXPECT_EQ(h.length(), 3);
    EXPECT_EQ(h.dimension(), 1);
    EXPECT_EQ(h.codewords(), (std::vector<std::uint64_t>{0b000, 0b111}));
}

TEST(HammingCode, SevenFourThree) {
    const LinearCode h = hamming_code(3);
    EXPECT_EQ(h.length(), 7);
    EXPECT_EQ(h.dimension(), 4);
    EXPECT_EQ(min_distance(h), 3);
    const BinaryMatrix pc = h.parity_check();
    EXPECT_EQ(pc.rows(), 3);
    EXPECT_TRUE(check_column_independence(pc, 2));
    EXPECT_FALSE(check_column_independence(pc, 3));
    std::size_t weight3 = 0;
    for (std::uint64_t w : h.codewords()) weight3 += std::popcount(w) == 3;
    EXPECT_EQ(weight3, 7u);
}

TEST(HammingCode, SyndromeIsXorOfCoordinateIndices) {
    for (int m = 2; m <= 4; ++m) {
        const int n = (1 << m) - 1;
        const LinearCode h = hamming_code(m);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            unsigned syndrome = 0;
            for (int j = 1; j <= n; ++j) {
                if ((x >> (n - j)) & 1) syndrome ^= static_cast<unsigned>(j);
            }
            ASSERT_EQ(h.contains(x), syndrome == 0) << to_bitstring(x, n);
        }
    }
}

TEST(SimplexCode, AllNonzeroWeightsEqual) {
    for (int m = 2; m <= 5; ++m) {
        const LinearCode s = simplex_code(m);
        EXPECT_EQ(s.length(), (1 << m) - 1);
        EXPECT_EQ(s.dimension(), m);
        for (std::uint64_t w : s.codewords()) {
            if (w != 0) EXPECT_EQ(std::popcount(w), 1 << (m - 1));
        }
        EXPECT_EQ(hadamard_code(m).codewords(), s.codewords());
    }
}

TEST(DualCode, DimensionsAddUpAndDualIsInvolution) {
    testing::Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const LinearCode c = testing::random_code(10, 1 + trial % 8, rng);
        const LinearCode d = dual_code(c);
        EXPECT_EQ(c.dimension() + d.dimension(), 10);
        EXPECT_EQ(dual_code(d).codewords(), c.codewords());
    }
    EXPECT_EQ(dual_code(hamming_code(3)).codewords(), simplex_code(3).codewords());
}

TEST(ColumnIndependence, ZeroAndRepeatedColumns) {
    const auto m = BinaryMatrix::from_bitstrings({"1110", "0111"});
    EXPECT_TRUE(check_column_independence(m, 1));
    EXPECT_FALSE(check_column_independence(m, 2));
    const auto z = BinaryMatrix::from_bitstrings({"100", "100"});
    EXPECT_FALSE(check_column_independence(z, 1));
    EXPECT_TRUE(check_column_independence(z, 0));
}

TEST(ColumnIndependence, AgreesWithDualDistance) {
    testing::Rng rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const LinearCode c = testing::random_code(9, 2 + trial % 5, rng);
        const int d = min_distance(c);
        const BinaryMatrix h = c.parity_check();
        EXPECT_TRUE(check_column_independence(h, d - 1));
        EXPECT_FALSE(check_column_independence(h, d));
    }
}

TEST(ColumnIndependence, GuardsEnumeration) {
    const BinaryMatrix id = BinaryMatrix::identity(64);
    EXPECT_THROW(check_column_independence(id, 10), ResourceError);
}

TEST(MinDistance, MatchesBruteForce) {
    testing::Rng rng(33);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 5 + trial % 10;
        const LinearCode c = testing::random_code(n, 1 + trial % (n - 1), rng);
        EXPECT_EQ(min_distance(c), testing::brute_force_min_distance(c));
    }
    EXPECT_EQ(min_distance(hamming_code(4)), 3);
    EXPECT_EQ(min_distance(simplex_code(4)), 8);
}

TEST(MinDistance, ZeroCodeConvention) {
    const LinearCode zero(BinaryMatrix(6));
    EXPECT_EQ(zero.dimension(), 0);
    EXPECT_EQ(min_distance(zero), 7);
}

TEST(SampleSpace, ValidatesInput) {
    EXPECT_THROW(SampleSpace(3, {1, 1}, {0.5, 0.5}), ValidationError);
    EXPECT_THROW(SampleSpace(3, {1, 2}, {1.5, -0.5}), ValidationError);
    EXPECT_THROW(SampleSpace(3, {1, 8}, {0.5, 0.5}), ValidationError);
    EXPECT_THROW(SampleSpace(3, {1, 2}, {0.5, 0.4}), ValidationError);
    const SampleSpace s(3, {5, 1}, {0.25, 0.75});
    EXPECT_EQ(s.points()[0], 1u);
    EXPECT_DOUBLE_EQ(s.probabilities()[0], 0.75);
}

TEST(UniformCodeSpace, SupportIsTheCode) {
    const SampleSpace s = uniform_code_space(hamming_code(3));
    EXPECT_EQ(s.support_size(), 16u);
    for (double p : s.probabilities()) EXPECT_DOUBLE_EQ(p, 1.0 / 16);
}

TEST(ParitySampler, EqualsUniformCodeSpaceOfRowSpan) {
    const auto full = BinaryMatrix::from_bitstrings({"1101", "0111"});
    const SampleSpace a = parity_sampler_space(full);
    const SampleSpace b = uniform_code_space(LinearCode(full));
    ASSERT_EQ(a.support_size(), b.support_size());
    for (std::size_t i = 0; i < a.support_size(); ++i) {
        EXPECT_EQ(a.points()[i], b.points()[i]);
        EXPECT_DOUBLE_EQ(a.probabilities()[i], b.probabilities()[i]);
    }
    // Dependent rows: images repeat and merge into the span.
    const auto dep = BinaryMatrix::from_bitstrings({"1101", "0111", "1010"});
    const SampleSpace c = parity_sampler_space(dep);
    EXPECT_EQ(c.support_size(), 4u);
    for (double p : c.probabilities()) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(TextFormats, SampleSpaceRoundTrip) {
    const SampleSpace s = uniform_code_space(simplex_code(3));
    std::stringstream buf;
    write_sample_space(buf, s);
    const SampleSpace back = read_sample_space(buf);
    EXPECT_EQ(back.dim(), 7);
    ASSERT_EQ(back.support_size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(back.points()[i], s.points()[i]);
}

TEST(TextFormats, CommentsAndRenormalization) {
    std::istringstream in("# two points\nn=3\n\n000 0.5\n111 0.5000000001\n");
    const SampleSpace s = read_sample_space(in);
    EXPECT_EQ(s.support_size(), 2u);
    EXPECT_NEAR(s.probabilities()[0] + s.probabilities()[1], 1.0, 1e-15);
}

TEST(TextFormats, ReportsLineOfBadInput) {
    std::istringstream bad("n=3\n000 0.5\n11x 0.5\n");
    try {
        read_sample_space(bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    std::istringstream wrong_len("n=3\n0000 1.0\n");
    EXPECT_THROW(read_sample_space(wrong_len), ParseError);
    std::istringstream short_sum("n=2\n00 0.5\n11 0.4\n");
    EXPECT_THROW(read_sample_space(short_sum), ValidationError);
}

TEST(TextFormats, BinaryMatrixRoundTripAndErrors) {
    const BinaryMatrix m = hamming_code(3).parity_check();
    std::stringstream buf;
    write_binary_matrix(buf, m);
    const BinaryMatrix back = read_binary_matrix(buf);
    EXPECT_EQ(back.rows(), m.rows());
    EXPECT_EQ(back.cols(), m.cols());
    for (int i = 0; i < m.rows(); ++i) EXPECT_EQ(back.row(i), m.row(i));
    std::istringstream missing("2 3\n101\n");
    EXPECT_THROW(read_binary_matrix(missing), ParseError);
}

}  // namespace
}  // namespace kwent
