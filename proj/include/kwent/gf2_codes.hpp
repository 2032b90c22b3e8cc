#pragma once

// Bit-packed GF(2) linear algebra and code-based sample spaces.
//
// Column c of a matrix (0-based, c = coordinate - 1) is stored at bit
// (cols - 1 - c) of each packed row, so a row printed MSB-first reads
// left to right as coordinates 1..n. Points of the cube use the same
// packing.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kwent {

inline constexpr int kMaxCodeLength = 64;
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

std::string to_bitstring(std::uint64_t mask, int n);
// Throws DomainError on characters other than '0'/'1' or length > 64.
std::uint64_t parse_bitstring(std::string_view bits);

class BinaryMatrix {
public:
    BinaryMatrix(int rows, int cols, std::vector<std::uint64_t> row_bits);
    // An empty (0 x cols) matrix.
    explicit BinaryMatrix(int cols);

    static BinaryMatrix identity(int n);
    static BinaryMatrix from_bitstrings(const std::vector<std::string>& rows);

    int rows() const noexcept { return static_cast<int>(rows_.size()); }
    int cols() const noexcept { return cols_; }
    std::span<const std::uint64_t> row_bits() const noexcept { return rows_; }
    std::uint64_t row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
    bool get(int row, int col) const;
    int rank() const noexcept { return rank_; }

    // Reduced row echelon basis of the row space (rank() rows).
    BinaryMatrix row_basis() const;
    // Basis of {v : every row has even overlap with v}.
    BinaryMatrix nullspace() const;

private:
    int cols_;
    std::vector<std::uint64_t> rows_;
    int rank_ = 0;
};

// Reduced row echelon form; pivots are chosen from the most significant
// bit down. Returned rows are nonzero and linearly independent.
std::vector<std::uint64_t> reduced_echelon(std::vector<std::uint64_t> rows);

class LinearCode {
public:
    // Throws ValidationError unless the generator rows are independent.
    explicit LinearCode(BinaryMatrix generator);
    // Code spanned by arbitrary (possibly dependent) rows.
    static LinearCode span_of(const BinaryMatrix& rows);

    int length() const noexcept { return generator_.cols(); }
    int dimension() const noexcept { return generator_.rows(); }
    const BinaryMatrix& generator() const noexcept { return generator_; }
    // Generator of the dual code, i.e. a parity-check matrix of this code.
    BinaryMatrix parity_check() const { return generator_.nullspace(); }

    bool contains(std::uint64_t word) const;
    // All 2^dimension codewords in ascending order. Guarded by
    // kEnumerationGuard.
    std::vector<std::uint64_t> codewords() const;

private:
    BinaryMatrix generator_;
    BinaryMatrix basis_;  // reduced echelon form, used for membership
};

// [2^m - 1, 2^m - 1 - m] Hamming code. The parity-check column for
// coordinate j is the binary encoding of j. Requires 2 <= m <= 6.
LinearCode hamming_code(int m);
// [2^m - 1, m] simplex code: the dual of hamming_code(m). Every nonzero
// codeword has weight 2^(m-1).
LinearCode simplex_code(int m);
// The finite-length realization of the "Hadamard code"; same as simplex_code.
inline LinearCode hadamard_code(int m) { return simplex_code(m); }

LinearCode dual_code(const LinearCode& c);

// True iff every set of at most t columns is linearly independent.
// ResourceError when C(cols, t) > kEnumerationGuard.
bool check_column_independence(const BinaryMatrix& m, int t);

// Minimum weight of a nonzero codeword. The zero code has no such word;
// by convention its distance is length() + 1, which keeps the identity
// "independence order of the uniform dual = distance - 1" exact.
int min_distance(const LinearCode& c);

class SampleSpace {
public:
    static constexpr double kSumTolerance = 1e-12;

    // Points are sorted ascending on construction. Throws ValidationError
    // on duplicates, negative probabilities, points outside the cube, or
    // a total differing from 1 by more than kSumTolerance.
    SampleSpace(int n, std::vector<std::uint64_t> points, std::vector<double> probabilities);

    static SampleSpace uniform(int n);
    static SampleSpace point_mass(int n, std::uint64_t x = 0);

    int dim() const noexcept { return n_; }
    std::size_t support_size() const noexcept { return points_.size(); }
    std::span<const std::uint64_t> points() const noexcept { return points_; }
    std::span<const double> probabilities() const noexcept { return probs_; }

private:
    int n_;
    std::vector<std::uint64_t> points_;
    std::vector<double> probs_;
};

// Uniform distribution on the codewords. Requires dimension <= 26.
SampleSpace uniform_code_space(const LinearCode& c);

// Distribution of y^T M for uniform y in F_2^rows, enumerated directly over
// all y (repeated images merge). Requires rows <= 26.
SampleSpace parity_sampler_space(const BinaryMatrix& m);

// Text formats.
//   SampleSpace:  "n=<int>" then "<bitstring> <probability>" per line.
//   BinaryMatrix: "<rows> <cols>" then one bitstring per row.
// Blank lines and lines starting with '#' are ignored. Sample spaces must
// sum to 1 within 1e-9 and are renormalized exactly on load.
inline constexpr double kLoadSumTolerance = 1e-9;

SampleSpace read_sample_space(std::istream& in);
void write_sample_space(std::ostream& out, const SampleSpace& s);
BinaryMatrix read_binary_matrix(std::istream& in);
void write_binary_matrix(std::ostream& out, const BinaryMatrix& m);

}  // namespace kwent
