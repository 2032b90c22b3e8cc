#include "kwent/gf2_codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "kwent/errors.hpp"
#include "kwent/summation.hpp"

namespace kwent {

namespace {

std::uint64_t low_mask(int cols) {
    return cols >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cols) - 1;
}

int column_bit(int col, int cols) { return cols - 1 - col; }

void check_cols(int cols) {
    if (cols < 1 || cols > kMaxCodeLength) {
        throw DomainError("column count " + std::to_string(cols) + " outside [1, 64]");
    }
}

// Exact C(n, k), saturating at max uint64.
std::uint64_t binomial_saturating(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(acc);
}

// Calls visit(word) for every word in the span of basis, Gray-code order.
template <class Visit>
void for_each_span_word(std::span<const std::uint64_t> basis, Visit&& visit) {
    const std::uint64_t count = std::uint64_t{1} << basis.size();
    std::uint64_t word = 0;
    visit(word);
    for (std::uint64_t i = 1; i < count; ++i) {
        word ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
        visit(word);
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool skip_line(const std::string& s) { return s.empty() || s.front() == '#'; }

std::uint64_t parse_bits_at(std::size_t line, const std::string& tok, int n) {
    if (static_cast<int>(tok.size()) != n) {
        throw ParseError(line, "bitstring '" + tok + "' has length " + std::to_string(tok.size()) +
                                   ", expected " + std::to_string(n));
    }
    try {
        return parse_bitstring(tok);
    } catch (const DomainError& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace

std::string to_bitstring(std::uint64_t mask, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int c = 0; c < n; ++c) {
        if ((mask >> column_bit(c, n)) & 1U) s[static_cast<std::size_t>(c)] = '1';
    }
    return s;
}

std::uint64_t parse_bitstring(std::string_view bits) {
    if (bits.empty() || bits.size() > 64) throw DomainError("bitstring length must be in [1, 64]");
    std::uint64_t v = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw DomainError(std::string("invalid bit character '") + ch + "'");
        v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return v;
}

std::vector<std::uint64_t> reduced_echelon(std::vector<std::uint64_t> rows) {
    std::size_t rank = 0;
    for (int bit = 63; bit >= 0 && rank < rows.size(); --bit) {
        const std::uint64_t b = std::uint64_t{1} << bit;
        auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                                  [b](std::uint64_t r) { return (r & b) != 0; });
        if (pivot == rows.end()) continue;
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
        const std::uint64_t p = rows[rank];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && (rows[i] & b)) rows[i] ^= p;
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

BinaryMatrix::BinaryMatrix(int rows, int cols, std::vector<std::uint64_t> row_bits)
    : cols_(cols), rows_(std::move(row_bits)) {
    check_cols(cols);
    if (rows < 0 || static_cast<std::size_t>(rows) != rows_.size()) {
        throw SizeError("row count does not match the packed rows");
    }
    const std::uint64_t mask = low_mask(cols);
    for (std::uint64_t r : rows_) {
        if (r & ~mask) throw ValidationError("row has bits outside the column range");
    }
    rank_ = static_cast<int>(reduced_echelon(rows_).size());
}

BinaryMatrix::BinaryMatrix(int cols) : BinaryMatrix(0, cols, {}) {}

BinaryMatrix BinaryMatrix::identity(int n) {
    check_cols(n);
    std::vector<std::uint64_t> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = std::uint64_t{1} << column_bit(i, n);
    return BinaryMatrix(n, n, std::move(r));
}

BinaryMatrix BinaryMatrix::from_bitstrings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw DomainError("cannot infer column count from zero rows");
    const int cols = static_cast<int>(rows.front().size());
    std::vector<std::uint64_t> bits;
    bits.reserve(rows.size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols) throw DomainError("ragged bitstring rows");
        bits.push_back(parse_bitstring(r));
    }
    return BinaryMatrix(static_cast<int>(rows.size()), cols, std::move(bits));
}

bool BinaryMatrix::get(int row, int col) const {
    return (rows_.at(static_cast<std::size_t>(row)) >> column_bit(col, cols_)) & 1U;
}

BinaryMatrix BinaryMatrix::row_basis() const {
    auto basis = reduced_echelon(rows_);
    const int r = static_cast<int>(basis.size());
    return BinaryMatrix(r, cols_, std::move(basis));
}

BinaryMatrix BinaryMatrix::nullspace() const {
    const auto basis = reduced_echelon(rows_);
    std::vector<int> pivot_bit;
    std::uint64_t pivots = 0;
    for (std::uint64_t r : basis) {
        const int p = 63 - std::countl_zero(r);
        pivot_bit.push_back(p);
        pivots |= std::uint64_t{1} << p;
    }
    std::vector<std::uint64_t> out;
    for (int c = 0; c < cols_; ++c) {
        const int bit = column_bit(c, cols_);
        const std::uint64_t b = std::uint64_t{1} << bit;
        if (pivots & b) continue;
        std::uint64_t v = b;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i] & b) v |= std::uint64_t{1} << pivot_bit[i];
        }
        out.push_back(v);
    }
    const int r = static_cast<int>(out.size());
    return BinaryMatrix(r, cols_, std::move(out));
}

LinearCode::LinearCode(BinaryMatrix generator)
    : generator_(std::move(generator)), basis_(generator_.row_basis()) {
    if (generator_.rank() != generator_.rows()) {
        throw ValidationError("generator rows are linearly dependent");
    }
}

LinearCode LinearCode::span_of(const BinaryMatrix& rows) { return LinearCode(rows.row_basis()); }

bool LinearCode::contains(std::uint64_t word) const {
    for (std::uint64_t r : basis_.row_bits()) {
        const std::uint64_t lead = std::uint64_t{1} << (63 - std::countl_zero(r));
        if (word & lead) word ^= r;
    }
    return word == 0;
}

std::vector<std::uint64_t> LinearCode::codewords() const {
    if (dimension() >= 63 || (std::uint64_t{1} << dimension()) > kEnumerationGuard) {
        throw ResourceError("code dimension " + std::to_string(dimension()) +
                            " too large to enumerate");
    }
    std::vector<std::uint64_t> words;
    words.reserve(std::size_t{1} << dimension());
    for_each_span_word(generator_.row_bits(), [&](std::uint64_t w) { words.push_back(w); });
    std::sort(words.begin(), words.end());
    return words;
}

LinearCode hamming_code(int m) {
    if (m < 2 || m > 6) throw DomainError("Hamming code parameter m must be in [2, 6]");
    const int n = (1 << m) - 1;
    // Row i of the parity check holds bit i of each column label j = 1..n.
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < m; ++i) {
            if ((j >> i) & 1) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << column_bit(j - 1, n);
        }
    }
    return LinearCode(BinaryMatrix(m, n, std::move(rows)).nullspace());
}

LinearCode simplex_code(int m) {
    if (m < 2 || m > 6) throw DomainError("simplex code parameter m must be in [2, 6]");
    const int n = (1 << m) - 1;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
    for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < m; ++i) {
            if ((j >> i) & 1) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << column_bit(j - 1, n);
        }
    }
    return LinearCode(BinaryMatrix(m, n, std::move(rows)));
}

LinearCode dual_code(const LinearCode& c) { return LinearCode(c.generator().nullspace()); }

bool check_column_independence(const BinaryMatrix& m, int t) {
    const int cols = m.cols();
    if (t < 0 || t > cols) throw DomainError("t must be in [0, cols]");
    if (binomial_saturating(cols, t) > kEnumerationGuard) {
        throw ResourceError("C(" + std::to_string(cols) + ", " + std::to_string(t) +
                            ") exceeds the enumeration guard");
    }
    // Row operations preserve column dependencies; after reduction there
    // are at most 64 rows, so each column packs into one word.
    const auto basis = reduced_echelon(std::vector<std::uint64_t>(m.row_bits().begin(), m.row_bits().end()));
    std::vector<std::uint64_t> column(static_cast<std::size_t>(cols), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (int c = 0; c < cols; ++c) {
            if ((basis[i] >> column_bit(c, cols)) & 1U) column[static_cast<std::size_t>(c)] |= std::uint64_t{1} << i;
        }
    }
    // A set of <= t columns is dependent iff some nonempty subset of size
    // <= t sums to zero.
    bool dependent = false;
    auto search = [&](auto&& self, int start, int depth, std::uint64_t acc) -> void {
        for (int c = start; c < cols && !dependent; ++c) {
            const std::uint64_t next = acc ^ column[static_cast<std::size_t>(c)];
            if (next == 0) {
                dependent = true;
                return;
            }
            if (depth + 1 < t) self(self, c + 1, depth + 1, next);
        }
    };
    if (t > 0) search(search, 0, 0, 0);
    return !dependent;
}

int min_distance(const LinearCode& c) {
    if (c.dimension() >= 63 || (std::uint64_t{1} << c.dimension()) > kEnumerationGuard) {
        throw ResourceError("code dimension too large for distance enumeration");
    }
    int best = c.length() + 1;
    for_each_span_word(c.generator().row_bits(), [&](std::uint64_t w) {
        if (w != 0) best = std::min(best, std::popcount(w));
    });
    return best;
}

SampleSpace::SampleSpace(int n, std::vector<std::uint64_t> points, std::vector<double> probabilities)
    : n_(n) {
    if (n < 1 || n > kMaxCodeLength) throw SizeError("sample space dimension must be in [1, 64]");
    if (points.size() != probabilities.size()) throw SizeError("points and probabilities differ in length");
    if (points.empty()) throw ValidationError("sample space is empty");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    const std::uint64_t mask = low_mask(n);
    points_.reserve(points.size());
    probs_.reserve(points.size());
    for (std::size_t i : order) {
        const std::uint64_t x = points[i];
        const double p = probabilities[i];
        if (x & ~mask) throw ValidationError("point outside {0,1}^" + std::to_string(n));
        if (!points_.empty() && points_.back() == x) {
            throw ValidationError("duplicate point " + to_bitstring(x, n));
        }
        if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("invalid probability for point " + to_bitstring(x, n));
        points_.push_back(x);
        probs_.push_back(p);
    }
    const double total = compensated_sum(probs_);
    if (std::abs(total - 1.0) > kSumTolerance) {
        std::ostringstream os;
        os << std::setprecision(17) << "probabilities sum to " << total << ", expected 1";
        throw ValidationError(os.str());
    }
}

SampleSpace SampleSpace::uniform(int n) {
    if (n < 1 || n > 26) throw SizeError("uniform space dimension must be in [1, 26]");
    const std::size_t count = std::size_t{1} << n;
    std::vector<std::uint64_t> pts(count);
    std::iota(pts.begin(), pts.end(), std::uint64_t{0});
    return SampleSpace(n, std::move(pts), std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

SampleSpace SampleSpace::point_mass(int n, std::uint64_t x) { return SampleSpace(n, {x}, {1.0}); }

SampleSpace uniform_code_space(const LinearCode& c) {
    if (c.dimension() > 26) throw SizeError("code dimension exceeds 26");
    auto words = c.codewords();
    const double p = 1.0 / static_cast<double>(words.size());
    std::vector<double> probs(words.size(), p);
    return SampleSpace(c.length(), std::move(words), std::move(probs));
}

SampleSpace parity_sampler_space(const BinaryMatrix& m) {
    if (m.rows() > 26) throw SizeError("sampler seed length exceeds 26");
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    for_each_span_word(m.row_bits(), [&](std::uint64_t w) { ++counts[w]; });
    const double total = std::ldexp(1.0, m.rows());
    std::vector<std::uint64_t> pts;
    std::vector<double> probs;
    pts.reserve(counts.size());
    probs.reserve(counts.size());
    for (const auto& [w, cnt] : counts) {
        pts.push_back(w);
        probs.push_back(static_cast<double>(cnt) / total);
    }
    return SampleSpace(m.cols(), std::move(pts), std::move(probs));
}

SampleSpace read_sample_space(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    int n = -1;
    std::vector<std::uint64_t> pts;
    std::vector<double> probs;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (skip_line(line)) continue;
        if (n < 0) {
            if (line.rfind("n=", 0) != 0) throw ParseError(line_no, "expected header 'n=<int>'");
            const std::string v = line.substr(2);
            int parsed = 0;
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
            if (ec != std::errc{} || ptr != v.data() + v.size() || parsed < 1 || parsed > kMaxCodeLength) {
                throw ParseError(line_no, "invalid dimension '" + v + "'");
            }
            n = parsed;
            continue;
        }
        std::istringstream fields(line);
        std::string bits;
        std::string prob_tok;
        std::string extra;
        if (!(fields >> bits >> prob_tok) || (fields >> extra)) {
            throw ParseError(line_no, "expected '<bitstring> <probability>'");
        }
        const std::uint64_t x = parse_bits_at(line_no, bits, n);
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(prob_tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != prob_tok.size() || !std::isfinite(p) || p < 0.0) {
            throw ParseError(line_no, "invalid probability '" + prob_tok + "'");
        }
        pts.push_back(x);
        probs.push_back(p);
    }
    if (n < 0) throw ParseError(line_no, "missing header 'n=<int>'");
    if (pts.empty()) throw ParseError(line_no, "no points");
    const double total = compensated_sum(probs);
    if (std::abs(total - 1.0) > kLoadSumTolerance) {
        std::ostringstream os;
        os << std::setprecision(12) << "probabilities sum to " << total << ", expected 1 +- 1e-9";
        throw ValidationError(os.str());
    }
    for (double& p : probs) p /= total;
    return SampleSpace(n, std::move(pts), std::move(probs));
}

void write_sample_space(std::ostream& out, const SampleSpace& s) {
    out << "n=" << s.dim() << '\n';
    const auto pts = s.points();
    const auto probs = s.probabilities();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << to_bitstring(pts[i], s.dim()) << ' ' << std::setprecision(17) << probs[i] << '\n';
    }
}

BinaryMatrix read_binary_matrix(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    int rows = -1;
    int cols = -1;
    std::vector<std::uint64_t> bits;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (skip_line(line)) continue;
        if (rows < 0) {
            std::istringstream hdr(line);
            std::string extra;
            if (!(hdr >> rows >> cols) || (hdr >> extra) || rows < 0 || cols < 1 || cols > kMaxCodeLength) {
                throw ParseError(line_no, "expected header '<rows> <cols>' with 1 <= cols <= 64");
            }
            continue;
        }
        if (static_cast<int>(bits.size()) == rows) throw ParseError(line_no, "more rows than declared");
        bits.push_back(parse_bits_at(line_no, line, cols));
    }
    if (rows < 0) throw ParseError(line_no, "missing header '<rows> <cols>'");
    if (static_cast<int>(bits.size()) != rows) throw ParseError(line_no, "fewer rows than declared");
    return BinaryMatrix(rows, cols, std::move(bits));
}

void write_binary_matrix(std::ostream& out, const BinaryMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::uint64_t r : m.row_bits()) out << to_bitstring(r, m.cols()) << '\n';
}

}  // namespace kwent
