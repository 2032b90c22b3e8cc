#include "kwent/kwise.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kwent/config.hpp"
#include "kwent/errors.hpp"
#include "kwent/summation.hpp"

namespace kwent {

namespace {

double binomial_double(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

// Gathers the bits of x selected by mask into the low bits, preserving
// order (the most significant selected bit lands highest).
std::uint64_t compress(std::uint64_t x, std::uint64_t mask) {
    std::uint64_t out = 0;
    int pos = 0;
    while (mask) {
        const int b = std::countr_zero(mask);
        out |= ((x >> b) & 1U) << pos;
        ++pos;
        mask &= mask - 1;
    }
    return out;
}

// Next mask with the same popcount (Gosper).
std::uint64_t next_same_weight(std::uint64_t v) {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

// Max deviation over all subsets of exactly `size` coordinates, updating
// the report when a strictly larger deviation is found.
void scan_level(const Distribution& d, int size, std::vector<double>& hist, MarginalReport& rep) {
    const int n = d.dim();
    const auto pts = d.space().points();
    const auto probs = d.space().probabilities();
    const double target = std::ldexp(1.0, -size);
    const std::uint64_t end = std::uint64_t{1} << n;
    std::uint64_t mask = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    while (mask < end) {
        hist.assign(std::size_t{1} << size, 0.0);
        for (std::size_t i = 0; i < pts.size(); ++i) hist[compress(pts[i], mask)] += probs[i];
        for (std::size_t a = 0; a < hist.size(); ++a) {
            const double dev = std::abs(hist[a] - target);
            if (dev > rep.max_deviation) {
                rep.max_deviation = dev;
                rep.witness_subset = mask;
                rep.witness_pattern = a;
            }
        }
        if (size == 0) break;
        mask = next_same_weight(mask);
    }
}

}  // namespace

Density density_from_space(const SampleSpace& s) {
    const int n = s.dim();
    require_dimension(n);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    const double scale = std::ldexp(1.0, n);
    const auto pts = s.points();
    const auto probs = s.probabilities();
    for (std::size_t i = 0; i < pts.size(); ++i) v[pts[i]] += scale * probs[i];
    return Density::normalized(CubeFunction(n, std::move(v)));
}

SampleSpace space_from_density(const Density& d) {
    const auto& f = d.function();
    const double scale = std::ldexp(1.0, -d.dim());
    std::vector<std::uint64_t> pts;
    std::vector<double> probs;
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] > 0.0) {
            pts.push_back(x);
            probs.push_back(f[x] * scale);
        }
    }
    const double total = compensated_sum(probs);
    for (double& p : probs) p /= total;
    return SampleSpace(d.dim(), std::move(pts), std::move(probs));
}

Distribution::Distribution(SampleSpace space)
    : space_(std::move(space)), density_(density_from_space(space_)), spectrum_(wht(density_)) {}

Distribution::Distribution(const Density& density)
    : space_(space_from_density(density)), density_(density_from_space(space_)), spectrum_(wht(density_)) {}

double Distribution::mean_square() const { return inner_product(density_, density_); }

std::optional<LevelViolation> first_violation(const Distribution& d, int k, double tol) {
    const int n = d.dim();
    if (k < 0 || k > n) throw DomainError("k must be in [0, n]");
    const auto& s = d.spectrum();
    std::optional<LevelViolation> best;
    for (std::uint64_t m = 1; m < s.size(); ++m) {
        const int level = std::popcount(m);
        if (level > k) continue;
        const double mag = std::abs(s[m]);
        if (mag <= tol) continue;
        if (!best || level < best->level || (level == best->level && mag > best->magnitude)) {
            best = LevelViolation{level, mag, m};
        }
    }
    return best;
}

int independence_order(const Distribution& d, double tol) {
    const auto peaks = level_max_abs(d.spectrum());
    const int n = d.dim();
    for (int j = 1; j <= n; ++j) {
        if (peaks[static_cast<std::size_t>(j)] > tol) return j - 1;
    }
    return n;
}

bool is_kwise(const Distribution& d, int k, double tol) {
    if (k < 0 || k > d.dim()) throw DomainError("k must be in [0, n]");
    return independence_order(d, tol) >= k;
}

MarginalReport marginal_check(const Distribution& d, int k) {
    const int n = d.dim();
    if (k < 0 || k > n) throw DomainError("k must be in [0, n]");
    if (binomial_double(n, k) * std::ldexp(1.0, k) > static_cast<double>(kEnumerationGuard)) {
        throw ResourceError("marginal enumeration C(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") * 2^" + std::to_string(k) + " exceeds the guard");
    }
    MarginalReport rep;
    rep.k = k;
    std::vector<double> hist;
    for (int size = 1; size <= k; ++size) scan_level(d, size, hist, rep);
    return rep;
}

int marginal_order(const Distribution& d, double tol) {
    const int n = d.dim();
    std::vector<double> hist;
    for (int size = 1; size <= n; ++size) {
        if (binomial_double(n, size) * std::ldexp(1.0, size) > static_cast<double>(kEnumerationGuard)) {
            throw ResourceError("marginal enumeration at level " + std::to_string(size) + " exceeds the guard");
        }
        MarginalReport rep;
        scan_level(d, size, hist, rep);
        if (rep.max_deviation >= tol) return size - 1;
    }
    return n;
}

int half_order(int n, HalfRounding rounding) { return rounding == HalfRounding::floor ? n / 2 : (n + 1) / 2; }

}  // namespace kwent
