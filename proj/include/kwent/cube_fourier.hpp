#pragma once

// Dense real functions on the Boolean cube {0,1}^n and their Fourier
// (Walsh-Hadamard) analysis.
//
// Conventions, used everywhere in the library:
//   * a point x and a subset S of [n] are both bitmasks in [0, 2^n);
//     |S| is the population count;
//   * f^(S) = 2^-n * sum_x f(x) (-1)^{popcount(S & x)}   (expectation form);
//   * <f, g> = 2^-n * sum_x f(x) g(x);
//   * (f * g)(x) = 2^-n * sum_y f(y) g(y ^ x).
// Under these conventions the Hamming-graph adjacency operator satisfies
//   (A f)(x) = sum_i f(x ^ e_i) = 2^n * (L * f)(x)
// with L the 0/1 indicator of weight-one points.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kwent {

class CubeFunction {
public:
    // Throws SizeError if values.size() != 2^n or n is outside the cap,
    // ValidationError if any value is not finite.
    CubeFunction(int n, std::vector<double> values);

    static CubeFunction zeros(int n);
    static CubeFunction constant(int n, double c);
    static CubeFunction indicator(int n, std::uint64_t x);

    int dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::uint64_t x) const { return values_[x]; }

    double mean() const;

private:
    int n_;
    std::vector<double> values_;
};

// Normalized probability density: f(x) = 2^n Pr(X = x), so E[f] = 1.
class Density {
public:
    static constexpr double kMeanTolerance = 1e-12;

    // Strict: every value >= 0 and |mean - 1| <= kMeanTolerance.
    explicit Density(CubeFunction f);

    // Clamps rounding-level negatives (>= -1e-12 relative to the max) to
    // zero and rescales to mean exactly 1. Throws ValidationError on real
    // negativity or a zero function.
    static Density normalized(CubeFunction f);

    static Density uniform(int n);
    static Density point_mass(int n, std::uint64_t x);

    const CubeFunction& function() const noexcept { return f_; }
    operator const CubeFunction&() const noexcept { return f_; }
    int dim() const noexcept { return f_.dim(); }
    double operator[](std::uint64_t x) const { return f_[x]; }

private:
    CubeFunction f_;
};

class Spectrum {
public:
    Spectrum(int n, std::vector<double> coeffs);

    int dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](std::uint64_t s) const { return coeffs_[s]; }

private:
    int n_;
    std::vector<double> coeffs_;
};

Spectrum wht(const CubeFunction& f);
CubeFunction inverse_wht(const Spectrum& s);

// f * g via pointwise spectral product and one inverse transform.
CubeFunction convolve(const CubeFunction& f, const CubeFunction& g);

double inner_product(const CubeFunction& f, const CubeFunction& g);

// sum_S a^(S) b^(S); equals inner_product of the sources (Plancherel).
double plancherel_sum(const Spectrum& a, const Spectrum& b);

// (A f)(x) = sum_i f(x ^ e_i), direct neighbour summation.
CubeFunction adjacency_apply(const CubeFunction& f);

// The weight-one indicator L. Its unnormalized transform is n - 2|S|.
CubeFunction weight_one_indicator(int n);

// Eigenvalue of A on the character chi_S: n - 2|S|.
inline double adjacency_eigenvalue(int n, int level) { return n - 2.0 * level; }

// entry j = sum_{|S| = j} s[S]^2
std::vector<double> level_profile(const Spectrum& s);

// entry j = max_{|S| = j} |s[S]|
std::vector<double> level_max_abs(const Spectrum& s);

}  // namespace kwent
