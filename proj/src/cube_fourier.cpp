#include "kwent/cube_fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "kwent/config.hpp"
#include "kwent/errors.hpp"
#include "kwent/summation.hpp"

namespace kwent {

namespace {

void check_length(int n, std::size_t len) {
    require_dimension(n);
    if (len != (std::size_t{1} << n)) {
        throw SizeError("expected 2^" + std::to_string(n) + " entries, got " + std::to_string(len));
    }
}

void check_finite(std::span<const double> v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw ValidationError("non-finite value at index " + std::to_string(i));
        }
    }
}

void check_same_dim(int a, int b) {
    if (a != b) {
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

// Unnormalized in-place butterfly: v <- H v with H_{S,x} = (-1)^{|S & x|}.
// Stages run in a fixed order, so results are bit-reproducible.
void butterfly(std::vector<double>& v) {
    const std::size_t len = v.size();
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

CubeFunction::CubeFunction(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    check_length(n_, values_.size());
    check_finite(values_);
}

CubeFunction CubeFunction::zeros(int n) {
    require_dimension(n);
    return CubeFunction(n, std::vector<double>(std::size_t{1} << n, 0.0));
}

CubeFunction CubeFunction::constant(int n, double c) {
    require_dimension(n);
    return CubeFunction(n, std::vector<double>(std::size_t{1} << n, c));
}

CubeFunction CubeFunction::indicator(int n, std::uint64_t x) {
    require_dimension(n);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    if (x >= v.size()) throw DomainError("point outside the cube");
    v[x] = 1.0;
    return CubeFunction(n, std::move(v));
}

double CubeFunction::mean() const { return compensated_sum(values_) / static_cast<double>(values_.size()); }

Density::Density(CubeFunction f) : f_(std::move(f)) {
    for (std::size_t x = 0; x < f_.size(); ++x) {
        if (f_[x] < 0.0) {
            throw ValidationError("density is negative at point " + std::to_string(x));
        }
    }
    const double m = f_.mean();
    if (std::abs(m - 1.0) > kMeanTolerance) {
        throw ValidationError("density mean is " + std::to_string(m) + ", expected 1");
    }
}

Density Density::normalized(CubeFunction f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    const double peak = *std::max_element(v.begin(), v.end());
    if (!(peak > 0.0)) throw ValidationError("density has no positive mass");
    const double floor = -1e-12 * peak;
    for (double& x : v) {
        if (x < floor) throw ValidationError("density has a genuinely negative value");
        if (x < 0.0) x = 0.0;
    }
    const double total = compensated_sum(v);
    const double scale = static_cast<double>(v.size()) / total;
    for (double& x : v) x *= scale;
    return Density(CubeFunction(f.dim(), std::move(v)));
}

Density Density::uniform(int n) { return Density(CubeFunction::constant(n, 1.0)); }

Density Density::point_mass(int n, std::uint64_t x) {
    require_dimension(n);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    if (x >= v.size()) throw DomainError("point outside the cube");
    v[x] = static_cast<double>(v.size());
    return Density(CubeFunction(n, std::move(v)));
}

Spectrum::Spectrum(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    check_length(n_, coeffs_.size());
    check_finite(coeffs_);
}

Spectrum wht(const CubeFunction& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    butterfly(v);
    const double scale = 1.0 / static_cast<double>(v.size());
    for (double& c : v) c *= scale;
    return Spectrum(f.dim(), std::move(v));
}

CubeFunction inverse_wht(const Spectrum& s) {
    std::vector<double> v(s.coeffs().begin(), s.coeffs().end());
    butterfly(v);
    return CubeFunction(s.dim(), std::move(v));
}

CubeFunction convolve(const CubeFunction& f, const CubeFunction& g) {
    check_same_dim(f.dim(), g.dim());
    const Spectrum fs = wht(f);
    const Spectrum gs = wht(g);
    std::vector<double> prod(fs.size());
    for (std::size_t s = 0; s < prod.size(); ++s) prod[s] = fs[s] * gs[s];
    return inverse_wht(Spectrum(f.dim(), std::move(prod)));
}

double inner_product(const CubeFunction& f, const CubeFunction& g) {
    check_same_dim(f.dim(), g.dim());
    double acc = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) acc += f[x] * g[x];
    return acc / static_cast<double>(f.size());
}

double plancherel_sum(const Spectrum& a, const Spectrum& b) {
    check_same_dim(a.dim(), b.dim());
    double acc = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) acc += a[s] * b[s];
    return acc;
}

CubeFunction adjacency_apply(const CubeFunction& f) {
    const int n = f.dim();
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += f[x ^ (std::size_t{1} << i)];
        out[x] = acc;
    }
    return CubeFunction(n, std::move(out));
}

CubeFunction weight_one_indicator(int n) {
    require_dimension(n);
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (int i = 0; i < n; ++i) v[std::size_t{1} << i] = 1.0;
    return CubeFunction(n, std::move(v));
}

std::vector<double> level_profile(const Spectrum& s) {
    std::vector<double> out(static_cast<std::size_t>(s.dim()) + 1, 0.0);
    for (std::uint64_t m = 0; m < s.size(); ++m) out[std::popcount(m)] += s[m] * s[m];
    return out;
}

std::vector<double> level_max_abs(const Spectrum& s) {
    std::vector<double> out(static_cast<std::size_t>(s.dim()) + 1, 0.0);
    for (std::uint64_t m = 0; m < s.size(); ++m) {
        auto& slot = out[std::popcount(m)];
        slot = std::max(slot, std::abs(s[m]));
    }
    return out;
}

}  // namespace kwent
