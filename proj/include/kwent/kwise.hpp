#pragma once

#include <cstdint>
#include <optional>

#include "kwent/cube_fourier.hpp"
#include "kwent/gf2_codes.hpp"

namespace kwent {

// Tolerance for treating a Fourier coefficient as a structural zero.
inline constexpr double kZeroTolerance = 1e-9;

// f(x) = 2^n Pr(X = x), renormalized to mean exactly 1.
Density density_from_space(const SampleSpace& s);

// Inverse of density_from_space: points with positive mass.
SampleSpace space_from_density(const Density& d);

// A distribution on {0,1}^n together with its density and spectrum, both
// computed eagerly so a Distribution can be shared freely.
class Distribution {
public:
    explicit Distribution(SampleSpace space);
    explicit Distribution(const Density& density);

    int dim() const noexcept { return space_.dim(); }
    const SampleSpace& space() const noexcept { return space_; }
    const Density& density() const noexcept { return density_; }
    const Spectrum& spectrum() const noexcept { return spectrum_; }

    // E[f^2] computed on the density side.
    double mean_square() const;

private:
    SampleSpace space_;
    Density density_;
    Spectrum spectrum_;
};

// Largest k such that |f^(S)| <= tol for every 1 <= |S| <= k. Returns n
// when every nonempty coefficient vanishes.
int independence_order(const Distribution& d, double tol = kZeroTolerance);
bool is_kwise(const Distribution& d, int k, double tol = kZeroTolerance);

// First level in [1, k] carrying a coefficient above tol, if any.
struct LevelViolation {
    int level = 0;
    double magnitude = 0.0;
    std::uint64_t subset = 0;
};
std::optional<LevelViolation> first_violation(const Distribution& d, int k, double tol = kZeroTolerance);

// Brute-force marginal deviation over every |S| <= k and every pattern a.
struct MarginalReport {
    int k = 0;
    double max_deviation = 0.0;
    std::uint64_t witness_subset = 0;   // packed like a point
    std::uint64_t witness_pattern = 0;  // |S| bits, first coordinate of S most significant
};

// Guard: C(n, k) * 2^k <= kEnumerationGuard, else ResourceError.
MarginalReport marginal_check(const Distribution& d, int k);

// Largest k whose marginals all deviate by less than tol, found by brute
// force level by level. Throws ResourceError if a level exceeds the guard.
int marginal_order(const Distribution& d, double tol = kZeroTolerance);

// How "n/2-wise" is read for odd n.
enum class HalfRounding { floor, ceil };
int half_order(int n, HalfRounding rounding = HalfRounding::floor);

}  // namespace kwent
