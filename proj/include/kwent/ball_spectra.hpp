#pragma once

// Top eigenvalue of the Hamming-graph adjacency restricted to the ball
// B_r = {x : |x| <= r}, and its nonnegative eigenfunction.
//
// The restricted operator commutes with coordinate permutations, so its
// Perron vector is radial. On radial functions h(w) the action is
//   (A h)(w) = w h(w-1) + (n-w) h(w+1),   w = 0..r, h(r+1) = 0,
// which is similar (via v(w) = h(w) sqrt(C(n,w))) to the symmetric
// tridiagonal matrix with off-diagonal sqrt((w+1)(n-w)). Power iteration
// runs on that (r+1)-dimensional matrix.

#include <utility>
#include <vector>

#include "kwent/cube_fourier.hpp"

namespace kwent {

inline constexpr double kPowerTolerance = 1e-12;
inline constexpr long kMaxPowerIterations = 1'000'000;
inline constexpr int kDenseOracleMaxDim = 14;

struct BallSpectrum {
    int n = 0;
    int r = 0;
    double lambda = 0.0;
    // Pr(|Y| = w) for w = 0..r when Y has density d.
    std::vector<double> shell_mass;
    // d(x) for |x| = w, normalized so E[d] = 1. Empty when 2^n overflows.
    std::vector<double> profile;
    long iterations = 0;
    // || T v - lambda v || for the unit symmetric eigenvector v.
    double residual = 0.0;
    bool converged = true;
};

// Domain error unless 0 <= r <= n. Convergence: successive Rayleigh
// quotients within tol and residual below 1e-13 * max(1, lambda), or the
// iteration cap (converged = false).
BallSpectrum lambda_ball(int n, int r, double tol = kPowerTolerance);

// d lifted to the cube: d(x) = profile[|x|] on B_r, zero elsewhere.
Density ball_eigenfunction(const BallSpectrum& spec);

// Exact Shannon entropy (bits) of Y ~ d, from the shell masses.
double ball_entropy(const BallSpectrum& spec);

// Power iteration directly on the 2^n-dimensional ball-restricted
// adjacency, from a pseudorandom positive start. Independent check of the
// radial reduction; n <= kDenseOracleMaxDim.
double lambda_ball_dense_oracle(int n, int r);

struct RadiusChoice {
    int n = 0;
    int k = 0;
    int r = 0;
    double lambda = 0.0;
    double threshold = 0.0;           // n - 2k + 1
    double asymptotic_radius = 0.0;   // n/2 - sqrt(k(n-k)), for reporting only
};

// Smallest r with lambda_ball(n, r) >= n - 2k + 1, scanning upward.
RadiusChoice min_radius(int n, int k);

// (computed lambda_{B_r}, 2 sqrt(r(n-r))). Report only.
std::pair<double, double> ns_comparison(int n, int r);

}  // namespace kwent
