#pragma once

// Smoothing Z = X xor Y with Y drawn from the ball eigenfunction d, and
// numeric certification of the two entropy-bound proof chains.

#include <iosfwd>
#include <string>
#include <vector>

#include "kwent/ball_spectra.hpp"
#include "kwent/kwise.hpp"

namespace kwent {

inline constexpr double kChainTolerance = 1e-8;

// Density g = f * d of Z. Values outside supp(X) xor B_r are exact zeros.
Distribution smooth(const Distribution& x, const BallSpectrum& spec);

struct SmoothingReport {
    int order_x = 0;
    int order_z = 0;
    bool marginal_checked = false;  // brute-force cross-check ran (n <= 12)
    int marginal_order_z = 0;
    bool a_pass = false;

    double h_x = 0.0;
    double h_y = 0.0;
    double h_z = 0.0;
    bool b_pass = false;

    double max_pointwise_error = 0.0;  // spectral g vs direct double sum, density units
    bool c_pass = false;

    bool all_pass() const { return a_pass && b_pass && c_pass; }
};

// Failures are reported, never thrown.
SmoothingReport verify_smoothing(const Distribution& x, const BallSpectrum& spec, double tol = 1e-10);

struct ChainLine {
    std::string label;
    double lhs = 0.0;
    std::string relation;  // "<=", ">=", "=="
    double rhs = 0.0;
    double slack = 0.0;    // >= 0 means the relation holds
    bool certified = true; // informational lines are recorded, not asserted
    bool pass = true;
};

struct ChainReport {
    int theorem = 0;  // 1 or 2
    int n = 0;
    int k = 0;        // input is (k-1)-wise independent
    int r = 0;
    double lambda_r = 0.0;
    double e_g_sq = 0.0;
    double lhs_rayleigh = 0.0;  // <Ag, g>
    double ub_stated = 0.0;      // n + (n-2k) E[g^2]  (half chain: n + 1 - E[f^2])
    double ub_tight = 0.0;      // n + (n-2k)(E[g^2] - 1)
    double lb_stated = 0.0;      // lambda_r E[g^2]
    bool final_check = false;
    double h_x = 0.0;
    double h_y = 0.0;
    double cap_binom_r = 0.0;    // log2 C(n, r)
    double cap_ball = 0.0;       // log2 sum_{i<=r} C(n, i)
    double cap_entropy_fn = 0.0; // n H(r/n)
    double h_z = 0.0;
    double h2_z = 0.0;
    double bound = 0.0;          // certified lower bound on H(X)
    std::vector<double> level_weights;  // sum_{|S|=j} g^(S)^2
    std::vector<ChainLine> lines;

    bool all_pass() const;
};

// Requires half_order(n, rounding)-wise independence; PreconditionError
// otherwise, naming the first offending level and coefficient.
ChainReport theorem2_chain(const Distribution& x, HalfRounding rounding = HalfRounding::floor);

// Requires (k-1)-wise independence and 1 <= k <= n. For 2k > n the radius
// is 0 and the level argument bounds E[f^2] by 2k / (2k - n).
ChainReport theorem1_chain(const Distribution& x, int k);

void write_chain_text(std::ostream& out, const ChainReport& r);
std::string chain_csv_header();
std::string chain_csv_row(const ChainReport& r);

}  // namespace kwent
