#pragma once

// Entropy functionals (bits) and the lower bounds on the joint entropy of
// k-wise independent unbiased bits.

#include <iosfwd>
#include <optional>
#include <string>

#include "kwent/gf2_codes.hpp"
#include "kwent/kwise.hpp"

namespace kwent {

double shannon_entropy(const SampleSpace& s);
// -log2 sum p^2
double renyi2_entropy(const SampleSpace& s);
// n - log2 E[f^2], the same quantity computed from the density.
double renyi2_from_density(const Density& f);

// -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0. DomainError outside [0, 1].
double binary_entropy(double p);

// log2 C(n, k), exact big-integer binomial before the logarithm.
double log2_binomial(int n, int k);
// log2 sum_{i <= r} C(n, i): log of the ball volume.
double log2_ball_volume(int n, int r);

// n - log2(n + 1); valid for floor(n/2)-wise independent inputs.
double bound_thm_half(int n);

// log2 C(n, floor(k/2)) for k-wise independent inputs.
double bound_gp(int n, int k);

// Finite-n bound for (k-1)-wise independent inputs.
//   2k <= n: r = min_radius(n, k); if 2r <= n the bound is
//            n - n H(r/n) - log2 n, otherwise not applicable.
//   2k >  n: no smoothing is needed (r = 0) and the level argument gives
//            E[f^2] <= 2k / (2k - n), i.e. n - log2(2k / (2k - n)).
struct ExplicitBound {
    int n = 0;
    int k = 0;
    int radius = 0;
    double lambda = 0.0;
    double threshold = 0.0;
    bool applicable = false;
    double value = 0.0;
    std::string note;
};
ExplicitBound bound_thm_main_explicit(int n, int k);

// Leading term n - n H(1/2 - sqrt((k/n)(1 - k/n))) with no finite-n
// correction. Display only; never a certificate. Requires 1 <= k <= n/2.
double bound_asymptotic_display(int n, int k);

struct BoundReport {
    int n = 0;
    int order = 0;  // certified independence order t
    int k = 0;      // the input is (k-1)-wise, k = min(t+1, n)
    std::size_t support = 0;
    double shannon = 0.0;
    double renyi2 = 0.0;
    double renyi2_density = 0.0;
    std::optional<double> thm_half;
    ExplicitBound thm_main;
    double gp = 0.0;
    std::optional<double> asymptotic;  // display only

    // Largest certified bound (thm_half, thm_main when applicable, gp).
    double best_bound() const;
    // Every certified bound is at most shannon + 1e-9, and shannon >= renyi2 - 1e-9.
    bool consistent() const;
};

BoundReport evaluate(const Distribution& d, HalfRounding rounding = HalfRounding::floor);

void write_report_text(std::ostream& out, const BoundReport& r);
std::string report_csv_header();
std::string report_csv_row(const BoundReport& r);

}  // namespace kwent
