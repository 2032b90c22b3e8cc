#pragma once

// Random and hand-built test distributions.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kwent/gf2_codes.hpp"

namespace kwent::testing {

using Rng = std::mt19937_64;

// Dirichlet(1, ..., 1) weights.
std::vector<double> dirichlet(std::size_t m, Rng& rng);

// Random full-rank generator of the given dimension.
LinearCode random_code(int n, int dim, Rng& rng);

// Random code whose dual distance is at least t + 1, so its uniform
// distribution is t-wise independent. The dual distance is verified by
// enumeration; rejection sampling over the dual dimension.
LinearCode random_code_with_order(int n, int t, Rng& rng);

// Mixture (Dirichlet weights) of 1..3 random cosets of random codes, each
// of order >= t. Mixtures and cosets preserve t-wise independence.
SampleSpace random_kwise_space(int n, int t, Rng& rng);

// Arbitrary random distribution: random support size, Dirichlet masses.
SampleSpace random_space(int n, Rng& rng);

// Product of n independent bits with Pr(bit = 1) = p.
SampleSpace biased_product(int n, double p);

struct CorpusEntry {
    std::string name;
    SampleSpace space;
};

// Fixed corpus: Hamming 3/7/15, simplex 7, uniform 4/8, point masses,
// biased products, and seeded random code spaces at n = 6, 8, 10, 12.
std::vector<CorpusEntry> standard_corpus();

}  // namespace kwent::testing
