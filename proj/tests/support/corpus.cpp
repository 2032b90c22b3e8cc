#include "corpus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "kwent/errors.hpp"

namespace kwent::testing {

std::vector<double> dirichlet(std::size_t m, Rng& rng) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::vector<double> w(m);
    double total = 0.0;
    for (double& x : w) {
        x = gamma(rng);
        total += x;
    }
    for (double& x : w) x /= total;
    return w;
}

LinearCode random_code(int n, int dim, Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> word(0, (std::uint64_t{1} << n) - 1);
    while (true) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(dim));
        for (auto& r : rows) r = word(rng);
        BinaryMatrix m(dim, n, rows);
        if (m.rank() == dim) return LinearCode(std::move(m));
    }
}

LinearCode random_code_with_order(int n, int t, Rng& rng) {
    if (t >= n) return LinearCode(BinaryMatrix::identity(n));
    // Dual dimension d must admit distance t+1; try large d first and
    // back off after repeated rejections.
    for (int dual_dim = n - t; dual_dim >= 1; --dual_dim) {
        std::uniform_int_distribution<int> pick(1, dual_dim);
        for (int attempt = 0; attempt < 400; ++attempt) {
            const int d = pick(rng);
            const LinearCode dual = random_code(n, d, rng);
            if (min_distance(dual) >= t + 1) return dual_code(dual);
        }
    }
    return LinearCode(BinaryMatrix::identity(n));
}

SampleSpace random_kwise_space(int n, int t, Rng& rng) {
    std::uniform_int_distribution<int> parts_dist(1, 3);
    std::uniform_int_distribution<std::uint64_t> shift(0, (std::uint64_t{1} << n) - 1);
    const int parts = parts_dist(rng);
    const auto weights = dirichlet(static_cast<std::size_t>(parts), rng);
    std::map<std::uint64_t, double> mass;
    for (int p = 0; p < parts; ++p) {
        const LinearCode code = random_code_with_order(n, t, rng);
        const std::uint64_t a = shift(rng);
        const auto words = code.codewords();
        const double each = weights[static_cast<std::size_t>(p)] / static_cast<double>(words.size());
        for (std::uint64_t w : words) mass[w ^ a] += each;
    }
    std::vector<std::uint64_t> pts;
    std::vector<double> probs;
    double total = 0.0;
    for (const auto& [x, q] : mass) {
        pts.push_back(x);
        probs.push_back(q);
        total += q;
    }
    for (double& q : probs) q /= total;
    return SampleSpace(n, std::move(pts), std::move(probs));
}

SampleSpace random_space(int n, Rng& rng) {
    const std::uint64_t size = std::uint64_t{1} << n;
    std::uniform_int_distribution<std::uint64_t> support_dist(1, size);
    const std::uint64_t support = support_dist(rng);
    std::vector<std::uint64_t> all(size);
    for (std::uint64_t x = 0; x < size; ++x) all[x] = x;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(support);
    return SampleSpace(n, std::move(all), dirichlet(support, rng));
}

SampleSpace biased_product(int n, double p) {
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<std::uint64_t> pts(size);
    std::vector<double> probs(size);
    for (std::uint64_t x = 0; x < size; ++x) {
        const int ones = std::popcount(x);
        pts[x] = x;
        probs[x] = std::pow(p, ones) * std::pow(1.0 - p, n - ones);
    }
    double total = 0.0;
    for (double q : probs) total += q;
    for (double& q : probs) q /= total;
    return SampleSpace(n, std::move(pts), std::move(probs));
}

std::vector<CorpusEntry> standard_corpus() {
    std::vector<CorpusEntry> out;
    out.push_back({"hamming-3", uniform_code_space(hamming_code(2))});
    out.push_back({"hamming-7", uniform_code_space(hamming_code(3))});
    out.push_back({"hamming-15", uniform_code_space(hamming_code(4))});
    out.push_back({"simplex-7", uniform_code_space(simplex_code(3))});
    out.push_back({"uniform-4", SampleSpace::uniform(4)});
    out.push_back({"uniform-8", SampleSpace::uniform(8)});
    out.push_back({"point-5", SampleSpace::point_mass(5)});
    out.push_back({"point-8", SampleSpace::point_mass(8, 0b10110001)});
    out.push_back({"biased-6", biased_product(6, 0.6)});
    Rng rng(20261016);
    for (int n : {6, 8, 10, 12}) {
        for (int t : {1, 2, n / 2 - 1, n / 2}) {
            out.push_back({"random-code-n" + std::to_string(n) + "-t" + std::to_string(t),
                           uniform_code_space(random_code_with_order(n, t, rng))});
            out.push_back({"random-mix-n" + std::to_string(n) + "-t" + std::to_string(t),
                           random_kwise_space(n, t, rng)});
        }
    }
    return out;
}

}  // namespace kwent::testing
