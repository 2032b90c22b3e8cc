#include "kwent/ball_spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "kwent/config.hpp"
#include "kwent/errors.hpp"

namespace kwent {

namespace {

// Breaks the +-lambda symmetry of the bipartite restricted graph.
constexpr double kShift = 1.0;

double ln_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_ball(int n, int r) {
    if (n < 1) throw DomainError("n must be positive");
    if (r < 0 || r > n) {
        throw DomainError("radius " + std::to_string(r) + " outside [0, " + std::to_string(n) + "]");
    }
}

// y = T v for the symmetric radial matrix with off-diagonal `off`.
void tridiagonal_apply(const std::vector<double>& off, const std::vector<double>& v, std::vector<double>& y) {
    const std::size_t m = v.size();
    for (std::size_t w = 0; w < m; ++w) {
        double acc = 0.0;
        if (w > 0) acc += off[w - 1] * v[w - 1];
        if (w + 1 < m) acc += off[w] * v[w + 1];
        y[w] = acc;
    }
}

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

}  // namespace

BallSpectrum lambda_ball(int n, int r, double tol) {
    check_ball(n, r);
    BallSpectrum out;
    out.n = n;
    out.r = r;
    const std::size_t m = static_cast<std::size_t>(r) + 1;

    std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
    if (r > 0) {
        std::vector<double> off(m - 1);
        for (std::size_t w = 0; w + 1 < m; ++w) {
            off[w] = std::sqrt(static_cast<double>(w + 1) * static_cast<double>(n - static_cast<int>(w)));
        }
        std::vector<double> tv(m);
        tridiagonal_apply(off, v, tv);
        double rho = 0.0;
        for (std::size_t w = 0; w < m; ++w) rho += v[w] * tv[w];
        out.converged = false;
        long it = 0;
        while (it < kMaxPowerIterations) {
            ++it;
            for (std::size_t w = 0; w < m; ++w) v[w] = tv[w] + kShift * v[w];
            const double nv = norm2(v);
            for (double& x : v) x /= nv;
            tridiagonal_apply(off, v, tv);
            double next = 0.0;
            for (std::size_t w = 0; w < m; ++w) next += v[w] * tv[w];
            double res = 0.0;
            for (std::size_t w = 0; w < m; ++w) res += (tv[w] - next * v[w]) * (tv[w] - next * v[w]);
            res = std::sqrt(res);
            const double delta = std::abs(next - rho);
            rho = next;
            out.residual = res;
            if (delta < tol && res <= 1e-13 * std::max(1.0, rho)) {
                out.converged = true;
                break;
            }
        }
        out.iterations = it;
        out.lambda = rho;
    }

    // Shell masses q_w proportional to v(w) sqrt(C(n,w)), in log space.
    std::vector<double> logq(m);
    double peak = -INFINITY;
    for (std::size_t w = 0; w < m; ++w) {
        logq[w] = std::log(v[w]) + 0.5 * ln_binomial(n, static_cast<int>(w));
        peak = std::max(peak, logq[w]);
    }
    double z = 0.0;
    for (double lq : logq) z += std::exp(lq - peak);
    const double lse = peak + std::log(z);
    out.shell_mass.resize(m);
    for (std::size_t w = 0; w < m; ++w) {
        logq[w] -= lse;
        out.shell_mass[w] = std::exp(logq[w]);
    }
    if (n <= 1000) {
        out.profile.resize(m);
        for (std::size_t w = 0; w < m; ++w) {
            out.profile[w] = std::exp(n * std::log(2.0) + logq[w] - ln_binomial(n, static_cast<int>(w)));
        }
    }
    return out;
}

Density ball_eigenfunction(const BallSpectrum& spec) {
    require_dimension(spec.n);
    std::vector<double> d(std::size_t{1} << spec.n, 0.0);
    for (std::size_t x = 0; x < d.size(); ++x) {
        const int w = std::popcount(x);
        if (w <= spec.r) d[x] = spec.profile[static_cast<std::size_t>(w)];
    }
    return Density::normalized(CubeFunction(spec.n, std::move(d)));
}

double ball_entropy(const BallSpectrum& spec) {
    double h = 0.0;
    for (int w = 0; w <= spec.r; ++w) {
        const double q = spec.shell_mass[static_cast<std::size_t>(w)];
        if (q > 0.0) h += q * (ln_binomial(spec.n, w) - std::log(q));
    }
    return h / std::log(2.0);
}

double lambda_ball_dense_oracle(int n, int r) {
    check_ball(n, r);
    if (n > kDenseOracleMaxDim) throw SizeError("dense oracle limited to n <= 14");
    if (r == 0) return 0.0;

    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint32_t> ball;
    for (std::uint32_t x = 0; x < size; ++x) {
        if (std::popcount(x) <= r) ball.push_back(x);
    }
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(n * 64 + r));
    std::uniform_real_distribution<double> start(0.5, 1.5);
    std::vector<double> v(size, 0.0);
    std::vector<double> av(size, 0.0);
    for (std::uint32_t x : ball) v[x] = start(rng);

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::uint32_t x : ball) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc += in[x ^ (1U << i)];
            out[x] = acc;
        }
    };
    auto normalize = [&](std::vector<double>& u) {
        double s = 0.0;
        for (std::uint32_t x : ball) s += u[x] * u[x];
        s = std::sqrt(s);
        for (std::uint32_t x : ball) u[x] /= s;
    };
    normalize(v);
    apply(v, av);
    double rho = 0.0;
    for (std::uint32_t x : ball) rho += v[x] * av[x];
    for (long it = 0; it < kMaxPowerIterations; ++it) {
        for (std::uint32_t x : ball) v[x] = av[x] + kShift * v[x];
        normalize(v);
        apply(v, av);
        double next = 0.0;
        double res = 0.0;
        for (std::uint32_t x : ball) next += v[x] * av[x];
        for (std::uint32_t x : ball) res += (av[x] - next * v[x]) * (av[x] - next * v[x]);
        const double delta = std::abs(next - rho);
        rho = next;
        if (delta < 1e-14 * std::max(1.0, rho) && std::sqrt(res) < 1e-9) break;
    }
    return rho;
}

RadiusChoice min_radius(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw DomainError("min_radius requires 1 <= k <= n");
    RadiusChoice rc;
    rc.n = n;
    rc.k = k;
    rc.threshold = static_cast<double>(n) - 2.0 * k + 1.0;
    rc.asymptotic_radius = n / 2.0 - std::sqrt(static_cast<double>(k) * (n - k));
    for (int r = 0; r <= n; ++r) {
        const double lambda = r == 0 ? 0.0 : lambda_ball(n, r).lambda;
        if (lambda >= rc.threshold) {
            rc.r = r;
            rc.lambda = lambda;
            return rc;
        }
    }
    throw Error("no radius satisfies the eigenvalue condition");
}

std::pair<double, double> ns_comparison(int n, int r) {
    const double lambda = lambda_ball(n, r).lambda;
    return {lambda, 2.0 * std::sqrt(static_cast<double>(r) * (n - r))};
}

}  // namespace kwent
