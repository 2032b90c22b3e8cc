#include "kwent/smoothing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "kwent/entropy_bounds.hpp"
#include "kwent/errors.hpp"

namespace kwent {

namespace {

// supp(X) xor B_r, by r rounds of neighbour dilation.
std::vector<char> dilated_support(const Distribution& x, int r) {
    const int n = x.dim();
    const std::size_t size = std::size_t{1} << n;
    std::vector<char> mark(size, 0);
    for (std::uint64_t p : x.space().points()) mark[p] = 1;
    std::vector<char> next;
    for (int step = 0; step < r; ++step) {
        next = mark;
        for (std::size_t v = 0; v < size; ++v) {
            if (!mark[v]) continue;
            for (int i = 0; i < n; ++i) next[v ^ (std::size_t{1} << i)] = 1;
        }
        mark.swap(next);
    }
    return mark;
}

Distribution smooth_with(const Distribution& x, const BallSpectrum& spec, const Density& d) {
    const CubeFunction raw = convolve(x.density(), d);
    const auto support = dilated_support(x, spec.r);
    std::vector<double> g(raw.values().begin(), raw.values().end());
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (!support[v]) g[v] = 0.0;
    }
    return Distribution(Density::normalized(CubeFunction(x.dim(), std::move(g))));
}

void require_order(const Distribution& x, int needed) {
    if (needed <= 0) return;
    if (auto v = first_violation(x, needed)) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "input is not %d-wise independent: level %d coefficient %s has magnitude %.6g",
                      needed, v->level, to_bitstring(v->subset, x.dim()).c_str(), v->magnitude);
        throw PreconditionError(buf);
    }
}

ChainLine make_line(std::string label, double lhs, const std::string& rel, double rhs, bool certified = true,
                    double tol = kChainTolerance) {
    ChainLine l;
    l.label = std::move(label);
    l.lhs = lhs;
    l.relation = rel;
    l.rhs = rhs;
    if (rel == "<=") {
        l.slack = rhs - lhs;
    } else if (rel == ">=") {
        l.slack = lhs - rhs;
    } else {
        l.slack = -std::abs(lhs - rhs);
    }
    l.certified = certified;
    l.pass = l.slack >= -tol;
    return l;
}

// sum_S (n - 2|S|) s[S]^2 split into: empty set, levels [1, band], levels > band.
struct LevelSplit {
    double total = 0.0;
    double empty = 0.0;
    double band_weight = 0.0;
    double tail = 0.0;
    double tail_weight = 0.0;
};

LevelSplit split_levels(const Spectrum& s, int band) {
    const int n = s.dim();
    const auto prof = level_profile(s);
    LevelSplit out;
    for (int j = 0; j <= n; ++j) {
        const double w = prof[static_cast<std::size_t>(j)];
        const double term = adjacency_eigenvalue(n, j) * w;
        out.total += term;
        if (j == 0) {
            out.empty = term;
        } else if (j <= band) {
            out.band_weight += w;
        } else {
            out.tail += term;
            out.tail_weight += w;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

}  // namespace

Distribution smooth(const Distribution& x, const BallSpectrum& spec) {
    if (spec.n != x.dim()) throw DimensionMismatch("ball spectrum and distribution differ in n");
    return smooth_with(x, spec, ball_eigenfunction(spec));
}

SmoothingReport verify_smoothing(const Distribution& x, const BallSpectrum& spec, double tol) {
    if (spec.n != x.dim()) throw DimensionMismatch("ball spectrum and distribution differ in n");
    const int n = x.dim();
    const Density d = ball_eigenfunction(spec);
    const Distribution y(d);
    const Distribution z = smooth_with(x, spec, d);

    SmoothingReport rep;
    rep.order_x = independence_order(x);
    rep.order_z = independence_order(z);
    rep.a_pass = rep.order_z >= rep.order_x;
    if (n <= 12) {
        rep.marginal_checked = true;
        rep.marginal_order_z = marginal_order(z);
        rep.a_pass = rep.a_pass && rep.marginal_order_z >= rep.order_x;
    }

    rep.h_x = shannon_entropy(x.space());
    rep.h_y = shannon_entropy(y.space());
    rep.h_z = shannon_entropy(z.space());
    rep.b_pass = rep.h_x + rep.h_y >= rep.h_z - tol;

    // Pr(Z = v) = sum_y Pr(X = y) Pr(Y = v xor y), summed over both supports.
    std::vector<double> direct(std::size_t{1} << n, 0.0);
    const auto xp = x.space().points();
    const auto xq = x.space().probabilities();
    const auto yp = y.space().points();
    const auto yq = y.space().probabilities();
    for (std::size_t i = 0; i < xp.size(); ++i) {
        for (std::size_t j = 0; j < yp.size(); ++j) direct[xp[i] ^ yp[j]] += xq[i] * yq[j];
    }
    const CubeFunction spectral = convolve(x.density(), y.density());
    const double scale = std::ldexp(1.0, n);
    for (std::size_t v = 0; v < direct.size(); ++v) {
        rep.max_pointwise_error = std::max(rep.max_pointwise_error, std::abs(spectral[v] - scale * direct[v]));
    }
    rep.c_pass = rep.max_pointwise_error <= tol;
    return rep;
}

bool ChainReport::all_pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const ChainLine& l) { return !l.certified || l.pass; });
}

ChainReport theorem2_chain(const Distribution& x, HalfRounding rounding) {
    const int n = x.dim();
    const int band = half_order(n, rounding);
    require_order(x, band);

    const Density& f = x.density();
    const Spectrum& fs = x.spectrum();
    const LevelSplit split = split_levels(fs, band);
    const double e_direct = x.mean_square();
    const double e_spec = plancherel_sum(fs, fs);
    const double rayleigh = inner_product(adjacency_apply(f), f);
    const double h = shannon_entropy(x.space());
    const double h2 = renyi2_entropy(x.space());
    const double target = bound_thm_half(n);

    ChainReport rep;
    rep.theorem = 2;
    rep.n = n;
    rep.k = band + 1;
    rep.r = 0;
    rep.lambda_r = 0.0;
    rep.e_g_sq = e_direct;
    rep.lhs_rayleigh = rayleigh;
    rep.ub_stated = n + 1.0 - e_direct;
    rep.ub_tight = n + adjacency_eigenvalue(n, band + 1) * (e_direct - 1.0);
    rep.lb_stated = 0.0;
    rep.final_check = e_direct <= n + 1.0 + kChainTolerance;
    rep.h_x = h;
    rep.h_z = h;
    rep.h2_z = h2;
    rep.bound = target;
    rep.level_weights = level_profile(fs);

    auto& L = rep.lines;
    L.push_back(make_line("E[f^2] direct == Plancherel sum", e_direct, "==", e_spec));
    L.push_back(make_line("f^(empty) == 1", fs[0], "==", 1.0));
    L.push_back(make_line("<Af,f> == sum_S (n-2|S|) f^(S)^2", rayleigh, "==", split.total));
    L.push_back(make_line("Fourier weight on levels 1..n/2 == 0", split.band_weight, "==", 0.0));
    L.push_back(make_line("tail sum (n-2|S|) f^(S)^2 <= -tail weight", split.tail, "<=", -split.tail_weight));
    L.push_back(make_line("<Af,f> <= n + 1 - E[f^2]", rayleigh, "<=", rep.ub_stated));
    L.push_back(make_line("<Af,f> <= n + (n-2k)(E[f^2]-1)", rayleigh, "<=", rep.ub_tight));
    L.push_back(make_line("<Af,f> >= 0", rayleigh, ">=", 0.0));
    L.push_back(make_line("E[f^2] <= n + 1", e_direct, "<=", n + 1.0));
    L.push_back(make_line("H2(X) >= n - log2(n+1)", h2, ">=", target));
    L.push_back(make_line("H(X) >= H2(X)", h, ">=", h2));
    L.push_back(make_line("H(X) >= n - log2(n+1)", h, ">=", target));
    return rep;
}

ChainReport theorem1_chain(const Distribution& x, int k) {
    const int n = x.dim();
    if (k < 1 || k > n) throw DomainError("theorem1_chain needs 1 <= k <= n");
    require_order(x, k - 1);
    const bool smoothing_regime = 2 * k <= n;

    const RadiusChoice rc = min_radius(n, k);
    const BallSpectrum spec = lambda_ball(n, rc.r);
    const Density d = ball_eigenfunction(spec);
    const Distribution y(d);
    const Distribution z = smooth_with(x, spec, d);
    const Density& f = x.density();
    const Density& g = z.density();
    const Spectrum& gs = z.spectrum();
    const double lambda = spec.lambda;
    const double scale = std::ldexp(1.0, n);
    const double gap = n - 2.0 * k;

    const double e = z.mean_square();
    const CubeFunction ag = adjacency_apply(g);
    const double rayleigh = inner_product(ag, g);
    const LevelSplit split = split_levels(gs, k - 1);

    // Lower-bound mechanism through L = weight-one indicator.
    const CubeFunction lind = weight_one_indicator(n);
    const CubeFunction df = convolve(d, f);
    const double assoc_left = scale * inner_product(convolve(lind, df), g);
    const double assoc_right = scale * inner_product(convolve(convolve(lind, d), f), g);
    const CubeFunction ad = adjacency_apply(d);
    double pointwise = INFINITY;
    for (std::size_t v = 0; v < ad.size(); ++v) {
        if (d[v] > 0.0) pointwise = std::min(pointwise, (ad[v] - lambda * d[v]) / d[v]);
    }
    const double mech_left = inner_product(convolve(ad, f), g);
    const double mech_right = lambda * inner_product(df, g);

    const double h_x = shannon_entropy(x.space());
    const double h_y = shannon_entropy(y.space());
    const double h_z = shannon_entropy(z.space());
    const double h2_z = renyi2_entropy(z.space());
    const double e_cap = smoothing_regime ? static_cast<double>(n) : 2.0 * k / (2.0 * k - n);
    const double final_rhs = smoothing_regime ? static_cast<double>(n) : 2.0 * k;

    ChainReport rep;
    rep.theorem = 1;
    rep.n = n;
    rep.k = k;
    rep.r = rc.r;
    rep.lambda_r = lambda;
    rep.e_g_sq = e;
    rep.lhs_rayleigh = rayleigh;
    rep.ub_stated = n + gap * e;
    rep.ub_tight = n + gap * (e - 1.0);
    rep.lb_stated = lambda * e;
    rep.final_check = (lambda - gap) * e <= final_rhs + kChainTolerance;
    rep.h_x = h_x;
    rep.h_y = h_y;
    rep.cap_binom_r = log2_binomial(n, rc.r);
    rep.cap_ball = log2_ball_volume(n, rc.r);
    rep.cap_entropy_fn = n * binary_entropy(static_cast<double>(rc.r) / n);
    rep.h_z = h_z;
    rep.h2_z = h2_z;
    rep.level_weights = level_profile(gs);

    const double log_n = std::log2(static_cast<double>(n));
    const bool entropy_fn_valid = 2 * rc.r <= n;
    if (!smoothing_regime) {
        rep.bound = n - std::log2(e_cap);
    } else if (entropy_fn_valid) {
        rep.bound = n - rep.cap_entropy_fn - log_n;
    } else {
        rep.bound = n - log_n - rep.cap_ball;
    }

    auto& L = rep.lines;
    L.push_back(make_line("lambda_r >= n - 2k + 1", lambda, ">=", rc.threshold));
    L.push_back(make_line("E[g^2] direct == Plancherel sum", e, "==", plancherel_sum(gs, gs)));
    L.push_back(make_line("Fourier weight of g on levels 1..k-1 == 0", split.band_weight, "==", 0.0));
    L.push_back(make_line("<Ag,g> == sum_S (n-2|S|) g^(S)^2", rayleigh, "==", split.total));
    L.push_back(make_line("<Ag,g> <= n + (n-2k)(E[g^2]-1)", rayleigh, "<=", rep.ub_tight));
    L.push_back(make_line("<Ag,g> <= n + (n-2k) E[g^2]", rayleigh, "<=", rep.ub_stated, smoothing_regime));
    L.push_back(make_line("2^n <L*(d*f),g> == 2^n <(L*d)*f,g>", assoc_left, "==", assoc_right));
    L.push_back(make_line("2^n <L*(d*f),g> == <Ag,g>", assoc_left, "==", rayleigh));
    L.push_back(make_line("min over supp d of (Ad - lambda d)/d >= 0", pointwise, ">=", 0.0));
    L.push_back(make_line("<(Ad)*f,g> >= lambda <d*f,g>", mech_left, ">=", mech_right));
    L.push_back(make_line("<Ag,g> >= lambda_r E[g^2]", rayleigh, ">=", rep.lb_stated));
    if (smoothing_regime) {
        L.push_back(make_line("(lambda_r - (n-2k)) E[g^2] <= n", (lambda - gap) * e, "<=", final_rhs));
    } else {
        L.push_back(make_line("(lambda_r - (n-2k)) E[g^2] <= 2k", (lambda - gap) * e, "<=", final_rhs));
    }
    L.push_back(make_line(smoothing_regime ? "E[g^2] <= n" : "E[g^2] <= 2k/(2k-n)", e, "<=", e_cap));
    L.push_back(make_line("H2(Z) >= n - log2(E cap)", h2_z, ">=", n - std::log2(e_cap)));
    L.push_back(make_line("H(Z) >= H2(Z)", h_z, ">=", h2_z));
    L.push_back(make_line("H(X) + H(Y) >= H(Z)", h_x + h_y, ">=", h_z));
    L.push_back(make_line("H(Y) <= log2 |B_r|", h_y, "<=", rep.cap_ball));
    L.push_back(make_line("H(Y) <= log2 C(n,r)", h_y, "<=", rep.cap_binom_r, false));
    L.push_back(make_line("log2 |B_r| <= n H(r/n)", rep.cap_ball, "<=", rep.cap_entropy_fn, entropy_fn_valid));
    L.push_back(make_line("H(X) >= n - log2(E cap) - H(Y)", h_x, ">=", n - std::log2(e_cap) - h_y));
    L.push_back(make_line("H(X) >= n - log2(E cap) - log2 |B_r|", h_x, ">=", n - std::log2(e_cap) - rep.cap_ball));
    if (smoothing_regime) {
        L.push_back(make_line("H(X) >= n - n H(r/n) - log2 n", h_x, ">=", n - rep.cap_entropy_fn - log_n,
                              entropy_fn_valid));
    } else {
        L.push_back(make_line("H(X) >= n - log2(2k/(2k-n))", h_x, ">=", rep.bound));
    }
    return rep;
}

void write_chain_text(std::ostream& out, const ChainReport& r) {
    out << "theorem " << r.theorem << ": n=" << r.n << " k=" << r.k << " r=" << r.r
        << " lambda_r=" << fmt(r.lambda_r) << '\n';
    for (const auto& l : r.lines) {
        const char* tag = !l.certified ? "info" : (l.pass ? "PASS" : "FAIL");
        out << tag << "  " << l.label << ": " << fmt(l.lhs) << ' ' << l.relation << ' ' << fmt(l.rhs)
            << "  slack " << fmt(l.slack) << '\n';
    }
    out << "certified bound H(X) >= " << fmt(r.bound) << " (measured " << fmt(r.h_x) << ")\n"
        << "result: " << (r.all_pass() ? "all certified inequalities hold" : "FAILED") << '\n';
}

std::string chain_csv_header() {
    return "theorem,n,k,r,lambda_r,e_g_sq,lhs_rayleigh,ub_stated,ub_tight,lb_stated,final_check,"
           "h_x,h_y,cap_binom_r,cap_ball,cap_entropy_fn,h_z,h2_z,bound,slack,all_pass";
}

std::string chain_csv_row(const ChainReport& r) {
    std::ostringstream os;
    os << r.theorem << ',' << r.n << ',' << r.k << ',' << r.r << ',' << fmt(r.lambda_r) << ','
       << fmt(r.e_g_sq) << ',' << fmt(r.lhs_rayleigh) << ',' << fmt(r.ub_stated) << ',' << fmt(r.ub_tight)
       << ',' << fmt(r.lb_stated) << ',' << (r.final_check ? 1 : 0) << ',' << fmt(r.h_x) << ','
       << fmt(r.h_y) << ',' << fmt(r.cap_binom_r) << ',' << fmt(r.cap_ball) << ','
       << fmt(r.cap_entropy_fn) << ',' << fmt(r.h_z) << ',' << fmt(r.h2_z) << ',' << fmt(r.bound) << ','
       << fmt(r.h_x - r.bound) << ',' << (r.all_pass() ? 1 : 0);
    return os.str();
}

}  // namespace kwent
