#include "kwent/entropy_bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "kwent/ball_spectra.hpp"
#include "kwent/errors.hpp"

namespace kwent {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    cpp_int acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

double log2_exact(const cpp_int& x) {
    if (x <= 0) throw DomainError("log2 of a non-positive integer");
    const unsigned top = boost::multiprecision::msb(x);
    if (top < 62) return std::log2(static_cast<double>(x.convert_to<std::uint64_t>()));
    const unsigned shift = top - 62;
    const cpp_int head = x >> shift;
    return std::log2(static_cast<double>(head.convert_to<std::uint64_t>())) + shift;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

}  // namespace

double shannon_entropy(const SampleSpace& s) {
    double h = 0.0;
    for (double p : s.probabilities()) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double renyi2_entropy(const SampleSpace& s) {
    double acc = 0.0;
    for (double p : s.probabilities()) acc += p * p;
    return -std::log2(acc);
}

double renyi2_from_density(const Density& f) {
    return f.dim() - std::log2(inner_product(f, f));
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary entropy needs p in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double log2_binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw DomainError("log2_binomial needs 0 <= k <= n");
    return log2_exact(binomial(n, k));
}

double log2_ball_volume(int n, int r) {
    if (n < 0 || r < 0 || r > n) throw DomainError("log2_ball_volume needs 0 <= r <= n");
    cpp_int acc = 0;
    for (int i = 0; i <= r; ++i) acc += binomial(n, i);
    return log2_exact(acc);
}

double bound_thm_half(int n) {
    if (n < 1) throw DomainError("n must be positive");
    return n - std::log2(n + 1.0);
}

double bound_gp(int n, int k) {
    if (k < 0 || k > n) throw DomainError("bound_gp needs 0 <= k <= n");
    return log2_binomial(n, k / 2);
}

ExplicitBound bound_thm_main_explicit(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw DomainError("explicit bound needs 1 <= k <= n");
    ExplicitBound b;
    b.n = n;
    b.k = k;
    b.threshold = static_cast<double>(n) - 2.0 * k + 1.0;
    if (2 * k > n) {
        b.radius = 0;
        b.lambda = 0.0;
        b.applicable = true;
        b.value = n - std::log2(2.0 * k / (2.0 * k - n));
        b.note = "no smoothing (2k > n)";
        return b;
    }
    const RadiusChoice rc = min_radius(n, k);
    b.radius = rc.r;
    b.lambda = rc.lambda;
    if (2 * rc.r > n) {
        b.applicable = false;
        b.note = "radius exceeds n/2";
        return b;
    }
    b.applicable = true;
    b.value = n - n * binary_entropy(static_cast<double>(rc.r) / n) - std::log2(static_cast<double>(n));
    return b;
}

double bound_asymptotic_display(int n, int k) {
    if (n < 1 || k < 1 || 2 * k > n) throw DomainError("asymptotic display needs 1 <= k <= n/2");
    const double a = static_cast<double>(k) / n;
    const double p = std::max(0.0, 0.5 - std::sqrt(a * (1.0 - a)));
    return n - n * binary_entropy(p);
}

double BoundReport::best_bound() const {
    double best = gp;
    if (thm_half) best = std::max(best, *thm_half);
    if (thm_main.applicable) best = std::max(best, thm_main.value);
    return best;
}

bool BoundReport::consistent() const {
    constexpr double tol = 1e-9;
    if (shannon < renyi2 - tol) return false;
    return best_bound() <= shannon + tol;
}

BoundReport evaluate(const Distribution& d, HalfRounding rounding) {
    BoundReport r;
    r.n = d.dim();
    r.order = independence_order(d);
    r.k = std::min(r.order + 1, r.n);
    r.support = d.space().support_size();
    r.shannon = shannon_entropy(d.space());
    r.renyi2 = renyi2_entropy(d.space());
    r.renyi2_density = renyi2_from_density(d.density());
    if (r.order >= half_order(r.n, rounding)) r.thm_half = bound_thm_half(r.n);
    r.thm_main = bound_thm_main_explicit(r.n, r.k);
    r.gp = bound_gp(r.n, r.order);
    if (2 * r.k <= r.n) r.asymptotic = bound_asymptotic_display(r.n, r.k);
    return r;
}

void write_report_text(std::ostream& out, const BoundReport& r) {
    auto slack = [&](double b) { return fmt(r.shannon - b); };
    out << "n = " << r.n << '\n'
        << "support = " << r.support << '\n'
        << "independence_order = " << r.order << '\n'
        << "k = " << r.k << '\n'
        << "shannon = " << fmt(r.shannon) << '\n'
        << "renyi2 = " << fmt(r.renyi2) << '\n'
        << "renyi2_density = " << fmt(r.renyi2_density) << '\n';
    out << "bound_thm_half = " << fmt_opt(r.thm_half) << '\n'
        << "slack_thm_half = " << (r.thm_half ? slack(*r.thm_half) : "NA") << '\n';
    out << "thm_main_radius = " << r.thm_main.radius << '\n'
        << "thm_main_lambda = " << fmt(r.thm_main.lambda) << '\n'
        << "bound_thm_main = " << (r.thm_main.applicable ? fmt(r.thm_main.value) : "NA") << '\n'
        << "slack_thm_main = " << (r.thm_main.applicable ? slack(r.thm_main.value) : "NA") << '\n';
    if (!r.thm_main.note.empty()) out << "thm_main_note = " << r.thm_main.note << '\n';
    out << "bound_gp = " << fmt(r.gp) << '\n'
        << "slack_gp = " << slack(r.gp) << '\n'
        << "bound_asymptotic_display = " << fmt_opt(r.asymptotic) << " (display only)\n"
        << "best_bound = " << fmt(r.best_bound()) << '\n'
        << "consistent = " << (r.consistent() ? "yes" : "no") << '\n';
}

std::string report_csv_header() {
    return "n,k,order,support,shannon,renyi2,bound_thm_half,bound_thm_main,bound_gp,"
           "bound_asymptotic,slack_thm_half,slack_thm_main,slack_gp";
}

std::string report_csv_row(const BoundReport& r) {
    std::ostringstream os;
    const std::string main_v = r.thm_main.applicable ? fmt(r.thm_main.value) : "NA";
    const std::string main_s = r.thm_main.applicable ? fmt(r.shannon - r.thm_main.value) : "NA";
    os << r.n << ',' << r.k << ',' << r.order << ',' << r.support << ',' << fmt(r.shannon) << ','
       << fmt(r.renyi2) << ',' << fmt_opt(r.thm_half) << ',' << main_v << ',' << fmt(r.gp) << ','
       << fmt_opt(r.asymptotic) << ','
       << (r.thm_half ? fmt(r.shannon - *r.thm_half) : "NA") << ',' << main_s << ','
       << fmt(r.shannon - r.gp);
    return os.str();
}

}  // namespace kwent
