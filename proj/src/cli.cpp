#include "kwent/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kwent/ball_spectra.hpp"
#include "kwent/entropy_bounds.hpp"
#include "kwent/errors.hpp"
#include "kwent/gf2_codes.hpp"
#include "kwent/kwise.hpp"
#include "kwent/smoothing.hpp"

namespace kwent::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

enum class Format { text, csv, json };

struct RunConfig {
    std::string construction;
    std::string input;
    std::string output;
    std::string matrix;
    std::string sweep_kind;
    std::string n_range;
    std::string k_range;
    std::string r_range;
    int n = -1;
    int k = -1;
    int r = -1;
    int m = -1;
    int theorem = 0;
    std::string half = "floor";
    std::string format = "text";
    std::string sweep_format = "csv";
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

std::string num_or_na(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

json json_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw UsageError("unknown format '" + s + "'");
}

HalfRounding parse_half(const std::string& s) {
    if (s == "floor") return HalfRounding::floor;
    if (s == "ceil") return HalfRounding::ceil;
    throw UsageError("--half must be floor or ceil");
}

// "a..b" or "a"; empty ranges are usage errors.
std::vector<int> parse_range(const std::string& s, const char* name) {
    if (s.empty()) throw UsageError(std::string("missing --") + name);
    auto to_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size()) throw UsageError(std::string("invalid --") + name + " value '" + s + "'");
        return v;
    };
    int lo = 0;
    int hi = 0;
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        lo = hi = to_int(s);
    } else {
        lo = to_int(s.substr(0, dots));
        hi = to_int(s.substr(dots + 2));
    }
    if (hi < lo) throw UsageError(std::string("empty range for --") + name);
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

SampleSpace load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return read_sample_space(in);
}

int cmd_construct(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::optional<SampleSpace> space;
    std::optional<int> code_dim;
    const std::string& what = c.construction;
    if (what == "hamming" || what == "simplex" || what == "hadamard") {
        if (c.m < 0) throw UsageError(what + " needs --m");
        const LinearCode code = what == "hamming" ? hamming_code(c.m) : simplex_code(c.m);
        code_dim = code.dimension();
        space = uniform_code_space(code);
    } else if (what == "uniform" || what == "point") {
        if (c.n < 0) throw UsageError(what + " needs --n");
        space = what == "uniform" ? SampleSpace::uniform(c.n) : SampleSpace::point_mass(c.n);
    } else if (what == "from-matrix") {
        if (c.matrix.empty()) throw UsageError("from-matrix needs --matrix");
        std::ifstream in(c.matrix);
        if (!in) throw UsageError("cannot open '" + c.matrix + "'");
        const BinaryMatrix mat = read_binary_matrix(in);
        code_dim = mat.rank();
        space = parity_sampler_space(mat);
    } else {
        throw UsageError("unknown construction '" + what + "'");
    }
    std::ostringstream summary;
    summary << "n=" << space->dim() << " support=" << space->support_size();
    if (code_dim) summary << " dimension=" << *code_dim;
    if (c.output.empty()) {
        write_sample_space(out, *space);
        err << summary.str() << '\n';
    } else {
        std::ofstream f(c.output);
        if (!f) throw UsageError("cannot write '" + c.output + "'");
        write_sample_space(f, *space);
        out << summary.str() << '\n';
    }
    return kExitOk;
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
    const Format fmt = parse_format(c.format);
    const Distribution d(load_space(c.input));
    const BoundReport rep = evaluate(d, parse_half(c.half));
    std::optional<int> marginal;
    try {
        marginal = marginal_order(d);
    } catch (const ResourceError&) {
    }
    const bool orders_agree = !marginal || *marginal == rep.order;
    const bool ok = rep.consistent() && orders_agree;
    if (fmt == Format::csv) {
        out << report_csv_header() << ",marginal_order\n"
            << report_csv_row(rep) << ',' << (marginal ? std::to_string(*marginal) : "NA") << '\n';
    } else if (fmt == Format::json) {
        json j;
        j["n"] = rep.n;
        j["k"] = rep.k;
        j["order"] = rep.order;
        j["marginal_order"] = marginal ? json(*marginal) : json(nullptr);
        j["support"] = rep.support;
        j["shannon"] = rep.shannon;
        j["renyi2"] = rep.renyi2;
        j["bound_thm_half"] = json_or_null(rep.thm_half);
        j["bound_thm_main"] = rep.thm_main.applicable ? json(rep.thm_main.value) : json(nullptr);
        j["thm_main_radius"] = rep.thm_main.radius;
        j["bound_gp"] = rep.gp;
        j["bound_asymptotic"] = json_or_null(rep.asymptotic);
        j["consistent"] = ok;
        out << j.dump(2) << '\n';
    } else {
        write_report_text(out, rep);
        out << "marginal_order = " << (marginal ? std::to_string(*marginal) : "skipped (guard)") << '\n';
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

struct BoundRow {
    int n = 0;
    int k = 0;
    ExplicitBound main;
    double ns = 0.0;
    std::optional<double> half;
    double gp = 0.0;
    std::optional<double> asym;
    double best = 0.0;
};

BoundRow bound_row(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw UsageError("need 1 <= k <= n");
    BoundRow b;
    b.n = n;
    b.k = k;
    b.main = bound_thm_main_explicit(n, k);
    b.ns = 2.0 * std::sqrt(static_cast<double>(b.main.radius) * (n - b.main.radius));
    if (k - 1 >= n / 2) b.half = bound_thm_half(n);
    b.gp = bound_gp(n, k - 1);
    if (2 * k <= n) b.asym = bound_asymptotic_display(n, k);
    b.best = b.gp;
    if (b.half) b.best = std::max(b.best, *b.half);
    if (b.main.applicable) b.best = std::max(b.best, b.main.value);
    return b;
}

const char* kBoundsHeader = "n,k,r,lambda_r,ns_bound,thm_half,thm_main,gp,asymptotic,max_bound";

std::string bound_csv(const BoundRow& b) {
    std::ostringstream os;
    os << b.n << ',' << b.k << ',' << b.main.radius << ',' << num(b.main.lambda) << ',' << num(b.ns) << ','
       << num_or_na(b.half) << ',' << (b.main.applicable ? num(b.main.value) : "NA") << ',' << num(b.gp)
       << ',' << num_or_na(b.asym) << ',' << num(b.best);
    return os.str();
}

json bound_json(const BoundRow& b) {
    json j;
    j["n"] = b.n;
    j["k"] = b.k;
    j["r"] = b.main.radius;
    j["lambda_r"] = b.main.lambda;
    j["ns_bound"] = b.ns;
    j["thm_half"] = json_or_null(b.half);
    j["thm_main"] = b.main.applicable ? json(b.main.value) : json(nullptr);
    j["gp"] = b.gp;
    j["asymptotic"] = json_or_null(b.asym);
    j["max_bound"] = b.best;
    return j;
}

int cmd_bound(const RunConfig& c, std::ostream& out) {
    const Format fmt = parse_format(c.format);
    if (c.n < 0 || c.k < 0) throw UsageError("bound needs --n and --k");
    const BoundRow b = bound_row(c.n, c.k);
    if (fmt == Format::csv) {
        out << kBoundsHeader << '\n' << bound_csv(b) << '\n';
    } else if (fmt == Format::json) {
        out << bound_json(b).dump(2) << '\n';
    } else {
        out << "n = " << b.n << "\nk = " << b.k << "  (input is " << b.k - 1 << "-wise independent)\n"
            << "radius = " << b.main.radius << "\nlambda_r = " << num(b.main.lambda) << '\n'
            << "bound_thm_half = " << num_or_na(b.half) << '\n'
            << "bound_thm_main = " << (b.main.applicable ? num(b.main.value) : "NA") << '\n';
        if (!b.main.note.empty()) out << "thm_main_note = " << b.main.note << '\n';
        out << "bound_gp = " << num(b.gp) << '\n'
            << "bound_asymptotic_display = " << num_or_na(b.asym) << " (display only)\n"
            << "max_bound = " << num(b.best) << '\n';
    }
    return kExitOk;
}

const char* kSpectraHeader = "n,r,lambda,ns_bound,iterations,residual";

std::string spectra_csv(const BallSpectrum& s) {
    std::ostringstream os;
    char res[40];
    std::snprintf(res, sizeof res, "%.3e", s.residual);
    os << s.n << ',' << s.r << ',' << num(s.lambda) << ','
       << num(2.0 * std::sqrt(static_cast<double>(s.r) * (s.n - s.r))) << ',' << s.iterations << ',' << res;
    return os.str();
}

json spectra_json(const BallSpectrum& s) {
    json j;
    j["n"] = s.n;
    j["r"] = s.r;
    j["lambda"] = s.lambda;
    j["ns_bound"] = 2.0 * std::sqrt(static_cast<double>(s.r) * (s.n - s.r));
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    return j;
}

int cmd_spectra(const RunConfig& c, std::ostream& out) {
    const Format fmt = parse_format(c.format);
    if (c.n < 1) throw UsageError("spectra needs --n");
    if (c.r < 0 && c.k < 0) throw UsageError("spectra needs --r or --k");
    int r = c.r;
    std::optional<RadiusChoice> rc;
    if (c.k >= 0) {
        if (c.k < 1 || c.k > c.n) throw UsageError("need 1 <= k <= n");
        rc = min_radius(c.n, c.k);
        if (r < 0) r = rc->r;
    }
    if (r > c.n) throw UsageError("need r <= n");
    const BallSpectrum s = lambda_ball(c.n, r);
    if (fmt == Format::csv) {
        out << kSpectraHeader << '\n' << spectra_csv(s) << '\n';
    } else if (fmt == Format::json) {
        json j = spectra_json(s);
        if (rc) {
            j["k"] = rc->k;
            j["min_radius"] = rc->r;
            j["threshold"] = rc->threshold;
            j["asymptotic_radius"] = rc->asymptotic_radius;
        }
        out << j.dump(2) << '\n';
    } else {
        out << "n = " << s.n << "\nr = " << s.r << "\nlambda = " << num(s.lambda) << '\n'
            << "ns_bound = " << num(2.0 * std::sqrt(static_cast<double>(s.r) * (s.n - s.r))) << '\n'
            << "iterations = " << s.iterations << "\nconverged = " << (s.converged ? "yes" : "no") << '\n';
        if (rc) {
            out << "k = " << rc->k << "\nthreshold = " << num(rc->threshold) << "\nmin_radius = " << rc->r
                << "\nasymptotic_radius = " << num(rc->asymptotic_radius) << '\n';
        }
    }
    return s.converged ? kExitOk : kExitVerificationFailed;
}

int cmd_chain(const RunConfig& c, std::ostream& out) {
    const Format fmt = parse_format(c.format);
    if ((c.k < 0) == (c.theorem == 0)) throw UsageError("chain needs exactly one of --k or --theorem 2");
    if (c.theorem != 0 && c.theorem != 2) throw UsageError("--theorem accepts only 2 (use --k for the smoothing chain)");
    const Distribution d(load_space(c.input));
    const ChainReport rep = c.theorem == 2 ? theorem2_chain(d, parse_half(c.half)) : theorem1_chain(d, c.k);
    if (fmt == Format::csv) {
        out << chain_csv_header() << '\n' << chain_csv_row(rep) << '\n';
    } else if (fmt == Format::json) {
        json j;
        j["theorem"] = rep.theorem;
        j["n"] = rep.n;
        j["k"] = rep.k;
        j["r"] = rep.r;
        j["lambda_r"] = rep.lambda_r;
        j["e_g_sq"] = rep.e_g_sq;
        j["bound"] = rep.bound;
        j["h_x"] = rep.h_x;
        json lines = json::array();
        for (const auto& l : rep.lines) {
            lines.push_back({{"label", l.label}, {"lhs", l.lhs}, {"relation", l.relation}, {"rhs", l.rhs},
                             {"slack", l.slack}, {"certified", l.certified}, {"pass", l.pass}});
        }
        j["lines"] = lines;
        j["all_pass"] = rep.all_pass();
        out << j.dump(2) << '\n';
    } else {
        write_chain_text(out, rep);
    }
    return rep.all_pass() ? kExitOk : kExitVerificationFailed;
}

int cmd_sweep(const RunConfig& c, std::ostream& final_out) {
    std::ostringstream out;
    const Format fmt = parse_format(c.sweep_format);
    if (fmt == Format::text) throw UsageError("sweep emits csv or json");
    const auto ns = parse_range(c.n_range, "n");
    json rows = json::array();
    std::size_t emitted = 0;
    if (c.sweep_kind == "spectra") {
        const auto rs = parse_range(c.r_range, "r");
        if (fmt == Format::csv) out << kSpectraHeader << '\n';
        for (int n : ns) {
            for (int r : rs) {
                if (n < 1 || r < 0 || r > n) continue;
                const BallSpectrum s = lambda_ball(n, r);
                if (fmt == Format::csv) {
                    out << spectra_csv(s) << '\n';
                } else {
                    rows.push_back(spectra_json(s));
                }
                ++emitted;
            }
        }
    } else if (c.sweep_kind == "bounds") {
        const auto ks = parse_range(c.k_range, "k");
        if (fmt == Format::csv) out << kBoundsHeader << '\n';
        for (int n : ns) {
            for (int k : ks) {
                if (n < 1 || k < 1 || k > n) continue;
                const BoundRow b = bound_row(n, k);
                if (fmt == Format::csv) {
                    out << bound_csv(b) << '\n';
                } else {
                    rows.push_back(bound_json(b));
                }
                ++emitted;
            }
        }
    } else {
        throw UsageError("sweep kind must be 'spectra' or 'bounds'");
    }
    if (emitted == 0) throw UsageError("sweep range contains no valid parameter points");
    if (fmt == Format::json) out << rows.dump(2) << '\n';
    final_out << out.str();
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"k-wise independent distributions: construction, entropy and bound certification", "kwent"};
    app.require_subcommand(1);
    RunConfig c;

    auto* construct = app.add_subcommand("construct", "Write a sample space built from a code");
    construct->add_option("construction", c.construction, "hamming | simplex | hadamard | uniform | point | from-matrix")
        ->required();
    construct->add_option("--m", c.m, "Code parameter m (length 2^m - 1)");
    construct->add_option("--n", c.n, "Dimension");
    construct->add_option("--matrix", c.matrix, "BinaryMatrix file for from-matrix");
    construct->add_option("-o,--output", c.output, "Output file (default: stdout)");

    auto* analyze = app.add_subcommand("analyze", "Independence order, entropies and bounds of a sample space");
    analyze->add_option("input", c.input, "SampleSpace file")->required();
    analyze->add_option("--format", c.format, "text | csv | json");
    analyze->add_option("--half", c.half, "Reading of n/2 for odd n: floor | ceil");

    auto* bound = app.add_subcommand("bound", "Evaluate the entropy lower bounds for (k-1)-wise independence");
    bound->add_option("--n", c.n)->required();
    bound->add_option("--k", c.k)->required();
    bound->add_option("--format", c.format, "text | csv | json");

    auto* spectra = app.add_subcommand("spectra", "Top eigenvalue of the Hamming ball");
    spectra->add_option("--n", c.n)->required();
    spectra->add_option("--r", c.r, "Radius");
    spectra->add_option("--k", c.k, "Also report the minimal radius for this k");
    spectra->add_option("--format", c.format, "text | csv | json");

    auto* chain = app.add_subcommand("chain", "Certify a proof chain on a sample space");
    chain->add_option("input", c.input, "SampleSpace file")->required();
    chain->add_option("--k", c.k, "Smoothing chain for (k-1)-wise independent input");
    chain->add_option("--theorem", c.theorem, "2: the n/2-wise chain");
    chain->add_option("--half", c.half, "Reading of n/2 for odd n: floor | ceil");
    chain->add_option("--format", c.format, "text | csv | json");

    auto* sweep = app.add_subcommand("sweep", "CSV sweeps over parameter ranges");
    sweep->add_option("kind", c.sweep_kind, "spectra | bounds")->required();
    sweep->add_option("--n", c.n_range, "a..b or a")->required();
    sweep->add_option("--k", c.k_range, "a..b or a");
    sweep->add_option("--r", c.r_range, "a..b or a");
    sweep->add_option("--format", c.sweep_format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (construct->parsed()) return cmd_construct(c, out, err);
        if (analyze->parsed()) return cmd_analyze(c, out);
        if (bound->parsed()) return cmd_bound(c, out);
        if (spectra->parsed()) return cmd_spectra(c, out);
        if (chain->parsed()) return cmd_chain(c, out);
        if (sweep->parsed()) return cmd_sweep(c, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "precondition error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace kwent::cli
