#include "tongues/cli.hpp"

#include "tongues/circle_map.hpp"
#include "tongues/errors.hpp"
#include "tongues/perturb.hpp"
#include "tongues/pinch.hpp"
#include "tongues/report.hpp"
#include "tongues/tongue_scan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <numeric>
#include <ostream>

namespace tongues::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string forcing;
    unsigned qmax = 4;
    unsigned b_steps = 200;
    std::string tol = "1/1099511627776";  // 2^-40
    std::string pq;
    std::string b;
    std::string omega;
    std::uint64_t seed = 1;
    unsigned n = 2;
    unsigned max_attempts = 200;
    std::string epsilon = "1/1000";
    std::string out;
    std::string svg;
    std::string csv;
    std::string json_path;
};

std::pair<long, unsigned> parse_pq(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw ParseError("--pq expects p/q, got '" + text + "'");
    long p = 0;
    long q = 0;
    try {
        std::size_t used = 0;
        p = std::stol(text.substr(0, slash), &used);
        if (used != slash) throw ParseError("bad p");
        const std::string qs = text.substr(slash + 1);
        q = std::stol(qs, &used);
        if (used != qs.size()) throw ParseError("bad q");
    } catch (const std::exception&) {
        throw ParseError("--pq expects integers p/q, got '" + text + "'");
    }
    if (q <= 0 || std::gcd(p < 0 ? -p : p, q) != 1) throw ParseError("--pq must be a reduced fraction with q > 0");
    return {p, static_cast<unsigned>(q)};
}

Rational parse_rational(const std::string& text, const char* flag) {
    if (text.empty()) throw ParseError(std::string(flag) + " is required");
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
    }
}

ReducedPLForcing require_pl(const Forcing& f) {
    if (const auto* pl = std::get_if<ReducedPLForcing>(&f)) return *pl;
    throw ParseError("this subcommand needs a PL forcing");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("IOError", "cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw Error("IOError", "write to '" + path + "' failed");
}

json interval_json(const RationalInterval& r) {
    return {{"lo", r.lo().str()}, {"hi", r.hi().str()}, {"lo_f", r.lo().to_double()}, {"hi_f", r.hi().to_double()}};
}

json plausible_json(const std::vector<Rational>& w, const std::vector<Rational>& ell, unsigned q, unsigned n) {
    json out;
    out["forcing"] = ReducedPLForcing(w, ell).spec();
    out["sets"] = json::array();
    const auto sets = enumerate_plausible(w, q, n);
    for (const auto& s : sets) out["sets"].push_back({{"J", s.J.str()}, {"root", interval_json(s.root)}});
    out["separated"] = roots_separated(sets);
    return out;
}

int do_scan(const Options& o, std::ostream& out, std::ostream& err) {
    const Forcing forcing = parse_forcing(o.forcing);
    const Rational tol = parse_rational(o.tol, "--tol");
    if (tol.sign() <= 0) throw ParseError("--tol must be positive");
    std::vector<Rational> grid = default_b_grid(o.b_steps);

    std::vector<PinchMarker> markers;
    if (const auto* pl = std::get_if<ReducedPLForcing>(&forcing); pl && pl->size() == 2) {
        for (const auto& pt : enumerate_pinches(pl->w()[1], o.qmax)) {
            const Rational b = pt.b.interval.mid();
            grid.push_back(b);
            markers.push_back({pt.omega.mid().to_double(), b.to_double()});
        }
    }
    const auto records = scan_tongues(forcing, o.qmax, grid, tol);
    std::size_t unresolved = 0;
    for (const auto& r : records) unresolved += r.resolved() ? 0 : 1;
    if (unresolved) err << json{{"warning", "Unresolved"}, {"records", unresolved}}.dump() << '\n';

    const std::string csv_path = o.csv.empty() ? o.out : o.csv;
    if (!csv_path.empty() || o.svg.empty()) emit(write_csv(records), csv_path, out);
    if (!o.svg.empty()) emit(render_svg(records, markers), o.svg, out);
    return 0;
}

int do_pinch(const Options& o, std::ostream& out) {
    const ReducedPLForcing f = require_pl(parse_forcing(o.forcing));
    if (f.size() != 2) throw ParseError("pinch enumeration needs a two-interval forcing");
    json report = json::array();
    for (const auto& pt : enumerate_pinches(f.w()[1], o.qmax)) report.push_back(to_json(pt));
    emit(report.dump(2) + "\n", o.json_path.empty() ? o.out : o.json_path, out);
    return 0;
}

int do_verify(const Options& o, std::ostream& out) {
    const ReducedPLForcing f = require_pl(parse_forcing(o.forcing));
    const auto [p, q] = parse_pq(o.pq);
    const Rational b = parse_rational(o.b, "--b");
    const Rational omega = parse_rational(o.omega, "--omega");
    const PinchCertificate c = verify_pinch(f, b, omega, p, q);
    json report{{"p", p}, {"q", q}, {"b", b.str()}, {"omega", omega.str()}, {"certificate", to_string(c.kind)}};
    emit(report.dump(2) + "\n", o.json_path.empty() ? o.out : o.json_path, out);
    return 0;
}

int do_conjugacy(const Options& o, std::ostream& out) {
    const ReducedPLForcing f = require_pl(parse_forcing(o.forcing));
    const auto [p, q] = parse_pq(o.pq);
    const Rational b = parse_rational(o.b, "--b");
    const Rational omega = parse_rational(o.omega, "--omega");
    verify_pinch(f, b, omega, p, q);
    const PLMap g = pl_from_family(b, omega, f);
    const PLMap h = build_conjugacy(g, p, q);
    const StepDensity eta = invariant_density(g, h);
    json report;
    report["p"] = p;
    report["q"] = q;
    report["map"] = to_json(g);
    report["conjugacy"] = to_json(h);
    report["density"] = to_json(eta);
    if (!b.is_zero()) {
        const Configuration c = extract_configuration(f, b, omega, p, q);
        report["configuration"] = to_json(c);
        report["induced_polynomials"] = json::array();
        for (const auto& poly : induced_polynomials(c)) report["induced_polynomials"].push_back(to_json(poly));
    }
    emit(report.dump(2) + "\n", o.json_path.empty() ? o.out : o.json_path, out);
    return 0;
}

int do_perturb(const Options& o, std::ostream& out) {
    const ReducedPLForcing f = require_pl(parse_forcing(o.forcing));
    const Rational epsilon = parse_rational(o.epsilon, "--epsilon");
    const unsigned q = o.qmax;
    json report;
    report["q"] = q;
    report["n"] = o.n;
    report["seed"] = o.seed;
    report["epsilon"] = epsilon.str();
    report["before"] = plausible_json(f.w(), f.ell(), q, o.n);
    const Separation s = separate_roots(f.w(), f.ell(), q, o.n, epsilon, o.seed, o.max_attempts);
    report["attempts"] = s.attempts;
    report["after"] = plausible_json(s.w, s.ell, q, o.n);
    emit(report.dump(2) + "\n", o.json_path.empty() ? o.out : o.json_path, out);
    return 0;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Arnold tongues and pinch points of PL circle-map families", "tongues"};
    app.require_subcommand(1);

    auto add_forcing = [&](CLI::App* sub) {
        sub->add_option("--forcing", o.forcing, "sine | triangle:<rat> | pl:w=<rat,...>;l=<rat,...>")->required();
    };
    auto add_outputs = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--json", o.json_path, "JSON output path");
    };
    auto add_point = [&](CLI::App* sub) {
        sub->add_option("--pq", o.pq, "rotation number p/q")->required();
        sub->add_option("--b", o.b, "coupling b (rational)")->required();
        sub->add_option("--omega", o.omega, "omega (rational)")->required();
    };

    CLI::App* scan = app.add_subcommand("scan", "tongue boundaries over a b grid");
    add_forcing(scan);
    scan->add_option("--qmax", o.qmax, "largest denominator")->check(CLI::Range(1u, 64u));
    scan->add_option("--b-steps", o.b_steps, "b grid i/steps, 1 <= i <= steps")->check(CLI::Range(1u, 100000u));
    scan->add_option("--tol", o.tol, "boundary tolerance (rational)");
    scan->add_option("--csv", o.csv, "CSV output path");
    scan->add_option("--svg", o.svg, "SVG output path");
    scan->add_option("--out", o.out, "CSV output path (alias of --csv)");

    CLI::App* pinch = app.add_subcommand("pinch", "certified pinch report for a two-interval forcing");
    add_forcing(pinch);
    pinch->add_option("--qmax", o.qmax, "largest denominator")->check(CLI::Range(2u, 64u));
    add_outputs(pinch);

    CLI::App* verify = app.add_subcommand("verify", "exact pinch check at rational (b, omega)");
    add_forcing(verify);
    add_point(verify);
    add_outputs(verify);

    CLI::App* conj = app.add_subcommand("conjugacy", "PL conjugacy and invariant density at an exact pinch");
    add_forcing(conj);
    add_point(conj);
    add_outputs(conj);

    CLI::App* perturb = app.add_subcommand("perturb-demo", "separate plausible roots by a small weight change");
    add_forcing(perturb);
    perturb->add_option("--qmax", o.qmax, "index set size q")->check(CLI::Range(1u, 16u));
    perturb->add_option("--n", o.n, "roots must lie in [1/n, 1]")->check(CLI::Range(2u, 1000u));
    perturb->add_option("--epsilon", o.epsilon, "perturbation budget (rational)");
    perturb->add_option("--seed", o.seed, "random direction seed");
    perturb->add_option("--max-attempts", o.max_attempts, "random directions tried before giving up");
    add_outputs(perturb);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, "ParseError", e.what());
        return 2;
    }

    try {
        if (*scan) return do_scan(o, out, err);
        if (*pinch) return do_pinch(o, out);
        if (*verify) return do_verify(o, out);
        if (*conj) return do_conjugacy(o, out);
        if (*perturb) return do_perturb(o, out);
    } catch (const ParseError& e) {
        report_error(err, e.kind(), e.what());
        return 2;
    } catch (const Unresolved& e) {
        report_error(err, e.kind(), e.what());
        return 3;
    } catch (const BudgetExhausted& e) {
        report_error(err, e.kind(), e.what());
        return 3;
    } catch (const Error& e) {
        report_error(err, e.kind(), e.what());
        return 1;
    }
    return 1;
}

}  // namespace tongues::cli
