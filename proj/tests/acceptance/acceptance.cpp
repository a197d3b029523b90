// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support/oracle.hpp"
#include "support/random_maps.hpp"
#include "tongues/circle_map.hpp"
#include "tongues/cli.hpp"
#include "tongues/errors.hpp"
#include "tongues/perturb.hpp"
#include "tongues/pinch.hpp"
#include "tongues/report.hpp"
#include "tongues/tongue_scan.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

using namespace tongues;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool encloses(const RationalInterval& r, long double x) {
    // Outward by one ulp of the double conversion.
    return r.lo().to_double() <= static_cast<double>(x) + 1e-15 && static_cast<double>(x) - 1e-15 <= r.hi().to_double();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Rational pinch: b = 1 - r^{q-j}, w = (r^{-j} - 1) / b.
struct RationalPinch {
    Rational b, w;
    long p;
    unsigned q;
};

std::vector<RationalPinch> rational_pinches() {
    std::vector<RationalPinch> out;
    for (unsigned q = 3; q <= 5; ++q)
        for (const Rational r : {Rational(1, 2), Rational(2, 3), Rational(3, 4)})
            for (unsigned j = 1; j < q; ++j) {
                const Rational b = Rational(1) - pow(r, q - j);
                const Rational w = (Rational(1) / pow(r, j) - 1) / b;
                if (j > pinch_count(q, w)) continue;
                for (long p = 1; p < static_cast<long>(q); ++p)
                    if (std::gcd(p, static_cast<long>(q)) == 1) out.push_back({b, w, p, q});
            }
    return out;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::map<std::pair<long, unsigned>, unsigned> count;
    for (const auto& pt : enumerate_pinches(1, 5)) {
        expect(pt.certificate.kind == PinchCertificate::Kind::IntervalCertified, "uncertified pinch");
        ++count[{pt.p, pt.q}];
    }
    for (unsigned q = 2; q <= 5; ++q) {
        const unsigned expected = (q + 1) / 2 - 1;  // ceil(q/2) - 1
        for (long p = 1; p < static_cast<long>(q); ++p) {
            if (std::gcd(p, static_cast<long>(q)) != 1) continue;
            const unsigned got = count[{p, q}];
            expect(got == expected, std::to_string(p) + "/" + std::to_string(q) + ": " + std::to_string(got) +
                                        " pinches, expected " + std::to_string(expected));
        }
    }
    expect(seconds_since(t0) < 30, "runtime over 30 s");
}

void criterion2() {
    const Rational width(1, 1'000'000'000);
    const auto third = pinch_b(3, 1, 1, width);
    expect(third.interval.width() <= width, "q=3 enclosure too wide");
    expect(encloses(third.interval, oracle::golden_root()), "q=3 enclosure misses the oracle root");
    const auto fourth = pinch_b(4, 1, 1, width);
    expect(fourth.interval.width() <= width, "q=4 enclosure too wide");
    expect(encloses(fourth.interval, oracle::quartic_pinch_root()), "q=4 enclosure misses the oracle root");
}

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const Rational w(4, 3);
    const ReducedPLForcing f({Rational(-1), w}, {Rational(4, 7), Rational(3, 7)});
    const auto b = pinch_b(3, 1, w);
    expect(b.is_exact() && *b.exact == Rational(3, 4), "b is not exactly 3/4");
    expect(Rational(1, 4) * 2 * 2 == 1, "substitution");
    const auto omega = pinch_omega(1, 3, 1, w);
    expect(omega.is_point(), "omega is not exact");
    const auto cert = verify_pinch(f, *b.exact, omega.lo(), 1, 3);
    expect(cert.kind == PinchCertificate::Kind::ExactTranslation, "not an exact translation");
    expect(pl_power(pl_from_family(*b.exact, omega.lo(), f), 3) == PLMap::rotation(1), "cube is not R_1");
    expect(seconds_since(t0) < 1, "runtime over 1 s");
}

void check_characterization(const PLMap& g, long p, unsigned q, std::size_t k, const std::string& label) {
    const auto c = characterize(g, p, q);
    expect(c.translation && c.paired_breaks && c.pl_conjugate && c.step_density, label + ": predicates disagree");
    const PLMap h = build_conjugacy(g, p, q);
    expect(pl_compose(h, pl_compose(g, pl_inverse(h))) == PLMap::rotation(Rational(p, q)), label + ": h g h^-1");
    const std::size_t limit = std::max<std::size_t>(q * k / 2, 1);
    expect(h.breakpoints().size() <= q * k / 2, label + ": too many conjugacy breaks");
    const auto eta = invariant_density(g, h);
    expect(eta.integral() == 1, label + ": density integral");
    expect(eta.distinct_values() <= limit, label + ": too many density values");
    for (const auto& v : eta.values) expect(v.sign() > 0, label + ": density not positive");
}

void criterion4() {
    const ReducedPLForcing f({Rational(-1), Rational(4, 3)}, {Rational(4, 7), Rational(3, 7)});
    const auto hits = exact_pinch_scan(f, 3);
    expect(hits.size() == 3, "expected the 1/2, 1/3 and 2/3 exact pinches");
    expect(rational_pinches().size() > 10, "too few rational pinch constructions");
    for (const auto& h : hits)
        check_characterization(pl_from_family(h.b, h.omega, f), h.p, h.q, 2,
                               "exact " + std::to_string(h.p) + "/" + std::to_string(h.q));
    for (const auto& rp : rational_pinches()) {
        const auto g = two_interval_forcing(rp.w);
        const Rational omega = exact_left_boundary(g, rp.b, rp.p, rp.q);
        check_characterization(pl_from_family(rp.b, omega, g), rp.p, rp.q, 2, "rational pinch w=" + rp.w.str());
    }
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 40; ++t) {
        const PLMap h = testing_support::random_homeomorphism(rng, 2 + t % 3);
        const unsigned q = 2 + t % 4;
        const long p = q == 4 ? 3 : 1;
        const PLMap g = conjugated_rotation(h, p, q);
        const std::size_t k = g.breakpoints().size();
        if (k == 0) continue;
        check_characterization(g, p, q, k, "conjugated rotation " + std::to_string(t));
    }
    // A non-pinch map fails every predicate.
    const auto none = characterize(pl_from_family(Rational(1, 2), Rational(1, 3), f), 1, 3);
    expect(!none.translation && !none.paired_breaks && !none.pl_conjugate && !none.step_density,
           "non-pinch predicates disagree");
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    const Rational tol(1, 10'000'000'000L);
    const auto recs = scan_tongues(SineForcing{}, 4, {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}, tol);
    const Rational floor(1, 1'000'000);
    for (const auto& r : recs) {
        const std::string label = std::to_string(r.p) + "/" + std::to_string(r.q) + " at b=" + r.b.str();
        expect(r.resolved(), label + " unresolved");
        expect(r.width_lower_bound() > floor, label + " width lower bound " + r.width_lower_bound().str());
    }
    expect(seconds_since(t0) < 120, "runtime over 2 min");
}

void criterion6() {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> num(1, 29);
    for (int t = 0; t < 100; ++t) {
        const Rational w(num(rng), 1 + num(rng) % 7);
        const Rational b(num(rng), 30);
        const Rational omega(num(rng), 30);
        const unsigned q = 1 + t % 6;
        const auto lambda = itinerary_census(pl_from_family(b, omega, two_interval_forcing(w)), 0, q);
        Rational total, weighted;
        for (unsigned j = 0; j <= q; ++j) {
            total += lambda[j];
            weighted += FactoredPolynomial::pinch_polynomial(q, j, w).eval(b) * lambda[j];
        }
        expect(total == 1 && weighted == 1, "census identity fails at sample " + std::to_string(t));
    }
    for (const auto& rp : rational_pinches()) {
        const auto g = two_interval_forcing(rp.w);
        const Rational omega = exact_left_boundary(g, rp.b, rp.p, rp.q);
        const auto lambda = itinerary_census(pl_from_family(rp.b, omega, g), rp.p, rp.q);
        const auto nonzero = std::count_if(lambda.begin(), lambda.end(), [](const Rational& x) { return !x.is_zero(); });
        expect(nonzero == 1, "pinch census has " + std::to_string(nonzero) + " nonzero masses");
    }
}

void criterion7() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(1, 99);
    for (int t = 0; t < 100; ++t) {
        const Rational w(num(rng), 1 + num(rng) % 9);
        const Rational b(num(rng), 100);
        const unsigned q = 1 + t % 8;
        for (unsigned j = 1; j <= q; ++j)
            expect(FactoredPolynomial::pinch_polynomial(q, j, w).eval(b) <
                       FactoredPolynomial::pinch_polynomial(q, j - 1, w).eval(b),
                   "ordering fails at sample " + std::to_string(t));
    }
}

void criterion8() {
    std::size_t checked = 0;
    for (const Rational w : {Rational(1), Rational(4, 3), Rational(3)})
        for (const auto& pt : enumerate_pinches(w, 5)) {
            const auto c = extract_configuration(pt);
            for (const auto& poly : induced_polynomials(c)) {
                if (pt.b.is_exact()) {
                    expect(poly.eval(*pt.b.exact) == 1, "induced polynomial misses exact b");
                } else {
                    const auto root = unique_root(poly, pt.b.interval.width());
                    expect(root.interval.intersects(pt.b.interval), "induced root misses the b interval");
                }
                ++checked;
            }
        }
    for (const auto& rp : rational_pinches()) {
        const auto g = two_interval_forcing(rp.w);
        const Rational omega = exact_left_boundary(g, rp.b, rp.p, rp.q);
        for (const auto& poly : induced_polynomials(extract_configuration(g, rp.b, omega, rp.p, rp.q))) {
            expect(poly.eval(rp.b) == 1, "induced polynomial misses rational b");
            ++checked;
        }
    }
    expect(checked > 0, "no configurations checked");
}

// w_2 = m^3 and w_3 = (m - 1) m^3 / (m^3 - 1) make {1,1,2,2} and {1,3,3,3}
// share the root 1 - 1/m^3; l_2 = u / (1 + w_2) fixes the rest.
ReducedPLForcing collision_forcing(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const long m = std::uniform_int_distribution<long>(2, 4)(rng);
    const Rational a(m * m * m);
    const Rational c = Rational(m - 1) * a / (a - 1);
    const Rational l2 = Rational(std::uniform_int_distribution<long>(1, 19)(rng), 20) / (a + 1);
    const Rational l3 = (Rational(1) - l2 * (a + 1)) / (c + 1);
    return ReducedPLForcing({Rational(-1), a, c}, {a * l2 + c * l3, l2, l3});
}

void criterion9() {
    const Rational eps(1, 1000);
    unsigned moved = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto g = collision_forcing(seed);
        const std::string glabel = "collision seed " + std::to_string(seed) + " (" + g.spec() + ")";
        expect(!roots_separated(enumerate_plausible(g.w(), 4, 2)), glabel + ": no collision");
        const auto s = separate_roots(g.w(), g.ell(), 4, 2, eps, seed);
        expect(!validate_reduced(s.w, s.ell), glabel + ": invalid output");
        expect(roots_separated(enumerate_plausible(s.w, 4, 2)), glabel + ": roots not separated");
        Rational dw;
        for (std::size_t i = 0; i < 3; ++i) dw = max(dw, abs(s.w[i] - g.w()[i]));
        expect(dw < eps, glabel + ": moved too far");
        moved += s.attempts > 0 ? 1 : 0;
    }
    expect(moved == 100, "collisions left in place");
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto f = random_reduced_forcing(3, seed);
        const std::string label = "seed " + std::to_string(seed) + " (" + f.spec() + ")";
        expect(exact_pinch_scan(f, 4).empty(), label + ": exact pinch found");
        for (unsigned q = 2; q <= 4; ++q) {
            const auto s = separate_roots(f.w(), f.ell(), q, 2, eps, seed);
            expect(!validate_reduced(s.w, s.ell), label + ": invalid output");
            expect(roots_separated(enumerate_plausible(s.w, q, 2)), label + ": roots not separated");
        }
    }
}

std::vector<Rational> pinch_b_mids(const Rational& w, unsigned qmax, std::vector<std::pair<long, unsigned>>* tongue) {
    std::vector<Rational> out;
    for (const auto& pt : enumerate_pinches(w, qmax)) {
        out.push_back(pt.b.interval.mid());
        if (tongue) tongue->emplace_back(pt.p, pt.q);
    }
    return out;
}

void criterion10(const std::filesystem::path& golden_dir) {
    // Same parameters as tests/golden/compare.cmake.
    const std::string steps = "40";
    const std::string tol = "1/1073741824";
    const auto tmp = std::filesystem::temp_directory_path();
    for (const auto& [name, forcing] : {std::pair{"sine", "sine"}, std::pair{"triangle", "triangle:1/2"}}) {
        const auto out = tmp / (std::string("tongues_acceptance_") + name + ".svg");
        const std::string out_s = out.string();
        const char* argv[] = {"tongues", "scan", "--forcing", forcing, "--qmax", "4", "--b-steps", steps.c_str(),
                              "--tol", tol.c_str(), "--svg", out_s.c_str()};
        std::ostringstream sout, serr;
        expect(cli::run(12, argv, sout, serr) == 0, std::string(name) + " scan failed: " + serr.str());
        const auto golden = golden_dir / (std::string(name) + ".svg");
        expect(std::filesystem::exists(golden), "missing golden " + golden.string());
        expect(slurp(out) == slurp(golden), std::string(name) + " differs from golden");
        std::filesystem::remove(out);
    }

    std::vector<std::pair<long, unsigned>> where;
    const auto mids = pinch_b_mids(1, 4, &where);
    std::vector<Rational> grid = default_b_grid(40);
    grid.insert(grid.end(), mids.begin(), mids.end());
    const auto recs = scan_tongues(triangle_forcing(Rational(1, 2)), 4, grid, Rational::parse(tol));
    for (const auto& r : recs) {
        if (r.b.is_zero()) continue;
        const bool at_pinch = [&] {
            for (std::size_t i = 0; i < mids.size(); ++i)
                if (mids[i] == r.b && where[i] == std::pair{r.p, r.q}) return true;
            return false;
        }();
        const std::string label = std::to_string(r.p) + "/" + std::to_string(r.q) + " at b=" + r.b.str();
        expect(r.resolved(), label + " unresolved");
        if (at_pinch)
            expect(r.width_lower_bound().is_zero(), label + ": open at a certified pinch");
        else
            expect(r.width_lower_bound() > 0, label + ": width bound 0 away from the pinches");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path golden_dir = "tests/golden";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--golden-dir") golden_dir = argv[i + 1];

    const std::vector<std::pair<const char*, std::function<void()>>> criteria{
        {"pinch counts", criterion1},
        {"pinch b values", criterion2},
        {"exact pinch", criterion3},
        {"characterization equivalence", criterion4},
        {"no pinch for the sine family", criterion5},
        {"census equations", criterion6},
        {"reverse ordering", criterion7},
        {"shared roots", criterion8},
        {"genericity echo", criterion9},
        {"diagram regression", [&] { criterion10(golden_dir); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            criteria[i].second();
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %zu %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(t0),
                    ok ? "" : ": ", detail.c_str());
        std::fflush(stdout);
        failed += ok ? 0 : 1;
    }
    return failed ? 1 : 0;
}
