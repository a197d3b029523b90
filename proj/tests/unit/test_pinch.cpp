#include <doctest.h>

#include "support/oracle.hpp"
#include "support/random_maps.hpp"
#include "tongues/circle_map.hpp"
#include "tongues/errors.hpp"
#include "tongues/periodic_solve.hpp"
#include "tongues/pinch.hpp"
#include "tongues/tongue_scan.hpp"

#include <map>
#include <numeric>

using namespace tongues;

namespace {

const Rational kW(4, 3);
const ReducedPLForcing kExact = two_interval_forcing(kW);

PLMap exact_map() { return pl_from_family(Rational(3, 4), Rational(4, 7), kExact); }

bool encloses(const RationalInterval& r, long double x) {
    return r.lo().to_double() <= static_cast<double>(x) + 1e-15 && static_cast<double>(x) - 1e-15 <= r.hi().to_double();
}

// b = 1 - r^{q-j} and w = (r^{-j} - 1) / b make p_{q,j,w}(b) = 1 exactly.
std::pair<Rational, Rational> rational_pinch(unsigned q, unsigned j, const Rational& r) {
    const Rational b = Rational(1) - pow(r, q - j);
    const Rational w = (Rational(1) / pow(r, j) - 1) / b;
    return {b, w};
}

}  // namespace

TEST_CASE("pinch counts") {
    CHECK(pinch_count(3, 1) == 1);
    CHECK(pinch_count(2, 1) == 0);
    CHECK(pinch_count(5, 1) == 2);
    CHECK(pinch_count(4, 1) == 1);
    CHECK(pinch_count(3, kW) == 1);
    CHECK(pinch_count(7, 3) == 5);
    CHECK_THROWS(pinch_count(3, 0));
}

TEST_CASE("two-interval forcing") {
    CHECK(two_interval_forcing(1) == triangle_forcing(Rational(1, 2)));
    CHECK(kExact.ell() == std::vector<Rational>{Rational(4, 7), Rational(3, 7)});
}

TEST_CASE("pinch couplings") {
    const auto third = pinch_b(3, 1, 1, Rational(1, 1'000'000'000));
    CHECK_FALSE(third.is_exact());
    CHECK(third.interval.width() <= Rational(1, 1'000'000'000));
    CHECK(encloses(third.interval, oracle::golden_root()));
    CHECK(encloses(pinch_b(4, 1, 1).interval, oracle::quartic_pinch_root()));

    const auto exact = pinch_b(3, 1, kW);
    REQUIRE(exact.is_exact());
    CHECK(*exact.exact == Rational(3, 4));
    CHECK(Rational(1, 4) * Rational(2) * Rational(2) == 1);
    CHECK(exact.polynomial.eval(Rational(3, 4)) == 1);

    CHECK_THROWS_AS(pinch_b(2, 1, 1), JOutOfRange);
    CHECK_THROWS_AS(pinch_b(5, 3, 1), JOutOfRange);
    CHECK_THROWS_AS(pinch_b(5, 0, 1), JOutOfRange);
}

TEST_CASE("reverse ordering of pinch polynomials") {
    for (unsigned q = 2; q <= 8; ++q)
        for (const Rational w : {Rational(1, 3), Rational(1), Rational(5, 2)})
            for (const Rational b : {Rational(1, 10), Rational(1, 2), Rational(9, 10)})
                for (unsigned j = 1; j <= q; ++j)
                    CHECK(FactoredPolynomial::pinch_polynomial(q, j, w).eval(b) <
                          FactoredPolynomial::pinch_polynomial(q, j - 1, w).eval(b));
}

TEST_CASE("exact pinch pipeline") {
    const auto omega = pinch_omega(1, 3, 1, kW);
    REQUIRE(omega.is_point());
    CHECK(omega.lo() == Rational(4, 7));
    CHECK(pinch_omega(2, 3, 1, kW).lo() == Rational(6, 7));
    const auto cert = verify_pinch(kExact, Rational(3, 4), omega.lo(), 1, 3);
    CHECK(cert.kind == PinchCertificate::Kind::ExactTranslation);
    CHECK(cert.bound == 0);
    CHECK(pl_power(exact_map(), 3) == PLMap::rotation(1));
    CHECK(std::string(to_string(cert.kind)) == "exact");

    // Left and right boundaries meet.
    CHECK(exact_left_boundary(kExact, Rational(3, 4), 1, 3) == exact_right_boundary(kExact, Rational(3, 4), 1, 3));
    CHECK(exact_left_boundary(kExact, Rational(3, 5), 1, 3) < exact_right_boundary(kExact, Rational(3, 5), 1, 3));
}

TEST_CASE("verify rejects non-pinches") {
    const auto tri = triangle_forcing(Rational(1, 2));
    CHECK_THROWS_AS(verify_pinch(tri, Rational(1, 2), Rational(1, 3), 1, 3), NotPinch);
    CHECK_THROWS_AS(verify_pinch(kExact, Rational(3, 4), Rational(4, 7) + dyadic(30), 1, 3), NotPinch);
    CHECK(verify_pinch(tri, 0, Rational(1, 3), 1, 3).kind == PinchCertificate::Kind::ExactTranslation);
}

TEST_CASE("interval certificates for the triangle") {
    const auto w = Rational(1);
    const auto tri = two_interval_forcing(w);
    const auto pts = enumerate_pinches(w, 5);
    std::map<unsigned, int> per_tongue;
    for (const auto& pt : pts) {
        CHECK(pt.certificate.kind == PinchCertificate::Kind::IntervalCertified);
        CHECK(pt.certificate.bound <= Rational(1, 1'000'000'000'000L));
        CHECK(pt.b.interval.width() <= Rational(1, 1'000'000'000));
        CHECK_NOTHROW(verify_pinch(tri, pt.b, pt.omega, pt.p, pt.q));
        ++per_tongue[pt.q * 100 + pt.p];
    }
    CHECK(per_tongue.count(201) == 0);
    CHECK(per_tongue[301] == 1);
    CHECK(per_tongue[302] == 1);
    CHECK(per_tongue[401] == 1);
    CHECK(per_tongue[403] == 1);
    for (long p = 1; p < 5; ++p) CHECK(per_tongue[500 + p] == 2);

    // The certificate fails on an omega box that misses the pinch.
    const auto coupling = pinch_b(3, 1, w);
    const auto good = pinch_omega(1, 3, 1, w);
    const RationalInterval shifted(good.lo() + dyadic(20), good.hi() + dyadic(20));
    CHECK_THROWS_AS(verify_pinch(tri, coupling, shifted, 1, 3), NotPinch);
    // and on the wrong tongue.
    CHECK_THROWS_AS(verify_pinch(tri, coupling, good, 2, 3), NotPinch);
}

TEST_CASE("rational pinch constructions verify exactly") {
    for (unsigned q = 3; q <= 5; ++q)
        for (const Rational r : {Rational(1, 2), Rational(2, 3)})
            for (unsigned j = 1; j < q; ++j) {
                const auto [b, w] = rational_pinch(q, j, r);
                if (j > pinch_count(q, w)) continue;
                const auto f = two_interval_forcing(w);
                for (long p = 1; p < static_cast<long>(q); ++p) {
                    if (std::gcd(p, static_cast<long>(q)) != 1) continue;
                    const Rational omega = exact_left_boundary(f, b, p, q);
                    CHECK(verify_pinch(f, b, omega, p, q).kind == PinchCertificate::Kind::ExactTranslation);
                    CHECK(pinch_omega(p, q, j, w).lo() == omega);
                }
            }
}

TEST_CASE("itinerary census") {
    const auto rot = itinerary_census(PLMap::rotation(Rational(1, 3)), 1, 3);
    CHECK(std::count_if(rot.begin(), rot.end(), [](const Rational& x) { return x.sign() != 0; }) == 1);
    CHECK(rot[0] == 1);

    const auto pinch = itinerary_census(exact_map(), 1, 3);
    CHECK(pinch == std::vector<Rational>{0, 1, 0, 0});

    const auto tri = triangle_forcing(Rational(1, 2));
    const Rational b(1, 2);
    const Rational lo = exact_left_boundary(tri, b, 1, 3);
    const Rational hi = exact_right_boundary(tri, b, 1, 3);
    for (int i = 0; i <= 8; ++i) {
        const Rational omega = lo + (hi - lo) * Rational(i, 8);
        const auto lambda = itinerary_census(pl_from_family(b, omega, tri), 1, 3);
        std::vector<std::size_t> nonzero;
        for (std::size_t j = 0; j < lambda.size(); ++j)
            if (lambda[j].sign() != 0) nonzero.push_back(j);
        REQUIRE(!nonzero.empty());
        CHECK(nonzero.size() <= 2);
        CHECK(nonzero.back() - nonzero.front() <= 1);
    }
}

TEST_CASE("census identities on random family points") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> d(1, 19);
    for (int t = 0; t < 30; ++t) {
        const Rational w(d(rng), d(rng) % 5 + 1);
        const Rational b(d(rng), 20);
        const Rational omega(d(rng), 20);
        const unsigned q = 1 + t % 5;
        const auto lambda = itinerary_census(pl_from_family(b, omega, two_interval_forcing(w)), 0, q);
        Rational total, weighted;
        for (unsigned j = 0; j <= q; ++j) {
            total += lambda[j];
            weighted += FactoredPolynomial::pinch_polynomial(q, j, w).eval(b) * lambda[j];
        }
        CHECK(total == 1);
        CHECK(weighted == 1);
    }
}

TEST_CASE("configurations") {
    const auto c = extract_configuration(kExact, Rational(3, 4), Rational(4, 7), 1, 3);
    CHECK(c.m == 1);
    CHECK(c.marked.size() == 2);
    CHECK(c.marked.front() == 0);
    CHECK(c.weights == kExact.w());
    const auto polys = induced_polynomials(c);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0] == FactoredPolynomial::pinch_polynomial(3, 1, kW));
    CHECK(polys[0].eval(Rational(3, 4)) == 1);

    CHECK_THROWS_AS(extract_configuration(kExact, Rational(3, 5), Rational(4, 7), 1, 3), NotPinch);

    // R_{1/3} with marks at 0 and 1/6: two interleaved orbits.
    auto rot = extract_configuration(PLMap::rotation(Rational(1, 3)), {0, Rational(1, 6)}, 1, 3);
    CHECK(rot.m == 2);
    CHECK(rot.marked == std::vector<Rational>{0, Rational(1, 6)});
    rot.weights = {0, 0};
    for (const auto& p : induced_polynomials(rot)) CHECK(p.eval(Rational(1, 2)) == 1);

    // Distinct weights on an m = 2 configuration give distinct polynomials.
    Configuration synth{1, 3, 2, {0, Rational(1, 6), Rational(1, 3)}, {-1, 2, Rational(1, 2)}};
    const auto two = induced_polynomials(synth);
    REQUIRE(two.size() == 2);
    CHECK(two[0] != two[1]);
}

TEST_CASE("interval configuration and shared roots") {
    for (const auto& pt : enumerate_pinches(1, 5)) {
        const auto c = extract_configuration(pt);
        CHECK(c.m == 1);
        for (const auto& poly : induced_polynomials(c)) {
            const auto root = unique_root(poly, dyadic(60));
            CHECK(root.interval.intersects(pt.b.interval));
        }
    }
}

TEST_CASE("conjugacy and density at the exact pinch") {
    const PLMap g = exact_map();
    const PLMap h = build_conjugacy(g, 1, 3);
    CHECK(h.breakpoints().size() <= 3);
    CHECK(pl_compose(h, pl_compose(g, pl_inverse(h))) == PLMap::rotation(Rational(1, 3)));
    const auto eta = invariant_density(g, h);
    CHECK(eta.integral() == 1);
    CHECK(eta.distinct_values() <= 3);
    for (const auto& v : eta.values) CHECK(v.sign() > 0);

    CHECK(build_conjugacy(PLMap::rotation(Rational(1, 3)), 1, 3) == PLMap::identity());
    const auto flat = invariant_density(PLMap::rotation(Rational(1, 3)), PLMap::identity());
    CHECK(flat.distinct_values() == 1);
    CHECK(flat(Rational(1, 2)) == 1);
    CHECK_THROWS_AS(build_conjugacy(pl_from_family(Rational(1, 2), Rational(1, 3), kExact), 1, 3), NotExactPinch);
}

TEST_CASE("characterizations agree") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        const PLMap h = testing_support::random_homeomorphism(rng, 1 + t % 4);
        const long p = 1 + t % 2;
        const unsigned q = 3 + t % 3;
        if (std::gcd(p, static_cast<long>(q)) != 1) continue;
        const PLMap g = conjugated_rotation(h, p, q);
        CHECK(pl_power(g, q) == PLMap::rotation(Rational(p)));
        const auto c = characterize(g, p, q);
        CHECK(c.translation);
        CHECK(c.paired_breaks);
        CHECK(c.pl_conjugate);
        CHECK(c.step_density);
        if (!g.breakpoints().empty()) {
            const PLMap k = build_conjugacy(g, p, q);
            CHECK(pl_compose(k, pl_compose(g, pl_inverse(k))) == PLMap::rotation(Rational(p, q)));
            CHECK(invariant_density(g, k).integral() == 1);
        }
    }
    const auto none = characterize(pl_from_family(Rational(1, 2), Rational(1, 3), triangle_forcing(Rational(1, 2))), 1, 3);
    CHECK_FALSE(none.translation);
    CHECK_FALSE(none.paired_breaks);
    CHECK_FALSE(none.pl_conjugate);
    CHECK_FALSE(none.step_density);
}
