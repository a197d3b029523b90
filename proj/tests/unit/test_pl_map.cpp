#include <doctest.h>

#include "support/random_maps.hpp"
#include "tongues/circle_map.hpp"
#include "tongues/errors.hpp"
#include "tongues/forcing.hpp"
#include "tongues/pl_map.hpp"

using namespace tongues;
using testing_support::random_homeomorphism;
using testing_support::random_point;

namespace {

PLMap triangle_map(const Rational& b, const Rational& omega) {
    return pl_from_family(b, omega, triangle_forcing(Rational(1, 2)));
}

PLMap exact_pinch_map() {
    return pl_from_family(Rational(3, 4), Rational(4, 7),
                          ReducedPLForcing({Rational(-1), Rational(4, 3)}, {Rational(4, 7), Rational(3, 7)}));
}

}  // namespace

TEST_CASE("normal form") {
    const PLMap r = PLMap::rotation(Rational(1, 3));
    CHECK(r.piece_count() == 1);
    CHECK(r.breakpoints().empty());
    CHECK(r.breakpoint_slopes() == std::vector<Rational>{1});
    // Collinear pieces merge.
    CHECK(PLMap({0, Rational(1, 2)}, {Rational(1, 3), Rational(5, 6)}) == r);
    CHECK_THROWS_AS(PLMap({0, Rational(1, 2)}, {Rational(1), Rational(0)}), PreconditionViolation);
    CHECK_THROWS_AS(PLMap({Rational(1, 4)}, {Rational(0)}), PreconditionViolation);
}

TEST_CASE("family maps") {
    const PLMap t = triangle_map(Rational(1, 2), 0);
    CHECK(t.slopes() == std::vector<Rational>{Rational(1, 2), Rational(3, 2)});
    CHECK(t.knots() == std::vector<Rational>{0, Rational(1, 2)});
    CHECK(exact_pinch_map().slopes() == std::vector<Rational>{Rational(1, 4), 2});
    CHECK(pl_from_family(0, Rational(2, 5), triangle_forcing(Rational(1, 2))) == PLMap::rotation(Rational(2, 5)));
    CHECK(t.break_type(Rational(1, 2)) == BreakType::Up);
    CHECK(t.break_type(0) == BreakType::Down);
    CHECK(t.break_type(Rational(1, 4)) == BreakType::None);
}

TEST_CASE("lift identity and evaluation") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const PLMap f = random_homeomorphism(rng, 1 + t % 6);
        const Rational x = random_point(rng);
        CHECK(f(x + 1) == f(x) + 1);
        CHECK(f(x - 3) == f(x) - 3);
    }
}

TEST_CASE("composition agrees with pointwise evaluation") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const PLMap f = random_homeomorphism(rng, 1 + t % 5);
        const PLMap g = random_homeomorphism(rng, 1 + (t / 5) % 5);
        const PLMap gf = pl_compose(g, f);
        for (int s = 0; s < 10; ++s) {
            const Rational x = random_point(rng);
            CHECK(gf(x) == g(f(x)));
        }
        for (const auto& k : f.knots()) CHECK(gf(k) == g(f(k)));
    }
}

TEST_CASE("composition special cases") {
    CHECK(pl_compose(PLMap::rotation(Rational(1, 3)), PLMap::rotation(Rational(1, 5))) ==
          PLMap::rotation(Rational(8, 15)));
    std::mt19937_64 rng(5);
    const PLMap f = random_homeomorphism(rng, 4);
    CHECK(pl_compose(f, PLMap::identity()) == f);
    CHECK(pl_compose(PLMap::identity(), f) == f);

    const PLMap t = triangle_map(Rational(1, 2), 0);
    const PLMap tt = pl_compose(t, t);
    CHECK(tt.piece_count() <= 4);
    const std::vector<Rational> allowed{Rational(1, 4), Rational(3, 4), Rational(9, 4)};
    for (const auto& s : tt.slopes()) CHECK(std::find(allowed.begin(), allowed.end(), s) != allowed.end());
}

TEST_CASE("power and inverse") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 30; ++t) {
        const PLMap f = random_homeomorphism(rng, 1 + t % 4);
        CHECK(pl_power(f, 1) == f);
        CHECK(pl_power(f, 3) == pl_compose(f, pl_compose(f, f)));
        const PLMap inv = pl_inverse(f);
        CHECK(pl_compose(inv, f) == PLMap::identity());
        CHECK(pl_compose(f, inv) == PLMap::identity());
    }
    CHECK_THROWS_AS(pl_power(PLMap::identity(), 0), PreconditionViolation);
    CHECK_THROWS_AS(pl_inverse(pl_from_family(1, 0, triangle_forcing(Rational(1, 2)))), PreconditionViolation);
}

TEST_CASE("displacement and translation") {
    const PLMap r = PLMap::rotation(Rational(1, 3));
    CHECK(displacement_range(r, 0) == std::make_pair(Rational(1, 3), Rational(1, 3)));
    CHECK(displacement_range(pl_power(r, 3), 1) == std::make_pair(Rational(0), Rational(0)));
    // phi <= 0 for the triangle, so at omega = 0 the maximum touches zero.
    const auto [lo, hi] = displacement_range(triangle_map(Rational(1, 2), 0), 0);
    CHECK(lo == Rational(-1, 4));
    CHECK(hi == 0);
    const auto [lo2, hi2] = displacement_range(triangle_map(Rational(1, 2), Rational(1, 10)), 0);
    CHECK(lo2 < 0);
    CHECK(hi2 > 0);
    CHECK(is_translation(pl_power(r, 3), 1));
    CHECK_FALSE(is_translation(pl_power(triangle_map(Rational(1, 2), Rational(1, 3)), 3), 1));
    CHECK(is_translation(pl_power(exact_pinch_map(), 3), 1));
    CHECK(pl_power(exact_pinch_map(), 3) == PLMap::rotation(1));
}

TEST_CASE("break orbits") {
    const auto rot = break_orbit(PLMap::rotation(Rational(1, 3)), 0, 3, 1);
    CHECK(rot.points == std::vector<Rational>{0, Rational(1, 3), Rational(2, 3)});
    CHECK(rot.periodic);
    for (auto t : rot.types) CHECK(t == BreakType::None);

    const PLMap g = exact_pinch_map();
    const auto pinch = break_orbit(g, 0, 3, 1);
    CHECK(pinch.periodic);
    CHECK(std::count(pinch.types.begin(), pinch.types.end(), BreakType::Down) >= 1);
    CHECK(std::count(pinch.types.begin(), pinch.types.end(), BreakType::Up) >= 1);

    CHECK_FALSE(break_orbit(triangle_map(Rational(1, 2), 0), Rational(1, 2), 3, 1).periodic);
}

TEST_CASE("derivative products") {
    std::mt19937_64 rng(2);
    for (int q = 1; q <= 4; ++q) CHECK(derivative_product(PLMap::rotation(Rational(2, 7)), random_point(rng), q) == 1);
    // Itinerary (-1, 1, 1): one visit to the slope 1/2 piece, two to the 3/2 piece.
    const PLMap t = triangle_map(Rational(1, 2), Rational(3, 10));
    bool found = false;
    for (int i = 1; i < 100 && !found; ++i) {
        const Rational x(i, 100);
        bool clean = true;
        for (const auto& y : break_orbit(t, x, 3, 1).types) clean &= y == BreakType::None;
        if (!clean || break_orbit(t, x, 3, 1).points.size() != 3) continue;
        const auto it = itinerary(t, x, 3);
        if (it.symbols == std::vector<std::size_t>{0, 1, 1}) {
            CHECK(derivative_product(t, x, 3) == Rational(9, 8));
            found = true;
        }
    }
    CHECK(found);
    CHECK(derivative_product(exact_pinch_map(), Rational(1, 10), 3) == 1);
    CHECK_THROWS_AS(derivative_product(t, Rational(1, 2), 2), OrbitHitsBreakpoint);
}

TEST_CASE("itinerary cuts are where the itinerary changes") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        const PLMap f = random_homeomorphism(rng, 2 + t % 3);
        const unsigned q = 3;
        const auto cuts = itinerary_cuts(f, q);
        REQUIRE(!cuts.empty());
        CHECK(cuts.front() == 0);
        CHECK(std::is_sorted(cuts.begin(), cuts.end()));
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            const Rational a = cuts[i];
            const Rational b = i + 1 < cuts.size() ? cuts[i + 1] : Rational(1);
            const auto sym = itinerary(f, a, q).symbols;
            CHECK(itinerary(f, midpoint(a, b), q).symbols == sym);
            CHECK(itinerary(f, a + (b - a) * Rational(9, 10), q).symbols == sym);
        }
    }
}

TEST_CASE("preimages") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        const PLMap f = random_homeomorphism(rng, 3);
        const Rational y = random_point(rng);
        const auto pre = f.preimages(y);
        REQUIRE(pre.size() == 1);
        CHECK((f(pre[0]) - y).is_integer());
    }
}
