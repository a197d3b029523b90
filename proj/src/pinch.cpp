#include "tongues/pinch.hpp"

#include "tongues/circle_map.hpp"
#include "tongues/errors.hpp"
#include "tongues/parallel.hpp"
#include "tongues/periodic_solve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tongues {

namespace {

const Rational kDefaultBound(1, 1'000'000'000'000L);

Rational ratio(long p, unsigned q) { return {p, static_cast<long>(q)}; }

void check_coprime(long p, unsigned q) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    if (std::gcd(static_cast<unsigned long>(p < 0 ? -p : p), static_cast<unsigned long>(q)) != 1)
        throw PreconditionViolation("p/q must be in lowest terms");
}

// The knot of F^q with the largest |F^q(x) - x - p|.
std::pair<Rational, Rational> worst_knot(const PLMap& power, long p) {
    Rational where;
    Rational worst = -1;
    for (std::size_t i = 0; i < power.knots().size(); ++i) {
        const Rational d = abs(power.values()[i] - power.knots()[i] - Rational(p));
        if (d > worst) {
            worst = d;
            where = power.knots()[i];
        }
    }
    return {where, worst};
}

Rational geometric_sum(const Rational& ratio_, unsigned q) {
    Rational sum;
    Rational term(1);
    for (unsigned i = 0; i < q; ++i) {
        sum += term;
        term *= ratio_;
    }
    return sum;
}

}  // namespace

unsigned pinch_count(unsigned q, const Rational& w) {
    if (w.sign() <= 0) throw PreconditionViolation("pinch_count needs w > 0");
    const Rational x = w * Rational(static_cast<long>(q)) / (w + Rational(1));
    const mpz_class c = x.ceil();
    return c <= 0 ? 0u : static_cast<unsigned>(c.get_ui() - 1);
}

ReducedPLForcing two_interval_forcing(const Rational& w) {
    if (w.sign() <= 0) throw PreconditionViolation("two-interval forcing needs w > 0");
    const Rational total = w + Rational(1);
    return ReducedPLForcing({Rational(-1), w}, {w / total, Rational(1) / total});
}

PinchCoupling pinch_b(unsigned q, unsigned j, const Rational& w, const Rational& width) {
    const unsigned tau = pinch_count(q, w);
    if (j < 1 || j > tau)
        throw JOutOfRange("j = " + std::to_string(j) + " outside [1, " + std::to_string(tau) + "] for q = " +
                          std::to_string(q) + ", w = " + w.str());
    auto poly = FactoredPolynomial::pinch_polynomial(q, j, w);
    if (auto r = rational_root(poly)) return {poly, RationalInterval(*r), *r};
    auto root = unique_root(poly, width);
    return {poly, root.interval, root.exact ? std::optional<Rational>(root.interval.lo()) : std::nullopt};
}

namespace {

// The b enclosure and the omega enclosure certified over it.
std::pair<PinchCoupling, RationalInterval> pinch_box(long p, unsigned q, unsigned j, const Rational& w,
                                                     const Rational& tol) {
    check_coprime(p, q);
    if (tol.sign() <= 0) throw PreconditionViolation("tolerance must be positive");
    const ReducedPLForcing f = two_interval_forcing(w);
    Rational b_width = min(dyadic(50), tol / Rational(64));
    for (int attempt = 0; attempt < 6; ++attempt, b_width /= Rational(1 << 16)) {
        const PinchCoupling c = pinch_b(q, j, w, b_width);
        if (c.is_exact()) return {c, RationalInterval(periodic_omega(f, *c.exact, Rational(0), p, q))};
        const Rational at_lo = periodic_omega(f, c.interval.lo(), Rational(0), p, q);
        const Rational at_hi = periodic_omega(f, c.interval.hi(), Rational(0), p, q);
        const Rational a = min(at_lo, at_hi);
        const Rational z = max(at_lo, at_hi);
        const Rational pad = (z - a) + tol / Rational(8);
        const Rational lo = simplest_between(a - pad, a - pad / Rational(2));
        const Rational hi = simplest_between(z + pad / Rational(2), z + pad);
        if (hi - lo > tol) continue;
        if (displacement_enclosure(f, c.interval, lo, Rational(0), p, q).negative() &&
            displacement_enclosure(f, c.interval, hi, Rational(0), p, q).positive())
            return {c, RationalInterval(lo, hi)};
    }
    throw Unresolved("could not certify the pinch omega of " + std::to_string(p) + "/" + std::to_string(q) +
                     " to width " + tol.str());
}

}  // namespace

RationalInterval pinch_omega(long p, unsigned q, unsigned j, const Rational& w, const Rational& tol) {
    return pinch_box(p, q, j, w, tol).second;
}

const char* to_string(PinchCertificate::Kind k) {
    return k == PinchCertificate::Kind::ExactTranslation ? "exact" : "interval";
}

PinchCertificate verify_pinch(const ReducedPLForcing& forcing, const Rational& b, const Rational& omega, long p,
                              unsigned q) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    const PLMap power = pl_power(pl_from_family(b, omega, forcing), q);
    if (is_translation(power, Rational(p))) return {PinchCertificate::Kind::ExactTranslation, Rational(0)};
    const auto [x, d] = worst_knot(power, p);
    throw NotPinch("F^q - x - p = " + d.str() + " != 0 at x = " + x.str());
}

PinchCertificate verify_pinch(const ReducedPLForcing& forcing, const PinchCoupling& coupling,
                              const RationalInterval& omega, long p, unsigned q, const Rational& bound) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    if (coupling.is_exact() && omega.is_point()) return verify_pinch(forcing, *coupling.exact, omega.lo(), p, q);
    if (forcing.size() != 2) throw PreconditionViolation("interval certification needs a two-interval forcing");
    const Rational& w = forcing.w()[1];
    bool matches = false;
    for (unsigned j = 1; j < q && !matches; ++j)
        matches = coupling.polynomial == FactoredPolynomial::pinch_polynomial(q, j, w);
    if (!matches) throw NotPinch("b polynomial is not p_{q,j,w} for this forcing");

    const RationalInterval& box = coupling.interval;
    if (!coupling.is_exact()) {
        const Rational one(1);
        if (!(coupling.polynomial.eval(box.lo()) > one && coupling.polynomial.eval(box.hi()) < one))
            throw NotPinch("b interval does not bracket the root of " + coupling.polynomial.str());
    }
    // x_d = 0 must be p/q-periodic somewhere in the box: g < 0 at omega.lo and
    // g > 0 at omega.hi for every b in the box.
    const RationalInterval g_lo = displacement_enclosure(forcing, box, omega.lo(), Rational(0), p, q);
    const RationalInterval g_hi = displacement_enclosure(forcing, box, omega.hi(), Rational(0), p, q);
    if (!g_lo.negative() || !g_hi.positive())
        throw NotPinch("break point 0 is not certified p/q-periodic in the box (F^q(0) - p in [" + g_lo.lo().str() +
                       ", " + g_lo.hi().str() + "] at omega.lo)");

    const PLMap power = pl_power(pl_from_family(box.mid(), omega.mid(), forcing), q);
    const auto [x, d] = worst_knot(power, p);
    const Rational lip = Rational(1) + box.hi() * forcing.max_weight();
    const Rational spread = omega.width() / Rational(2) + box.width() / Rational(2) * forcing.sup_abs();
    const Rational eps = d + geometric_sum(lip, q) * spread;
    if (eps > bound)
        throw NotPinch("sup |F^q - x - p| bound " + std::to_string(eps.to_double()) + " exceeds " +
                       std::to_string(bound.to_double()) + " near x = " + x.str());
    return {PinchCertificate::Kind::IntervalCertified, eps};
}

std::vector<PinchPoint> enumerate_pinches(const Rational& w, unsigned q_max) {
    const ReducedPLForcing f = two_interval_forcing(w);
    struct Task {
        long p;
        unsigned q;
        unsigned j;
    };
    std::vector<Task> tasks;
    for (unsigned q = 2; q <= q_max; ++q) {
        const unsigned tau = pinch_count(q, w);
        for (long p = 1; p < static_cast<long>(q); ++p) {
            if (std::gcd(static_cast<unsigned long>(p), static_cast<unsigned long>(q)) != 1) continue;
            for (unsigned j = 1; j <= tau; ++j) tasks.push_back({p, q, j});
        }
    }
    std::vector<std::optional<PinchPoint>> found(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        const Task& t = tasks[i];
        // Size the omega enclosure so the sup-norm bound below clears 1e-12.
        const Rational tol = min(dyadic(50), kDefaultBound / (Rational(8) * geometric_sum(Rational(1) + w, t.q)));
        auto [b, omega] = pinch_box(t.p, t.q, t.j, w, tol);
        const PinchCertificate cert = verify_pinch(f, b, omega, t.p, t.q);
        found[i] = PinchPoint{t.p, t.q, t.j, w, std::move(b), std::move(omega), cert};
    });
    std::vector<PinchPoint> out;
    for (auto& pt : found) out.push_back(std::move(*pt));
    return out;
}

std::vector<Rational> itinerary_census(const PLMap& map, long p, unsigned q) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    (void)p;
    std::set<Rational> slopes(map.slopes().begin(), map.slopes().end());
    std::vector<Rational> lambda(q + 1);
    if (slopes.size() == 1) {
        if (*slopes.begin() != Rational(1)) throw PreconditionViolation("census needs a two-interval family map");
        lambda[0] = Rational(1);
        return lambda;
    }
    if (slopes.size() != 2 || *slopes.begin() >= Rational(1) || *slopes.rbegin() <= Rational(1))
        throw PreconditionViolation("census needs a two-interval family map");
    const Rational b = Rational(1) - *slopes.begin();
    const Rational w = (*slopes.rbegin() - Rational(1)) / b;

    const std::vector<Rational> cuts = itinerary_cuts(map, q);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const Rational end = i + 1 < cuts.size() ? cuts[i + 1] : Rational(1);
        lambda[itinerary(map, midpoint(cuts[i], end), q).gamma] += end - cuts[i];
    }

    Rational mass;
    Rational stretch;
    for (unsigned j = 0; j <= q; ++j) {
        mass += lambda[j];
        stretch += pow(Rational(1) - b, j) * pow(Rational(1) + b * w, q - j) * lambda[j];
    }
    if (mass != Rational(1) || stretch != Rational(1))
        throw std::logic_error("census equations fail: mass " + mass.str() + ", stretch " + stretch.str());
    return lambda;
}

Configuration extract_configuration(const PLMap& g, const std::vector<Rational>& marked, long p, unsigned q) {
    check_coprime(p, q);
    if (marked.empty() || !marked.front().is_zero()) throw PreconditionViolation("marked points must start at 0");
    if (!std::is_sorted(marked.begin(), marked.end()) ||
        std::adjacent_find(marked.begin(), marked.end()) != marked.end())
        throw PreconditionViolation("marked points must be strictly increasing");

    // First return of 0 to the right: the orbit point of 0 closest above 0.
    Rational gap(1);
    {
        Rational y;
        for (unsigned i = 1; i < q; ++i) {
            y = g(y);
            if (!y.frac().is_zero()) gap = min(gap, y.frac());
        }
        if (q == 1) gap = Rational(1);
    }

    struct Placement {
        Rational rep;    // orbit point in [0, gap)
        unsigned steps;  // g^steps(marked) = rep mod 1
    };
    std::vector<Placement> placed;
    for (const auto& x : marked) {
        Rational y = x;
        std::optional<Placement> found;
        for (unsigned i = 0; i < q; ++i) {
            if (y.frac() < gap) {
                if (found) throw NotPinch("orbit of " + x.str() + " enters [0, gap) twice");
                found = Placement{y.frac(), i};
            }
            y = g(y);
        }
        if (y != x + Rational(p)) throw NotPinch("marked point " + x.str() + " is not p/q-periodic");
        if (!found) throw NotPinch("orbit of " + x.str() + " misses [0, gap)");
        placed.push_back(*found);
    }
    std::vector<Rational> reps;
    for (const auto& pl : placed) reps.push_back(pl.rep);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

    Configuration c;
    c.p = p;
    c.q = q;
    c.m = static_cast<unsigned>(reps.size());
    const Rational qm(static_cast<long>(q) * c.m);
    for (const auto& pl : placed) {
        const auto i = static_cast<long>(std::lower_bound(reps.begin(), reps.end(), pl.rep) - reps.begin());
        const unsigned back = (q - pl.steps % q) % q;
        c.marked.push_back((Rational(i) / qm + ratio(p, q) * Rational(static_cast<long>(back))).frac());
    }
    for (std::size_t i = 1; i < c.marked.size(); ++i)
        if (!(c.marked[i - 1] < c.marked[i])) throw NotPinch("orbit identification does not preserve order");
    return c;
}

Configuration extract_configuration(const ReducedPLForcing& forcing, const Rational& b, const Rational& omega, long p,
                                    unsigned q) {
    verify_pinch(forcing, b, omega, p, q);
    Configuration c = extract_configuration(pl_from_family(b, omega, forcing), forcing.starts(), p, q);
    c.weights = forcing.w();
    return c;
}

Configuration extract_configuration(const PinchPoint& pinch) {
    const ReducedPLForcing f = two_interval_forcing(pinch.w);
    if (pinch.certificate.kind == PinchCertificate::Kind::ExactTranslation && pinch.b.is_exact() &&
        pinch.omega.is_point())
        return extract_configuration(f, *pinch.b.exact, pinch.omega.lo(), pinch.p, pinch.q);

    // Interval pinch: locate the up break l_1 on the orbit of 0 from enclosures.
    const auto orbit = orbit_enclosure(f, pinch.b.interval, pinch.omega, Rational(0), pinch.q);
    const Rational up = f.starts()[1];
    std::optional<unsigned> hit;
    for (unsigned i = 1; i < pinch.q; ++i) {
        const mpz_class n = orbit[i].lo().floor();
        if (orbit[i].hi().floor() != n) throw NotPinch("orbit enclosure straddles an integer");
        const RationalInterval u(orbit[i].lo() - Rational(n, 1), orbit[i].hi() - Rational(n, 1));
        if (u.contains(up)) {
            if (hit) throw NotPinch("orbit enclosures are too wide to place the up break");
            hit = i;
        }
    }
    if (!hit) throw NotPinch("up break is not on the orbit of 0");
    Configuration c;
    c.p = pinch.p;
    c.q = pinch.q;
    c.m = 1;
    c.marked = {Rational(0), (ratio(pinch.p, pinch.q) * Rational(static_cast<long>(*hit))).frac()};
    c.weights = f.w();
    return c;
}

std::vector<FactoredPolynomial> induced_polynomials(const Configuration& c) {
    if (c.weights.size() != c.marked.size())
        throw PreconditionViolation("induced polynomials need one weight per marked interval");
    std::vector<FactoredPolynomial> out;
    const Rational qm(static_cast<long>(c.q) * c.m);
    for (unsigned i = 0; i < c.m; ++i) {
        const Rational centre = (Rational(2 * static_cast<long>(i) + 1)) / (Rational(2) * qm);
        std::vector<Factor> factors;
        for (unsigned j = 0; j < c.q; ++j) {
            const Rational y = (centre + ratio(c.p, c.q) * Rational(static_cast<long>(j))).frac();
            const auto s = static_cast<std::size_t>(std::upper_bound(c.marked.begin(), c.marked.end(), y) -
                                                    c.marked.begin()) - 1;
            factors.push_back({c.weights[s], 1});
        }
        out.emplace_back(std::move(factors));
    }
    return out;
}

PLMap build_conjugacy(const PLMap& g, long p, unsigned q) {
    check_coprime(p, q);
    const Rational rho = ratio(p, q);
    const std::vector<Rational> breaks = g.breakpoints();
    if (breaks.empty()) {
        if ((g.anchor() - rho).is_integer()) return PLMap::identity();
        throw NotExactPinch("rigid rotation by " + g.anchor().str() + " is not conjugate to R_" + rho.str());
    }

    // Orbit points of the breaks, tagged by orbit and step.
    struct Tag {
        std::size_t orbit;
        unsigned step;
    };
    std::map<Rational, Tag> points;
    std::vector<Rational> seeds;
    for (const auto& c : breaks) {
        if (points.contains(c)) continue;
        Rational y = c;
        for (unsigned i = 0; i < q; ++i) {
            points.emplace(y.frac(), Tag{seeds.size(), i});
            y = g(y);
        }
        if (y != c + Rational(p))
            throw NotExactPinch("break point " + c.str() + " is not p/q-periodic (g^q(x) - x = " + (y - c).str() + ")");
        seeds.push_back(c);
    }
    const std::size_t m = seeds.size();
    if (points.size() != m * q) throw NotExactPinch("break orbits overlap inconsistently");

    std::vector<Rational> knots;
    std::vector<Tag> tags;
    for (const auto& [x, t] : points) {
        knots.push_back(x);
        tags.push_back(t);
    }
    // z_1 .. z_m are the first m points; z_{m+1} returns to the orbit of z_1.
    std::set<std::size_t> first;
    for (std::size_t i = 0; i < m; ++i) first.insert(tags[i].orbit);
    if (first.size() != m || (m * q > m && tags[m].orbit != tags[0].orbit))
        throw NotExactPinch("break orbits do not interleave like a rotation");

    std::map<Rational, Rational> target;
    const Rational qm(static_cast<long>(q * m));
    for (std::size_t j = 0; j < m; ++j) {
        Rational y = knots[j];
        const Rational offset = Rational(static_cast<long>(j)) / qm;
        for (unsigned i = 0; i < q; ++i) {
            target[y.frac()] = (rho * Rational(static_cast<long>(i)) + offset).frac();
            y = g(y);
        }
    }

    std::vector<Rational> values;
    for (const auto& x : knots) {
        Rational v = target.at(x);
        if (!values.empty())
            while (v <= values.back()) v += Rational(1);
        values.push_back(v);
    }
    if (!(values.back() < values.front() + Rational(1))) throw NotExactPinch("orbit order is not cyclic");

    if (!knots.front().is_zero()) {
        const Rational x0 = knots.back() - Rational(1);
        const Rational v0 = values.back() - Rational(1);
        const Rational slope = (values.front() - v0) / (knots.front() - x0);
        knots.insert(knots.begin(), Rational(0));
        values.insert(values.begin(), v0 + slope * (Rational(0) - x0));
    }
    std::optional<PLMap> h;
    try {
        h.emplace(std::move(knots), std::move(values));
    } catch (const PreconditionViolation& e) {
        throw NotExactPinch(std::string("conjugacy is not monotone: ") + e.what());
    }
    for (const auto& s : g.slopes())
        if (s.sign() <= 0) throw NotExactPinch("g has a flat piece");
    const PLMap conj = pl_compose(*h, pl_compose(g, pl_inverse(*h)));
    if (conj.piece_count() != 1 || !(conj.anchor() - rho).is_integer())
        throw NotExactPinch("h g h^-1 is not the rotation by " + rho.str());
    return *h;
}

Rational StepDensity::operator()(const Rational& x) const {
    const Rational u = x.frac();
    const auto it = std::upper_bound(knots.begin(), knots.end(), u);
    return values[static_cast<std::size_t>(it - knots.begin()) - 1];
}

Rational StepDensity::integral() const {
    Rational total;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const Rational end = i + 1 < knots.size() ? knots[i + 1] : Rational(1);
        total += values[i] * (end - knots[i]);
    }
    return total;
}

std::size_t StepDensity::distinct_values() const { return std::set<Rational>(values.begin(), values.end()).size(); }

StepDensity invariant_density(const PLMap& g, const PLMap& h) {
    StepDensity eta{h.knots(), h.slopes()};
    if (eta.integral() != Rational(1)) throw std::logic_error("density does not integrate to 1");

    std::vector<Rational> cuts = g.knots();
    for (const auto& k : eta.knots) {
        cuts.push_back(k);
        for (auto& x : g.preimages(k)) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const Rational end = i + 1 < cuts.size() ? cuts[i + 1] : Rational(1);
        const Rational x = midpoint(cuts[i], end);
        if (eta(g(x)) * g.slopes()[g.piece_index(x)] != eta(x))
            throw std::logic_error("density is not invariant near x = " + x.str());
    }
    return eta;
}

PLMap conjugated_rotation(const PLMap& h, long p, unsigned q) {
    return pl_compose(pl_inverse(h), pl_compose(PLMap::rotation(ratio(p, q)), h));
}

Characterization characterize(const PLMap& g, long p, unsigned q) {
    Characterization c;
    c.translation = is_translation(pl_power(g, q), Rational(p));

    const std::vector<Rational> breaks = g.breakpoints();
    const std::size_t k = breaks.size();
    if (k == 0) {
        c.paired_breaks = c.translation;
    } else {
        c.paired_breaks = true;
        for (const auto& x : breaks) {
            const BreakOrbit orbit = break_orbit(g, x, q, Rational(p));
            const bool up = std::find(orbit.types.begin(), orbit.types.end(), BreakType::Up) != orbit.types.end();
            const bool down = std::find(orbit.types.begin(), orbit.types.end(), BreakType::Down) != orbit.types.end();
            if (!orbit.periodic || !up || !down) {
                c.paired_breaks = false;
                break;
            }
        }
    }

    const std::size_t limit = q * k / 2;
    try {
        const PLMap h = build_conjugacy(g, p, q);
        c.pl_conjugate = h.breakpoints().size() <= limit;
        const StepDensity eta = invariant_density(g, h);
        const bool positive =
            std::all_of(eta.values.begin(), eta.values.end(), [](const Rational& v) { return v.sign() > 0; });
        c.step_density = positive && eta.distinct_values() <= std::max<std::size_t>(limit, 1);
    } catch (const NotExactPinch&) {
    }
    return c;
}

}  // namespace tongues
