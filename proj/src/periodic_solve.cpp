#include "tongues/periodic_solve.hpp"

#include "tongues/errors.hpp"

#include <algorithm>

namespace tongues {

namespace {

// phi' just right (or left) of x.
const Rational& weight_at(const ReducedPLForcing& f, const Rational& x, bool right) {
    const Rational u = x.frac();
    const auto& s = f.starts();
    auto it = std::upper_bound(s.begin(), s.end(), u);
    auto i = static_cast<std::size_t>(it - s.begin()) - 1;
    if (!right && u == s[i]) i = (i + f.size() - 1) % f.size();
    return f.w()[i];
}

struct Probe {
    Rational value;  // g(omega)
    Rational slope;  // one-sided derivative in omega
};

Probe probe(const ReducedPLForcing& f, const Rational& b, const Rational& omega, const Rational& x0, long p,
            unsigned q, bool right) {
    Rational x = x0;
    Rational d;
    for (unsigned i = 0; i < q; ++i) {
        d = (Rational(1) + b * weight_at(f, x, right)) * d + Rational(1);
        x = x + omega + b * f.eval(x);
    }
    return {x - x0 - Rational(p), d};
}

}  // namespace

Rational periodic_omega(const ReducedPLForcing& forcing, const Rational& b, const Rational& x, long p, unsigned q) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    const Rational centre(p, static_cast<long>(q));
    const Rational reach = b * forcing.sup_abs() + Rational(1);
    Rational lo = centre - reach;
    Rational hi = centre + reach;
    Probe at_lo = probe(forcing, b, lo, x, p, q, true);
    Probe at_hi = probe(forcing, b, hi, x, p, q, false);
    if (at_lo.value.sign() >= 0 || at_hi.value.sign() <= 0)
        throw PreconditionViolation("periodic_omega: bracket does not straddle the root");

    auto consider = [&](const Rational& c) -> bool {
        if (!(lo < c && c < hi)) return false;
        const Probe r = probe(forcing, b, c, x, p, q, true);
        if (r.value.is_zero()) {
            lo = hi = c;
            return true;
        }
        if (r.value.sign() < 0) {
            lo = c;
            at_lo = r;
        } else {
            hi = c;
            at_hi = probe(forcing, b, c, x, p, q, false);
        }
        return false;
    };
    for (int iter = 0; iter < 100'000; ++iter) {
        if (consider(lo - at_lo.value / at_lo.slope) || consider(hi - at_hi.value / at_hi.slope) ||
            consider(midpoint(lo, hi)))
            return lo;
    }
    throw Unresolved("periodic_omega did not converge");
}

RationalInterval displacement_enclosure(const ReducedPLForcing& forcing, const RationalInterval& b_box,
                                        const Rational& omega, const Rational& x, long p, unsigned q) {
    const auto orbit = orbit_enclosure(forcing, b_box, RationalInterval(omega), x, q);
    return orbit.back() - RationalInterval(x + Rational(p));
}

std::vector<RationalInterval> orbit_enclosure(const ReducedPLForcing& forcing, const RationalInterval& b_box,
                                              const RationalInterval& omega_box, const Rational& x, unsigned q) {
    if (b_box.lo().sign() < 0 || b_box.hi() > Rational(1)) throw PreconditionViolation("b box must lie in [0, 1]");
    std::vector<RationalInterval> out{RationalInterval(x)};
    for (unsigned i = 0; i < q; ++i) {
        const RationalInterval& cur = out.back();
        const Rational phi_lo = forcing.eval(cur.lo());
        const Rational phi_hi = forcing.eval(cur.hi());
        const Rational lo = cur.lo() + omega_box.lo() + min(b_box.lo() * phi_lo, b_box.hi() * phi_lo);
        const Rational hi = cur.hi() + omega_box.hi() + max(b_box.lo() * phi_hi, b_box.hi() * phi_hi);
        out.emplace_back(lo, hi);
    }
    return out;
}

}  // namespace tongues
