#include "tongues/tongue_scan.hpp"

#include "tongues/circle_map.hpp"
#include "tongues/errors.hpp"
#include "tongues/parallel.hpp"
#include "tongues/periodic_solve.hpp"

#include <algorithm>
#include <numeric>

namespace tongues {

Rational TongueRecord::width_lower_bound() const {
    if (!resolved()) return Rational(0);
    return max(Rational(0), omega_right->lo() - omega_left->hi());
}

Rational TongueRecord::width_upper_bound() const {
    if (!resolved()) throw PreconditionViolation("width upper bound of an unresolved record");
    return omega_right->hi() - omega_left->lo();
}

Rational default_tolerance() { return dyadic(40); }

std::vector<Rational> default_b_grid(unsigned steps) {
    if (steps == 0) throw PreconditionViolation("b grid needs at least one step");
    std::vector<Rational> out;
    out.reserve(steps);
    for (unsigned i = 1; i <= steps; ++i) out.emplace_back(static_cast<long>(i), static_cast<long>(steps));
    return out;
}

namespace {

// Bisection on an increasing predicate: sign(D_ext(omega)) is Negative below
// the boundary and non-negative above (left), or negative up to the boundary
// and Positive above (right).
RationalInterval bisect_boundary(const Forcing& forcing, const Rational& b, long p, unsigned q, const Rational& tol,
                                 bool left) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    if (tol.sign() <= 0) throw PreconditionViolation("tolerance must be positive");
    const Rational centre(p, static_cast<long>(q));
    Rational lo = centre - Rational(1, 2);
    Rational hi = centre + Rational(1, 2);
    auto side = [&](const Rational& omega) { return displacement_sign(forcing, b, omega, p, q, left); };
    // |F(x) - x - omega| <= b sup|phi| < 1, so a window of radius 1 always
    // brackets; the default radius 1/2 suffices unless sup|phi| > 1/2.
    for (int widen = 0; side(lo) != Sign::Negative; ++widen) {
        if (widen == 2) throw Unresolved("left end of the omega window is not below the tongue");
        lo -= Rational(1, 2);
    }
    for (int widen = 0; side(hi) != Sign::Positive; ++widen) {
        if (widen == 2) throw Unresolved("right end of the omega window is not above the tongue");
        hi += Rational(1, 2);
    }
    // A midpoint can sit closer to the boundary than the smooth oracle can
    // resolve; one of the third points is then at least width/6 away.
    static const Rational kSplits[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3)};
    while (hi - lo > tol) {
        bool moved = false;
        for (const auto& t : kSplits) {
            const Rational m = lo + (hi - lo) * t;
            const Sign s = side(m);
            if (s == Sign::Unknown) continue;
            if (s == Sign::Zero) return RationalInterval(m);
            (s == Sign::Negative ? lo : hi) = m;
            moved = true;
            break;
        }
        if (!moved)
            throw Unresolved("sign undecided near omega = " + midpoint(lo, hi).str() + " (b = " + b.str() + ", " +
                             std::to_string(p) + "/" + std::to_string(q) + ")");
    }
    return {lo, hi};
}

}  // namespace

RationalInterval left_boundary(const Forcing& forcing, const Rational& b, long p, unsigned q, const Rational& tol) {
    return bisect_boundary(forcing, b, p, q, tol, true);
}

RationalInterval right_boundary(const Forcing& forcing, const Rational& b, long p, unsigned q, const Rational& tol) {
    return bisect_boundary(forcing, b, p, q, tol, false);
}

namespace {

Rational exact_boundary(const ReducedPLForcing& forcing, const Rational& b, long p, unsigned q, bool left) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    if (b.is_zero()) return Rational(p, static_cast<long>(q));
    const PLMap shape = pl_from_family(b, Rational(0), forcing);
    const BreakType wanted = left ? BreakType::Down : BreakType::Up;
    std::optional<Rational> best;
    for (const auto& c : shape.breakpoints()) {
        if (shape.break_type(c) != wanted) continue;
        const Rational root = periodic_omega(forcing, b, c, p, q);
        if (!best || (left ? root < *best : root > *best)) best = root;
    }
    if (!best) throw PreconditionViolation("map has no break point of the required type");
    return *best;
}

}  // namespace

Rational exact_left_boundary(const ReducedPLForcing& forcing, const Rational& b, long p, unsigned q) {
    return exact_boundary(forcing, b, p, q, true);
}

Rational exact_right_boundary(const ReducedPLForcing& forcing, const Rational& b, long p, unsigned q) {
    return exact_boundary(forcing, b, p, q, false);
}

std::vector<std::pair<long, unsigned>> reduced_fractions(unsigned q_max) {
    std::vector<std::pair<long, unsigned>> out;
    for (unsigned q = 1; q <= q_max; ++q)
        for (unsigned p = 0; p < q; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(static_cast<long>(p), q);
    return out;
}

std::vector<TongueRecord> scan_tongues(const Forcing& forcing, unsigned q_max, const std::vector<Rational>& b_values,
                                       const Rational& tol, unsigned threads) {
    if (q_max == 0) throw PreconditionViolation("q_max must be positive");
    for (const auto& b : b_values) {
        if (b.sign() < 0) throw PreconditionViolation("b must be >= 0");
        if (b > Rational(1)) throw NotMonotone("b > 1: the lift is not weakly order preserving");
    }
    std::vector<Rational> bs = b_values;
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());

    std::vector<TongueRecord> records;
    for (const auto& [p, q] : reduced_fractions(q_max))
        for (const auto& b : bs) records.push_back(TongueRecord{p, q, b, std::nullopt, std::nullopt});

    parallel_for(
        records.size(),
        [&](std::size_t i) {
            TongueRecord& r = records[i];
            try {
                r.omega_left = left_boundary(forcing, r.b, r.p, r.q, tol);
                r.omega_right = right_boundary(forcing, r.b, r.p, r.q, tol);
            } catch (const Unresolved&) {
                r.omega_left.reset();
                r.omega_right.reset();
            }
        },
        threads);
    return records;
}

std::vector<PinchCandidate> pinch_candidates(const std::vector<TongueRecord>& records, const Rational& threshold) {
    std::vector<PinchCandidate> out;
    for (const auto& r : records)
        if (r.resolved() && r.width_upper_bound() < threshold) out.push_back({r.p, r.q, r.b});
    return out;
}

}  // namespace tongues
