#pragma once

#include "tongues/forcing.hpp"
#include "tongues/rational.hpp"
#include "tongues/rational_interval.hpp"

#include <optional>
#include <vector>

namespace tongues {

/// Left and right boundaries of the p/q tongue on one line of constant b.
/// A boundary is absent when certified numerics could not resolve it.
struct TongueRecord {
    long p = 0;
    unsigned q = 1;
    Rational b;
    std::optional<RationalInterval> omega_left;
    std::optional<RationalInterval> omega_right;

    [[nodiscard]] bool resolved() const { return omega_left && omega_right; }
    /// max(0, right.lo - left.hi); zero when unresolved.
    [[nodiscard]] Rational width_lower_bound() const;
    /// right.hi - left.lo; requires resolved().
    [[nodiscard]] Rational width_upper_bound() const;

    friend bool operator==(const TongueRecord&, const TongueRecord&) = default;
};

/// 2^-40.
Rational default_tolerance();
/// {i / steps : 1 <= i <= steps}.
std::vector<Rational> default_b_grid(unsigned steps = 200);

/// Bisects omega over [p/q - 1/2, p/q + 1/2] on the sign of
/// max_x (F^q(x) - x - p). Returns an interval of width <= tol containing the
/// left boundary; a single point when the sign is exactly zero at a midpoint.
/// Throws Unresolved when the smooth path cannot decide before reaching tol.
RationalInterval left_boundary(const Forcing& forcing, const Rational& b, long p, unsigned q, const Rational& tol);
/// Mirror of left_boundary on the sign of min_x (F^q(x) - x - p).
RationalInterval right_boundary(const Forcing& forcing, const Rational& b, long p, unsigned q, const Rational& tol);

/// Exact left/right boundary for a PL forcing at rational b: the extreme
/// omega at which some break point of the appropriate type is p/q-periodic.
Rational exact_left_boundary(const ReducedPLForcing& forcing, const Rational& b, long p, unsigned q);
Rational exact_right_boundary(const ReducedPLForcing& forcing, const Rational& b, long p, unsigned q);

/// Records for every reduced p/q in [0, 1) with q <= q_max at every b,
/// ordered by q, then p, then b. Cells run in parallel; Unresolved cells
/// produce records with missing boundaries.
std::vector<TongueRecord> scan_tongues(const Forcing& forcing, unsigned q_max, const std::vector<Rational>& b_values,
                                       const Rational& tol, unsigned threads = 0);

struct PinchCandidate {
    long p = 0;
    unsigned q = 1;
    Rational b;
    friend bool operator==(const PinchCandidate&, const PinchCandidate&) = default;
};

/// Resolved records whose width upper bound is below `threshold`.
std::vector<PinchCandidate> pinch_candidates(const std::vector<TongueRecord>& records, const Rational& threshold);

/// Reduced fractions p/q in [0, 1) with 1 <= q <= q_max, ordered by q then p.
std::vector<std::pair<long, unsigned>> reduced_fractions(unsigned q_max);

}  // namespace tongues
