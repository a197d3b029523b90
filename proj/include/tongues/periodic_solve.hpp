#pragma once

#include "tongues/forcing.hpp"
#include "tongues/rational.hpp"
#include "tongues/rational_interval.hpp"

namespace tongues {

/// The unique omega with F^q(x) = x + p for the lift x + omega + b phi(x).
///
/// omega -> F^q(x) - x - p is piecewise affine and strictly increasing, so
/// affine extrapolation from a bracket lands on the root once the bracket
/// sits inside one affine piece. Exact.
Rational periodic_omega(const ReducedPLForcing& forcing, const Rational& b, const Rational& x, long p, unsigned q);

/// Enclosure of F^q(x) - x - p over every b in `b_box` at fixed omega. The
/// lift is increasing in x and affine in b, so extreme endpoints suffice.
RationalInterval displacement_enclosure(const ReducedPLForcing& forcing, const RationalInterval& b_box,
                                        const Rational& omega, const Rational& x, long p, unsigned q);

/// Enclosures of F^i(x) (lifted) for 0 <= i <= q over the box b_box x omega_box.
std::vector<RationalInterval> orbit_enclosure(const ReducedPLForcing& forcing, const RationalInterval& b_box,
                                              const RationalInterval& omega_box, const Rational& x, unsigned q);

}  // namespace tongues
