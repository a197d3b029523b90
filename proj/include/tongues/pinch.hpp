#pragma once

#include "tongues/factored_polynomial.hpp"
#include "tongues/forcing.hpp"
#include "tongues/pl_map.hpp"
#include "tongues/rational.hpp"
#include "tongues/rational_interval.hpp"

#include <optional>
#include <vector>

namespace tongues {

/// tau(q, w) = ceil(w q / (w + 1)) - 1, the number of pinches of the p/q
/// tongue for the two-interval forcing with weight w > 0.
unsigned pinch_count(unsigned q, const Rational& w);

/// Pinch coupling b_{q,j,w}: exact when rational, otherwise the defining
/// polynomial with a certified enclosure of the root.
struct PinchCoupling {
    FactoredPolynomial polynomial;
    RationalInterval interval;
    std::optional<Rational> exact;

    [[nodiscard]] bool is_exact() const { return exact.has_value(); }
};

/// Throws JOutOfRange unless 1 <= j <= tau(q, w).
PinchCoupling pinch_b(unsigned q, unsigned j, const Rational& w, const Rational& width = dyadic(50));

/// Two-interval forcing (w_1, w_2) = (-1, w), l = (w, 1) / (1 + w).
ReducedPLForcing two_interval_forcing(const Rational& w);

/// Omega of the j-th pinch of the p/q tongue: the left boundary at b_{q,j,w},
/// solved from F^q(0) = p exactly. A point when b is rational; otherwise an
/// enclosure of width <= tol certified over the whole b enclosure.
RationalInterval pinch_omega(long p, unsigned q, unsigned j, const Rational& w, const Rational& tol = dyadic(40));

struct PinchCertificate {
    enum class Kind { ExactTranslation, IntervalCertified };
    Kind kind = Kind::ExactTranslation;
    /// Sup-norm bound on |F^q(x) - x - p| at every point of the box; zero
    /// for an exact translation.
    Rational bound;
};

const char* to_string(PinchCertificate::Kind k);

/// Exact check that F^q = R_p at rational (b, omega). Throws NotPinch with
/// a witness point otherwise.
PinchCertificate verify_pinch(const ReducedPLForcing& forcing, const Rational& b, const Rational& omega, long p,
                              unsigned q);

/// Interval certificate for two-interval forcings: a true pinch lies in
/// coupling.interval x omega, and |F^q(x) - x - p| <= bound there.
/// Throws NotPinch when the combinatorial check or the bound fails.
PinchCertificate verify_pinch(const ReducedPLForcing& forcing, const PinchCoupling& coupling,
                              const RationalInterval& omega, long p, unsigned q,
                              const Rational& bound = Rational(1, 1'000'000'000'000L));

struct PinchPoint {
    long p = 0;
    unsigned q = 1;
    unsigned j = 1;
    Rational w;
    PinchCoupling b;
    RationalInterval omega;
    PinchCertificate certificate;
};

/// Every pinch of every p/q tongue with 2 <= q <= q_max for the two-interval
/// forcing with weight w, each certified.
std::vector<PinchPoint> enumerate_pinches(const Rational& w, unsigned q_max);

/// Masses lambda_0..lambda_q of {gamma = j} for a two-interval family map,
/// gamma counting the first q orbit points on the piece of slope 1 - b.
/// b and w are read back from the slopes. Checks sum lambda = 1 and
/// sum p_{q,j,w}(b) lambda_j = 1 before returning.
std::vector<Rational> itinerary_census(const PLMap& map, long p, unsigned q);

/// Combinatorial type of a pinch: m interleaved periodic orbits and the
/// break points marked on the grid (i - 1) / (q m) + j p / q.
struct Configuration {
    long p = 0;
    unsigned q = 1;
    unsigned m = 1;
    std::vector<Rational> marked;  // strictly increasing, marked[0] = 0
    std::vector<Rational> weights;
};

/// Exact pinch of a family map; weights are the forcing slopes. Throws
/// NotPinch unless F^q = R_p.
Configuration extract_configuration(const ReducedPLForcing& forcing, const Rational& b, const Rational& omega, long p,
                                    unsigned q);
/// Configuration of a map conjugate to R_{p/q} with the given marked points
/// (increasing, starting at 0), each p/q-periodic under g. Weights are left empty.
Configuration extract_configuration(const PLMap& g, const std::vector<Rational>& marked, long p, unsigned q);
/// From an interval-certified two-interval pinch.
Configuration extract_configuration(const PinchPoint& pinch);

/// For each grid cell Z_i, prod over its q images of (1 + w_s y), s being the
/// marked interval containing the image.
std::vector<FactoredPolynomial> induced_polynomials(const Configuration& c);

/// PL conjugacy h with h g h^{-1} = R_{p/q}, affine between consecutive points
/// of the periodic break orbits. Throws NotExactPinch when none exists.
PLMap build_conjugacy(const PLMap& g, long p, unsigned q);

/// Step function on [0, 1): value[i] on [knots[i], knots[i+1]).
struct StepDensity {
    std::vector<Rational> knots;
    std::vector<Rational> values;

    [[nodiscard]] Rational operator()(const Rational& x) const;
    [[nodiscard]] Rational integral() const;
    [[nodiscard]] std::size_t distinct_values() const;
};

/// eta = h', the invariant density of g. Checks integral 1 and
/// eta(g(x)) g'(x) = eta(x) on a common refinement.
StepDensity invariant_density(const PLMap& g, const PLMap& h);

/// The four equivalent characterizations of a pinch for a PL homeomorphism.
struct Characterization {
    bool translation = false;        // g^q = R_p
    bool paired_breaks = false;      // break orbits periodic with an up and a down break each
    bool pl_conjugate = false;       // PL conjugacy to R_{p/q} with <= floor(qk/2) breaks
    bool step_density = false;       // invariant step density with <= floor(qk/2) values
};

Characterization characterize(const PLMap& g, long p, unsigned q);

/// h^{-1} R_{p/q} h.
PLMap conjugated_rotation(const PLMap& h, long p, unsigned q);

}  // namespace tongues
