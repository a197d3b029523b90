#pragma once

#include "tongues/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tongues {

enum class BreakType { None, Up, Down };

/// Lift of a degree-one, non-decreasing, piecewise-linear circle map.
///
/// Stored in normal form: knots 0 = t_0 < t_1 < ... < t_{n-1} < 1 with lift
/// values F(t_i). The map is affine on [t_i, t_{i+1}] (t_n = 1 and
/// F(1) = F(0) + 1). Every knot other than 0 is a true break point, so two
/// maps are equal iff their representations are equal.
class PLMap {
public:
    /// Builds a map from knots (starting at 0, strictly increasing, < 1) and
    /// the lift values at them. Merges collinear pieces. Throws
    /// PreconditionViolation if the lift would decrease anywhere.
    PLMap(std::vector<Rational> knots, std::vector<Rational> values);

    static PLMap rotation(const Rational& shift);
    static PLMap identity() { return rotation(Rational(0)); }

    [[nodiscard]] const std::vector<Rational>& knots() const { return knots_; }
    [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
    [[nodiscard]] const std::vector<Rational>& slopes() const { return slopes_; }
    /// Lift value at x = 0.
    [[nodiscard]] const Rational& anchor() const { return values_.front(); }
    [[nodiscard]] std::size_t piece_count() const { return knots_.size(); }

    /// True break points in [0, 1): knots plus 0 when the slope jumps there.
    [[nodiscard]] std::vector<Rational> breakpoints() const;
    /// Slope on the interval of definition following each break point, in
    /// the same order as breakpoints(); {1} for a rigid rotation.
    [[nodiscard]] std::vector<Rational> breakpoint_slopes() const;

    /// Lift evaluation at any real x; F(x + 1) = F(x) + 1.
    [[nodiscard]] Rational operator()(const Rational& x) const;
    /// Index of the piece containing frac(x) (right-continuous).
    [[nodiscard]] std::size_t piece_index(const Rational& x) const;
    [[nodiscard]] const Rational& slope_right(const Rational& x) const;
    [[nodiscard]] const Rational& slope_left(const Rational& x) const;
    [[nodiscard]] BreakType break_type(const Rational& x) const;
    [[nodiscard]] bool is_breakpoint(const Rational& x) const { return break_type(x) != BreakType::None; }

    /// All x in [0, 1) with F(x) = y mod 1. Empty interior of flat pieces is
    /// skipped; their end points are knots already.
    [[nodiscard]] std::vector<Rational> preimages(const Rational& y) const;

    friend bool operator==(const PLMap&, const PLMap&) = default;

private:
    std::vector<Rational> knots_;
    std::vector<Rational> values_;
    std::vector<Rational> slopes_;
};

/// Composed maps larger than this are rejected.
inline constexpr std::size_t kMaxPieces = 1'000'000;

PLMap pl_compose(const PLMap& g, const PLMap& f);
PLMap pl_power(const PLMap& f, unsigned q);
/// Inverse lift; requires every slope > 0.
PLMap pl_inverse(const PLMap& f);

/// Exact min and max over x of F(x) - x - p.
std::pair<Rational, Rational> displacement_range(const PLMap& f, const Rational& p);
/// F is exactly the translation x -> x + p.
bool is_translation(const PLMap& f, const Rational& p);

struct BreakOrbit {
    std::vector<Rational> points;  // x, F(x), ..., F^{q-1}(x) as lift values
    bool periodic = false;         // F^q(x) = x + p
    std::vector<BreakType> types;  // break type of each point (mod 1)
};

BreakOrbit break_orbit(const PLMap& f, const Rational& x, unsigned q, const Rational& p);

/// (F^q)'(x) as the product of slopes along the orbit. Throws
/// OrbitHitsBreakpoint if an orbit point is a break point.
Rational derivative_product(const PLMap& f, const Rational& x, unsigned q);

struct Itinerary {
    std::vector<std::size_t> symbols;  // piece index of each orbit point
    unsigned gamma = 0;                // visits to pieces of slope < 1
};

Itinerary itinerary(const PLMap& f, const Rational& x, unsigned q);

/// Points of [0, 1) where the length-q itinerary can change: the union of
/// F^{-i}(knots) for 0 <= i < q, sorted, starting with 0.
std::vector<Rational> itinerary_cuts(const PLMap& f, unsigned q);

}  // namespace tongues
