#pragma once

#include "tongues/rational.hpp"

#include <string>
#include <utility>

namespace tongues {

/// Closed interval [lo, hi] with exact rational endpoints. A certified real
/// value is asserted to lie inside.
class RationalInterval {
public:
    RationalInterval() = default;
    explicit RationalInterval(const Rational& point) : lo_(point), hi_(point) {}
    RationalInterval(Rational lo, Rational hi);

    [[nodiscard]] const Rational& lo() const { return lo_; }
    [[nodiscard]] const Rational& hi() const { return hi_; }
    [[nodiscard]] Rational width() const { return hi_ - lo_; }
    [[nodiscard]] Rational mid() const { return midpoint(lo_, hi_); }
    [[nodiscard]] bool is_point() const { return lo_ == hi_; }

    [[nodiscard]] bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    [[nodiscard]] bool intersects(const RationalInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    [[nodiscard]] bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    /// Strictly positive / strictly negative everywhere.
    [[nodiscard]] bool positive() const { return lo_.sign() > 0; }
    [[nodiscard]] bool negative() const { return hi_.sign() < 0; }

    friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator-(const RationalInterval& a) { return {-a.hi_, -a.lo_}; }
    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

    /// ["lo", "hi"] as "num/den" strings.
    [[nodiscard]] std::pair<std::string, std::string> to_strings() const { return {lo_.str(), hi_.str()}; }

private:
    Rational lo_;
    Rational hi_;
};

RationalInterval hull(const RationalInterval& a, const RationalInterval& b);
RationalInterval pow(const RationalInterval& base, unsigned exponent);

}  // namespace tongues
