#include "tongues/rational_interval.hpp"

#include "tongues/errors.hpp"

#include <algorithm>
#include <array>

namespace tongues {

RationalInterval::RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw PreconditionViolation("interval with lo > hi: " + lo_.str() + " > " + hi_.str());
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    const std::array<Rational, 4> c{a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    const auto [mn, mx] = std::minmax_element(c.begin(), c.end());
    return {*mn, *mx};
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
    if (b.contains_zero()) throw PreconditionViolation("interval division by an interval containing zero");
    const Rational r1 = Rational(1) / b.lo_;
    const Rational r2 = Rational(1) / b.hi_;
    return a * RationalInterval(min(r1, r2), max(r1, r2));
}

RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
    return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

RationalInterval pow(const RationalInterval& base, unsigned exponent) {
    if (exponent == 0) return RationalInterval(Rational(1));
    if (exponent % 2 == 1 || base.lo().sign() >= 0) return {pow(base.lo(), exponent), pow(base.hi(), exponent)};
    if (base.hi().sign() <= 0) return {pow(base.hi(), exponent), pow(base.lo(), exponent)};
    return {Rational(0), max(pow(base.lo(), exponent), pow(base.hi(), exponent))};
}

}  // namespace tongues
