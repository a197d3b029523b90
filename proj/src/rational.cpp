#include "tongues/rational.hpp"

#include "tongues/errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <ostream>

namespace tongues {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw PreconditionViolation("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) throw PreconditionViolation("non-finite double");
    return Rational(mpq_class(d));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ParseError("empty rational");

    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw ParseError("malformed rational '" + s + "'");
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) throw ParseError("malformed rational '" + s + "'");
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw ParseError("malformed rational '" + s + "'");
        return mpz_class(part[0] == '+' ? part.substr(1) : part, 10);
    };

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const mpz_class num = parse_int(s.substr(0, slash));
        const mpz_class den = parse_int(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        const std::string fraction = s.substr(dot + 1);
        const bool negative = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        const mpz_class w = parse_int(whole);
        if (fraction.empty()) return Rational(w, 1);
        const mpz_class f = parse_int(fraction);
        if (fraction[0] == '-' || fraction[0] == '+') throw ParseError("malformed rational '" + s + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
        const mpz_class magnitude = abs(w) * scale + f;
        return Rational(negative ? mpz_class(-magnitude) : magnitude, scale);
    }
    return Rational(parse_int(s), 1);
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return r;
}

Rational Rational::frac() const { return *this - Rational(floor(), 1); }

double Rational::to_double() const {
    // get_d truncates; step once away from zero if that is closer.
    const double t = value_.get_d();
    if (sgn(value_) == 0 || !std::isfinite(t)) return t;
    const double away = std::nextafter(t, sgn(value_) > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(away)) return t;
    const mpq_class dt = abs(value_ - mpq_class(t));
    const mpq_class da = abs(mpq_class(away) - value_);
    if (da < dt) return away;
    if (dt < da) return t;
    std::int64_t bits = 0;
    std::memcpy(&bits, &t, sizeof bits);
    return (bits & 1) ? away : t;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionViolation("division by zero");
    value_ /= o.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(num, den);
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

Rational dyadic(unsigned k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
    return Rational(mpz_class(1), den);
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
    if (hi_in < lo_in) throw PreconditionViolation("simplest_between: empty interval");
    // Reduce to 0 < lo by symmetry and integer shifts.
    if (lo_in.sign() <= 0 && hi_in.sign() >= 0) return Rational(0);
    if (hi_in.sign() < 0) return -simplest_between(-hi_in, -lo_in);

    const Rational& lo = lo_in;
    const Rational& hi = hi_in;
    const mpz_class fl = lo.floor();
    if (Rational(fl, 1) == lo) return lo;
    if (Rational(fl + 1, 1) <= hi) return Rational(fl + 1, 1);
    const Rational base(fl, 1);
    // lo - fl and hi - fl both lie in (0, 1); recurse on the reciprocals.
    const Rational inner = simplest_between(Rational(1) / (hi - base), Rational(1) / (lo - base));
    return base + Rational(1) / inner;
}

}  // namespace tongues
