#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tongues {

/// Exact rational number in lowest terms, backed by GMP.
///
/// Serialized as "num/den" with den > 0; "-1/1" for minus one. Parsing also
/// accepts a bare integer ("3") and a finite decimal ("0.25").
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Exact value of a finite double.
    static Rational from_double(double d);
    static Rational parse(std::string_view text);

    [[nodiscard]] std::string str() const;
    /// Nearest double (ties to even).
    [[nodiscard]] double to_double() const;

    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    /// Largest integer not greater than the value.
    [[nodiscard]] mpz_class floor() const;
    [[nodiscard]] mpz_class ceil() const;
    /// Value minus floor, in [0, 1).
    [[nodiscard]] Rational frac() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class value_{0};
};

Rational abs(const Rational& r);
Rational pow(const Rational& base, unsigned exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
/// Exact midpoint (a + b) / 2.
Rational midpoint(const Rational& a, const Rational& b);
/// 2^-k.
Rational dyadic(unsigned k);
/// Simplest rational (smallest denominator, then smallest |numerator|) in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace tongues
