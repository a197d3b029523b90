#include "tongues/factored_polynomial.hpp"

#include "tongues/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tongues {

FactoredPolynomial::FactoredPolynomial(std::vector<Factor> factors) {
    if (factors.empty()) throw PreconditionViolation("factored polynomial needs at least one factor");
    std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.k < b.k; });
    for (auto& f : factors) {
        if (f.e == 0) throw PreconditionViolation("factor exponent must be positive");
        if (f.k < Rational(-1)) throw PreconditionViolation("factor coefficient below -1: " + f.k.str());
        if (!factors_.empty() && factors_.back().k == f.k)
            factors_.back().e += f.e;
        else
            factors_.push_back(std::move(f));
    }
}

FactoredPolynomial FactoredPolynomial::pinch_polynomial(unsigned q, unsigned j, const Rational& w) {
    std::vector<Factor> fs;
    if (j > 0) fs.push_back({Rational(-1), j});
    if (q > j) fs.push_back({w, q - j});
    return FactoredPolynomial(std::move(fs));
}

unsigned FactoredPolynomial::degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.e;
    return d;
}

Rational FactoredPolynomial::slope_at_zero() const {
    Rational s;
    for (const auto& f : factors_) s += Rational(static_cast<long>(f.e)) * f.k;
    return s;
}

Rational FactoredPolynomial::eval(const Rational& y) const {
    Rational v(1);
    for (const auto& f : factors_) v *= pow(Rational(1) + f.k * y, f.e);
    return v;
}

RationalInterval FactoredPolynomial::eval(const RationalInterval& y) const {
    RationalInterval v(Rational(1));
    const RationalInterval one(Rational(1));
    for (const auto& f : factors_) v = v * pow(one + RationalInterval(f.k) * y, f.e);
    return v;
}

RationalInterval FactoredPolynomial::derivative(const RationalInterval& y) const {
    RationalInterval sum(Rational(0));
    const RationalInterval one(Rational(1));
    for (const auto& f : factors_) {
        if (f.k.is_zero()) continue;
        const RationalInterval factor = one + RationalInterval(f.k) * y;
        if (factor.contains_zero())
            throw DegenerateFactor("factor 1 + " + f.k.str() + " y vanishes on the enclosure");
        sum = sum + RationalInterval(Rational(static_cast<long>(f.e)) * f.k) / factor;
    }
    return eval(y) * sum;
}

std::string FactoredPolynomial::str() const {
    std::ostringstream os;
    for (const auto& f : factors_) {
        os << "(1 + " << f.k << " y)";
        if (f.e != 1) os << "^" << f.e;
    }
    return os.str();
}

bool is_plausible_shape(const FactoredPolynomial& p) {
    const auto& fs = p.factors();
    if (fs.front().k.sign() >= 0 || fs.back().k.sign() <= 0)
        throw PreconditionViolation("shape test needs factors of both signs: " + p.str());
    return p.slope_at_zero().sign() > 0 && p.eval(Rational(1)) < Rational(1);
}

RootEnclosure unique_root(const FactoredPolynomial& p, const Rational& width) {
    if (width.sign() <= 0) throw PreconditionViolation("root width must be positive");
    if (!is_plausible_shape(p)) throw PreconditionViolation("no root of p(y) = 1 in (0, 1) for " + p.str());
    Rational lo(0);
    Rational hi(1);
    // p > 1 on (0, y*) and p < 1 on (y*, 1].
    while (hi - lo > width || lo.is_zero()) {
        const Rational m = midpoint(lo, hi);
        const int s = cmp(p.eval(m).raw(), mpq_class(1));
        if (s == 0) return {RationalInterval(m), true};
        (s > 0 ? lo : hi) = m;
    }
    return {RationalInterval(lo, hi), false};
}

std::optional<Rational> rational_root(const FactoredPolynomial& p) {
    mpz_class bound = 1;
    for (const auto& f : p.factors()) {
        if (f.k.is_zero()) continue;
        mpz_class n = abs(f.k.numerator());
        mpz_class t;
        mpz_pow_ui(t.get_mpz_t(), n.get_mpz_t(), f.e);
        bound *= t;
    }
    // Two distinct rationals with denominators <= L differ by at least 1/L^2.
    const Rational limit(mpz_class(1), mpz_class(2 * bound * bound));
    const RootEnclosure r = unique_root(p, limit);
    if (r.exact) return r.interval.lo();
    const Rational candidate = simplest_between(r.interval.lo(), r.interval.hi());
    if (p.eval(candidate) == Rational(1)) return candidate;
    return std::nullopt;
}

}  // namespace tongues
