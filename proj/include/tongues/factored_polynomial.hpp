#pragma once

#include "tongues/rational.hpp"
#include "tongues/rational_interval.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tongues {

struct Factor {
    Rational k;
    unsigned e = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
};

/// p(y) = prod_i (1 + k_i y)^{e_i}, factors sorted by k with distinct k and
/// every k_i >= -1. Factors with k = 0 are kept so that a product of trivial
/// factors still has its nominal degree.
class FactoredPolynomial {
public:
    /// Merges repeated k and sorts; throws PreconditionViolation on k < -1,
    /// a zero exponent, or an empty factor list.
    explicit FactoredPolynomial(std::vector<Factor> factors);

    /// (1 - y)^j (1 + w y)^{q - j}.
    static FactoredPolynomial pinch_polynomial(unsigned q, unsigned j, const Rational& w);

    [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
    [[nodiscard]] unsigned degree() const;
    /// Sum of e_i * k_i, the derivative at zero.
    [[nodiscard]] Rational slope_at_zero() const;

    [[nodiscard]] Rational eval(const Rational& y) const;
    [[nodiscard]] RationalInterval eval(const RationalInterval& y) const;
    /// p'(y) = p(y) * sum e_i k_i / (1 + k_i y), evaluated as an enclosure.
    [[nodiscard]] RationalInterval derivative(const RationalInterval& y) const;

    [[nodiscard]] std::string str() const;
    friend bool operator==(const FactoredPolynomial&, const FactoredPolynomial&) = default;

private:
    std::vector<Factor> factors_;
};

/// Certified solution of p(y) = 1 in (0, 1).
///
/// When `exact` is set the enclosure is the single point [r, r] and p(r) = 1
/// holds exactly. Otherwise p(lo) > 1 > p(hi).
struct RootEnclosure {
    RationalInterval interval;
    bool exact = false;
};

/// Shape test: given some k_i < 0 and some k_j > 0, p(y) = 1 has a
/// root in (0, 1) iff sum e_i k_i > 0 and p(1) < 1.
///
/// Throws PreconditionViolation when every k_i >= 0 or every k_i <= 0.
bool is_plausible_shape(const FactoredPolynomial& p);

/// Exact-sign bisection for the unique root of p(y) = 1 in (0, 1), down to
/// width <= `width`. Requires is_plausible_shape(p).
RootEnclosure unique_root(const FactoredPolynomial& p, const Rational& width);

/// The root of p(y) = 1 in (0, 1) when it is rational, else nullopt.
///
/// Uses the rational-root bound on the integer polynomial: a rational root
/// has denominator at most L = prod |num(k_i)|^{e_i}, so inside an enclosure
/// narrower than 1/L^2 only the simplest rational can be a root.
std::optional<Rational> rational_root(const FactoredPolynomial& p);

}  // namespace tongues
