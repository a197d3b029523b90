#pragma once

#include "tongues/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tongues {

/// Reduced PL forcing (w, l): phi' = w_i on X_i = [l_1 + ... + l_{i-1}, l_1 + ... + l_i),
/// phi(0) = 0. Valid iff all l_i > 0, sum l_i = 1, w . l = 0, w_1 = -1,
/// w_i >= -1, and cyclically adjacent weights differ.
class ReducedPLForcing {
public:
    /// Throws PreconditionViolation naming the first violated condition.
    ReducedPLForcing(std::vector<Rational> w, std::vector<Rational> ell);

    [[nodiscard]] const std::vector<Rational>& w() const { return w_; }
    [[nodiscard]] const std::vector<Rational>& ell() const { return ell_; }
    [[nodiscard]] std::size_t size() const { return w_.size(); }
    /// Left end points of the X_i; starts with 0.
    [[nodiscard]] const std::vector<Rational>& starts() const { return starts_; }
    /// phi at the left end points.
    [[nodiscard]] const std::vector<Rational>& start_values() const { return start_values_; }

    /// Exact phi(x) for any real x (periodic).
    [[nodiscard]] Rational eval(const Rational& x) const;
    [[nodiscard]] double eval(double x) const;
    /// max |phi|, attained at a break point.
    [[nodiscard]] Rational sup_abs() const;
    [[nodiscard]] Rational max_weight() const;

    [[nodiscard]] std::string spec() const;
    friend bool operator==(const ReducedPLForcing& a, const ReducedPLForcing& b) {
        return a.w_ == b.w_ && a.ell_ == b.ell_;
    }

private:
    std::vector<Rational> w_;
    std::vector<Rational> ell_;
    std::vector<Rational> starts_;
    std::vector<Rational> start_values_;
    std::vector<double> starts_d_;
    std::vector<double> w_d_;
    std::vector<double> start_values_d_;
};

/// phi(x) = sin(2 pi x) / (2 pi); min phi' = -1.
struct SineForcing {
    static double eval(double x);
    static double derivative(double x);
    static constexpr double kSupAbs = 0.15915494309189535;  // 1 / (2 pi)
    static constexpr double kSupDerivative = 1.0;
    static constexpr double kSupSecondDerivative = 6.283185307179586;  // 2 pi
    friend bool operator==(const SineForcing&, const SineForcing&) = default;
};

using Forcing = std::variant<SineForcing, ReducedPLForcing>;

/// Triangle wave with a slope -1 stretch of width delta:
/// w = (-1, delta / (1 - delta)), l = (delta, 1 - delta).
ReducedPLForcing triangle_forcing(const Rational& delta);

/// Forcing grammar: "sine" | "triangle:<rat>" | "pl:w=<rat,...>;l=<rat,...>".
Forcing parse_forcing(std::string_view spec);
std::string forcing_spec(const Forcing& f);

double forcing_eval(const Forcing& f, double x);

/// Checks every reduced-forcing condition; returns a description of the
/// first violation, or nullopt when (w, l) is valid.
std::optional<std::string> validate_reduced(std::span<const Rational> w, std::span<const Rational> ell);

inline Rational forcing_eval(const ReducedPLForcing& f, const Rational& x) { return f.eval(x); }

/// Standard-like rescaling phi / |min phi'|.
struct ScaledPLForcing {
    std::vector<Rational> slopes;
    std::vector<Rational> lengths;
    Rational scale;  // the |min slope| divided out
};

ScaledPLForcing normalize_standard_like(std::span<const Rational> slopes, std::span<const Rational> lengths);
/// Sampled path: divides derivative samples by |min sample|.
std::vector<double> normalize_standard_like(std::span<const double> derivative_samples);

/// A general PL periodic function given by its break points in [0, 1), the
/// slope on each interval of definition [knots[i], knots[i+1]) (cyclically),
/// and its value at knots[0].
struct GeneralPLForcing {
    std::vector<Rational> knots;
    std::vector<Rational> slopes;
    Rational value_at_first;

    [[nodiscard]] Rational eval(const Rational& x) const;
    friend bool operator==(const GeneralPLForcing&, const GeneralPLForcing&) = default;
};

/// r + phi(x + s), the shift-and-translate image of a reduced forcing.
GeneralPLForcing shift_translate(const Rational& r, const Rational& s, const ReducedPLForcing& f);

struct Reduction {
    Rational r;
    Rational s;  // in [0, 1)
    ReducedPLForcing forcing;
};

/// Inverse of shift_translate on forcings with a unique slope -1 interval.
/// Throws AmbiguousReduction when slope -1 occurs on two or more intervals.
Reduction reduce_general_pl(const GeneralPLForcing& psi);

/// Bins derivative samples (one per equal-width cell of [0, 1)) into `cells`
/// equal-width value bins, left-closed with the last bin closed. Weights are
/// exact bin averages, shifted to zero mean and rescaled so w_1 = -1; interval
/// lengths are the bin masses in ascending bin order.
///
/// Throws EmptyCell when a bin receives no samples.
ReducedPLForcing discretize(std::span<const double> derivative_samples, std::size_t cells);

}  // namespace tongues
