#pragma once

#include "tongues/forcing.hpp"
#include "tongues/pl_map.hpp"
#include "tongues/rational.hpp"

#include <cstdint>

namespace tongues {

/// A point (b, omega) of the family x + omega + b phi(x), with 0 <= b <= 1
/// and omega reduced to [0, 1).
class FamilyPoint {
public:
    FamilyPoint(Rational b, const Rational& omega, Forcing forcing);

    [[nodiscard]] const Rational& b() const { return b_; }
    [[nodiscard]] const Rational& omega() const { return omega_; }
    [[nodiscard]] const Forcing& forcing() const { return forcing_; }
    [[nodiscard]] bool is_pl() const { return std::holds_alternative<ReducedPLForcing>(forcing_); }

private:
    Rational b_;
    Rational omega_;
    Forcing forcing_;
};

/// Exact PL lift x + omega + b phi(x). Rejects b outside [0, 1] with
/// NotMonotone / PreconditionViolation.
PLMap pl_from_family(const Rational& b, const Rational& omega, const ReducedPLForcing& f);

double lift_eval(const FamilyPoint& fp, double x);
/// Exact lift value; PL forcings only.
Rational lift_eval(const FamilyPoint& fp, const Rational& x);

struct RotationEstimate {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t iterations = 0;
};

/// Encloses the rotation number using |F^n(x) - x - n rho| < 1.
RotationEstimate rotation_estimate(const FamilyPoint& fp, std::uint64_t n, double x0);

/// Sign of an extremal displacement. `Unknown` only arises on the smooth path.
enum class Sign { Negative, Zero, Positive, Unknown };

/// Sign of max_x (F^q(x) - x - p) (or min_x when `maximum` is false) for the
/// lift with the given b and unreduced omega. Exact for PL forcings; for the
/// sine forcing a uniform grid of 4096 q cells with Lipschitz slack, then
/// mean-value refinement of undecided cells.
Sign displacement_sign(const Forcing& forcing, const Rational& b, const Rational& omega, long p, unsigned q,
                       bool maximum);

enum class LockVerdict { Below, Locked, Above, Unresolved };

/// Below iff max displacement < 0, Above iff min > 0, Locked otherwise.
LockVerdict mode_lock_test(const FamilyPoint& fp, long p, unsigned q);

const char* to_string(LockVerdict v);

}  // namespace tongues
