#include "tongues/circle_map.hpp"

#include "tongues/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace tongues {

namespace {

void check_coupling(const Rational& b) {
    if (b.sign() < 0) throw PreconditionViolation("coupling b must be >= 0");
    if (b > Rational(1)) throw NotMonotone("b > 1: the lift is not weakly order preserving");
}

// |r - double(r)| rounded up.
double conversion_error(const Rational& r, double d) {
    const double e = abs(r - Rational::from_double(d)).to_double();
    return e * 1.0000001 + std::numeric_limits<double>::denorm_min();
}

/// Certified sign of max_x D(x), D(x) = F^q(x) - x - p, for the sine family
/// evaluated in double precision with explicit error allowances.
class SmoothSignOracle {
public:
    SmoothSignOracle(const Rational& b, const Rational& omega, long p, unsigned q, bool maximum)
        : b_(b.to_double()), omega_(omega.to_double()), p_(static_cast<double>(p)), q_(q),
          flip_(maximum ? 1.0 : -1.0) {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        const double lip = 1.0 + b_ * SineForcing::kSupDerivative;
        double sum = 0.0;
        double pw = 1.0;
        for (unsigned i = 0; i < q; ++i) {
            sum += pw;
            pw *= lip;
        }
        lip_q_ = pw;
        double second = 0.0;
        double t = std::pow(lip, static_cast<double>(q) - 1.0);
        for (unsigned i = 0; i < q; ++i) {
            second += t;
            t *= lip;
        }
        curvature_ = SineForcing::kSupSecondDerivative * b_ * second;
        const double param_error =
            conversion_error(omega, omega_) + conversion_error(b, b_) * SineForcing::kSupAbs;
        // One step of x + omega + b sin(2 pi x) / (2 pi) rounds by at most
        // 2 eps (|x| + 2|omega| + 3.5) with |x| <= q + |omega| + 1; doubled.
        const double step_error = 4.0 * eps * (q + 4.0 + 3.0 * std::abs(omega_));
        const double final_error = 4.0 * eps * (q + 3.0 + std::abs(omega_) + std::abs(p_));
        value_error_ = step_error * sum + final_error + sum * param_error;
        slope_error_ = 16.0 * (q + 1) * eps * lip_q_ + curvature_ * sum * param_error + q * lip_q_ * param_error;
    }

    Sign run() const {
        const std::size_t cells = 4096 * static_cast<std::size_t>(q_);
        const double h = 1.0 / static_cast<double>(cells);
        std::vector<double> pending;
        for (std::size_t j = 0; j < cells; ++j) {
            const double c = (static_cast<double>(j) + 0.5) * h;
            const double d = value(c);
            if (d > value_error_) return Sign::Positive;
            if (d + lip_q_ * h / 2.0 + value_error_ >= 0.0) pending.push_back(c);
        }
        if (pending.empty()) return Sign::Negative;

        struct Cell {
            double center;
            double half;
        };
        std::vector<Cell> stack;
        for (double c : pending) stack.push_back({c, h / 2.0});
        std::size_t budget = 400'000;
        while (!stack.empty()) {
            if (budget-- == 0) return Sign::Unknown;
            const Cell cell = stack.back();
            stack.pop_back();
            double slope = 0.0;
            const double d = value(cell.center, &slope);
            if (d > value_error_) return Sign::Positive;
            const double bound =
                d + (std::abs(slope) + slope_error_ + curvature_ * cell.half) * cell.half + value_error_;
            if (bound < 0.0) continue;
            if (cell.half < 1e-14) return Sign::Unknown;
            stack.push_back({cell.center - cell.half / 2.0, cell.half / 2.0});
            stack.push_back({cell.center + cell.half / 2.0, cell.half / 2.0});
        }
        return Sign::Negative;
    }

private:
    double value(double x0, double* slope = nullptr) const {
        double x = x0;
        double d = 1.0;
        for (unsigned i = 0; i < q_; ++i) {
            d *= 1.0 + b_ * SineForcing::derivative(x);
            x = x + omega_ + b_ * SineForcing::eval(x);
        }
        if (slope) *slope = flip_ * (d - 1.0);
        return flip_ * (x - x0 - p_);
    }

    double b_;
    double omega_;
    double p_;
    unsigned q_;
    double flip_;
    double lip_q_ = 1.0;
    double curvature_ = 0.0;
    double value_error_ = 0.0;
    double slope_error_ = 0.0;
};

Sign sign_of(const Rational& r) {
    const int s = r.sign();
    return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}

Sign negate(Sign s) {
    switch (s) {
        case Sign::Negative: return Sign::Positive;
        case Sign::Positive: return Sign::Negative;
        default: return s;
    }
}

}  // namespace

FamilyPoint::FamilyPoint(Rational b, const Rational& omega, Forcing forcing)
    : b_(std::move(b)), omega_(omega.frac()), forcing_(std::move(forcing)) {
    check_coupling(b_);
}

PLMap pl_from_family(const Rational& b, const Rational& omega, const ReducedPLForcing& f) {
    check_coupling(b);
    std::vector<Rational> knots = f.starts();
    std::vector<Rational> values;
    values.reserve(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) values.push_back(knots[i] + omega + b * f.start_values()[i]);
    return PLMap(std::move(knots), std::move(values));
}

double lift_eval(const FamilyPoint& fp, double x) {
    return x + fp.omega().to_double() + fp.b().to_double() * forcing_eval(fp.forcing(), x);
}

Rational lift_eval(const FamilyPoint& fp, const Rational& x) {
    if (!fp.is_pl()) throw PreconditionViolation("exact lift evaluation needs a PL forcing");
    return x + fp.omega() + fp.b() * std::get<ReducedPLForcing>(fp.forcing()).eval(x);
}

RotationEstimate rotation_estimate(const FamilyPoint& fp, std::uint64_t n, double x0) {
    if (n == 0) throw PreconditionViolation("rotation_estimate needs n >= 1");
    const double omega = fp.omega().to_double();
    const double b = fp.b().to_double();
    double u = x0 - std::floor(x0);
    double turns = std::floor(x0);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double y = u + omega + b * forcing_eval(fp.forcing(), u);
        const double k = std::floor(y);
        turns += k;
        u = y - k;
    }
    const double advance = (turns + u) - x0;
    const double nd = static_cast<double>(n);
    RotationEstimate r{(advance - 1.0) / nd, (advance + 1.0) / nd, n};
    // The rotation number also lies in the range of F(x) - x.
    double sup = 0.0;
    if (const auto* pl = std::get_if<ReducedPLForcing>(&fp.forcing()))
        sup = pl->sup_abs().to_double();
    else
        sup = SineForcing::kSupAbs;
    r.lo = std::max(r.lo, std::nextafter(omega - b * sup, -HUGE_VAL));
    r.hi = std::min(r.hi, std::nextafter(omega + b * sup, HUGE_VAL));
    return r;
}

Sign displacement_sign(const Forcing& forcing, const Rational& b, const Rational& omega, long p, unsigned q,
                       bool maximum) {
    if (q == 0) throw PreconditionViolation("q must be positive");
    check_coupling(b);
    if (b.is_zero()) return sign_of(Rational(static_cast<long>(q)) * omega - Rational(p));
    if (const auto* pl = std::get_if<ReducedPLForcing>(&forcing)) {
        const PLMap power = pl_power(pl_from_family(b, omega, *pl), q);
        const auto [lo, hi] = displacement_range(power, Rational(p));
        return sign_of(maximum ? hi : lo);
    }
    const Sign s = SmoothSignOracle(b, omega, p, q, maximum).run();
    return maximum ? s : negate(s);
}

LockVerdict mode_lock_test(const FamilyPoint& fp, long p, unsigned q) {
    const Sign top = displacement_sign(fp.forcing(), fp.b(), fp.omega(), p, q, true);
    if (top == Sign::Negative) return LockVerdict::Below;
    if (top == Sign::Unknown) return LockVerdict::Unresolved;
    const Sign bottom = displacement_sign(fp.forcing(), fp.b(), fp.omega(), p, q, false);
    if (bottom == Sign::Positive) return LockVerdict::Above;
    if (bottom == Sign::Unknown) return LockVerdict::Unresolved;
    return LockVerdict::Locked;
}

const char* to_string(LockVerdict v) {
    switch (v) {
        case LockVerdict::Below: return "Below";
        case LockVerdict::Locked: return "Locked";
        case LockVerdict::Above: return "Above";
        case LockVerdict::Unresolved: return "Unresolved";
    }
    return "?";
}

}  // namespace tongues
