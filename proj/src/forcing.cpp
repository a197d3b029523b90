#include "tongues/forcing.hpp"

#include "tongues/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tongues {

namespace {

std::vector<Rational> parse_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view part =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(Rational::parse(part));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s;
}

}  // namespace

std::optional<std::string> validate_reduced(std::span<const Rational> w, std::span<const Rational> ell) {
    if (w.size() != ell.size()) return "w and l have different lengths";
    if (w.size() < 2) return "need at least two intervals";
    Rational total;
    Rational dot;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (ell[i].sign() <= 0) return "l_" + std::to_string(i + 1) + " = " + ell[i].str() + " is not positive";
        if (w[i] < Rational(-1)) return "w_" + std::to_string(i + 1) + " = " + w[i].str() + " < -1";
        total += ell[i];
        dot += w[i] * ell[i];
    }
    if (w[0] != Rational(-1)) return "w_1 = " + w[0].str() + " is not -1";
    if (total != Rational(1)) return "sum of l is " + total.str() + ", not 1";
    if (!dot.is_zero()) return "w . l = " + dot.str() + " != 0";
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::size_t j = (i + 1) % w.size();
        if (w[i] == w[j])
            return "adjacent weights w_" + std::to_string(i + 1) + " and w_" + std::to_string(j + 1) + " are equal";
    }
    return std::nullopt;
}

ReducedPLForcing::ReducedPLForcing(std::vector<Rational> w, std::vector<Rational> ell)
    : w_(std::move(w)), ell_(std::move(ell)) {
    if (auto err = validate_reduced(w_, ell_)) throw PreconditionViolation("invalid reduced forcing: " + *err);
    Rational x;
    Rational v;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        starts_.push_back(x);
        start_values_.push_back(v);
        starts_d_.push_back(x.to_double());
        w_d_.push_back(w_[i].to_double());
        start_values_d_.push_back(v.to_double());
        x += ell_[i];
        v += w_[i] * ell_[i];
    }
}

Rational ReducedPLForcing::eval(const Rational& x) const {
    const Rational u = x.frac();
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), u);
    const auto i = static_cast<std::size_t>(it - starts_.begin()) - 1;
    return start_values_[i] + w_[i] * (u - starts_[i]);
}

double ReducedPLForcing::eval(double x) const {
    const double u = x - std::floor(x);
    const auto it = std::upper_bound(starts_d_.begin(), starts_d_.end(), u);
    const auto i = static_cast<std::size_t>(it - starts_d_.begin()) - 1;
    return start_values_d_[i] + w_d_[i] * (u - starts_d_[i]);
}

Rational ReducedPLForcing::sup_abs() const {
    Rational m;
    for (const auto& v : start_values_) m = max(m, abs(v));
    return m;
}

Rational ReducedPLForcing::max_weight() const { return *std::max_element(w_.begin(), w_.end()); }

std::string ReducedPLForcing::spec() const { return "pl:w=" + join(w_) + ";l=" + join(ell_); }

double SineForcing::eval(double x) {
    const double u = x - std::floor(x);
    return std::sin(2.0 * std::numbers::pi * u) / (2.0 * std::numbers::pi);
}

double SineForcing::derivative(double x) {
    const double u = x - std::floor(x);
    return std::cos(2.0 * std::numbers::pi * u);
}

ReducedPLForcing triangle_forcing(const Rational& delta) {
    if (delta.sign() <= 0 || delta >= Rational(1)) throw PreconditionViolation("triangle delta must lie in (0, 1)");
    return ReducedPLForcing({Rational(-1), delta / (Rational(1) - delta)}, {delta, Rational(1) - delta});
}

Forcing parse_forcing(std::string_view spec) {
    if (spec == "sine") return SineForcing{};
    try {
        if (spec.starts_with("triangle:")) return triangle_forcing(Rational::parse(spec.substr(9)));
        if (spec.starts_with("pl:")) {
            const std::string_view body = spec.substr(3);
            const std::size_t semi = body.find(';');
            if (semi == std::string_view::npos) throw ParseError("pl forcing needs 'w=...;l=...'");
            const std::string_view wpart = body.substr(0, semi);
            const std::string_view lpart = body.substr(semi + 1);
            if (!wpart.starts_with("w=") || !lpart.starts_with("l="))
                throw ParseError("pl forcing needs 'w=...;l=...'");
            return ReducedPLForcing(parse_list(wpart.substr(2)), parse_list(lpart.substr(2)));
        }
    } catch (const PreconditionViolation& e) {
        throw ParseError(std::string("forcing '") + std::string(spec) + "': " + e.what());
    }
    throw ParseError("unknown forcing spec '" + std::string(spec) + "'");
}

std::string forcing_spec(const Forcing& f) {
    if (std::holds_alternative<SineForcing>(f)) return "sine";
    return std::get<ReducedPLForcing>(f).spec();
}

double forcing_eval(const Forcing& f, double x) {
    return std::visit([x](const auto& g) { return g.eval(x); }, f);
}

ScaledPLForcing normalize_standard_like(std::span<const Rational> slopes, std::span<const Rational> lengths) {
    if (slopes.size() != lengths.size() || slopes.empty())
        throw PreconditionViolation("slopes and lengths must be non-empty and of equal size");
    const Rational lowest = *std::min_element(slopes.begin(), slopes.end());
    if (std::all_of(slopes.begin(), slopes.end(), [](const Rational& s) { return s.is_zero(); }))
        throw ConstantForcing("forcing is constant");
    if (lowest.sign() >= 0) throw PreconditionViolation("periodic forcing needs a negative slope");
    ScaledPLForcing out;
    out.scale = -lowest;
    for (const auto& s : slopes) out.slopes.push_back(s / out.scale);
    out.lengths.assign(lengths.begin(), lengths.end());
    return out;
}

std::vector<double> normalize_standard_like(std::span<const double> derivative_samples) {
    if (derivative_samples.empty()) throw PreconditionViolation("no samples");
    const double lowest = *std::min_element(derivative_samples.begin(), derivative_samples.end());
    const double highest = *std::max_element(derivative_samples.begin(), derivative_samples.end());
    if (lowest == 0.0 && highest == 0.0) throw ConstantForcing("forcing is constant");
    if (lowest >= 0.0) throw PreconditionViolation("periodic forcing needs a negative slope");
    std::vector<double> out;
    out.reserve(derivative_samples.size());
    for (double s : derivative_samples) out.push_back(s / -lowest);
    return out;
}

Rational GeneralPLForcing::eval(const Rational& x) const {
    // Walk forward from knots[0] to the interval containing x.
    const Rational u = knots.front() + (x - knots.front()).frac();
    Rational v = value_at_first;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const Rational end = i + 1 < knots.size() ? knots[i + 1] : knots.front() + Rational(1);
        if (u < end) return v + slopes[i] * (u - knots[i]);
        v += slopes[i] * (end - knots[i]);
    }
    return v;
}

GeneralPLForcing shift_translate(const Rational& r, const Rational& s, const ReducedPLForcing& f) {
    // psi(y) = r + phi(y + s): the break point c_i of phi moves to c_i - s.
    std::vector<std::pair<Rational, Rational>> pieces;
    for (std::size_t i = 0; i < f.size(); ++i) pieces.emplace_back((f.starts()[i] - s).frac(), f.w()[i]);
    std::sort(pieces.begin(), pieces.end());
    GeneralPLForcing out;
    for (auto& [k, w] : pieces) {
        out.knots.push_back(k);
        out.slopes.push_back(w);
    }
    out.value_at_first = r + f.eval(out.knots.front() + s);
    return out;
}

Reduction reduce_general_pl(const GeneralPLForcing& psi) {
    const std::size_t n = psi.knots.size();
    if (n == 0 || psi.slopes.size() != n) throw PreconditionViolation("malformed PL forcing");
    std::size_t found = n;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (psi.slopes[i] == Rational(-1)) {
            ++count;
            found = i;
        }
    }
    if (count == 0) throw PreconditionViolation("forcing has no slope -1 interval; not standard-like");
    if (count > 1) throw AmbiguousReduction("slope -1 occurs on " + std::to_string(count) + " intervals");

    const Rational start = psi.knots[found];
    std::vector<Rational> w;
    std::vector<Rational> ell;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = (found + j) % n;
        const std::size_t next = (i + 1) % n;
        Rational len = psi.knots[next] - psi.knots[i];
        if (next <= i) len += Rational(1);
        w.push_back(psi.slopes[i]);
        ell.push_back(len);
    }
    Reduction out{psi.eval(start), (-start).frac(), ReducedPLForcing(std::move(w), std::move(ell))};
    return out;
}

ReducedPLForcing discretize(std::span<const double> derivative_samples, std::size_t cells) {
    const std::size_t m = derivative_samples.size();
    if (cells < 2) throw PreconditionViolation("need at least two cells");
    if (m < cells) throw EmptyCell("fewer samples than cells");
    const double lo = *std::min_element(derivative_samples.begin(), derivative_samples.end());
    const double hi = *std::max_element(derivative_samples.begin(), derivative_samples.end());
    if (!(lo < hi)) throw ConstantForcing("derivative samples are constant");

    std::vector<std::size_t> counts(cells, 0);
    std::vector<Rational> sums(cells);
    const double step = (hi - lo) / static_cast<double>(cells);
    for (double s : derivative_samples) {
        auto bin = static_cast<std::size_t>((s - lo) / step);
        if (bin >= cells) bin = cells - 1;
        ++counts[bin];
        sums[bin] += Rational::from_double(s);
    }
    Rational total;
    for (std::size_t i = 0; i < cells; ++i) {
        if (counts[i] == 0) throw EmptyCell("value bin " + std::to_string(i + 1) + " has no samples");
        total += sums[i];
    }
    const Rational mean = total / Rational(static_cast<long>(m));
    std::vector<Rational> w;
    std::vector<Rational> ell;
    for (std::size_t i = 0; i < cells; ++i) {
        w.push_back(sums[i] / Rational(static_cast<long>(counts[i])) - mean);
        ell.push_back(Rational(static_cast<long>(counts[i]), static_cast<long>(m)));
    }
    const Rational scale = -w.front();
    if (scale.sign() <= 0) throw PreconditionViolation("lowest bin average is not below the mean");
    for (auto& x : w) x /= scale;
    return ReducedPLForcing(std::move(w), std::move(ell));
}

}  // namespace tongues
