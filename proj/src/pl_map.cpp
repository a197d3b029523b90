#include "tongues/pl_map.hpp"

#include "tongues/errors.hpp"

#include <algorithm>

namespace tongues {

namespace {

void sort_unique(std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

PLMap::PLMap(std::vector<Rational> knots, std::vector<Rational> values) {
    if (knots.empty() || knots.size() != values.size())
        throw PreconditionViolation("PL map needs matching non-empty knot and value lists");
    if (!knots.front().is_zero()) throw PreconditionViolation("first knot must be 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i - 1] < knots[i])) throw PreconditionViolation("knots must be strictly increasing");
    if (!(knots.back() < Rational(1))) throw PreconditionViolation("knots must lie in [0, 1)");

    const std::size_t n = knots.size();
    std::vector<Rational> slopes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational t1 = i + 1 < n ? knots[i + 1] : Rational(1);
        const Rational v1 = i + 1 < n ? values[i + 1] : values.front() + Rational(1);
        slopes[i] = (v1 - values[i]) / (t1 - knots[i]);
        if (slopes[i].sign() < 0) throw PreconditionViolation("PL lift must be non-decreasing");
    }
    knots_.push_back(std::move(knots.front()));
    values_.push_back(std::move(values.front()));
    slopes_.push_back(slopes.front());
    for (std::size_t i = 1; i < n; ++i) {
        if (slopes[i] == slopes_.back()) continue;
        knots_.push_back(std::move(knots[i]));
        values_.push_back(std::move(values[i]));
        slopes_.push_back(std::move(slopes[i]));
    }
}

PLMap PLMap::rotation(const Rational& shift) { return PLMap({Rational(0)}, {shift}); }

std::vector<Rational> PLMap::breakpoints() const {
    std::vector<Rational> out;
    if (slopes_.front() != slopes_.back()) out.emplace_back(0);
    out.insert(out.end(), knots_.begin() + 1, knots_.end());
    return out;
}

std::vector<Rational> PLMap::breakpoint_slopes() const {
    if (knots_.size() == 1) return {slopes_.front()};
    std::vector<Rational> out;
    if (slopes_.front() != slopes_.back()) out.push_back(slopes_.front());
    out.insert(out.end(), slopes_.begin() + 1, slopes_.end());
    return out;
}

std::size_t PLMap::piece_index(const Rational& x) const {
    const Rational u = x.frac();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

Rational PLMap::operator()(const Rational& x) const {
    const mpz_class n = x.floor();
    const Rational u = x - Rational(n, 1);
    const std::size_t i = piece_index(u);
    return values_[i] + slopes_[i] * (u - knots_[i]) + Rational(n, 1);
}

const Rational& PLMap::slope_right(const Rational& x) const { return slopes_[piece_index(x)]; }

const Rational& PLMap::slope_left(const Rational& x) const {
    const Rational u = x.frac();
    const std::size_t i = piece_index(u);
    if (knots_[i] != u) return slopes_[i];
    return i == 0 ? slopes_.back() : slopes_[i - 1];
}

BreakType PLMap::break_type(const Rational& x) const {
    const Rational& behind = slope_left(x);
    const Rational& ahead = slope_right(x);
    if (ahead == behind) return BreakType::None;
    return ahead > behind ? BreakType::Up : BreakType::Down;
}

std::vector<Rational> PLMap::preimages(const Rational& y) const {
    // F maps [0, 1) onto [v_0, v_0 + 1); bring y into that window.
    const Rational v0 = values_.front();
    const Rational target = v0 + (y - v0).frac();
    const auto it = std::upper_bound(values_.begin(), values_.end(), target);
    const std::size_t i = static_cast<std::size_t>(it - values_.begin()) - 1;
    if (slopes_[i].is_zero()) return {knots_[i]};
    return {knots_[i] + (target - values_[i]) / slopes_[i]};
}

PLMap pl_compose(const PLMap& g, const PLMap& f) {
    const auto& fk = f.knots();
    const auto& fv = f.values();
    const auto& fs = f.slopes();
    const auto& gk = g.knots();
    std::vector<Rational> cuts(fk.begin(), fk.end());
    for (std::size_t i = 0; i < fk.size(); ++i) {
        if (fs[i].is_zero()) continue;
        const Rational& v0 = fv[i];
        const Rational v1 = i + 1 < fk.size() ? fv[i + 1] : fv.front() + Rational(1);
        // g-knots u + m strictly inside (v0, v1); image length is at most 1.
        const mpz_class m0 = v0.floor();
        for (mpz_class m = m0; Rational(m, 1) < v1; ++m) {
            const Rational shift(m, 1);
            for (const auto& u : gk) {
                const Rational y = u + shift;
                if (y <= v0) continue;
                if (y >= v1) break;
                cuts.push_back(fk[i] + (y - v0) / fs[i]);
            }
        }
        if (cuts.size() > kMaxPieces) throw PieceLimitExceeded("composition exceeds piece limit");
    }
    sort_unique(cuts);
    std::vector<Rational> values;
    values.reserve(cuts.size());
    for (const auto& x : cuts) values.push_back(g(f(x)));
    return PLMap(std::move(cuts), std::move(values));
}

PLMap pl_power(const PLMap& f, unsigned q) {
    if (q == 0) throw PreconditionViolation("pl_power needs q >= 1");
    PLMap out = f;
    for (unsigned i = 1; i < q; ++i) out = pl_compose(f, out);
    return out;
}

PLMap pl_inverse(const PLMap& f) {
    for (const auto& s : f.slopes())
        if (s.sign() <= 0) throw PreconditionViolation("inverse needs a homeomorphism (all slopes > 0)");
    std::vector<Rational> cuts{Rational(0)};
    for (const auto& v : f.values()) cuts.push_back(v.frac());
    sort_unique(cuts);
    std::vector<Rational> values;
    values.reserve(cuts.size());
    const Rational v0 = f.anchor();
    for (const auto& y : cuts) {
        // Lift y into [v0, v0 + 1), the image of [0, 1).
        const mpz_class m = (y - v0).floor();
        const Rational target = y - Rational(m, 1);
        values.push_back(f.preimages(target).front() + Rational(m, 1));
    }
    return PLMap(std::move(cuts), std::move(values));
}

std::pair<Rational, Rational> displacement_range(const PLMap& f, const Rational& p) {
    Rational lo = f.values().front() - p;
    Rational hi = lo;
    for (std::size_t i = 1; i < f.knots().size(); ++i) {
        const Rational d = f.values()[i] - f.knots()[i] - p;
        if (d < lo) lo = d;
        if (d > hi) hi = d;
    }
    return {lo, hi};
}

bool is_translation(const PLMap& f, const Rational& p) { return f.piece_count() == 1 && f.anchor() == p; }

BreakOrbit break_orbit(const PLMap& f, const Rational& x, unsigned q, const Rational& p) {
    BreakOrbit out;
    Rational y = x;
    for (unsigned i = 0; i < q; ++i) {
        out.points.push_back(y);
        out.types.push_back(f.break_type(y));
        y = f(y);
    }
    out.periodic = (y == x + p);
    return out;
}

Rational derivative_product(const PLMap& f, const Rational& x, unsigned q) {
    Rational y = x;
    Rational d(1);
    for (unsigned i = 0; i < q; ++i) {
        if (f.is_breakpoint(y)) throw OrbitHitsBreakpoint("orbit point " + y.str() + " is a break point");
        d *= f.slope_right(y);
        y = f(y);
    }
    return d;
}

Itinerary itinerary(const PLMap& f, const Rational& x, unsigned q) {
    Itinerary it;
    Rational y = x;
    for (unsigned i = 0; i < q; ++i) {
        const std::size_t k = f.piece_index(y);
        it.symbols.push_back(k);
        if (f.slopes()[k] < Rational(1)) ++it.gamma;
        y = f(y);
    }
    return it;
}

std::vector<Rational> itinerary_cuts(const PLMap& f, unsigned q) {
    std::vector<Rational> all(f.knots().begin(), f.knots().end());
    std::vector<Rational> layer = all;
    for (unsigned i = 1; i < q; ++i) {
        std::vector<Rational> next;
        for (const auto& y : layer)
            for (auto& x : f.preimages(y)) next.push_back(std::move(x));
        sort_unique(next);
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
        if (all.size() > kMaxPieces) throw PieceLimitExceeded("itinerary partition exceeds piece limit");
    }
    sort_unique(all);
    return all;
}

}  // namespace tongues
