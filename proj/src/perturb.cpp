#include "tongues/perturb.hpp"

#include "tongues/circle_map.hpp"
#include "tongues/errors.hpp"
#include "tongues/pl_map.hpp"
#include "tongues/tongue_scan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace tongues {

IndexMultiset IndexMultiset::from_indices(const std::vector<std::size_t>& indices) {
    std::map<std::size_t, unsigned> counts;
    for (auto i : indices) ++counts[i];
    IndexMultiset out;
    out.entries_.assign(counts.begin(), counts.end());
    return out;
}

unsigned IndexMultiset::size() const {
    unsigned n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

unsigned IndexMultiset::multiplicity(std::size_t index) const {
    for (const auto& [i, e] : entries_)
        if (i == index) return e;
    return 0;
}

std::string IndexMultiset::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [i, e] : entries_) {
        for (unsigned r = 0; r < e; ++r) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    }
    return s + "}";
}

Rational G_eval(const Rational& b, const std::vector<Rational>& w, const IndexMultiset& J) {
    Rational out(1);
    for (const auto& [i, e] : J.entries()) out *= pow(Rational(1) + b * w.at(i), e);
    return out;
}

FactoredPolynomial G_polynomial(const std::vector<Rational>& w, const IndexMultiset& J) {
    std::vector<Factor> factors;
    for (const auto& [i, e] : J.entries()) factors.push_back({w.at(i), e});
    return FactoredPolynomial(std::move(factors));
}

namespace {

// Calls fn on every multiset of size q over {0, .., n - 1}.
template <class Fn>
void for_each_multiset(std::size_t n, unsigned q, Fn&& fn) {
    std::vector<std::size_t> idx(q, 0);
    for (;;) {
        fn(IndexMultiset::from_indices(idx));
        std::size_t pos = q;
        while (pos > 0 && idx[pos - 1] == n - 1) --pos;
        if (pos == 0) return;
        const std::size_t v = idx[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < q; ++i) idx[i] = v;
    }
}

// C(n + q - 1, q), saturating at limit + 1.
std::uint64_t multiset_count(std::size_t n, unsigned q, std::uint64_t limit) {
    std::uint64_t c = 1;
    for (unsigned i = 1; i <= q; ++i) {
        c = c * (n - 1 + i) / i;
        if (c > limit) return limit + 1;
    }
    return c;
}

bool has_sign_mix(const FactoredPolynomial& p) {
    bool neg = false;
    bool pos = false;
    for (const auto& f : p.factors()) {
        neg = neg || f.k.sign() < 0;
        pos = pos || f.k.sign() > 0;
    }
    return neg && pos;
}

}  // namespace

std::vector<PlausibleSet> enumerate_plausible(const std::vector<Rational>& w, unsigned q, unsigned n,
                                              const Rational& width) {
    if (w.empty() || w.front() != Rational(-1)) throw PreconditionViolation("w_1 must be -1");
    if (std::none_of(w.begin(), w.end(), [](const Rational& x) { return x.sign() > 0; }))
        throw PreconditionViolation("some weight must be positive");
    if (n <= 1) throw PreconditionViolation("n must exceed 1");
    if (q == 0) throw PreconditionViolation("q must be positive");
    constexpr std::uint64_t kLimit = 1'000'000;
    if (multiset_count(w.size(), q, kLimit) > kLimit)
        throw TooManySets("C(N + q - 1, q) exceeds 10^6 for N = " + std::to_string(w.size()) +
                          ", q = " + std::to_string(q));

    const Rational floor_b(1, static_cast<long>(n));
    std::vector<PlausibleSet> out;
    for_each_multiset(w.size(), q, [&](const IndexMultiset& J) {
        const FactoredPolynomial poly = G_polynomial(w, J);
        if (!has_sign_mix(poly) || !is_plausible_shape(poly)) return;
        if (poly.eval(floor_b) < Rational(1)) return;  // root below 1/n
        PlausibleSet s;
        s.J = J;
        if (auto r = rational_root(poly)) {
            s.root = RationalInterval(*r);
        } else {
            s.root = unique_root(poly, width).interval;
        }
        s.alpha = poly.derivative(s.root);
        out.push_back(std::move(s));
    });
    return out;
}

std::vector<std::vector<RationalInterval>> jacobian(const std::vector<Rational>& w,
                                                    const std::vector<PlausibleSet>& sets) {
    if (sets.empty()) throw PreconditionViolation("jacobian needs at least one plausible set");
    std::vector<std::vector<RationalInterval>> a;
    for (const auto& s : sets) {
        if (!s.alpha.negative()) throw PreconditionViolation("alpha must be certified negative");
        std::vector<RationalInterval> row(w.size(), RationalInterval(Rational(0)));
        for (const auto& [j, e] : s.J.entries()) {
            const RationalInterval factor = RationalInterval(Rational(1)) + s.root * RationalInterval(w[j]);
            if (factor.contains_zero()) throw DegenerateFactor("1 + b w_" + std::to_string(j + 1) + " straddles 0");
            const RationalInterval num = -(s.root * RationalInterval(Rational(static_cast<long>(e))));
            row[j] = num / (s.alpha * factor);
        }
        a.push_back(std::move(row));
    }
    return a;
}

bool roots_separated(const std::vector<PlausibleSet>& sets) {
    std::vector<RationalInterval> roots;
    for (const auto& s : sets) roots.push_back(s.root);
    std::sort(roots.begin(), roots.end(),
              [](const RationalInterval& x, const RationalInterval& y) { return x.lo() < y.lo(); });
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i - 1].intersects(roots[i])) return false;
    return true;
}

Separation separate_roots(const std::vector<Rational>& w, const std::vector<Rational>& ell, unsigned q, unsigned n,
                          const Rational& epsilon, std::uint64_t seed, unsigned max_attempts) {
    if (auto err = validate_reduced(w, ell)) throw PreconditionViolation("invalid reduced forcing: " + *err);
    if (w.size() < 3)
        throw PreconditionViolation("k = 2: the constraint space {v : v.l = 0, v_1 = 0} has no free direction");
    if (epsilon.sign() <= 0) throw PreconditionViolation("epsilon must be positive");
    if (roots_separated(enumerate_plausible(w, q, n))) return {w, ell, 0};

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-1000, 1000);
    const std::size_t k = w.size();
    for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
        std::vector<Rational> v(k);
        Rational rest;
        for (std::size_t i = 2; i < k; ++i) {
            v[i] = Rational(coord(rng), 1000);
            rest += v[i] * ell[i];
        }
        v[1] = -rest / ell[1];
        Rational norm;
        for (const auto& x : v) norm = max(norm, abs(x));
        if (norm.is_zero()) continue;
        Rational step = epsilon / (Rational(2) * norm);
        for (int halving = 0; halving < 24; ++halving, step /= Rational(2)) {
            std::vector<Rational> trial(k);
            for (std::size_t i = 0; i < k; ++i) trial[i] = w[i] + step * v[i];
            if (validate_reduced(trial, ell)) continue;
            if (roots_separated(enumerate_plausible(trial, q, n))) return {trial, ell, attempt};
        }
    }
    throw BudgetExhausted("no separating direction in " + std::to_string(max_attempts) + " attempts");
}

std::vector<Rational> perturb_length_ratio(const std::vector<Rational>& w, const std::vector<Rational>& ell,
                                           const Rational& epsilon) {
    if (auto err = validate_reduced(w, ell)) throw PreconditionViolation("invalid reduced forcing: " + *err);
    const std::size_t k = w.size();
    if (k < 3) throw PreconditionViolation("perturb_length_ratio needs k >= 3");
    if (epsilon.sign() <= 0) throw PreconditionViolation("epsilon must be positive");
    if (k == 3 && w[2].is_zero())
        throw PreconditionViolation("k = 3 with w_3 = 0: the constraints pin l_1 / l_2");

    // Moves l_1 by d and re-solves the last free coordinates from sum l = 1
    // and w . l = 0.
    auto shifted = [&](const Rational& d) {
        std::vector<Rational> out = ell;
        out[0] += d;
        const std::size_t a = k - 2;
        const std::size_t c = k - 1;
        Rational mass;
        Rational moment;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == a || i == c) continue;
            mass += out[i];
            moment += w[i] * out[i];
        }
        // out[a] + out[c] = 1 - mass; w_a out[a] + w_c out[c] = -moment.
        out[a] = (-moment - w[c] * (Rational(1) - mass)) / (w[a] - w[c]);
        out[c] = Rational(1) - mass - out[a];
        return out;
    };
    const Rational old_ratio = ell[0] / ell[1];
    for (Rational d = epsilon / Rational(4); d.sign() > 0 && d > dyadic(200); d /= Rational(2)) {
        for (const Rational& step : {d, -d}) {
            const std::vector<Rational> out = shifted(step);
            if (validate_reduced(w, out)) continue;
            Rational dist;
            for (std::size_t i = 0; i < k; ++i) dist = max(dist, abs(out[i] - ell[i]));
            if (dist >= epsilon) continue;
            if (out[0] / out[1] != old_ratio) return out;
        }
    }
    throw BudgetExhausted("could not change l_1 / l_2 within epsilon");
}

std::vector<ExactPinchHit> exact_pinch_scan(const ReducedPLForcing& forcing, unsigned q_max) {
    std::vector<ExactPinchHit> hits;
    for (unsigned q = 1; q <= q_max; ++q) {
        std::set<Rational> candidates;
        for_each_multiset(forcing.size(), q, [&](const IndexMultiset& J) {
            const FactoredPolynomial poly = G_polynomial(forcing.w(), J);
            if (!has_sign_mix(poly) || !is_plausible_shape(poly)) return;
            if (auto r = rational_root(poly)) candidates.insert(*r);
        });
        for (const auto& b : candidates) {
            for (long p = 0; p < static_cast<long>(q); ++p) {
                if (std::gcd(static_cast<unsigned long>(p), static_cast<unsigned long>(q)) != 1) continue;
                const Rational omega = exact_left_boundary(forcing, b, p, q);
                if (is_translation(pl_power(pl_from_family(b, omega, forcing), q), Rational(p)))
                    hits.push_back({p, q, b, omega});
            }
        }
    }
    return hits;
}

ReducedPLForcing random_reduced_forcing(unsigned k, std::uint64_t seed) {
    if (k < 2) throw PreconditionViolation("need k >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> len(1, 30);
    std::uniform_int_distribution<long> wt(-12, 36);
    for (;;) {
        std::vector<Rational> ell;
        Rational total;
        for (unsigned i = 0; i < k; ++i) {
            ell.emplace_back(len(rng));
            total += ell.back();
        }
        for (auto& l : ell) l /= total;
        // w_1 = -1, w_3.. random in [-1, 3], w_2 solved from w . l = 0.
        std::vector<Rational> w(k);
        w[0] = Rational(-1);
        Rational moment = -ell[0];
        for (unsigned i = 2; i < k; ++i) {
            w[i] = Rational(wt(rng), 12);
            moment += w[i] * ell[i];
        }
        w[1] = -moment / ell[1];
        if (!validate_reduced(w, ell)) return ReducedPLForcing(std::move(w), std::move(ell));
    }
}

}  // namespace tongues
