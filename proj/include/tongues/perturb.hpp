#pragma once

#include "tongues/factored_polynomial.hpp"
#include "tongues/forcing.hpp"
#include "tongues/rational.hpp"
#include "tongues/rational_interval.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tongues {

/// Multiset of indices into w (0-based), as sorted (index, multiplicity) pairs.
class IndexMultiset {
public:
    IndexMultiset() = default;
    /// From a list of 0-based indices in any order.
    static IndexMultiset from_indices(const std::vector<std::size_t>& indices);

    [[nodiscard]] const std::vector<std::pair<std::size_t, unsigned>>& entries() const { return entries_; }
    [[nodiscard]] unsigned size() const;
    [[nodiscard]] unsigned multiplicity(std::size_t index) const;
    /// 1-based, e.g. "{1,2,2}".
    [[nodiscard]] std::string str() const;

    friend bool operator==(const IndexMultiset&, const IndexMultiset&) = default;

private:
    std::vector<std::pair<std::size_t, unsigned>> entries_;
};

/// prod_{j in J} (1 + b w_j), with multiplicity.
Rational G_eval(const Rational& b, const std::vector<Rational>& w, const IndexMultiset& J);
FactoredPolynomial G_polynomial(const std::vector<Rational>& w, const IndexMultiset& J);

struct PlausibleSet {
    IndexMultiset J;
    RationalInterval root;
    RationalInterval alpha;  // G'(root), negative
};

/// Every J of size q with a certified root of G(., w, J) = 1 in [1/n, 1].
/// Throws TooManySets when C(N + q - 1, q) > 10^6.
std::vector<PlausibleSet> enumerate_plausible(const std::vector<Rational>& w, unsigned q, unsigned n,
                                              const Rational& width = dyadic(60));

/// A_ij = -b_i e_ij / (alpha_i (1 + b_i w_j)), zero when j is not in J_i.
std::vector<std::vector<RationalInterval>> jacobian(const std::vector<Rational>& w,
                                                    const std::vector<PlausibleSet>& sets);

/// Root enclosures pairwise disjoint.
bool roots_separated(const std::vector<PlausibleSet>& sets);

struct Separation {
    std::vector<Rational> w;
    std::vector<Rational> ell;
    unsigned attempts = 0;  // 0 when the input was already separated
};

/// Moves w within the constraint space {v : v.l = 0, v_1 = 0} along seeded
/// random directions with step halving until the plausible roots of the
/// result have pairwise disjoint enclosures. ||w' - w||_inf < epsilon.
/// Throws BudgetExhausted after `max_attempts` directions.
Separation separate_roots(const std::vector<Rational>& w, const std::vector<Rational>& ell, unsigned q, unsigned n,
                          const Rational& epsilon, std::uint64_t seed = 1, unsigned max_attempts = 200);

/// l' within epsilon of l, valid with the same w, with l'_1 / l'_2 != l_1 / l_2.
/// Throws PreconditionViolation for k = 3 with w_3 = 0, where the ratio is
/// pinned by the constraints.
std::vector<Rational> perturb_length_ratio(const std::vector<Rational>& w, const std::vector<Rational>& ell,
                                           const Rational& epsilon);

struct ExactPinchHit {
    long p = 0;
    unsigned q = 1;
    Rational b;
    Rational omega;
};

/// All rational-parameter pinches of tongues with q <= q_max: for every
/// rational root b of some G(., w, J) = 1 and every p, tests whether F^q = R_p
/// at the exact left boundary.
std::vector<ExactPinchHit> exact_pinch_scan(const ReducedPLForcing& forcing, unsigned q_max);

/// Seeded random valid reduced forcing with k intervals and small rational data.
ReducedPLForcing random_reduced_forcing(unsigned k, std::uint64_t seed);

}  // namespace tongues
