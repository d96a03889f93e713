#pragma once

// Jeffrey's rule for probabilities and its two belief-function
// generalizations.
//
// Revising m1 (on the full power set) by m2 (on the subalgebra generated by a
// partition): each m2(B) is shared among the class of B, i.e. the nonempty
// sets X whose upper approximation is B, in proportion to a weight.
//
//   Jeffrey-geometric: weight m1(X)
//   Jeffrey-Dempster:  weight m1(X | B), Dempster-conditioned
//
// When every weight of a class is zero the share of m2(B) has nowhere to go.
// FallbackPolicy decides: strict drops it (result flagged subnormal),
// least_commitment gives it to B itself.

#include <map>
#include <string>
#include <vector>

#include "beliefrev/conditioning.hpp"

namespace beliefrev {

enum class FallbackPolicy { strict, least_commitment };

inline const char* to_string(FallbackPolicy p) {
    return p == FallbackPolicy::strict ? "strict" : "least-commitment";
}

template <class S>
struct FallbackEvent {
    Mask block = 0;              // the subalgebra element whose class had zero weight
    S orphaned_mass{};           // m2(block)
    bool zero_plausibility = false;  // Dempster rule: pl1(block) = 0
    bool reassigned = false;     // least-commitment moved the mass onto `block`
};

template <class S>
struct JeffreyResult {
    MassFunction<S> mass;
    std::vector<FallbackEvent<S>> fallbacks;
};

// Throws NotOnSubalgebra naming the first focal set that is not a union of atoms.
template <class S>
void require_on_subalgebra(const MassFunction<S>& m2, const Partition& partition) {
    if (!(m2.frame() == partition.frame())) throw InvalidInput("m2 and partition use different frames");
    for (const auto& [set, v] : m2.focal())
        if (!partition.is_measurable(set))
            throw NotOnSubalgebra("focal set " + m2.frame().format(set) + " of m2 is not a union of partition atoms",
                                  set);
}

// m_proj(B) = Σ_{X ≠ ∅, B(X) = B} m(X); m_proj(∅) = m(∅).
template <class S>
MassFunction<S> project_to_subalgebra(const MassFunction<S>& m, const Partition& partition,
                                      double tol = kDefaultTolerance) {
    if (!(m.frame() == partition.frame())) throw InvalidInput("mass function and partition use different frames");
    typename MassFunction<S>::Map out;
    for (const auto& [set, v] : m.focal()) out[partition.upper(set)] += v;
    if (m.is_normal()) return MassFunction<S>::from_map(m.frame(), std::move(out), tol);
    return MassFunction<S>::allow_subnormal(m.frame(), std::move(out), tol);
}

// Reads a mass function whose focal sets are atoms as an atom -> probability map.
template <class S>
std::map<Mask, S> atom_probabilities(const MassFunction<S>& m2, const Partition& partition) {
    std::map<Mask, S> out;
    for (const auto& [set, v] : m2.focal()) {
        if (!partition.is_atom(set))
            throw NotOnSubalgebra("focal set " + m2.frame().format(set) + " is not a partition atom", set);
        out.emplace(set, v);
    }
    return out;
}

// P3(A) = Σ_B P1(A | B) P2(B), with P1(A | B) = 0 when P1(B) = 0. Mass on an
// atom of zero prior probability is lost; the result is then subnormal.
template <class S>
MassFunction<S> jeffrey_probability(const MassFunction<S>& p1, const Partition& partition,
                                    const std::map<Mask, S>& p2, double tol = kDefaultTolerance) {
    if (!(p1.frame() == partition.frame())) throw InvalidInput("p1 and partition use different frames");
    if (!is_bayesian(p1, tol) || p1.empty_mass() != 0 || !p1.is_normal())
        throw PreconditionError("jeffrey_probability needs a normal Bayesian p1 without conflict");
    S total(0);
    for (const auto& [atom, v] : p2) {
        if (!partition.is_atom(atom))
            throw NotOnSubalgebra("p2 is given on " + p1.frame().format(atom) + ", which is not an atom", atom);
        if (is_negative(v, tol)) throw InvalidInput("negative probability in p2 on " + p1.frame().format(atom));
        total += v;
    }
    if (!approx_equal(total, S(1), tol)) throw InvalidInput("p2 sums to " + format_scalar(total) + ", expected 1");

    typename MassFunction<S>::Map out;
    for (const auto& [atom, target] : p2) {
        S prior(0);
        for (const auto& [set, v] : p1.focal())
            if (is_subset(set, atom)) prior += v;
        if (is_zero(prior, tol)) continue;
        for (const auto& [set, v] : p1.focal())
            if (is_subset(set, atom)) out[set] += v / prior * target;
    }
    return MassFunction<S>::allow_subnormal(p1.frame(), std::move(out), tol);
}

namespace detail {

template <class S>
struct ClassWeights {
    typename MassFunction<S>::Map weights;  // nonempty members of the class
    bool zero_plausibility = false;
};

template <class S, class WeightFn>
JeffreyResult<S> distribute_over_classes(const MassFunction<S>& m1, const Partition& partition,
                                         const MassFunction<S>& m2, FallbackPolicy policy, double tol,
                                         WeightFn&& weights_for) {
    if (!(m1.frame() == partition.frame())) throw InvalidInput("m1 and partition use different frames");
    if (!m1.is_normal() || !m2.is_normal()) throw PreconditionError("Jeffrey rules need normal m1 and m2");
    require_on_subalgebra(m2, partition);

    typename MassFunction<S>::Map out;
    std::vector<FallbackEvent<S>> fallbacks;
    for (const auto& [block, target] : m2.focal()) {
        if (block == 0) {
            out[0] += target;
            continue;
        }
        const ClassWeights<S> cw = weights_for(block);
        S sum(0);
        for (const auto& [set, w] : cw.weights) sum += w;
        if (!cw.zero_plausibility && is_positive(sum, tol)) {
            for (const auto& [set, w] : cw.weights) out[set] += w / sum * target;
            continue;
        }
        FallbackEvent<S> ev;
        ev.block = block;
        ev.orphaned_mass = target;
        ev.zero_plausibility = cw.zero_plausibility;
        ev.reassigned = policy == FallbackPolicy::least_commitment;
        if (ev.reassigned) out[block] += target;
        fallbacks.push_back(ev);
    }
    return {MassFunction<S>::allow_subnormal(m1.frame(), std::move(out), tol), std::move(fallbacks)};
}

}  // namespace detail

// m3(A) = m1(A) / Σ_{X ∈ class(A)} m1(X) · m2(B(A)).
template <class S>
JeffreyResult<S> jeffrey_geometric(const MassFunction<S>& m1, const Partition& partition, const MassFunction<S>& m2,
                                   FallbackPolicy policy = FallbackPolicy::strict,
                                   double tol = kDefaultTolerance) {
    return detail::distribute_over_classes(m1, partition, m2, policy, tol, [&](Mask block) {
        detail::ClassWeights<S> cw;
        for (const auto& [set, v] : m1.focal())
            if (set != 0 && partition.upper(set) == block) cw.weights.emplace(set, v);
        return cw;
    });
}

// m3(A) = m1(A | B(A)) / Σ_{X ∈ class(A)} m1(X | B(A)) · m2(B(A)).
template <class S>
JeffreyResult<S> jeffrey_dempster(const MassFunction<S>& m1, const Partition& partition, const MassFunction<S>& m2,
                                  FallbackPolicy policy = FallbackPolicy::strict,
                                  double tol = kDefaultTolerance) {
    return detail::distribute_over_classes(m1, partition, m2, policy, tol, [&](Mask block) {
        detail::ClassWeights<S> cw;
        S pl(0);
        for (const auto& [set, v] : m1.focal())
            if (set & block) pl += v;
        if (is_zero(pl, tol)) {
            cw.zero_plausibility = true;
            return cw;
        }
        const auto conditioned = condition_dempster(m1, block, tol);
        for (const auto& [set, v] : conditioned.focal())
            if (partition.upper(set) == block) cw.weights.emplace(set, v);
        return cw;
    });
}

}  // namespace beliefrev
