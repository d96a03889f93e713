#pragma once

// Conditioning a mass function on a single event B.
//
//   unnormalized Dempster: m(X) moves to X ∩ B; mass landing on ∅ is kept.
//   Dempster:              the above, renormalized by pl(B).
//   geometric:             keep masses of nonempty subsets of B, scale by 1/bel(B).
//
// The geometric rule ignores any prior mass on ∅.

#include "beliefrev/mass.hpp"

namespace beliefrev {

template <class S>
MassFunction<S> condition_unnormalized(const MassFunction<S>& m, Mask event, double tol = kDefaultTolerance) {
    require_in_frame(m.frame(), event, "conditioning event");
    if (event == 0) throw InvalidInput("cannot condition on the empty set");
    typename MassFunction<S>::Map out;
    for (const auto& [set, v] : m.focal()) out[set & event] += v;
    if (m.is_normal()) return MassFunction<S>::from_map(m.frame(), std::move(out), tol);
    return MassFunction<S>::allow_subnormal(m.frame(), std::move(out), tol);
}

template <class S>
MassFunction<S> condition_dempster(const MassFunction<S>& m, Mask event, double tol = kDefaultTolerance) {
    require_in_frame(m.frame(), event, "conditioning event");
    if (event == 0) throw InvalidInput("cannot condition on the empty set");
    S pl(0);
    typename MassFunction<S>::Map out;
    for (const auto& [set, v] : m.focal()) {
        const Mask meet = set & event;
        if (meet == 0) continue;
        out[meet] += v;
        pl += v;
    }
    if (is_zero(pl, tol))
        throw ZeroPlausibility("Dempster conditioning on " + m.frame().format(event) + ": plausibility is zero",
                               event);
    for (auto& [set, v] : out) v /= pl;
    return MassFunction<S>::from_map(m.frame(), std::move(out), tol);
}

template <class S>
MassFunction<S> condition_geometric(const MassFunction<S>& m, Mask event, double tol = kDefaultTolerance) {
    require_in_frame(m.frame(), event, "conditioning event");
    if (event == 0) throw InvalidInput("cannot condition on the empty set");
    S bel(0);
    typename MassFunction<S>::Map out;
    for (const auto& [set, v] : m.focal()) {
        if (set == 0 || !is_subset(set, event)) continue;
        out.emplace(set, v);
        bel += v;
    }
    if (is_zero(bel, tol))
        throw ZeroBelief("geometric conditioning on " + m.frame().format(event) + ": belief is zero", event);
    for (auto& [set, v] : out) v /= bel;
    return MassFunction<S>::from_map(m.frame(), std::move(out), tol);
}

// Bayes' rule P(A|B) = P(A ∩ B) / P(B) on a Bayesian mass function.
template <class S>
MassFunction<S> condition_bayes(const MassFunction<S>& p, Mask event, double tol = kDefaultTolerance) {
    if (!is_bayesian(p, tol) || p.empty_mass() != 0)
        throw PreconditionError("Bayes conditioning needs a Bayesian mass function without conflict");
    require_in_frame(p.frame(), event, "conditioning event");
    S prob(0);
    for (const auto& [set, v] : p.focal())
        if (set & event) prob += v;
    if (is_zero(prob, tol))
        throw ZeroPlausibility("Bayes conditioning on " + p.frame().format(event) + ": probability is zero", event);
    typename MassFunction<S>::Map out;
    for (const auto& [set, v] : p.focal())
        if (set & event) out.emplace(set, v / prob);
    return MassFunction<S>::from_map(p.frame(), std::move(out), tol);
}

}  // namespace beliefrev
