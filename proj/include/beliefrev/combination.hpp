#pragma once

#include "beliefrev/mass.hpp"

namespace beliefrev {

// Conjunctive combination m12(A) = Σ_{X ∩ Y = A} m1(X) m2(Y). The normalized
// variant (Dempster's rule) divides by 1 - m12(∅) and zeroes ∅.
template <class S>
MassFunction<S> combine_dempster(const MassFunction<S>& m1, const MassFunction<S>& m2, bool normalized,
                                 double tol = kDefaultTolerance) {
    if (!(m1.frame() == m2.frame())) throw InvalidInput("cannot combine mass functions on different frames");
    typename MassFunction<S>::Map out;
    for (const auto& [x, a] : m1.focal())
        for (const auto& [y, b] : m2.focal()) out[x & y] += a * b;
    const bool normal = m1.is_normal() && m2.is_normal();
    auto combined = normal ? MassFunction<S>::from_map(m1.frame(), std::move(out), tol)
                           : MassFunction<S>::allow_subnormal(m1.frame(), std::move(out), tol);
    if (!normalized) return combined;
    if (approx_equal(combined.empty_mass(), combined.total(), tol))
        throw TotalConflict("Dempster combination: the two mass functions are in total conflict");
    return normalize(combined, tol);
}

}  // namespace beliefrev
