#pragma once

// Rival generalizations of Jeffrey's rule, evaluated at the belief level, and
// a seeded search for instances on which a rule breaks C1.
//
// The rival formulas divide by a quantity written p1(B). It is read as the
// plausibility pl1(B) = bel1(Ω) - bel1(¬B), the normalizer of Dempster
// conditioning; kRivalNormalizer names that reading in reports.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beliefrev/combination.hpp"
#include "beliefrev/constraints.hpp"
#include "beliefrev/jeffrey.hpp"
#include "beliefrev/random.hpp"

namespace beliefrev {

inline constexpr std::string_view kRivalNormalizer = "pl1(B)";

// Output of a rule that need not produce a belief function.
template <class S>
struct RivalResult {
    SetFunction<S> belief;
    MobiusReport<S> validity;
};

// m1 ⊕ m2 with m2's focal sets read as subsets of the full frame.
template <class S>
MassFunction<S> shafer_revision(const MassFunction<S>& m1, const MassFunction<S>& m2,
                                double tol = kDefaultTolerance) {
    return combine_dempster(m1, m2, true, tol);
}

namespace detail {

template <class S>
S plausibility_of(const MassFunction<S>& m, Mask set) {
    S pl(0);
    for (const auto& [x, v] : m.focal())
        if (x & set) pl += v;
    return pl;
}

template <class S>
void check_rival_inputs(const MassFunction<S>& m1, const MassFunction<S>& m2, const Partition& partition) {
    if (!(m1.frame() == partition.frame())) throw InvalidInput("m1 and partition use different frames");
    require_on_subalgebra(m2, partition);
}

}  // namespace detail

// bel3(A) = Σ_B bel1(A | B) / pl1(B) · m2(B), bel1(· | B) Dempster-conditioned.
template <class S>
RivalResult<S> dubois_prade_revision(const MassFunction<S>& m1, const MassFunction<S>& m2,
                                     const Partition& partition, double tol = kDefaultTolerance) {
    detail::check_rival_inputs(m1, m2, partition);
    std::vector<S> bel3(m1.frame().lattice_size(), S(0));
    for (const auto& [block, weight] : m2.focal()) {
        const S pl = detail::plausibility_of(m1, block);
        if (is_zero(pl, tol))
            throw ZeroPlausibility("dubois-prade: pl1(" + m1.frame().format(block) + ") is zero", block);
        const auto conditional = belief(condition_dempster(m1, block, tol));
        for (std::size_t a = 0; a < bel3.size(); ++a) bel3[a] += conditional.values()[a] / pl * weight;
    }
    SetFunction<S> bel(m1.frame(), std::move(bel3));
    auto validity = mobius_check(bel, tol);
    return {std::move(bel), std::move(validity)};
}

// bel3(A) = Σ_B f(A, B) m2(B) with
//   variant 1: f = [bel1(A ∪ ¬B) - bel1(¬B)] / pl1(B)
//   variant 2: f = bel1(A ∩ B) / bel1(B)
//   variant 3: f = [bel1(A) - bel1(A ∩ ¬B)] / pl1(B)
template <class S>
RivalResult<S> ichihashi_tanaka(const MassFunction<S>& m1, const MassFunction<S>& m2, const Partition& partition,
                                int variant, double tol = kDefaultTolerance) {
    if (variant < 1 || variant > 3)
        throw PreconditionError("ichihashi-tanaka variant must be 1, 2 or 3, got " + std::to_string(variant));
    detail::check_rival_inputs(m1, m2, partition);
    const Frame& frame = m1.frame();
    const Mask full = frame.full();
    const auto bel1 = belief(m1);
    std::vector<S> bel3(frame.lattice_size(), S(0));
    for (const auto& [block, weight] : m2.focal()) {
        const Mask outside = full & ~block;
        const S denom = variant == 2 ? bel1[block] : S(bel1[full] - bel1[outside]);
        if (is_zero(denom, tol)) {
            const std::string what = "ichihashi-tanaka variant " + std::to_string(variant) + ": " +
                                     (variant == 2 ? "bel1(" : "pl1(") + frame.format(block) + ") is zero";
            if (variant == 2) throw ZeroBelief(what, block);
            throw ZeroPlausibility(what, block);
        }
        for (Mask a = 0; a <= full; ++a) {
            S f;
            switch (variant) {
                case 1: f = (bel1[a | outside] - bel1[outside]) / denom; break;
                case 2: f = bel1[a & block] / denom; break;
                default: f = (bel1[a] - bel1[a & outside]) / denom; break;
            }
            bel3[a] += f * weight;
        }
    }
    SetFunction<S> bel(frame, std::move(bel3));
    auto validity = mobius_check(bel, tol);
    return {std::move(bel), std::move(validity)};
}

enum class RevisionRule { jeffrey_geometric, jeffrey_dempster, shafer, dubois_prade, it1, it2, it3 };

inline constexpr RevisionRule kAllRules[] = {RevisionRule::jeffrey_geometric, RevisionRule::jeffrey_dempster,
                                             RevisionRule::shafer,            RevisionRule::dubois_prade,
                                             RevisionRule::it1,               RevisionRule::it2,
                                             RevisionRule::it3};

inline std::string_view rule_name(RevisionRule r) {
    switch (r) {
        case RevisionRule::jeffrey_geometric: return "jeffrey-geometric";
        case RevisionRule::jeffrey_dempster: return "jeffrey-dempster";
        case RevisionRule::shafer: return "shafer";
        case RevisionRule::dubois_prade: return "dubois-prade";
        case RevisionRule::it1: return "it1";
        case RevisionRule::it2: return "it2";
        case RevisionRule::it3: return "it3";
    }
    return "?";
}

inline RevisionRule parse_rule(std::string_view name) {
    for (RevisionRule r : kAllRules)
        if (rule_name(r) == name) return r;
    throw PreconditionError("unknown rule '" + std::string(name) +
                            "' (expected jeffrey-geometric, jeffrey-dempster, shafer, dubois-prade, it1, it2 or it3)");
}

inline bool is_jeffrey(RevisionRule r) {
    return r == RevisionRule::jeffrey_geometric || r == RevisionRule::jeffrey_dempster;
}

template <class S>
struct RuleOutput {
    SetFunction<S> belief;
    std::optional<MassFunction<S>> mass;  // set for rules that produce a mass function
    bool is_belief_function = true;
    std::vector<FallbackEvent<S>> fallbacks;
};

template <class S>
RuleOutput<S> apply_rule(RevisionRule rule, const MassFunction<S>& m1, const Partition& partition,
                         const MassFunction<S>& m2, FallbackPolicy policy = FallbackPolicy::strict,
                         double tol = kDefaultTolerance) {
    auto from_mass = [](MassFunction<S> m, std::vector<FallbackEvent<S>> fallbacks = {}) {
        auto bel = belief(m);
        return RuleOutput<S>{std::move(bel), std::move(m), true, std::move(fallbacks)};
    };
    auto from_rival = [](RivalResult<S> r) {
        const bool ok = r.validity.is_belief_function();
        return RuleOutput<S>{std::move(r.belief), std::nullopt, ok, {}};
    };
    switch (rule) {
        case RevisionRule::jeffrey_geometric: {
            auto r = jeffrey_geometric(m1, partition, m2, policy, tol);
            return from_mass(std::move(r.mass), std::move(r.fallbacks));
        }
        case RevisionRule::jeffrey_dempster: {
            auto r = jeffrey_dempster(m1, partition, m2, policy, tol);
            return from_mass(std::move(r.mass), std::move(r.fallbacks));
        }
        case RevisionRule::shafer:
            require_on_subalgebra(m2, partition);
            return from_mass(shafer_revision(m1, m2, tol));
        case RevisionRule::dubois_prade: return from_rival(dubois_prade_revision(m1, m2, partition, tol));
        case RevisionRule::it1: return from_rival(ichihashi_tanaka(m1, m2, partition, 1, tol));
        case RevisionRule::it2: return from_rival(ichihashi_tanaka(m1, m2, partition, 2, tol));
        case RevisionRule::it3: return from_rival(ichihashi_tanaka(m1, m2, partition, 3, tol));
    }
    throw PreconditionError("unknown rule");
}

template <class S>
struct C1Violation {
    std::size_t trial = 0;
    Instance<S> instance;
    ConstraintReport<S> report;
};

template <class S>
struct SearchOutcome {
    std::optional<C1Violation<S>> violation;
    std::size_t trials_run = 0;
    std::size_t undefined = 0;  // trials where the rule's precondition failed
};

// Draws `trials` seeded random instances and returns the first on which the
// rule's output fails C1. Jeffrey rules run with `policy` (least-commitment by
// default, so their zero-weight classes never lose mass).
template <class S>
SearchOutcome<S> find_c1_violation(RevisionRule rule, std::uint64_t seed, std::size_t trials,
                                   const GeneratorOptions& gen = {},
                                   FallbackPolicy policy = FallbackPolicy::least_commitment,
                                   double tol = kDefaultTolerance) {
    if (trials == 0) throw PreconditionError("find_c1_violation needs at least one trial");
    Rng rng(seed);
    SearchOutcome<S> outcome;
    CheckOptions opts;
    opts.tolerance = tol;
    for (std::size_t t = 0; t < trials; ++t) {
        ++outcome.trials_run;
        auto instance = random_instance<S>(rng, gen);
        std::optional<RuleOutput<S>> out;
        try {
            out = apply_rule(rule, instance.m1, instance.partition, instance.m2, policy, tol);
        } catch (const TotalConflict&) {
            ++outcome.undefined;
            continue;
        } catch (const SubsetError&) {
            ++outcome.undefined;
            continue;
        }
        auto report = check_C1(out->belief, instance.m2, instance.partition, opts);
        if (!report.pass) {
            outcome.violation = C1Violation<S>{t, std::move(instance), std::move(report)};
            return outcome;
        }
    }
    return outcome;
}

template <class S>
SearchOutcome<S> find_c1_violation(std::string_view rule, std::uint64_t seed, std::size_t trials,
                                   const GeneratorOptions& gen = {},
                                   FallbackPolicy policy = FallbackPolicy::least_commitment,
                                   double tol = kDefaultTolerance) {
    return find_c1_violation<S>(parse_rule(rule), seed, trials, gen, policy, tol);
}

}  // namespace beliefrev
