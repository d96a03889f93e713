#include "doctest.h"

#include "beliefrev/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace beliefrev;
using fixtures::abcd;
using fixtures::set;

using Q = Rational;

namespace {

// bel1(A | B) with Dempster conditioning, straight from the definition.
Q dempster_conditional_belief(const MassFunction<Q>& m, Mask a, Mask b) {
    const Mask full = m.frame().full();
    return (oracles::belief(m, Mask(a | (full & ~b))) - oracles::belief(m, Mask(full & ~b))) /
           oracles::plausibility(m, b);
}

}  // namespace

TEST_CASE("rule names") {
    for (RevisionRule r : kAllRules) CHECK(parse_rule(rule_name(r)) == r);
    CHECK_THROWS_AS(parse_rule("jeffrey"), PreconditionError);
    CHECK(is_jeffrey(RevisionRule::jeffrey_dempster));
    CHECK_FALSE(is_jeffrey(RevisionRule::it2));
    CHECK(kRivalNormalizer == "pl1(B)");
}

TEST_CASE("rival rules on the worked instance") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    const auto m1 = fixtures::worked_m1<Q>();
    const auto m2 = fixtures::worked_m2<Q>();

    // Shafer: m1 ⊕ m2 ignores the prior weight of each block.
    const auto shafer = shafer_revision(m1, m2);
    CHECK(shafer.is_normal());
    CHECK_FALSE(check_C1(shafer, m2, p).pass);
    CHECK(check_shafer_property(m1, m2, p).pass);

    for (int variant = 1; variant <= 3; ++variant) {
        const auto r = ichihashi_tanaka(m1, m2, p, variant);
        CHECK(r.belief[0] == 0);
    }
    CHECK_THROWS_AS(ichihashi_tanaka(m1, m2, p, 4), PreconditionError);
    CHECK_THROWS_AS(ichihashi_tanaka(m1, m1, p, 1), NotOnSubalgebra);
}

TEST_CASE("rival formulas agree with their definitions") {
    Rng rng(71);
    for (int trial = 0; trial < 300; ++trial) {
        GeneratorOptions opts;
        opts.frame_size = 1 + rng.below(5);
        auto inst = random_instance<Q>(rng, opts);
        const Frame& f = inst.frame();
        const Mask full = f.full();
        const auto& m1 = inst.m1;

        bool pl_ok = true, bel_ok = true;
        for (const auto& [b, w] : inst.m2.focal()) {
            pl_ok = pl_ok && oracles::plausibility(m1, b) != 0;
            bel_ok = bel_ok && oracles::belief(m1, b) != 0;
        }
        if (pl_ok) {
            const auto it1 = ichihashi_tanaka(m1, inst.m2, inst.partition, 1);
            const auto it3 = ichihashi_tanaka(m1, inst.m2, inst.partition, 3);
            const auto dp = dubois_prade_revision(m1, inst.m2, inst.partition);
            for (Mask a = 0; a <= full; ++a) {
                Q e1(0), e3(0), edp(0);
                for (const auto& [b, w] : inst.m2.focal()) {
                    const Q pl = oracles::plausibility(m1, b);
                    const Q cond = dempster_conditional_belief(m1, a, b);
                    e1 += cond * w;
                    edp += cond / pl * w;
                    e3 += (oracles::belief(m1, a) - oracles::belief(m1, Mask(a & ~b))) / pl * w;
                }
                CHECK(it1.belief[a] == e1);
                CHECK(it3.belief[a] == e3);
                CHECK(dp.belief[a] == edp);
            }
            CHECK(it1.validity.is_belief_function());
        } else {
            CHECK_THROWS_AS(ichihashi_tanaka(m1, inst.m2, inst.partition, 1), ZeroPlausibility);
            CHECK_THROWS_AS(dubois_prade_revision(m1, inst.m2, inst.partition), ZeroPlausibility);
        }
        if (bel_ok) {
            const auto it2 = ichihashi_tanaka(m1, inst.m2, inst.partition, 2);
            for (Mask a = 0; a <= full; ++a) {
                Q e2(0);
                for (const auto& [b, w] : inst.m2.focal())
                    e2 += oracles::belief(m1, Mask(a & b)) / oracles::belief(m1, b) * w;
                CHECK(it2.belief[a] == e2);
            }
            CHECK(it2.validity.is_belief_function());
        } else {
            CHECK_THROWS_AS(ichihashi_tanaka(m1, inst.m2, inst.partition, 2), ZeroBelief);
        }
    }
}

TEST_CASE("with a categorical atom the rivals reduce to single-event conditioning") {
    Rng rng(72);
    for (int trial = 0; trial < 200; ++trial) {
        const Frame f = letter_frame(1 + rng.below(5));
        const Partition p = random_partition(f, rng);
        const auto m1 = random_mass<Q>(f, rng, 5);
        const Mask atom = p.atoms()[rng.below(p.atom_count())];
        const auto m2 = MassFunction<Q>::categorical(f, atom);
        if (oracles::plausibility(m1, atom) != 0) {
            const auto dem = belief(condition_dempster(m1, atom));
            CHECK(ichihashi_tanaka(m1, m2, p, 1).belief == dem);
            CHECK(belief(shafer_revision(m1, m2)) == dem);
            // The extra division by pl1(B) leaves bel3(Ω) = 1 / pl1(B).
            const auto dp = dubois_prade_revision(m1, m2, p);
            CHECK(dp.belief[f.full()] * oracles::plausibility(m1, atom) == 1);
        }
        if (oracles::belief(m1, atom) != 0)
            CHECK(ichihashi_tanaka(m1, m2, p, 2).belief == belief(condition_geometric(m1, atom)));
    }
}

TEST_CASE("apply_rule") {
    const Partition p = fixtures::halves();
    const auto m1 = fixtures::worked_m1<Q>();
    const auto m2 = fixtures::worked_m2<Q>();
    const auto geo = apply_rule(RevisionRule::jeffrey_geometric, m1, p, m2);
    REQUIRE(geo.mass);
    CHECK(*geo.mass == fixtures::worked_geometric_expected<Q>());
    CHECK(geo.belief == belief(*geo.mass));
    const auto dp = apply_rule(RevisionRule::dubois_prade, m1, p, m2);
    CHECK_FALSE(dp.mass);
    CHECK_THROWS_AS(apply_rule(RevisionRule::shafer, m1, p, m1), NotOnSubalgebra);
}

TEST_CASE("C1 violation search separates the rules") {
    GeneratorOptions gen;
    gen.frame_size = 4;
    for (RevisionRule r : kAllRules) {
        const auto outcome = find_c1_violation<Q>(r, 2024, 300, gen);
        if (is_jeffrey(r)) {
            CHECK_MESSAGE(!outcome.violation, rule_name(r));
            CHECK(outcome.trials_run == 300);
        } else {
            REQUIRE_MESSAGE(outcome.violation, rule_name(r));
            const auto& v = *outcome.violation;
            CHECK_FALSE(v.report.pass);
            const auto replay = apply_rule(r, v.instance.m1, v.instance.partition, v.instance.m2);
            CHECK_FALSE(check_C1(replay.belief, v.instance.m2, v.instance.partition).pass);
        }
    }
    CHECK_THROWS_AS(find_c1_violation<Q>("shafer", 1, 0), PreconditionError);
    CHECK_THROWS_AS(find_c1_violation<Q>("nope", 1, 1), PreconditionError);
}

TEST_CASE("strict Jeffrey outputs lose mass only where a class is empty") {
    GeneratorOptions gen;
    gen.frame_size = 4;
    gen.m1_focal = 2;
    const auto strict = find_c1_violation<Q>(RevisionRule::jeffrey_geometric, 7, 500, gen, FallbackPolicy::strict);
    REQUIRE(strict.violation);
    const auto& v = *strict.violation;
    CHECK_FALSE(jeffrey_geometric(v.instance.m1, v.instance.partition, v.instance.m2).fallbacks.empty());
}
