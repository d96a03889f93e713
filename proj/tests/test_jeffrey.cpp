#include "doctest.h"

#include "beliefrev/constraints.hpp"
#include "beliefrev/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace beliefrev;
using fixtures::abcd;
using fixtures::set;

using Q = Rational;

TEST_CASE("project_to_subalgebra") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    const auto m1 = fixtures::worked_m1<Q>();
    CHECK(project_to_subalgebra(m1, p) ==
          fixtures::mass<Q>(f, {{{"a", "b"}, "0.5"}, {{"a", "b", "c", "d"}, "0.3"}, {{"c", "d"}, "0.2"}}));
    const auto m2 = fixtures::worked_m2<Q>();
    CHECK(project_to_subalgebra(m2, p) == m2);
    CHECK(project_to_subalgebra(m1, Partition::trivial(f)) == MassFunction<Q>::vacuous(f));
}

TEST_CASE("jeffrey_probability examples") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    std::vector<std::pair<Mask, Q>> uniform;
    for (int i = 0; i < 4; ++i) uniform.emplace_back(Mask{1} << i, Q(1, 4));
    const auto p1 = MassFunction<Q>::make(f, uniform);
    const std::map<Mask, Q> p2{{set(f, {"a", "b"}), Q(7, 10)}, {set(f, {"c", "d"}), Q(3, 10)}};
    const auto p3 = jeffrey_probability(p1, p, p2);
    CHECK(p3.mass(set(f, {"a"})) == Q(35, 100));
    CHECK(check_R1_R2(p1, p3, p, p2).pass);

    // Degenerate p2 is Bayes conditioning on the atom.
    const std::map<Mask, Q> certain{{set(f, {"c", "d"}), Q(1)}};
    CHECK(jeffrey_probability(p1, p, certain) == condition_bayes(p1, set(f, {"c", "d"})));

    const Frame abc({"a", "b", "c"});
    const Partition split(abc, {0b011, 0b100});
    const auto q1 = fixtures::mass<Q>(abc, {{{"a"}, "0.1"}, {{"b"}, "0.4"}, {{"c"}, "0.5"}});
    const std::map<Mask, Q> q2{{0b011, Q(6, 10)}, {0b100, Q(4, 10)}};
    const auto q3 = jeffrey_probability(q1, split, q2);
    CHECK(q3 == fixtures::mass<Q>(abc, {{{"a"}, "0.12"}, {{"b"}, "0.48"}, {{"c"}, "0.4"}}));
    CHECK(check_R1_R2(q1, q3, split, q2).pass);
}

TEST_CASE("jeffrey_probability drops the share of a zero-probability atom") {
    const Frame abc({"a", "b", "c"});
    const Partition split(abc, {0b011, 0b100});
    const auto q1 = fixtures::mass<Q>(abc, {{{"a"}, "1"}});
    const auto q3 = jeffrey_probability(q1, split, std::map<Mask, Q>{{0b011, Q(1, 2)}, {0b100, Q(1, 2)}});
    CHECK(q3.status() == MassStatus::subnormal);
    CHECK(q3.mass(0b001) == Q(1, 2));
}

TEST_CASE_TEMPLATE("worked instance", S, double, Rational) {
    const Partition p = fixtures::halves();
    const auto m1 = fixtures::worked_m1<S>();
    const auto m2 = fixtures::worked_m2<S>();
    const auto geo = jeffrey_geometric(m1, p, m2);
    CHECK(geo.fallbacks.empty());
    CHECK(approx_equal(geo.mass, fixtures::worked_geometric_expected<S>(), 1e-12));
    const auto dem = jeffrey_dempster(m1, p, m2);
    CHECK(dem.fallbacks.empty());
    CHECK(approx_equal(dem.mass, fixtures::worked_dempster_expected<S>(), 1e-12));
}

TEST_CASE("m2 must live on the subalgebra") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    const auto bad = fixtures::mass<Q>(f, {{{"a"}, "1"}});
    try {
        jeffrey_geometric(fixtures::worked_m1<Q>(), p, bad);
        FAIL("expected NotOnSubalgebra");
    } catch (const NotOnSubalgebra& e) {
        CHECK(e.subset() == set(f, {"a"}));
    }
    CHECK_THROWS_AS(jeffrey_dempster(fixtures::worked_m1<Q>(), p, bad), NotOnSubalgebra);
}

TEST_CASE("zero class sum fallback policies") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    // m1 has nothing spanning both atoms and nothing touching {c,d}.
    const auto m1 = fixtures::mass<Q>(f, {{{"a"}, "0.5"}, {{"a", "b"}, "0.5"}});
    const auto m2 = fixtures::worked_m2<Q>();

    const auto strict = jeffrey_geometric(m1, p, m2, FallbackPolicy::strict);
    CHECK(strict.mass.status() == MassStatus::subnormal);
    CHECK(strict.mass.total() == Q(1, 2));
    CHECK(strict.fallbacks.size() == 2);

    const auto lenient = jeffrey_geometric(m1, p, m2, FallbackPolicy::least_commitment);
    CHECK(lenient.mass.is_normal());
    CHECK(lenient.mass.mass(set(f, {"c", "d"})) == Q(3, 10));
    CHECK(lenient.mass.mass(f.full()) == Q(2, 10));
    CHECK(check_C1(lenient.mass, m2, p).pass);

    const auto dem = jeffrey_dempster(m1, p, m2, FallbackPolicy::strict);
    REQUIRE(dem.fallbacks.size() == 2);
    const auto zero_pl = std::find_if(dem.fallbacks.begin(), dem.fallbacks.end(),
                                      [&](const auto& e) { return e.block == set(f, {"c", "d"}); });
    REQUIRE(zero_pl != dem.fallbacks.end());
    CHECK(zero_pl->zero_plausibility);
    CHECK(zero_pl->orphaned_mass == Q(3, 10));
}

TEST_CASE("m2(∅) passes through") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    const auto m2 = fixtures::mass<Q>(f, {{{}, "0.25"}, {{"a", "b"}, "0.75"}});
    const auto r = jeffrey_geometric(fixtures::worked_m1<Q>(), p, m2);
    CHECK(r.mass.empty_mass() == Q(1, 4));
    CHECK(r.mass.is_normal());
}

TEST_CASE("degenerate m2 recovers single-event conditioning") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const Frame f = letter_frame(1 + rng.below(6));
        const Partition p = random_partition(f, rng);
        const auto m1 = random_mass<Q>(f, rng, 1 + rng.below(8));
        const Mask atom = p.atoms()[rng.below(p.atom_count())];
        const auto m2 = MassFunction<Q>::categorical(f, atom);
        if (oracles::belief(m1, atom) != 0)
            CHECK(jeffrey_geometric(m1, p, m2).mass == condition_geometric(m1, atom));
        if (oracles::plausibility(m1, atom) != 0)
            CHECK(jeffrey_dempster(m1, p, m2).mass == condition_dempster(m1, atom));
    }
}

TEST_CASE("C1 and the ratio constraints hold on random instances") {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        GeneratorOptions opts;
        opts.frame_size = 1 + rng.below(6);
        opts.m1_focal = 1 + rng.below(8);
        auto inst = random_instance<Q>(rng, opts);
        for (auto policy : {FallbackPolicy::strict, FallbackPolicy::least_commitment}) {
            const auto geo = jeffrey_geometric(inst.m1, inst.partition, inst.m2, policy);
            const auto dem = jeffrey_dempster(inst.m1, inst.partition, inst.m2, policy);
            for (const auto* r : {&geo, &dem}) {
                const auto proj = project_to_subalgebra(r->mass, inst.partition);
                if (r->fallbacks.empty()) {
                    CHECK(proj == inst.m2);
                } else if (policy == FallbackPolicy::least_commitment) {
                    CHECK(proj.focal() == inst.m2.focal());
                } else {
                    for (const auto& [block, v] : inst.m2.focal()) {
                        const bool orphaned = std::any_of(r->fallbacks.begin(), r->fallbacks.end(),
                                                          [&](const auto& e) { return e.block == block; });
                        CHECK(proj.mass(block) == (orphaned ? Q(0) : v));
                    }
                }
            }
            if (policy == FallbackPolicy::strict) {
                CHECK(check_C2F_C3F(inst.m1, geo.mass, inst.partition).pass);
                CHECK(check_C2R_C3R(inst.m1, dem.mass, inst.partition).pass);
            }
        }
    }
}

TEST_CASE("Jeffrey-Dempster weights can be left unnormalized") {
    Rng rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        auto inst = random_instance<Q>(rng);
        const auto dem = jeffrey_dempster(inst.m1, inst.partition, inst.m2);
        if (!dem.fallbacks.empty()) continue;
        // Same formula with condition_unnormalized weights.
        MassFunction<Q>::Map expected;
        for (const auto& [block, target] : inst.m2.focal()) {
            const auto raw = condition_unnormalized(inst.m1, block);
            Q sum(0);
            for (const auto& [set, v] : raw.focal())
                if (set != 0 && inst.partition.upper(set) == block) sum += v;
            for (const auto& [set, v] : raw.focal())
                if (set != 0 && inst.partition.upper(set) == block) expected[set] += v / sum * target;
        }
        CHECK(dem.mass.focal() == expected);
    }
}

TEST_CASE("Bayesian inputs collapse to Jeffrey's probability rule") {
    Rng rng(44);
    for (int trial = 0; trial < 300; ++trial) {
        const Frame f = letter_frame(1 + rng.below(6));
        const Partition p = random_partition(f, rng);
        const auto p1 = random_bayesian<Q>(f, rng);
        const auto p2 = random_on_atoms<Q>(p, rng);
        const auto probs = atom_probabilities(p2, p);
        const auto expected = jeffrey_probability(p1, p, probs);
        CHECK(check_R1_R2(p1, expected, p, probs).pass == expected.is_normal());
        CHECK(jeffrey_geometric(p1, p, p2).mass == expected);
        CHECK(jeffrey_dempster(p1, p, p2).mass == expected);
    }
}

TEST_CASE("asymmetry: the revising input wins on the subalgebra") {
    const Frame f = abcd();
    const Partition p = fixtures::halves();
    const auto m2 = fixtures::worked_m2<Q>();
    const auto other = fixtures::mass<Q>(f, {{{"b"}, "0.4"}, {{"a", "d"}, "0.3"}, {{"d"}, "0.3"}});
    const auto r1 = jeffrey_geometric(fixtures::worked_m1<Q>(), p, m2).mass;
    const auto r2 = jeffrey_geometric(other, p, m2).mass;
    CHECK_FALSE(r1 == r2);
    CHECK(check_C1(r1, m2, p).pass);
    CHECK(check_C1(r2, m2, p).pass);

    // With the discrete partition the result is m2 whatever m1 is.
    Rng rng(45);
    const Partition discrete = Partition::discrete(f);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m1 = random_mass<Q>(f, rng, 6);
        const auto target = random_mass<Q>(f, rng, 4);
        CHECK(jeffrey_geometric(m1, discrete, target, FallbackPolicy::least_commitment).mass == target);
        CHECK(jeffrey_dempster(m1, discrete, target, FallbackPolicy::least_commitment).mass == target);
    }
}
