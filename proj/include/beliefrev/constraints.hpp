#pragma once

// Executable checkers for the requirements that characterize the
// conditioning rules. Ratio requirements are checked cross-multiplied, so a
// zero denominator needs no special case beyond the explicit side clauses
// ("the numerator must vanish when the reference value vanishes").
//
// Quantifiers are enumerated exhaustively for frames up to
// CheckOptions::exhaustive_limit elements and sampled with a fixed seed above.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "beliefrev/combination.hpp"
#include "beliefrev/conditioning.hpp"
#include "beliefrev/jeffrey.hpp"

namespace beliefrev {

struct CheckOptions {
    double tolerance = kDefaultTolerance;
    std::size_t exhaustive_limit = 6;
    std::size_t samples = 4096;
    std::uint64_t seed = 0x5eedULL;
};

template <class S>
struct Witness {
    std::string constraint;  // sub-requirement that failed, e.g. "C2F" or "C3F"
    Mask x = 0;
    Mask y = 0;
    Mask block = 0;  // atom or subalgebra element the pair lives in
    S lhs{};
    S rhs{};
    S residual{};
};

template <class S>
struct ConstraintReport {
    std::string id;
    bool pass = true;
    S max_violation{};
    std::vector<Witness<S>> witnesses;  // worst first, at most kMaxWitnesses
    std::size_t checked = 0;
    std::size_t skipped = 0;  // quantifier instances where a conditioning was undefined

    static constexpr std::size_t kMaxWitnesses = 16;
};

namespace detail {

template <class S>
class ReportBuilder {
public:
    ReportBuilder(std::string id, double tol) : tol_(tol) { report_.id = std::move(id); }

    void record(const std::string& constraint, Mask x, Mask y, Mask block, const S& lhs, const S& rhs) {
        ++report_.checked;
        const S residual = ScalarTraits<S>::magnitude(S(lhs - rhs));
        if (residual > report_.max_violation) report_.max_violation = residual;
        if (!is_zero(residual, tol_)) violations_.push_back({constraint, x, y, block, lhs, rhs, residual});
    }

    void skip() { ++report_.skipped; }

    ConstraintReport<S> finish() && {
        report_.pass = violations_.empty();
        std::stable_sort(violations_.begin(), violations_.end(),
                         [](const Witness<S>& a, const Witness<S>& b) { return a.residual > b.residual; });
        if (violations_.size() > ConstraintReport<S>::kMaxWitnesses)
            violations_.resize(ConstraintReport<S>::kMaxWitnesses);
        report_.witnesses = std::move(violations_);
        return std::move(report_);
    }

private:
    double tol_;
    ConstraintReport<S> report_;
    std::vector<Witness<S>> violations_;
};

// Σ_{∅ ≠ Z ⊆ x} w(Z) over a sparse weight map.
template <class S>
S sparse_belief(const typename MassFunction<S>::Map& w, Mask x) {
    S s(0);
    for (const auto& [z, v] : w)
        if (z != 0 && is_subset(z, x)) s += v;
    return s;
}

// Σ_{Z ⊆ x, B(Z) = B(x)} w(Z): the part of x's support not yet owned by a
// subset with a smaller upper approximation.
template <class S>
S class_support(const typename MassFunction<S>::Map& w, Mask x, const Partition& partition) {
    const Mask block = partition.upper(x);
    S s(0);
    for (const auto& [z, v] : w)
        if (z != 0 && is_subset(z, x) && partition.upper(z) == block) s += v;
    return s;
}

inline Mask random_submask(Mask set, std::mt19937_64& rng) { return static_cast<Mask>(rng()) & set; }

// Pairs (x, y) from one class. Exhaustive for small frames, sampled otherwise;
// sampled draws also visit (y, y) so the zero-support clause is exercised.
template <class F>
void for_each_class_pair(const Partition& partition, const CheckOptions& opts, F&& visit) {
    const Frame& frame = partition.frame();
    if (frame.size() <= opts.exhaustive_limit) {
        for (Mask block : subalgebra_elements(partition)) {
            if (block == 0) continue;
            const auto& members = partition.class_of(block);
            for (Mask x : members)
                for (Mask y : members) visit(block, x, y);
        }
        return;
    }
    std::mt19937_64 rng(opts.seed);
    for (std::size_t i = 0; i < opts.samples; ++i) {
        Mask x = 0;
        while (x == 0) x = random_submask(frame.full(), rng);
        const Mask block = partition.upper(x);
        Mask y = block;
        for (int attempt = 0; attempt < 64; ++attempt) {
            const Mask candidate = random_submask(block, rng);
            if (candidate != 0 && partition.upper(candidate) == block) {
                y = candidate;
                break;
            }
        }
        visit(block, x, y);
        visit(block, y, y);
    }
}

// Nonempty subset pairs inside one set. Exhaustive for small frames, sampled
// otherwise with the same diagonal visits.
template <class F>
void for_each_pair_within(Mask set, const Frame& frame, const CheckOptions& opts, std::mt19937_64& rng, F&& visit) {
    if (frame.size() <= opts.exhaustive_limit) {
        std::vector<Mask> subs;
        for_each_submask(set, [&](Mask s) {
            if (s) subs.push_back(s);
        });
        std::sort(subs.begin(), subs.end());
        for (Mask x : subs)
            for (Mask y : subs) visit(x, y);
        return;
    }
    for (std::size_t i = 0; i < opts.samples; ++i) {
        const Mask x = random_submask(set, rng);
        const Mask y = random_submask(set, rng);
        if (!x || !y) continue;
        visit(x, y);
        visit(y, y);
    }
}

template <class S, class CondFn>
ConstraintReport<S> check_class_ratios(const std::string& id, const std::string& atom_label,
                                       const std::string& class_label, const MassFunction<S>& m1,
                                       const MassFunction<S>& m3, const Partition& partition,
                                       const CheckOptions& opts, CondFn&& conditional) {
    if (!(m1.frame() == partition.frame()) || !(m3.frame() == partition.frame()))
        throw InvalidInput("m1, m3 and partition must share one frame");
    ReportBuilder<S> builder(id, opts.tolerance);
    std::map<Mask, typename MassFunction<S>::Map> cond_cache;
    auto conditioned = [&](Mask block) -> const typename MassFunction<S>::Map& {
        auto it = cond_cache.find(block);
        if (it == cond_cache.end()) it = cond_cache.emplace(block, conditional(block)).first;
        return it->second;
    };

    for_each_class_pair(partition, opts, [&](Mask block, Mask x, Mask y) {
        const auto& w1 = conditioned(block);
        const std::string& label = partition.is_atom(block) ? atom_label : class_label;
        const S s3x = class_support<S>(m3.focal(), x, partition);
        const S s3y = class_support<S>(m3.focal(), y, partition);
        const S s1x = class_support<S>(w1, x, partition);
        const S s1y = class_support<S>(w1, y, partition);
        if (is_zero(s1y, opts.tolerance)) {
            // The revised support must vanish where the reference support does.
            if (x == y) builder.record(label, y, y, block, s3y, S(0));
            return;
        }
        builder.record(label, x, y, block, S(s3x * s1y), S(s3y * s1x));
    });
    return std::move(builder).finish();
}

}  // namespace detail

// C1: bel3(X) = bel2(X) for every X in the subalgebra. Takes bel3 directly so
// rule outputs that are not belief functions can be checked too.
template <class S>
ConstraintReport<S> check_C1(const SetFunction<S>& bel3, const MassFunction<S>& m2, const Partition& partition,
                             const CheckOptions& opts = {}) {
    if (!(bel3.frame() == partition.frame()) || !(m2.frame() == partition.frame()))
        throw InvalidInput("bel3, m2 and partition must share one frame");
    detail::ReportBuilder<S> builder("C1", opts.tolerance);
    for (Mask x : subalgebra_elements(partition))
        builder.record("C1", x, x, x, bel3[x], detail::sparse_belief<S>(m2.focal(), x));
    return std::move(builder).finish();
}

template <class S>
ConstraintReport<S> check_C1(const MassFunction<S>& m3, const MassFunction<S>& m2, const Partition& partition,
                             const CheckOptions& opts = {}) {
    return check_C1(belief(m3), m2, partition, opts);
}

// C2F/C3F: within every class, S3(X) S1(Y) = S3(Y) S1(X) where S sums the
// class support of m3 and of the geometrically conditioned m1(· || B(X)).
template <class S>
ConstraintReport<S> check_C2F_C3F(const MassFunction<S>& m1, const MassFunction<S>& m3, const Partition& partition,
                                  const CheckOptions& opts = {}) {
    return detail::check_class_ratios<S>("C2F+C3F", "C2F", "C3F", m1, m3, partition, opts, [&](Mask block) {
        typename MassFunction<S>::Map w;
        S bel(0);
        for (const auto& [set, v] : m1.focal())
            if (set != 0 && is_subset(set, block)) {
                w.emplace(set, v);
                bel += v;
            }
        if (is_zero(bel, opts.tolerance)) return typename MassFunction<S>::Map{};
        for (auto& [set, v] : w) v /= bel;
        return w;
    });
}

// C2R/C3R: as C2F/C3F with m1(· | B(X)) Dempster-conditioned.
template <class S>
ConstraintReport<S> check_C2R_C3R(const MassFunction<S>& m1, const MassFunction<S>& m3, const Partition& partition,
                                  const CheckOptions& opts = {}) {
    return detail::check_class_ratios<S>("C2R+C3R", "C2R", "C3R", m1, m3, partition, opts, [&](Mask block) {
        try {
            return condition_dempster(m1, block, opts.tolerance).focal();
        } catch (const ZeroPlausibility&) {
            return typename MassFunction<S>::Map{};
        }
    });
}

// R1: P3 = P2 on the subalgebra. R2: within each atom, P3(X) P1(Y) = P3(Y) P1(X),
// and P3(Y) = 0 whenever P1(Y) = 0.
template <class S>
ConstraintReport<S> check_R1_R2(const MassFunction<S>& p1, const MassFunction<S>& p3, const Partition& partition,
                                const std::map<Mask, S>& p2, const CheckOptions& opts = {}) {
    detail::ReportBuilder<S> builder("R1+R2", opts.tolerance);
    const Frame& frame = partition.frame();
    if (!(p1.frame() == frame) || !(p3.frame() == frame)) throw InvalidInput("p1, p3 and partition must share one frame");
    for (const auto& [atom, v] : p2)
        if (!partition.is_atom(atom)) throw NotOnSubalgebra("p2 is given on a non-atom " + frame.format(atom), atom);

    for (Mask x : subalgebra_elements(partition)) {
        S target(0);
        for (const auto& [atom, v] : p2)
            if (is_subset(atom, x)) target += v;
        builder.record("R1", x, x, x, detail::sparse_belief<S>(p3.focal(), x), target);
    }

    std::mt19937_64 rng(opts.seed);
    for (Mask atom : partition.atoms()) {
        detail::for_each_pair_within(atom, frame, opts, rng, [&](Mask x, Mask y) {
            const S p1y = detail::sparse_belief<S>(p1.focal(), y);
            const S p3y = detail::sparse_belief<S>(p3.focal(), y);
            if (is_zero(p1y, opts.tolerance)) {
                if (x == y) builder.record("R2", y, y, atom, p3y, S(0));
                return;
            }
            const S p1x = detail::sparse_belief<S>(p1.focal(), x);
            const S p3x = detail::sparse_belief<S>(p3.focal(), x);
            builder.record("R2", x, y, atom, S(p3x * p1y), S(p3y * p1x));
        });
    }
    return std::move(builder).finish();
}

// B1: P_B(B) = 1. B2: for X, Y ⊆ B, P_B(X) P(Y) = P_B(Y) P(X), and P_B(Y) = 0
// whenever P(Y) = 0.
template <class S>
ConstraintReport<S> check_B1_B2(const MassFunction<S>& p, const MassFunction<S>& p_given, Mask event,
                                const CheckOptions& opts = {}) {
    detail::ReportBuilder<S> builder("B1+B2", opts.tolerance);
    const Frame& frame = p.frame();
    require_in_frame(frame, event, "conditioning event");
    builder.record("B1", event, event, event, detail::sparse_belief<S>(p_given.focal(), event), S(1));
    std::mt19937_64 rng(opts.seed);
    detail::for_each_pair_within(event, frame, opts, rng, [&](Mask x, Mask y) {
        const S py = detail::sparse_belief<S>(p.focal(), y);
        const S qy = detail::sparse_belief<S>(p_given.focal(), y);
        if (is_zero(py, opts.tolerance)) {
            if (x == y) builder.record("B2", y, y, event, qy, S(0));
            return;
        }
        const S px = detail::sparse_belief<S>(p.focal(), x);
        const S qx = detail::sparse_belief<S>(p_given.focal(), x);
        builder.record("B2", x, y, event, S(qx * py), S(qy * px));
    });
    return std::move(builder).finish();
}

// For every atom B and A ⊆ B: bel12(A | B) = bel1(A | B), where m12 = m1 ⊕ m2
// and both sides are Dempster-conditioned. Atoms where either conditioning is
// undefined are counted as skipped.
template <class S>
ConstraintReport<S> check_shafer_property(const MassFunction<S>& m1, const MassFunction<S>& m2,
                                          const Partition& partition, const CheckOptions& opts = {}) {
    detail::ReportBuilder<S> builder("shafer", opts.tolerance);
    const auto m12 = combine_dempster(m1, m2, true, opts.tolerance);
    const Frame& frame = partition.frame();
    std::mt19937_64 rng(opts.seed);
    for (Mask atom : partition.atoms()) {
        std::optional<MassFunction<S>> c12, c1;
        try {
            c12 = condition_dempster(m12, atom, opts.tolerance);
            c1 = condition_dempster(m1, atom, opts.tolerance);
        } catch (const ZeroPlausibility&) {
            builder.skip();
            continue;
        }
        auto visit = [&](Mask a) {
            builder.record("shafer", a, a, atom, detail::sparse_belief<S>(c12->focal(), a),
                           detail::sparse_belief<S>(c1->focal(), a));
        };
        if (frame.size() <= opts.exhaustive_limit) {
            for_each_submask(atom, visit);
        } else {
            for (std::size_t i = 0; i < opts.samples; ++i) visit(detail::random_submask(atom, rng));
        }
    }
    return std::move(builder).finish();
}

}  // namespace beliefrev
