#pragma once

// Probability-of-provability model: a finite set of hypotheses with
// probabilities, each mapped to the strongest proposition (a subset of the
// frame) it proves. Every quantity here is computed from the hypotheses
// directly, which makes the model an independent oracle for the mass-level
// conditioning rules.

#include <string>
#include <vector>

#include "beliefrev/mass.hpp"

namespace beliefrev {

template <class S>
struct Hypothesis {
    std::string label;
    S probability;
    Mask image;  // ∅ for a hypothesis equivalent to the contradiction
};

template <class S>
class HypothesisModel {
public:
    HypothesisModel(Frame frame, std::vector<Hypothesis<S>> hypotheses, double tol = kDefaultTolerance)
        : frame_(std::move(frame)), hypotheses_(std::move(hypotheses)) {
        if (hypotheses_.empty()) throw InvalidInput("hypothesis model has no hypotheses");
        S total(0);
        for (const auto& h : hypotheses_) {
            require_in_frame(frame_, h.image, "image of hypothesis '" + h.label + "'");
            if (is_negative(h.probability, tol))
                throw InvalidInput("hypothesis '" + h.label + "' has negative probability");
            total += h.probability;
        }
        if (!approx_equal(total, S(1), tol))
            throw InvalidInput("hypothesis probabilities sum to " + format_scalar(total) + ", expected 1");
    }

    const Frame& frame() const noexcept { return frame_; }
    const std::vector<Hypothesis<S>>& hypotheses() const noexcept { return hypotheses_; }

private:
    Frame frame_;
    std::vector<Hypothesis<S>> hypotheses_;
};

// m_G(L) = Σ_{H : M(H) = L} p(H).
template <class S>
MassFunction<S> induced_bba(const HypothesisModel<S>& model, double tol = kDefaultTolerance) {
    typename MassFunction<S>::Map masses;
    for (const auto& h : model.hypotheses()) masses[h.image] += h.probability;
    return MassFunction<S>::from_map(model.frame(), std::move(masses), tol);
}

// P(⊢L): probability that a random hypothesis proves L without proving ¬L,
// i.e. ∅ ≠ M(H) ⊆ L.
template <class S>
S provability_probability(const HypothesisModel<S>& model, Mask proposition) {
    require_in_frame(model.frame(), proposition, "proposition");
    S p(0);
    for (const auto& h : model.hypotheses())
        if (h.image != 0 && is_subset(h.image, proposition)) p += h.probability;
    return p;
}

// Learning that L* holds: every image M(H) becomes M(H) ∩ L*.
template <class S>
HypothesisModel<S> data_condition_model(const HypothesisModel<S>& model, Mask evidence,
                                        double tol = kDefaultTolerance) {
    require_in_frame(model.frame(), evidence, "conditioning proposition");
    if (evidence == 0) throw InvalidInput("cannot condition on the empty proposition");
    auto hypotheses = model.hypotheses();
    for (auto& h : hypotheses) h.image &= evidence;
    return HypothesisModel<S>(model.frame(), std::move(hypotheses), tol);
}

// Restricting to the hypotheses that prove L*: L ↦ P(⊢ L ∧ L*) / P(⊢ L*).
template <class S>
SetFunction<S> source_condition(const HypothesisModel<S>& model, Mask evidence, double tol = kDefaultTolerance) {
    const S denom = provability_probability(model, evidence);
    if (is_zero(denom, tol))
        throw ZeroBelief("source conditioning on " + model.frame().format(evidence) + ": belief is zero", evidence);
    std::vector<S> values(model.frame().lattice_size());
    for (Mask l = 0; l < values.size(); ++l) values[l] = provability_probability(model, l & evidence) / denom;
    return SetFunction<S>(model.frame(), std::move(values));
}

// Every non-contradictory hypothesis proves a single world.
template <class S>
bool is_probabilistic_collapse(const HypothesisModel<S>& model) {
    for (const auto& h : model.hypotheses())
        if (h.image != 0 && cardinality(h.image) != 1) return false;
    return true;
}

// bel(A ∪ B) = bel(A) + bel(B) for all disjoint A, B: the induced belief is a
// (possibly subnormal) probability.
template <class S>
bool induced_belief_is_additive(const HypothesisModel<S>& model, double tol = kDefaultTolerance) {
    const auto bel = belief(induced_bba(model, tol));
    const Mask full = model.frame().full();
    for (Mask a = 0; a <= full; ++a) {
        const Mask rest = full & ~a;
        bool ok = true;
        for_each_submask(rest, [&](Mask b) {
            if (ok && !approx_equal(S(bel[a | b]), S(bel[a] + bel[b]), tol)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace beliefrev
