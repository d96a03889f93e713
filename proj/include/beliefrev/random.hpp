#pragma once

// Seeded random instances for property tests, the `gen` command and the
// C1-violation search. Masses are ratios of small integers so that the same
// instance is exact in rational mode.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "beliefrev/jeffrey.hpp"
#include "beliefrev/provability.hpp"

namespace beliefrev {

// Draws are taken as engine() % k so that sequences do not depend on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t k) { return engine_() % k; }
    bool chance(unsigned percent) { return below(100) < percent; }
    Mask bits(Mask within) { return static_cast<Mask>(engine_()) & within; }

private:
    std::mt19937_64 engine_;
};

struct GeneratorOptions {
    std::size_t frame_size = 4;
    std::size_t max_atoms = 0;       // 0: up to frame_size
    std::size_t m1_focal = 4;        // focal sets drawn for m1 (duplicates merge)
    std::size_t m2_focal = 3;
    unsigned weight_max = 9;
    unsigned empty_mass_percent = 0;  // chance that m1 puts mass on ∅
};

// Labels a, b, c, ...
inline Frame letter_frame(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
    return Frame(std::move(labels));
}

inline Partition random_partition(const Frame& frame, Rng& rng, std::size_t max_atoms = 0) {
    const std::size_t limit = max_atoms == 0 ? frame.size() : std::min(max_atoms, frame.size());
    const std::size_t k = 1 + rng.below(limit);
    std::vector<Mask> blocks(k, 0);
    for (std::size_t i = 0; i < frame.size(); ++i) blocks[rng.below(k)] |= Mask{1} << i;
    std::erase(blocks, Mask{0});
    return Partition(frame, std::move(blocks));
}

// Integer weights in [1, weight_max] on `count` draws from `candidates`,
// normalized to total 1.
template <class S>
MassFunction<S> random_mass_on(const Frame& frame, const std::vector<Mask>& candidates, std::size_t count,
                               unsigned weight_max, Rng& rng) {
    std::map<Mask, unsigned> weights;
    for (std::size_t i = 0; i < std::max<std::size_t>(count, 1); ++i)
        weights[candidates[rng.below(candidates.size())]] += 1 + static_cast<unsigned>(rng.below(weight_max));
    unsigned total = 0;
    for (const auto& [set, w] : weights) total += w;
    typename MassFunction<S>::Map masses;
    for (const auto& [set, w] : weights) masses.emplace(set, S(w) / S(total));
    return MassFunction<S>::from_map(frame, std::move(masses));
}

inline std::vector<Mask> nonempty_subsets(const Frame& frame) {
    std::vector<Mask> out;
    for (Mask m = 1; m <= frame.full(); ++m) out.push_back(m);
    return out;
}

inline std::vector<Mask> singletons(const Frame& frame) {
    std::vector<Mask> out;
    for (std::size_t i = 0; i < frame.size(); ++i) out.push_back(Mask{1} << i);
    return out;
}

template <class S>
MassFunction<S> random_mass(const Frame& frame, Rng& rng, std::size_t focal = 4, unsigned weight_max = 9,
                            unsigned empty_mass_percent = 0) {
    auto candidates = nonempty_subsets(frame);
    if (rng.chance(empty_mass_percent)) candidates.push_back(0);
    return random_mass_on<S>(frame, candidates, focal, weight_max, rng);
}

template <class S>
MassFunction<S> random_bayesian(const Frame& frame, Rng& rng, unsigned weight_max = 9) {
    return random_mass_on<S>(frame, singletons(frame), frame.size(), weight_max, rng);
}

template <class S>
MassFunction<S> random_on_subalgebra(const Partition& partition, Rng& rng, std::size_t focal = 3,
                                     unsigned weight_max = 9) {
    auto candidates = subalgebra_elements(partition);
    std::erase(candidates, Mask{0});
    return random_mass_on<S>(partition.frame(), candidates, focal, weight_max, rng);
}

// Bayesian on the subalgebra: focal sets are atoms.
template <class S>
MassFunction<S> random_on_atoms(const Partition& partition, Rng& rng, unsigned weight_max = 9) {
    return random_mass_on<S>(partition.frame(), partition.atoms(), partition.atom_count(), weight_max, rng);
}

template <class S>
struct Instance {
    Partition partition;
    MassFunction<S> m1;
    MassFunction<S> m2;
    const Frame& frame() const { return partition.frame(); }
};

template <class S>
Instance<S> random_instance(Rng& rng, const GeneratorOptions& opts = {}) {
    const Frame frame = letter_frame(opts.frame_size);
    Partition partition = random_partition(frame, rng, opts.max_atoms);
    auto m1 = random_mass<S>(frame, rng, opts.m1_focal, opts.weight_max, opts.empty_mass_percent);
    auto m2 = random_on_subalgebra<S>(partition, rng, opts.m2_focal, opts.weight_max);
    return {std::move(partition), std::move(m1), std::move(m2)};
}

// Hypotheses H1..Hk with integer weights. Images may repeat; with
// `singletons` every non-⊥ image is a single world.
template <class S>
HypothesisModel<S> random_model(const Frame& frame, Rng& rng, std::size_t hypotheses = 5, unsigned weight_max = 9,
                                bool singletons = false, unsigned empty_image_percent = 10) {
    std::vector<Hypothesis<S>> hs;
    S total(0);
    for (std::size_t i = 0; i < hypotheses; ++i) {
        Mask image = 0;
        if (!rng.chance(empty_image_percent)) {
            if (singletons) {
                image = Mask{1} << rng.below(frame.size());
            } else {
                while (image == 0) image = rng.bits(frame.full());
            }
        }
        const S w(1 + static_cast<unsigned>(rng.below(weight_max)));
        total += w;
        hs.push_back({"H" + std::to_string(i + 1), w, image});
    }
    for (auto& h : hs) h.probability /= total;
    return HypothesisModel<S>(frame, std::move(hs));
}

}  // namespace beliefrev
