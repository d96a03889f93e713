#pragma once

// Frames of discernment, subset bitmasks and partitions of a frame (the atoms
// of a Boolean subalgebra of its power set).

#include <bit>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beliefrev/errors.hpp"

namespace beliefrev {

inline int cardinality(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Calls f(sub) for every submask of `set`, including 0 and `set` itself, in
// decreasing numeric order.
template <class F>
void for_each_submask(Mask set, F&& f) {
    Mask sub = set;
    while (true) {
        f(sub);
        if (sub == 0) break;
        sub = (sub - 1) & set;
    }
}

class Frame {
public:
    static constexpr std::size_t kMaxSize = 24;

    explicit Frame(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_->size(); }
    std::size_t lattice_size() const noexcept { return std::size_t{1} << size(); }
    Mask full() const noexcept { return static_cast<Mask>(lattice_size() - 1); }
    bool contains(Mask m) const noexcept { return (m & ~full()) == 0; }

    const std::vector<std::string>& labels() const noexcept { return *labels_; }
    const std::string& label(std::size_t i) const { return labels_->at(i); }

    // Throws InvalidInput naming the unknown label.
    std::size_t index_of(std::string_view name) const;
    Mask mask_of(std::span<const std::string> names) const;
    std::vector<std::string> names_of(Mask m) const;

    // "{a,b}"; the empty set prints as "{}".
    std::string format(Mask m) const;

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> labels_;
};

// Throws InvalidInput if `m` has bits outside the frame.
void require_in_frame(const Frame& frame, Mask m, std::string_view what);

class Partition {
public:
    // Atoms must be nonempty, pairwise disjoint and cover the frame. They are
    // stored sorted by mask value.
    Partition(Frame frame, std::vector<Mask> atoms);

    // The partition {Ω}, whose algebra is {∅, Ω}.
    static Partition trivial(const Frame& frame);
    // The partition into singletons, whose algebra is the whole power set.
    static Partition discrete(const Frame& frame);

    const Frame& frame() const noexcept { return frame_; }
    const std::vector<Mask>& atoms() const noexcept { return atoms_; }
    std::size_t atom_count() const noexcept { return atoms_.size(); }

    Mask upper(Mask a) const;
    bool is_measurable(Mask x) const { return upper(x) == x; }
    bool is_atom(Mask x) const;

    // All nonempty subsets sharing the upper approximation of `a`, ascending.
    // Materialized on first request and cached; the reference stays valid for
    // the lifetime of any copy of this partition.
    const std::vector<Mask>& class_of(Mask a) const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.frame() == b.frame() && a.atoms() == b.atoms();
    }

private:
    struct ClassCache;

    Frame frame_;
    std::vector<Mask> atoms_;
    std::vector<Mask> atom_of_element_;
    std::shared_ptr<ClassCache> classes_;
};

Mask upper_approximation(Mask a, const Partition& partition);
const std::vector<Mask>& class_of(Mask a, const Partition& partition);

// Atoms are the classes of "belongs to exactly the same input sets".
Partition coarsest_subalgebra(const Frame& frame, std::span<const Mask> sets);

// All 2^k unions of the k atoms, ascending by mask value.
std::vector<Mask> subalgebra_elements(const Partition& partition);

}  // namespace beliefrev
