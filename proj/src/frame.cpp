#include "beliefrev/frame.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace beliefrev {

Frame::Frame(std::vector<std::string> labels) {
    if (labels.empty()) throw InvalidInput("frame must have at least one element");
    if (labels.size() > kMaxSize)
        throw InvalidInput("frame has " + std::to_string(labels.size()) + " elements; the maximum is " +
                           std::to_string(kMaxSize));
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw InvalidInput("frame labels must be nonempty");
        if (!seen.insert(l).second) throw InvalidInput("duplicate frame label '" + l + "'");
    }
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

std::size_t Frame::index_of(std::string_view name) const {
    const auto& ls = *labels_;
    const auto it = std::find(ls.begin(), ls.end(), name);
    if (it == ls.end()) throw InvalidInput("unknown frame element '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - ls.begin());
}

Mask Frame::mask_of(std::span<const std::string> names) const {
    Mask m = 0;
    for (const auto& n : names) m |= Mask{1} << index_of(n);
    return m;
}

std::vector<std::string> Frame::names_of(Mask m) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (m & (Mask{1} << i)) out.push_back((*labels_)[i]);
    return out;
}

std::string Frame::format(Mask m) const {
    std::string s = "{";
    bool first = true;
    for (const auto& n : names_of(m)) {
        if (!first) s += ',';
        s += n;
        first = false;
    }
    return s + "}";
}

void require_in_frame(const Frame& frame, Mask m, std::string_view what) {
    if (!frame.contains(m))
        throw InvalidInput(std::string(what) + " has elements outside the " + std::to_string(frame.size()) +
                           "-element frame");
}

struct Partition::ClassCache {
    std::mutex mutex;
    std::unordered_map<Mask, std::vector<Mask>> by_upper;
};

Partition::Partition(Frame frame, std::vector<Mask> atoms)
    : frame_(std::move(frame)), atoms_(std::move(atoms)), classes_(std::make_shared<ClassCache>()) {
    if (atoms_.empty()) throw InvalidInput("partition must have at least one atom");
    Mask covered = 0;
    for (Mask a : atoms_) {
        if (a == 0) throw InvalidInput("partition atoms must be nonempty");
        require_in_frame(frame_, a, "partition atom");
        if (covered & a) throw InvalidInput("partition atoms overlap at " + frame_.format(covered & a));
        covered |= a;
    }
    if (covered != frame_.full())
        throw InvalidInput("partition atoms do not cover the frame; missing " + frame_.format(frame_.full() & ~covered));
    std::sort(atoms_.begin(), atoms_.end());

    atom_of_element_.resize(frame_.size());
    for (Mask a : atoms_)
        for (std::size_t i = 0; i < frame_.size(); ++i)
            if (a & (Mask{1} << i)) atom_of_element_[i] = a;
}

Partition Partition::trivial(const Frame& frame) { return Partition(frame, {frame.full()}); }

Partition Partition::discrete(const Frame& frame) {
    std::vector<Mask> atoms;
    for (std::size_t i = 0; i < frame.size(); ++i) atoms.push_back(Mask{1} << i);
    return Partition(frame, std::move(atoms));
}

Mask Partition::upper(Mask a) const {
    require_in_frame(frame(), a, "subset");
    Mask u = 0;
    while (a) {
        const int i = std::countr_zero(a);
        u |= atom_of_element_[static_cast<std::size_t>(i)];
        a &= a - 1;
    }
    return u;
}

bool Partition::is_atom(Mask x) const {
    return std::binary_search(atoms().begin(), atoms().end(), x);
}

const std::vector<Mask>& Partition::class_of(Mask a) const {
    if (a == 0) throw InvalidInput("the empty set has no class (its class is {∅})");
    const Mask u = upper(a);

    std::lock_guard lock(classes_->mutex);
    if (const auto it = classes_->by_upper.find(u); it != classes_->by_upper.end()) return it->second;

    std::vector<Mask> members;
    for_each_submask(u, [&](Mask x) {
        if (x != 0 && upper(x) == u) members.push_back(x);
    });
    std::sort(members.begin(), members.end());
    return classes_->by_upper.emplace(u, std::move(members)).first->second;
}

Mask upper_approximation(Mask a, const Partition& partition) { return partition.upper(a); }

const std::vector<Mask>& class_of(Mask a, const Partition& partition) { return partition.class_of(a); }

Partition coarsest_subalgebra(const Frame& frame, std::span<const Mask> sets) {
    for (Mask s : sets) require_in_frame(frame, s, "set");
    std::map<std::vector<bool>, Mask> blocks;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const Mask bit = Mask{1} << i;
        std::vector<bool> signature;
        signature.reserve(sets.size());
        for (Mask s : sets) signature.push_back((s & bit) != 0);
        blocks[signature] |= bit;
    }
    std::vector<Mask> atoms;
    for (const auto& [sig, atom] : blocks) atoms.push_back(atom);
    return Partition(frame, std::move(atoms));
}

std::vector<Mask> subalgebra_elements(const Partition& partition) {
    const auto& atoms = partition.atoms();
    const std::size_t k = atoms.size();
    std::vector<Mask> out;
    out.reserve(std::size_t{1} << k);
    for (std::size_t pick = 0; pick < (std::size_t{1} << k); ++pick) {
        Mask u = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (pick & (std::size_t{1} << j)) u |= atoms[j];
        out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace beliefrev
