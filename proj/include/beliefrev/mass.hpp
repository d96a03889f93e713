#pragma once

// Basic belief assignments and the evidential functions derived from them.
//
// Masses are stored sparsely (focal set -> mass); bel and pl are computed on
// dense 2^n arrays with the subset-sum (zeta) transform and inverted with the
// Möbius transform. bel excludes the empty set, so an unnormalized mass
// function has bel(Ω) = 1 - m(∅).

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beliefrev/frame.hpp"
#include "beliefrev/scalar.hpp"

namespace beliefrev {

// Subnormal (total < 1) values only come out of the strict Jeffrey fallback.
enum class MassStatus { normal, subnormal };

inline const char* to_string(MassStatus s) { return s == MassStatus::normal ? "normal" : "subnormal"; }

// In-place sum over subsets: f[A] <- Σ_{X ⊆ A} f[X]. O(n 2^n).
template <class S>
void subset_zeta(std::span<S> f) {
    const std::size_t size = f.size();
    for (std::size_t bit = 1; bit < size; bit <<= 1)
        for (std::size_t a = 0; a < size; ++a)
            if (a & bit) f[a] += f[a ^ bit];
}

// Inverse of subset_zeta.
template <class S>
void subset_mobius(std::span<S> f) {
    const std::size_t size = f.size();
    for (std::size_t bit = 1; bit < size; bit <<= 1)
        for (std::size_t a = 0; a < size; ++a)
            if (a & bit) f[a] -= f[a ^ bit];
}

template <class S>
class MassFunction {
public:
    using Map = std::map<Mask, S>;

    // Rejects duplicate focal sets, masks outside the frame, negative masses
    // and totals different from 1.
    static MassFunction make(const Frame& frame, const std::vector<std::pair<Mask, S>>& entries,
                             double tol = kDefaultTolerance) {
        Map masses;
        for (const auto& [set, mass] : entries) {
            if (masses.count(set)) throw InvalidInput("duplicate focal set " + frame.format(set));
            masses.emplace(set, mass);
        }
        return from_map(frame, std::move(masses), tol);
    }

    static MassFunction from_map(const Frame& frame, Map masses, double tol = kDefaultTolerance) {
        return build(frame, std::move(masses), tol, false);
    }

    // Accepts totals below 1 and flags them subnormal.
    static MassFunction allow_subnormal(const Frame& frame, Map masses, double tol = kDefaultTolerance) {
        return build(frame, std::move(masses), tol, true);
    }

    static MassFunction vacuous(const Frame& frame) { return categorical(frame, frame.full()); }

    static MassFunction categorical(const Frame& frame, Mask set) {
        require_in_frame(frame, set, "categorical focal set");
        return MassFunction(frame, Map{{set, S(1)}}, MassStatus::normal);
    }

    const Frame& frame() const noexcept { return frame_; }
    const Map& focal() const noexcept { return masses_; }
    MassStatus status() const noexcept { return status_; }
    bool is_normal() const noexcept { return status_ == MassStatus::normal; }

    S mass(Mask set) const {
        const auto it = masses_.find(set);
        return it == masses_.end() ? S(0) : it->second;
    }
    S empty_mass() const { return mass(0); }

    S total() const {
        S t(0);
        for (const auto& [set, m] : masses_) t += m;
        return t;
    }

    std::vector<S> dense() const {
        std::vector<S> out(frame_.lattice_size(), S(0));
        for (const auto& [set, m] : masses_) out[set] = m;
        return out;
    }

    friend bool operator==(const MassFunction& a, const MassFunction& b) {
        return a.frame_ == b.frame_ && a.status_ == b.status_ && a.masses_ == b.masses_;
    }

private:
    MassFunction(Frame frame, Map masses, MassStatus status)
        : frame_(std::move(frame)), masses_(std::move(masses)), status_(status) {}

    static MassFunction build(const Frame& frame, Map masses, double tol, bool subnormal_ok) {
        S total(0);
        for (auto it = masses.begin(); it != masses.end();) {
            require_in_frame(frame, it->first, "focal set");
            if (is_negative(it->second, tol))
                throw InvalidInput("negative mass " + format_scalar(it->second) + " on " + frame.format(it->first));
            if (it->second <= 0) {
                it = masses.erase(it);
                continue;
            }
            total += it->second;
            ++it;
        }
        MassStatus status = MassStatus::normal;
        if (!approx_equal(total, S(1), tol)) {
            if (!subnormal_ok || total > 1)
                throw InvalidInput("masses sum to " + format_scalar(total) + ", expected 1");
            status = MassStatus::subnormal;
        }
        return MassFunction(frame, std::move(masses), status);
    }

    Frame frame_;
    Map masses_;
    MassStatus status_;
};

// A real-valued function on the full subset lattice.
template <class S>
class SetFunction {
public:
    SetFunction(Frame frame, std::vector<S> values) : frame_(std::move(frame)), values_(std::move(values)) {
        if (values_.size() != frame_.lattice_size())
            throw InvalidInput("set function needs " + std::to_string(frame_.lattice_size()) + " values, got " +
                               std::to_string(values_.size()));
    }

    const Frame& frame() const noexcept { return frame_; }
    const std::vector<S>& values() const noexcept { return values_; }
    const S& operator[](Mask set) const { return values_.at(set); }
    const S& at(Mask set) const { return values_.at(set); }

    friend bool operator==(const SetFunction&, const SetFunction&) = default;

private:
    Frame frame_;
    std::vector<S> values_;
};

template <class S>
bool approx_equal(const MassFunction<S>& a, const MassFunction<S>& b, double tol) {
    if (!(a.frame() == b.frame())) return false;
    for (const auto& [set, m] : a.focal())
        if (!approx_equal(m, b.mass(set), tol)) return false;
    for (const auto& [set, m] : b.focal())
        if (!approx_equal(m, a.mass(set), tol)) return false;
    return true;
}

template <class S>
bool approx_equal(const SetFunction<S>& a, const SetFunction<S>& b, double tol) {
    if (!(a.frame() == b.frame())) return false;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        if (!approx_equal(a.values()[i], b.values()[i], tol)) return false;
    return true;
}

// bel(A) = Σ_{∅ ≠ X ⊆ A} m(X).
template <class S>
SetFunction<S> belief(const MassFunction<S>& m) {
    auto f = m.dense();
    f[0] = S(0);
    subset_zeta(std::span<S>(f));
    return SetFunction<S>(m.frame(), std::move(f));
}

// pl(A) = bel(Ω) - bel(¬A) = Σ_{X ∩ A ≠ ∅} m(X).
template <class S>
SetFunction<S> plausibility(const MassFunction<S>& m) {
    const auto bel = belief(m);
    const Mask full = m.frame().full();
    std::vector<S> pl(bel.values().size());
    for (Mask a = 0; a <= full; ++a) pl[a] = bel[full] - bel[full & ~a];
    return SetFunction<S>(m.frame(), std::move(pl));
}

// Möbius inverse of a set function together with the subsets whose inverse
// is negative. Used to report whether a rule's output is a belief function.
template <class S>
struct MobiusReport {
    std::vector<S> masses;         // dense, indexed by mask; masses[0] = 1 - b(Ω)
    std::vector<Mask> negative;    // ascending
    bool is_belief_function() const { return negative.empty(); }
};

template <class S>
MobiusReport<S> mobius_check(const SetFunction<S>& b, double tol = kDefaultTolerance) {
    if (!is_zero(b[0], tol)) throw InvalidInput("set function is nonzero on the empty set: " + format_scalar(b[0]));
    MobiusReport<S> report;
    report.masses = b.values();
    report.masses[0] = S(0);
    subset_mobius(std::span<S>(report.masses));
    report.masses[0] = S(1) - b[b.frame().full()];
    for (Mask a = 0; a < report.masses.size(); ++a)
        if (is_negative(report.masses[a], tol)) report.negative.push_back(a);
    return report;
}

// Recovers the mass function whose belief is `b`, putting 1 - b(Ω) on ∅.
template <class S>
MassFunction<S> mass_from_belief(const SetFunction<S>& b, double tol = kDefaultTolerance) {
    const auto report = mobius_check(b, tol);
    if (!report.is_belief_function()) {
        const Mask bad = report.negative.front();
        throw NotBeliefFunction("not a belief function: Möbius mass " + format_scalar(report.masses[bad]) + " on " +
                                    b.frame().format(bad),
                                bad);
    }
    typename MassFunction<S>::Map masses;
    for (Mask a = 0; a < report.masses.size(); ++a)
        if (report.masses[a] > 0) masses.emplace(a, report.masses[a]);
    return MassFunction<S>::from_map(b.frame(), std::move(masses), tol);
}

// m'(A) = m(A) / (1 - m(∅)) for A ≠ ∅, m'(∅) = 0.
template <class S>
MassFunction<S> normalize(const MassFunction<S>& m, double tol = kDefaultTolerance) {
    const S conflict = m.empty_mass();
    if (approx_equal(conflict, S(1), tol)) throw TotalConflict("cannot normalize: all mass is on the empty set");
    if (conflict == 0) return m;
    const S scale = S(1) - conflict;
    typename MassFunction<S>::Map masses;
    for (const auto& [set, v] : m.focal())
        if (set != 0) masses.emplace(set, v / scale);
    return MassFunction<S>::allow_subnormal(m.frame(), std::move(masses), tol);
}

// Every focal set (with mass beyond tolerance) is a singleton.
template <class S>
bool is_bayesian(const MassFunction<S>& m, double tol = kDefaultTolerance) {
    return std::all_of(m.focal().begin(), m.focal().end(),
                       [&](const auto& e) { return cardinality(e.first) == 1 || !is_positive(e.second, tol); });
}

}  // namespace beliefrev
