#pragma once

// Independent reference computations. Nothing here calls the transforms, the
// partition class cache or the rule implementations it is used to check.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "beliefrev/mass.hpp"

namespace oracles {

using beliefrev::Mask;
using beliefrev::MassFunction;
using beliefrev::Rational;

// Atom lists of every partition of an n-element frame, via restricted growth
// strings.
inline std::vector<std::vector<Mask>> all_partitions(std::size_t n) {
    std::vector<std::vector<Mask>> out;
    std::vector<std::size_t> label(n, 0);
    while (true) {
        std::size_t blocks = 0;
        for (auto l : label) blocks = std::max(blocks, l + 1);
        std::vector<Mask> atoms(blocks, 0);
        for (std::size_t i = 0; i < n; ++i) atoms[label[i]] |= Mask{1} << i;
        out.push_back(std::move(atoms));
        std::size_t i = n;
        while (i-- > 1) {
            std::size_t max_prev = 0;
            for (std::size_t j = 0; j < i; ++j) max_prev = std::max(max_prev, label[j]);
            if (label[i] <= max_prev) {
                ++label[i];
                for (std::size_t j = i + 1; j < n; ++j) label[j] = 0;
                break;
            }
        }
        if (i == 0) break;
    }
    return out;
}

// Σ over every nonempty X ⊆ A, scanning the whole lattice.
template <class S>
S belief(const MassFunction<S>& m, Mask a) {
    S s(0);
    for (Mask x = 1; x <= m.frame().full(); ++x)
        if ((x & ~a) == 0) s += m.mass(x);
    return s;
}

template <class S>
S plausibility(const MassFunction<S>& m, Mask a) {
    S s(0);
    for (Mask x = 1; x <= m.frame().full(); ++x)
        if (x & a) s += m.mass(x);
    return s;
}

// Union of the atoms meeting `a`, by scanning the atom list.
inline Mask upper(Mask a, const std::vector<Mask>& atoms) {
    Mask u = 0;
    for (Mask b : atoms)
        if (b & a) u |= b;
    return u;
}

// Every nonempty X of the frame with the same upper approximation as `a`.
inline std::vector<Mask> class_of(Mask a, const std::vector<Mask>& atoms, Mask full) {
    std::vector<Mask> out;
    const Mask u = upper(a, atoms);
    for (Mask x = 1; x <= full; ++x)
        if (upper(x, atoms) == u) out.push_back(x);
    return out;
}

// Dempster-conditioned masses by scanning the lattice: Σ_{X ∩ B = Z} m(X) / pl(B).
template <class S>
std::map<Mask, S> dempster_conditional(const MassFunction<S>& m, Mask b) {
    const S pl = plausibility(m, b);
    std::map<Mask, S> out;
    if (pl == 0) return out;
    for (Mask x = 1; x <= m.frame().full(); ++x)
        if (m.mass(x) != 0 && (x & b)) out[x & b] += m.mass(x) / pl;
    return out;
}

// Geometrically conditioned masses: m(Z) / bel(B) for nonempty Z ⊆ B.
template <class S>
std::map<Mask, S> geometric_conditional(const MassFunction<S>& m, Mask b) {
    const S bel = belief(m, b);
    std::map<Mask, S> out;
    if (bel == 0) return out;
    for (Mask z = 1; z <= m.frame().full(); ++z)
        if ((z & ~b) == 0 && m.mass(z) != 0) out[z] = m.mass(z) / bel;
    return out;
}

// Exact solution of a linear system over the rationals, by incremental
// reduction to row-echelon form.
class LinearSystem {
public:
    explicit LinearSystem(std::size_t unknowns) : n_(unknowns) {}

    void add(std::vector<Rational> coeffs, Rational rhs) {
        for (const auto& row : rows_) {
            const Rational f = coeffs[row.pivot];
            if (f == 0) continue;
            for (std::size_t k = 0; k < n_; ++k)
                if (row.coeffs[k] != 0) coeffs[k] -= f * row.coeffs[k];
            rhs -= f * row.rhs;
        }
        std::size_t pivot = n_;
        for (std::size_t k = 0; k < n_; ++k)
            if (coeffs[k] != 0) {
                pivot = k;
                break;
            }
        if (pivot == n_) {
            if (rhs != 0) inconsistent_ = true;
            return;
        }
        const Rational p = coeffs[pivot];
        for (auto& c : coeffs) c /= p;
        rhs /= p;
        for (auto& row : rows_) {
            const Rational f = row.coeffs[pivot];
            if (f == 0) continue;
            for (std::size_t k = 0; k < n_; ++k)
                if (coeffs[k] != 0) row.coeffs[k] -= f * coeffs[k];
            row.rhs -= f * rhs;
        }
        rows_.push_back({pivot, std::move(coeffs), std::move(rhs)});
    }

    bool consistent() const { return !inconsistent_; }
    bool unique() const { return !inconsistent_ && rows_.size() == n_; }

    // Valid when unique(): rows are fully reduced.
    std::vector<Rational> solution() const {
        std::vector<Rational> x(n_);
        for (const auto& row : rows_) x[row.pivot] = row.rhs;
        return x;
    }

private:
    struct Row {
        std::size_t pivot;
        std::vector<Rational> coeffs;
        Rational rhs;
    };
    std::size_t n_;
    std::vector<Row> rows_;
    bool inconsistent_ = false;
};

enum class Family { geometric, dempster };

struct ConstraintSolution {
    bool consistent = false;
    bool unique = false;
    std::map<Mask, Rational> masses;  // nonempty sets only
};

// Solves C1 together with C3F (geometric) or C3R (Dempster) for m3, as a
// linear system in the 2^n - 1 unknown masses of nonempty sets:
//   C1:  Σ_{∅≠Z⊆X} m3(Z) = bel2(X) for every X in the subalgebra
//   C3:  S3(X) S1(Y) - S3(Y) S1(X) = 0 for B(X) = B(Y), and S3(Y) = 0 when S1(Y) = 0
inline ConstraintSolution solve_constraints(const MassFunction<Rational>& m1, const std::vector<Mask>& atoms,
                                            const MassFunction<Rational>& m2, Family family) {
    const Mask full = m1.frame().full();
    const std::size_t unknowns = full;  // index = mask - 1
    LinearSystem system(unknowns);

    // Subalgebra elements: all unions of atoms.
    std::vector<Mask> algebra;
    for (std::size_t pick = 0; pick < (std::size_t{1} << atoms.size()); ++pick) {
        Mask u = 0;
        for (std::size_t j = 0; j < atoms.size(); ++j)
            if (pick & (std::size_t{1} << j)) u |= atoms[j];
        algebra.push_back(u);
    }
    for (Mask x : algebra) {
        std::vector<Rational> c(unknowns, Rational(0));
        for (Mask z = 1; z <= full; ++z)
            if ((z & ~x) == 0) c[z - 1] = 1;
        system.add(std::move(c), belief(m2, x));
    }

    // Row for S3(x): indicator of {Z ⊆ x, B(Z) = B(x)}.
    auto support_row = [&](Mask x) {
        std::vector<Rational> c(unknowns, Rational(0));
        const Mask bx = upper(x, atoms);
        for (Mask z = 1; z <= full; ++z)
            if ((z & ~x) == 0 && upper(z, atoms) == bx) c[z - 1] = 1;
        return c;
    };
    auto support_value = [&](const std::map<Mask, Rational>& w, Mask x) {
        Rational s(0);
        const Mask bx = upper(x, atoms);
        for (const auto& [z, v] : w)
            if (z != 0 && (z & ~x) == 0 && upper(z, atoms) == bx) s += v;
        return s;
    };

    for (Mask block : algebra) {
        if (block == 0) continue;
        const auto w1 = family == Family::geometric ? geometric_conditional(m1, block) : dempster_conditional(m1, block);
        const auto members = class_of(block, atoms, full);
        for (Mask y : members) {
            const Rational s1y = support_value(w1, y);
            const auto row_y = support_row(y);
            if (s1y == 0) {
                system.add(row_y, Rational(0));
                continue;
            }
            for (Mask x : members) {
                if (x == y) continue;
                const Rational s1x = support_value(w1, x);
                auto row_x = support_row(x);
                std::vector<Rational> c(unknowns);
                for (std::size_t k = 0; k < unknowns; ++k) c[k] = row_x[k] * s1y - row_y[k] * s1x;
                system.add(std::move(c), Rational(0));
            }
        }
    }

    ConstraintSolution out;
    out.consistent = system.consistent();
    out.unique = system.unique();
    if (out.unique) {
        const auto x = system.solution();
        for (std::size_t k = 0; k < unknowns; ++k)
            if (x[k] != 0) out.masses[static_cast<Mask>(k + 1)] = x[k];
    }
    return out;
}

}  // namespace oracles
