#pragma once

// The 4-element worked instance used across the suites, and small helpers.

#include <string>
#include <vector>

#include "beliefrev/alternatives.hpp"

namespace fixtures {

using namespace beliefrev;

inline Frame abcd() { return Frame({"a", "b", "c", "d"}); }

inline Mask set(const Frame& f, const std::vector<std::string>& names) { return f.mask_of(names); }

template <class S>
S num(const char* text) {
    return parse_scalar<S>(text);
}

template <class S>
MassFunction<S> mass(const Frame& f, const std::vector<std::pair<std::vector<std::string>, const char*>>& entries) {
    std::vector<std::pair<Mask, S>> list;
    for (const auto& [names, value] : entries) list.emplace_back(f.mask_of(names), num<S>(value));
    return MassFunction<S>::make(f, list);
}

inline Partition halves() {
    const Frame f = abcd();
    return Partition(f, {set(f, {"a", "b"}), set(f, {"c", "d"})});
}

// m1 = {a}:0.3, {a,b}:0.2, {b,c}:0.3, {c,d}:0.2
template <class S>
MassFunction<S> worked_m1() {
    return mass<S>(abcd(), {{{"a"}, "0.3"}, {{"a", "b"}, "0.2"}, {{"b", "c"}, "0.3"}, {{"c", "d"}, "0.2"}});
}

// m2 = {a,b}:0.5, {c,d}:0.3, Ω:0.2
template <class S>
MassFunction<S> worked_m2() {
    return mass<S>(abcd(), {{{"a", "b"}, "0.5"}, {{"c", "d"}, "0.3"}, {{"a", "b", "c", "d"}, "0.2"}});
}

template <class S>
MassFunction<S> worked_geometric_expected() {
    return mass<S>(abcd(), {{{"a"}, "0.3"}, {{"a", "b"}, "0.2"}, {{"b", "c"}, "0.2"}, {{"c", "d"}, "0.3"}});
}

template <class S>
MassFunction<S> worked_dempster_expected() {
    return mass<S>(abcd(), {{{"a"}, "0.1875"},
                            {{"b"}, "0.1875"},
                            {{"a", "b"}, "0.125"},
                            {{"b", "c"}, "0.2"},
                            {{"c"}, "0.18"},
                            {{"c", "d"}, "0.12"}});
}

}  // namespace fixtures
