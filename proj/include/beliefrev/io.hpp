#pragma once

// JSON documents shared by the command-line tool.
//
//   frame:      ["a", "b", "c"]
//   set:        ["a", "c"]            (∅ is [])
//   partition:  {"frame": [...], "atoms": [[...], ...]}
//               or {"frame": [...], "sets": [[...], ...]} for the coarsest
//               subalgebra containing the listed sets
//   mass:       {"frame": [...], "masses": [{"set": [...], "mass": "0.3"}, ...]}
//               or a bare list of entries when the frame is supplied separately
//   model:      {"frame": [...], "hypotheses": [{"label": "H1", "p": "0.6", "image": [...]}]}
//
// Masses are written as decimal strings (exact fractions "p/q" in rational
// mode when no terminating decimal exists) in ascending bitmask order.

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "beliefrev/constraints.hpp"
#include "beliefrev/jeffrey.hpp"
#include "beliefrev/provability.hpp"

namespace beliefrev::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw InvalidInput(where + ": " + what);
}

inline Json parse_document(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(where, e.what());
    }
}

inline Frame frame_from_json(const Json& j, const std::string& where) {
    const Json& list = j.is_object() && j.contains("frame") ? j.at("frame") : j;
    if (!list.is_array()) fail(where, "frame must be a list of element names");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (!list[i].is_string()) fail(where + "[" + std::to_string(i) + "]", "frame element must be a string");
        labels.push_back(list[i].get<std::string>());
    }
    try {
        return Frame(std::move(labels));
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
}

inline Json to_json(const Frame& frame) { return Json(frame.labels()); }

inline Mask set_from_json(const Frame& frame, const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "set must be a list of element names");
    Mask m = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_string()) fail(at, "set element must be a string");
        try {
            m |= Mask{1} << frame.index_of(j[i].get<std::string>());
        } catch (const InvalidInput& e) {
            fail(at, e.what());
        }
    }
    return m;
}

inline Json set_to_json(const Frame& frame, Mask m) { return Json(frame.names_of(m)); }

// "a,b,c", "{a,b}" or "" / "{}" for ∅.
Mask parse_set_text(const Frame& frame, const std::string& text);

// Uses the document's own frame when present, else `fallback`.
inline Frame document_frame(const Json& j, const std::optional<Frame>& fallback, const std::string& where) {
    if (j.is_object() && j.contains("frame")) {
        Frame own = frame_from_json(j.at("frame"), where + ".frame");
        if (fallback && !(own == *fallback)) fail(where, "frame differs from the frame of the other inputs");
        return own;
    }
    if (!fallback) fail(where, "no frame given (add a \"frame\" field or pass --frame)");
    return *fallback;
}

inline Partition partition_from_json(const Json& j, const std::optional<Frame>& fallback, const std::string& where) {
    if (!j.is_object()) fail(where, "partition document must be an object");
    const Frame frame = document_frame(j, fallback, where);
    const bool has_atoms = j.contains("atoms");
    const std::string key = has_atoms ? "atoms" : "sets";
    if (!j.contains(key)) fail(where, "partition needs \"atoms\" or \"sets\"");
    const Json& list = j.at(key);
    if (!list.is_array()) fail(where + "." + key, "must be a list of sets");
    std::vector<Mask> sets;
    for (std::size_t i = 0; i < list.size(); ++i)
        sets.push_back(set_from_json(frame, list[i], where + "." + key + "[" + std::to_string(i) + "]"));
    try {
        if (has_atoms) return Partition(frame, std::move(sets));
        return coarsest_subalgebra(frame, sets);
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
}

inline Json to_json(const Partition& p) {
    Json atoms = Json::array();
    for (Mask a : p.atoms()) atoms.push_back(set_to_json(p.frame(), a));
    return Json{{"frame", to_json(p.frame())}, {"atoms", atoms}};
}

template <class S>
S scalar_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
        if (j.is_number()) return parse_scalar<S>(j.dump());
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
    fail(where, "expected a number or a decimal string");
}

template <class S>
MassFunction<S> mass_from_json(const Json& j, const std::optional<Frame>& fallback, const std::string& where,
                               double tol = kDefaultTolerance) {
    const Frame frame = document_frame(j, fallback, where);
    const Json* list = &j;
    std::string list_where = where;
    bool subnormal = false;
    if (j.is_object()) {
        if (!j.contains("masses")) fail(where, "mass document needs a \"masses\" list");
        list = &j.at("masses");
        list_where += ".masses";
        subnormal = j.value("status", std::string("normal")) == "subnormal";
    }
    if (!list->is_array()) fail(list_where, "must be a list of {set, mass} entries");
    typename MassFunction<S>::Map masses;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const std::string at = list_where + "[" + std::to_string(i) + "]";
        const Json& e = (*list)[i];
        if (!e.is_object() || !e.contains("set") || !e.contains("mass")) fail(at, "entry needs \"set\" and \"mass\"");
        const Mask set = set_from_json(frame, e.at("set"), at + ".set");
        if (masses.count(set)) fail(at + ".set", "duplicate focal set " + frame.format(set));
        masses.emplace(set, scalar_from_json<S>(e.at("mass"), at + ".mass"));
    }
    try {
        return subnormal ? MassFunction<S>::allow_subnormal(frame, std::move(masses), tol)
                         : MassFunction<S>::from_map(frame, std::move(masses), tol);
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
}

template <class S>
Json to_json(const MassFunction<S>& m) {
    Json entries = Json::array();
    for (const auto& [set, v] : m.focal())
        entries.push_back(Json{{"set", set_to_json(m.frame(), set)}, {"mass", format_scalar(v)}});
    return Json{{"frame", to_json(m.frame())}, {"status", to_string(m.status())}, {"masses", entries}};
}

template <class S>
Json to_json(const SetFunction<S>& f, const std::string& value_name = "value") {
    Json rows = Json::array();
    for (Mask a = 0; a < f.values().size(); ++a)
        rows.push_back(Json{{"set", set_to_json(f.frame(), a)}, {value_name, format_scalar(f[a])}});
    return Json{{"frame", to_json(f.frame())}, {"values", rows}};
}

template <class S>
HypothesisModel<S> model_from_json(const Json& j, const std::optional<Frame>& fallback, const std::string& where,
                                   double tol = kDefaultTolerance) {
    if (!j.is_object() || !j.contains("hypotheses")) fail(where, "model document needs a \"hypotheses\" list");
    const Frame frame = document_frame(j, fallback, where);
    const Json& list = j.at("hypotheses");
    if (!list.is_array()) fail(where + ".hypotheses", "must be a list");
    std::vector<Hypothesis<S>> hs;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = where + ".hypotheses[" + std::to_string(i) + "]";
        const Json& e = list[i];
        if (!e.is_object() || !e.contains("p") || !e.contains("image")) fail(at, "entry needs \"p\" and \"image\"");
        Hypothesis<S> h{e.value("label", "H" + std::to_string(i + 1)), scalar_from_json<S>(e.at("p"), at + ".p"),
                        set_from_json(frame, e.at("image"), at + ".image")};
        hs.push_back(std::move(h));
    }
    try {
        return HypothesisModel<S>(frame, std::move(hs), tol);
    } catch (const InvalidInput& e) {
        fail(where, e.what());
    }
}

template <class S>
Json to_json(const HypothesisModel<S>& model) {
    Json hs = Json::array();
    for (const auto& h : model.hypotheses())
        hs.push_back(Json{{"label", h.label},
                          {"p", format_scalar(h.probability)},
                          {"image", set_to_json(model.frame(), h.image)}});
    return Json{{"frame", to_json(model.frame())}, {"hypotheses", hs}};
}

template <class S>
Json to_json(const ConstraintReport<S>& r, const Frame& frame) {
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back(Json{{"constraint", w.constraint},
                                 {"x", set_to_json(frame, w.x)},
                                 {"y", set_to_json(frame, w.y)},
                                 {"block", set_to_json(frame, w.block)},
                                 {"lhs", format_scalar(w.lhs)},
                                 {"rhs", format_scalar(w.rhs)},
                                 {"residual", format_scalar(w.residual)}});
    return Json{{"constraint", r.id},
                {"pass", r.pass},
                {"max_violation", format_scalar(r.max_violation)},
                {"checked", r.checked},
                {"skipped", r.skipped},
                {"witnesses", witnesses}};
}

template <class S>
Json to_json(const std::vector<FallbackEvent<S>>& events, const Frame& frame) {
    Json out = Json::array();
    for (const auto& e : events)
        out.push_back(Json{{"block", set_to_json(frame, e.block)},
                           {"orphaned_mass", format_scalar(e.orphaned_mass)},
                           {"zero_plausibility", e.zero_plausibility},
                           {"reassigned", e.reassigned}});
    return out;
}

// Human-readable tables.
template <class S>
void write_table(std::ostream& os, const MassFunction<S>& m) {
    os << "status: " << to_string(m.status()) << "\n";
    for (const auto& [set, v] : m.focal()) os << "  " << m.frame().format(set) << "\t" << format_scalar(v) << "\n";
}

template <class S>
void write_table(std::ostream& os, const ConstraintReport<S>& r, const Frame& frame) {
    os << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  max violation " << format_scalar(r.max_violation)
       << "  (" << r.checked << " checked";
    if (r.skipped) os << ", " << r.skipped << " skipped";
    os << ")\n";
    for (const auto& w : r.witnesses)
        os << "    " << w.constraint << "  X=" << frame.format(w.x) << " Y=" << frame.format(w.y)
           << " B=" << frame.format(w.block) << "  " << format_scalar(w.lhs) << " vs " << format_scalar(w.rhs)
           << "\n";
}

}  // namespace beliefrev::io
