#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "coding.hpp"
#include "shadowing.hpp"
#include "space.hpp"

namespace zipshift {

// Insertion-ordered documents keep serializations canonical: identical inputs
// produce byte-identical output.
using Json = nlohmann::ordered_json;

// --- transition maps -------------------------------------------------------

inline Json tm_to_json(const TmPtr& tm) {
    Json j;
    j["s"] = tm->s_alphabet().names();
    j["z"] = tm->z_alphabet().names();
    Json tau = Json::object();
    for (SymbolId s = 0; s < tm->s_alphabet().size(); ++s)
        tau[tm->s_alphabet().name(s)] = tm->z_alphabet().name(tm->tau(s));
    j["tau"] = std::move(tau);
    return j;
}

inline TmPtr tm_from_json(const Json& j) {
    std::vector<std::string> s = j.at("s").get<std::vector<std::string>>();
    std::vector<std::string> z = j.at("z").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [key, val] : j.at("tau").items())
        pairs.emplace_back(key, val.get<std::string>());
    return new_transition_map(std::move(s), std::move(z), pairs);
}

inline Json system_to_json(const System& sys) {
    Json j;
    j["tm"] = tm_to_json(sys.tm);
    return j;
}

inline System system_from_json(const Json& j) { return make_system(tm_from_json(j.at("tm"))); }

// --- points and windows ----------------------------------------------------

inline Json point_to_json(const Point& p) {
    const SymbolSet& z = p.tm()->z_alphabet();
    const SymbolSet& s = p.tm()->s_alphabet();
    Json j;
    j["left_period"] = format_word(z, p.left_period());
    j["left_transient"] = format_word(z, p.left_transient());
    j["right_transient"] = format_word(s, p.right_transient());
    j["right_period"] = format_word(s, p.right_period());
    return j;
}

inline Point point_from_json(const TmPtr& tm, const Json& j) {
    return make_point(tm, j.at("left_period").get<std::string>(),
                      j.at("left_transient").get<std::string>(),
                      j.at("right_transient").get<std::string>(),
                      j.at("right_period").get<std::string>());
}

inline Json window_to_json(const Window& w) {
    Json j;
    j["lo"] = w.lo;
    Json syms = Json::array();
    for (long long i = w.lo; i <= w.hi(); ++i) {
        const SymbolSet& set = i < 0 ? w.tm->z_alphabet() : w.tm->s_alphabet();
        syms.push_back(set.name(w.at(i)));
    }
    j["symbols"] = std::move(syms);
    return j;
}

// --- cylinders and witnesses -----------------------------------------------

inline Json cylinder_to_json(const Cylinder& c) {
    Json arr = Json::array();
    for (auto [i, s] : c.constraints) {
        const SymbolSet& set = i < 0 ? c.tm->z_alphabet() : c.tm->s_alphabet();
        arr.push_back(Json{{"i", i}, {"s", set.name(s)}});
    }
    return Json{{"constraints", std::move(arr)}};
}

inline Cylinder cylinder_from_json(const TmPtr& tm, const Json& j) {
    std::vector<std::pair<long long, SymbolId>> cs;
    for (const auto& e : j.at("constraints")) {
        long long i = e.at("i").get<long long>();
        const SymbolSet& set = i < 0 ? tm->z_alphabet() : tm->s_alphabet();
        cs.emplace_back(i, set.id(e.at("s").get<std::string>()));
    }
    return make_cylinder(tm, cs);
}

inline Json witness_to_json(const SeparationWitness& w) {
    Json j;
    j["n"] = w.time;
    j["distance"] = to_frac(w.distance);
    j["branch_universal"] = w.branch_universal;
    return j;
}

// --- piecewise linear maps and partitions -----------------------------------

inline Json interval_to_json(const Interval& i) {
    return Json::array({to_frac(i.lo), to_frac(i.hi)});
}

inline Json pwl_to_json(const PwlMap& map) {
    Json branches = Json::array();
    for (const Branch& b : map.branches())
        branches.push_back(Json{{"domain", interval_to_json(b.domain)},
                                {"slope", to_frac(b.slope)},
                                {"offset", to_frac(b.offset)}});
    return Json{{"branches", std::move(branches)}};
}

inline PwlMap pwl_from_json(const Json& j) {
    std::vector<Branch> branches;
    for (const auto& e : j.at("branches")) {
        const auto& dom = e.at("domain");
        branches.push_back(Branch{
            Interval::open(parse_frac(dom.at(0).get<std::string>()),
                           parse_frac(dom.at(1).get<std::string>())),
            parse_frac(e.at("slope").get<std::string>()),
            parse_frac(e.at("offset").get<std::string>())});
    }
    return PwlMap(std::move(branches));
}

inline Json partition_to_json(const Partition& p) {
    Json arr = Json::array();
    for (const Interval& c : p.cells) arr.push_back(interval_to_json(c));
    return arr;
}

inline Partition partition_from_json(const Json& j) {
    std::vector<Rational> cuts;
    for (const auto& cell : j)
        cuts.push_back(parse_frac(cell.at(0).get<std::string>()));
    return partition_from_cuts(std::move(cuts));
}

inline Json scheme_to_json(const CodingScheme& scheme) {
    Json j;
    j["s"] = scheme.tm->s_alphabet().names();
    j["z"] = scheme.tm->z_alphabet().names();
    Json tau = Json::object();
    for (SymbolId s = 0; s < scheme.tm->s_alphabet().size(); ++s)
        tau[scheme.tm->s_alphabet().name(s)] = scheme.tm->z_alphabet().name(scheme.tm->tau(s));
    j["tau"] = std::move(tau);
    j["dtp"] = partition_to_json(scheme.dtp);
    j["itp"] = partition_to_json(scheme.itp);
    j["etp"] = partition_to_json(scheme.etp);
    return j;
}

// --- shadowing ---------------------------------------------------------------

inline Json trace_report_to_json(const TraceReport& r) {
    Json j;
    j["max_error"] = to_frac(r.max_error);
    j["epsilon"] = to_frac(r.epsilon);
    j["accepted"] = r.accepted;
    j["tracer"] = point_to_json(r.tracer);
    Json errs = Json::array();
    for (const Rational& e : r.per_step_errors) errs.push_back(to_frac(e));
    j["per_step_errors"] = std::move(errs);
    return j;
}

}  // namespace zipshift
