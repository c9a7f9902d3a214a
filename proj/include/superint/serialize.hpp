#pragma once

#include <json.hpp>

#include "catalog.hpp"

namespace superint {

using nlohmann::json;

inline json to_json(const DetSystem& sys) {
    json levels = json::array();
    for (const auto& lev : sys.levels) {
        json eqs = json::array();
        for (const auto& e : lev.equations) eqs.push_back(to_text(e));
        levels.push_back({{"l", lev.l}, {"equations", eqs}});
    }
    return {{"N", sys.N}, {"levels", levels}};
}

inline json amap_to_json(const AMap& A) {
    json a = json::object();
    for (const auto& [idx, val] : A) {
        std::string key = "A_" + std::to_string(idx.a) + "_" + std::to_string(idx.m) + "_" +
                          std::to_string(idx.n);
        a[key] = to_text(val);
    }
    return a;
}

inline json to_json(const Classification& c, int N, const AMap& A) {
    return {{"N", N},
            {"A", amap_to_json(A)},
            {"class", to_string(c.cls)},
            {"tau1", to_text(c.witness.tau1)},
            {"ups1", to_text(c.witness.ups1)},
            {"tau2", to_text(c.witness.tau2)},
            {"ups2", to_text(c.witness.ups2)}};
}

inline json to_json(const NlccResult& r) {
    json fixed = json::object();
    for (const auto& [k, val] : r.fixed) fixed[k] = val;
    json consts = json::array();
    for (Sym s : r.constants) consts.push_back(SymTab::instance().name(s));
    return {{"nlcc_x", to_text(r.x_ode)},
            {"nlcc_y", to_text(r.y_ode)},
            {"x_condition", to_text(r.x_condition)},
            {"y_condition", to_text(r.y_condition)},
            {"fixed_constants", fixed},
            {"free_constants", consts}};
}

inline json to_json(const OdeMatch& m) {
    json map = json::object();
    for (const auto& [k, val] : m.mapping) map[k] = val;
    return {{"matches", m.ok}, {"mapping", map}, {"notes", m.notes}, {"unmatched", m.unmatched}};
}

inline json to_json(const CrossCheckReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je = {{"j", e.j}, {"l", e.l}, {"matches", e.matches}};
        if (!e.matches) {
            je["formula"] = to_text(e.formula);
            je["oracle"] = to_text(e.oracle);
        }
        entries.push_back(je);
    }
    return {{"all_match", r.all_match}, {"normalization", r.normalization}, {"entries", entries}};
}

inline json to_json(const TrivialReduction& r) {
    json removed = json::array();
    for (const auto& rm : r.removed)
        removed.push_back({{"A", "A_" + std::to_string(rm.idx.a) + "_" + std::to_string(rm.idx.m) + "_" +
                                     std::to_string(rm.idx.n)},
                           {"reason", rm.reason}});
    return {{"kept", amap_to_json(r.reduced)}, {"removed", removed}};
}

inline json to_json(const Balance& b) {
    json jb = {{"p", to_string(b.p)}, {"integer_p", b.integer_p}};
    if (b.a0_symbolic) {
        json mp = json::array();
        for (const Rat& c : b.minpoly) mp.push_back(to_string(c));
        jb["a0"] = {{"symbolic", true},
                    {"scale", to_text(DPoly::term(b.a0_scale, GaussRat(1)))},
                    {"minpoly", mp}};
    } else {
        jb["a0"] = to_text(DPoly::term(b.a0_scale, GaussRat(b.a0_q)));
    }
    if (!b.diagnostic.empty()) jb["diagnostic"] = b.diagnostic;
    return jb;
}

inline json to_json(const PainleveReport& rep) {
    json branches = json::array();
    for (const auto& br : rep.branches) {
        json res = json::array();
        for (const Rat& r : br.resonances) res.push_back(to_string(r));
        json checks = json::array();
        for (const auto& c : br.checks) {
            json jc = {{"r", c.r},
                       {"status", c.status == ResStatus::SatisfiedGeneric
                                      ? "satisfied-generic"
                                      : (c.status == ResStatus::SatisfiedUnderConstraints
                                             ? "satisfied-under-constraints"
                                             : "failed")}};
            if (!c.constraints.empty()) {
                json cs = json::array();
                for (const auto& cc : c.constraints) cs.push_back(to_text(cc));
                jc["constraints"] = cs;
            }
            checks.push_back(jc);
        }
        json jb = {{"balance", to_json(br.balance)},
                   {"resonances", res},
                   {"resonances_complete", br.resonances_complete},
                   {"checks", checks},
                   {"verdict", to_string(br.verdict)}};
        if (!br.note.empty()) jb["note"] = br.note;
        branches.push_back(jb);
    }
    json out = {{"branches", branches}, {"verdict", to_string(rep.verdict)}};
    if (!rep.diagnostic.empty()) out["diagnostic"] = rep.diagnostic;
    return out;
}

inline json to_json(const VerifyReport& rep) {
    json eqs = json::array();
    for (const auto& e : rep.equations) {
        json je = {{"l", e.l}, {"j", e.j}, {"vanishes", e.vanishes}};
        if (!e.vanishes) je["residual"] = e.residual;
        eqs.push_back(je);
    }
    json match = json::object();
    for (const auto& [k, val] : rep.matching) match[k] = val;
    json out = {{"id", rep.id},
                {"consistent", rep.consistent},
                {"equations", eqs},
                {"matching", match},
                {"parameter_constraints", rep.parameter_constraints},
                {"residual_conditions", rep.residual_conditions}};
    if (!rep.error.empty()) out["error"] = rep.error;
    return out;
}

inline json to_json(const TemplateMatchResult& r) {
    return {{"matches", r.matches}, {"unmatched", r.unmatched}};
}

inline json catalog_index_json() {
    json out = json::array();
    for (const auto& e : catalog()) {
        json je = {{"id", e.id},
                   {"N", e.N},
                   {"family", e.family == 1 ? "I" : "II"},
                   {"assumptions", json::array()},
                   {"potential", e.potential}};
        if (!e.notes.empty()) je["notes"] = e.notes;
        if (e.expected_resonances.empty()) je["expected_resonances"] = nullptr;
        else je["expected_resonances"] = e.expected_resonances;
        for (Sym s : e.ode().nonzero) je["assumptions"].push_back(SymTab::instance().name(s) + " != 0");
        out.push_back(je);
    }
    return out;
}

/// Envelope used by the command line: payload is deterministic, timing goes to
/// stderr so that report files are byte-stable.
inline json report_envelope(const std::string& command, json payload) {
    return {{"schema", "1"}, {"command", command}, {"payload", std::move(payload)}};
}

} // namespace superint
