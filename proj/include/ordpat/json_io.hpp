// JSON views of patterns, verdicts, and reports.
#pragma once

#include <json.hpp>

#include "parse.hpp"
#include "pattern.hpp"
#include "relation.hpp"
#include "verify.hpp"

namespace ordpat {

inline nlohmann::json to_json(Rel r) {
    switch (r) {
        case Rel::Yes: return true;
        case Rel::No: return false;
        case Rel::Unknown: return nullptr;
    }
    return nullptr;
}

inline nlohmann::json to_json(const FinitePattern& p) {
    nlohmann::json carrier = nlohmann::json::array();
    for (const auto& t : p.carrier) carrier.push_back(to_string(t));
    auto matrix = [](const std::vector<std::vector<Rel>>& m) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& row : m) {
            nlohmann::json r = nlohmann::json::array();
            for (Rel x : row) r.push_back(to_json(x));
            out.push_back(std::move(r));
        }
        return out;
    };
    return {{"carrier", std::move(carrier)},
            {"leq1", matrix(p.leq1)},
            {"leq2", matrix(p.leq2)}};
}

inline nlohmann::json verdict_json(const Term& a, const Term& b, Level level, int k,
                                   const Verdict& v) {
    nlohmann::json j = {{"a", to_string(a)},
                        {"b", to_string(b)},
                        {"level", level == Level::Rho ? "rho" : "alpha"},
                        {"k", k},
                        {"verdict", to_string(v.value)},
                        {"trace", v.trace}};
    if (v.is_unknown()) j["reason"] = v.reason;
    return j;
}

inline nlohmann::json to_json(const CoveringCertificate& c, const CoveringMap& h) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : c.checked)
        pairs.push_back({{"x", to_string(h.source.carrier[p.x])},
                         {"y", to_string(h.source.carrier[p.y])},
                         {"k", p.k}});
    nlohmann::json map = nlohmann::json::array();
    for (std::size_t i = 0; i < h.map.size(); ++i)
        map.push_back({{"from", to_string(h.source.carrier[i])},
                       {"to", to_string(h.image(i))}});
    nlohmann::json j = {{"ok", c.ok}, {"map", std::move(map)}, {"checked", std::move(pairs)}};
    if (!c.ok) j["violation"] = c.violation;
    return j;
}

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json dis = nlohmann::json::array();
    for (const auto& d : r.disagreed)
        dis.push_back({{"left", d.left},
                       {"right", d.right},
                       {"k", d.k},
                       {"left_trace", d.left_trace},
                       {"right_trace", d.right_trace},
                       {"note", d.note}});
    return {{"theorem", r.theorem},
            {"params", r.params},
            {"checked", r.checked},
            {"agreed", r.agreed},
            {"disagreed", std::move(dis)},
            {"unknown", r.unknown},
            {"oracle_gaps", r.oracle_gaps},
            {"wall_time", r.wall_time_ms},
            {"passed", r.passed()}};
}

inline nlohmann::json to_json(const SuiteReport& s) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : s.reports) reports.push_back(to_json(r));
    return {{"reports", std::move(reports)}, {"passed", s.passed()}};
}

}  // namespace ordpat
