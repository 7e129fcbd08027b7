#pragma once

#include <string>

#include <json.hpp>

#include "nilnike/attacks.hpp"
#include "nilnike/encoding.hpp"
#include "nilnike/platform.hpp"
#include "nilnike/protocol.hpp"
#include "nilnike/rng.hpp"

namespace nilnike {

inline constexpr const char* kTranscriptFormat = "nilnike-transcript-v1";
inline constexpr const char* kReportFormat = "nilnike-report-v1";

nlohmann::json platform_json(const PlatformDescriptor& d);
PlatformDescriptor platform_from_json(const nlohmann::json& j);

template <ProtocolPlatform G>
nlohmann::json transcript_json(const G& g, const Transcript<G>& t) {
    nlohmann::json j;
    j["format"] = kTranscriptFormat;
    j["rng"] = kRngName;
    j["platform"] = platform_json(describe(g, t.params.n));
    j["n"] = t.params.n;
    j["key_order"] = t.params.key_order.get_str();
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& e : t.params.generators) gens.push_back(to_hex(g.serialize(e)));
    j["generators"] = std::move(gens);
    nlohmann::json shares = nlohmann::json::array();
    for (unsigned i = 1; i <= t.params.n; ++i) {
        for (unsigned j2 = 1; j2 <= t.params.n + 1; ++j2) {
            const auto& cell = t.shares[i - 1][j2 - 1];
            if (!cell) continue;
            shares.push_back({{"i", i}, {"j", j2}, {"element_hex", to_hex(g.serialize(*cell))}});
        }
    }
    j["shares"] = std::move(shares);
    if (t.test_mode) {
        nlohmann::json test;
        nlohmann::json exps = nlohmann::json::array();
        for (const auto& a : t.exponents) exps.push_back(a.get_str());
        test["exponents"] = std::move(exps);
        nlohmann::json keys = nlohmann::json::array();
        for (const auto& k : t.derived_keys) keys.push_back(to_hex(g.serialize(k)));
        test["derived_keys"] = std::move(keys);
        j["test"] = std::move(test);
    }
    return j;
}

template <ProtocolPlatform G>
Transcript<G> transcript_from_json(const G& g, const nlohmann::json& j) {
    if (!j.contains("format") || j["format"] != kTranscriptFormat)
        fail("BadTranscript", "unrecognized transcript format");
    Transcript<G> t;
    t.params.n = j.at("n").get<unsigned>();
    t.params.key_order = mpz_class(j.at("key_order").get<std::string>());
    t.params.alpha = g.alpha();
    for (const auto& hex : j.at("generators"))
        t.params.generators.push_back(g.deserialize(from_hex(hex.get<std::string>())));
    if (t.params.generators.size() != t.params.n)
        fail("BadTranscript", "generator count does not match n");
    t.params.key_base =
        t.params.n == 1
            ? t.params.generators[0]
            : nested_commutator<G>(g, {t.params.generators.data(), t.params.generators.size()});
    t.shares.assign(t.params.n,
                    std::vector<std::optional<typename G::Element>>(t.params.n + 1));
    for (const auto& cell : j.at("shares")) {
        const unsigned i = cell.at("i").get<unsigned>();
        const unsigned j2 = cell.at("j").get<unsigned>();
        if (i < 1 || i > t.params.n || j2 < 1 || j2 > t.params.n + 1)
            fail("BadTranscript", "share index out of range");
        t.shares[i - 1][j2 - 1] =
            g.deserialize(from_hex(cell.at("element_hex").get<std::string>()));
    }
    if (j.contains("test")) {
        t.test_mode = true;
        for (const auto& a : j["test"].at("exponents"))
            t.exponents.push_back(mpz_class(a.get<std::string>()));
        for (const auto& hex : j["test"].at("derived_keys"))
            t.derived_keys.push_back(g.deserialize(from_hex(hex.get<std::string>())));
    }
    return t;
}

template <PlatformGroup G>
nlohmann::json report_json(const G& g, const AttackOutcome<G>& r, bool with_timing = true) {
    nlohmann::json j;
    j["algorithm"] = r.algorithm;
    j["success"] = r.success;
    j["refused"] = r.refused;
    if (!r.error.empty()) j["error"] = r.error;
    j["ops"] = r.ops;
    j["total_ops"] = r.total_ops;
    j["millis"] = with_timing ? r.millis : 0.0;
    if (!r.exponents.empty()) {
        nlohmann::json exps = nlohmann::json::array();
        for (const auto& e : r.exponents) exps.push_back(e.get_str());
        j["exponents"] = std::move(exps);
    }
    if (r.key) j["key_hex"] = to_hex(g.serialize(*r.key));
    return j;
}

} // namespace nilnike
