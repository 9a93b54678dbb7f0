#pragma once

// Report envelopes.  One envelope per CLI invocation; the JSON rendering
// has a stable key order and is byte-identical across runs for identical
// seeds and inputs (elapsed_ms is therefore fixed to 0 in JSON; measured
// timing is shown in the text rendering only).

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orepoly/twist.hpp"

namespace orepoly {

inline constexpr const char* version_string = "0.1.0";

struct ReportEnvelope {
    std::string version = version_string;
    std::string command;
    std::string algebra;
    std::uint64_t seed = 0;
    unsigned bound = 0;
    std::vector<LawCheck> checks;
    std::vector<std::pair<std::string, std::string>> details;
    std::int64_t elapsed_ms = 0;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void check(const std::string& name, bool pass, const std::string& witness = "") {
        checks.push_back({name, pass, pass ? "" : witness});
    }

    void note(const std::string& key, const std::string& value) { details.emplace_back(key, value); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["version"] = version;
        j["command"] = command;
        j["algebra"] = algebra;
        j["seed"] = seed;
        j["bound"] = bound;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json e;
            e["name"] = c.law;
            e["status"] = c.pass ? "pass" : "fail";
            if (!c.pass) e["witness"] = c.witness;
            j["checks"].push_back(std::move(e));
        }
        j["details"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : details) j["details"][k] = v;
        j["elapsed_ms"] = 0;  // deterministic output; see the text rendering for timing
        return j;
    }

    static ReportEnvelope from_json(const nlohmann::ordered_json& j) {
        ReportEnvelope r;
        r.version = j.at("version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.algebra = j.at("algebra").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.bound = j.at("bound").get<unsigned>();
        for (const auto& e : j.at("checks")) {
            LawCheck c;
            c.law = e.at("name").get<std::string>();
            c.pass = e.at("status").get<std::string>() == "pass";
            if (e.contains("witness")) c.witness = e.at("witness").get<std::string>();
            r.checks.push_back(std::move(c));
        }
        for (const auto& [k, v] : j.at("details").items()) r.details.emplace_back(k, v.get<std::string>());
        r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
        return r;
    }

    void render_text(std::ostream& os) const {
        os << "orepoly " << version << ": " << command << "\n";
        os << "algebra: " << algebra << "\n";
        os << "seed " << seed;
        if (bound > 0) os << ", bound " << bound;
        os << "\n";
        for (const auto& c : checks) {
            os << "check: " << c.law << " ... " << (c.pass ? "pass" : "FAIL");
            if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
            os << "\n";
        }
        for (const auto& [k, v] : details) os << "  " << k << ": " << v << "\n";
        os << "result: " << (passed() ? "PASS" : "FAIL") << " (" << elapsed_ms << " ms)\n";
    }
};

}  // namespace orepoly
