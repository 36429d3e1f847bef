#pragma once

// Verification reports: named checks with optional witnesses, and
// deterministic JSON / plain-text rendering. Timing never enters the JSON
// form so that identical runs are byte-identical.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace vxcalc {

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;  // serialized state or detail; required on failure
};

struct Report {
    std::string command;
    std::map<std::string, std::string> params;
    std::vector<Check> checks;

    void check(const std::string& name, bool pass, const std::string& witness = "") {
        checks.push_back({name, pass, witness});
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["params"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params) j["params"][k] = v;
        j["ok"] = ok();
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            if (!c.witness.empty()) jc["witness"] = c.witness;
            j["checks"].push_back(jc);
        }
        return j;
    }

    std::string to_text() const {
        std::string out = "== " + command + " ==\n";
        for (const auto& [k, v] : params) out += "  " + k + " = " + v + "\n";
        for (const auto& c : checks) {
            out += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name;
            if (!c.pass && !c.witness.empty()) out += "  witness: " + c.witness;
            out += "\n";
        }
        out += ok() ? "ok\n" : "FAILED\n";
        return out;
    }
};

}  // namespace vxcalc
