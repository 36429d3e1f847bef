#pragma once

// JSON serialization for charts, transitions, central characters and module
// presentations. All numbers travel as exact rational strings "p/q".

#include "vxcalc/charts.hpp"
#include "vxcalc/module.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace vxcalc {

inline Scalar scalar_from_string(const std::string& s) { return Scalar::parse(s); }

inline nlohmann::ordered_json ring_to_json(const RingElement& f) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& [mono, c] : f.terms()) {
        nlohmann::ordered_json term;
        term["coeff"] = c.str();
        term["exps"] = nlohmann::ordered_json::object();
        for (const auto& [v, e] : mono) term["exps"][v] = e;
        j.push_back(term);
    }
    return j;
}

inline RingElement ring_from_json(const nlohmann::json& j) {
    RingElement f;
    for (const auto& term : j) {
        Monomial m;
        if (term.contains("exps"))
            for (auto it = term["exps"].begin(); it != term["exps"].end(); ++it)
                m[it.key()] = it.value().get<int>();
        f += RingElement::monomial(m, scalar_from_string(term.at("coeff").get<std::string>()));
    }
    return f;
}

inline nlohmann::ordered_json form_to_json(const KForm& f) {
    nlohmann::ordered_json j;
    j["degree"] = f.degree();
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [idx, c] : f.comps()) {
        nlohmann::ordered_json term;
        term["indices"] = idx;
        term["coeff"] = ring_to_json(c);
        j["terms"].push_back(term);
    }
    return j;
}

inline KForm form_from_json(const nlohmann::json& j) {
    KForm f(j.at("degree").get<int>());
    for (const auto& term : j.at("terms"))
        f = f + KForm::dx_wedge(term.at("indices").get<std::vector<int>>(),
                                ring_from_json(term.at("coeff")));
    return f;
}

inline nlohmann::ordered_json state_to_json(const State& s) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& [mono, coeff] : s.terms()) {
        nlohmann::ordered_json term;
        term["modes"] = nlohmann::ordered_json::array();
        for (const auto& m : mono.modes) {
            std::string g = m.kind == Gen::A ? "a" : m.kind == Gen::B ? "b" : "h";
            term["modes"].push_back(nlohmann::ordered_json::array({g, m.idx, m.n}));
        }
        if (mono.component != 0) term["component"] = mono.component;
        term["coeff"] = ring_to_json(coeff);
        j.push_back(term);
    }
    return j;
}

inline State state_from_json(const nlohmann::json& j) {
    State s;
    for (const auto& term : j) {
        CreationMonomial m;
        for (const auto& md : term.at("modes")) {
            std::string g = md.at(0).get<std::string>();
            Gen kind = g == "a" ? Gen::A : g == "b" ? Gen::B : Gen::H;
            m.insert(Mode{kind, md.at(1).get<int>(), md.at(2).get<int>()});
        }
        if (term.contains("component")) m.component = term["component"].get<int>();
        s.add(m, ring_from_json(term.at("coeff")));
    }
    return s;
}

struct ChartDocument {
    std::vector<std::shared_ptr<Chart>> charts;
    std::vector<TransitionMap> transitions;

    std::shared_ptr<Chart> find(const std::string& name) const {
        for (const auto& c : charts)
            if (c->name == name) return c;
        throw std::invalid_argument("chart document: unknown chart " + name);
    }
};

inline ChartDocument chart_document_from_json(const nlohmann::json& doc) {
    ChartDocument out;
    for (const auto& cj : doc.at("charts")) {
        std::vector<std::vector<Scalar>> gram;
        if (cj.contains("gram"))
            for (const auto& row : cj["gram"]) {
                std::vector<Scalar> r;
                for (const auto& e : row) r.push_back(scalar_from_string(e.get<std::string>()));
                gram.push_back(std::move(r));
            }
        KForm alpha = cj.contains("alpha") ? form_from_json(cj["alpha"]) : KForm(3);
        std::vector<KForm> lambda2;
        if (cj.contains("lambda2"))
            for (const auto& l : cj["lambda2"]) lambda2.push_back(form_from_json(l));
        out.charts.push_back(std::make_shared<Chart>(build_chart(
            cj.at("name").get<std::string>(), cj.at("N").get<int>(), std::move(gram),
            std::move(alpha), std::move(lambda2), cj.value("var_prefix", std::string("x")),
            cj.value("laurent_vars", false))));
    }
    if (doc.contains("transitions"))
        for (const auto& tj : doc["transitions"]) {
            TransitionMap t;
            t.src = out.find(tj.at("from").get<std::string>());
            t.dst = out.find(tj.at("to").get<std::string>());
            for (auto it = tj.at("ring_map").begin(); it != tj.at("ring_map").end(); ++it)
                t.ring_map[it.key()] = ring_from_json(it.value());
            // Coefficients of transported states may live in the Laurent
            // extension of the overlap.
            for (const auto& v : t.src->table().vars) t.overlap_src.vars[v] = true;
            for (const auto& v : t.dst->table().vars) t.overlap_dst.vars[v] = true;
            const auto& gi = tj.at("generator_images");
            for (const auto& sj : gi.at("a")) t.a_images.push_back(state_from_json(sj));
            if (gi.contains("h"))
                for (const auto& sj : gi["h"]) t.h_images.push_back(state_from_json(sj));
            if (tj.contains("lambda1")) t.lambda1 = form_from_json(tj["lambda1"]);
            out.transitions.push_back(std::move(t));
        }
    return out;
}

inline nlohmann::ordered_json chart_document_to_json(const ChartDocument& doc) {
    nlohmann::ordered_json j;
    j["charts"] = nlohmann::ordered_json::array();
    for (const auto& c : doc.charts) {
        nlohmann::ordered_json cj;
        cj["name"] = c->name;
        cj["N"] = c->table().N;
        cj["laurent_vars"] = !c->ring.vars.empty() && c->ring.vars.begin()->second;
        cj["var_prefix"] = c->table().N >= 1 ? c->table().var(1).substr(0, 1) : "x";
        cj["gram"] = nlohmann::ordered_json::array();
        for (const auto& row : c->table().gram) {
            auto rj = nlohmann::ordered_json::array();
            for (const auto& e : row) rj.push_back(e.str());
            cj["gram"].push_back(rj);
        }
        cj["alpha"] = form_to_json(c->alpha);
        cj["lambda2"] = nlohmann::ordered_json::array();
        for (const auto& l : c->lambda2) cj["lambda2"].push_back(form_to_json(l));
        j["charts"].push_back(cj);
    }
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& t : doc.transitions) {
        nlohmann::ordered_json tj;
        tj["from"] = t.src->name;
        tj["to"] = t.dst->name;
        tj["ring_map"] = nlohmann::ordered_json::object();
        for (const auto& [v, f] : t.ring_map) tj["ring_map"][v] = ring_to_json(f);
        tj["generator_images"]["a"] = nlohmann::ordered_json::array();
        for (const auto& s : t.a_images) tj["generator_images"]["a"].push_back(state_to_json(s));
        tj["generator_images"]["h"] = nlohmann::ordered_json::array();
        for (const auto& s : t.h_images) tj["generator_images"]["h"].push_back(state_to_json(s));
        tj["lambda1"] = form_to_json(t.lambda1);
        j["transitions"].push_back(tj);
    }
    return j;
}

inline CentralCharacter character_from_json(const nlohmann::json& j) {
    CentralCharacter cc;
    for (const auto& th : j.at("theta"))
        cc.theta.push_back(scalar_from_string(th.get<std::string>()));
    if (j.contains("chi"))
        for (auto it = j["chi"].begin(); it != j["chi"].end(); ++it) {
            std::vector<Scalar> v;
            for (const auto& e : it.value()) v.push_back(scalar_from_string(e.get<std::string>()));
            cc.chi[std::stoi(it.key())] = std::move(v);
        }
    return cc;
}

inline nlohmann::ordered_json character_to_json(const CentralCharacter& cc) {
    nlohmann::ordered_json j;
    j["theta"] = nlohmann::ordered_json::array();
    for (const auto& t : cc.theta) j["theta"].push_back(t.str());
    j["chi"] = nlohmann::ordered_json::object();
    for (const auto& [n, v] : cc.chi) {
        auto vj = nlohmann::ordered_json::array();
        for (const auto& e : v) vj.push_back(e.str());
        j["chi"][std::to_string(n)] = vj;
    }
    return j;
}

inline FreePresentation presentation_from_json(const nlohmann::json& j) {
    FreePresentation f;
    f.rank = j.at("rank").get<int>();
    if (j.contains("connection"))
        for (const auto& mat : j["connection"]) {
            std::vector<std::vector<RingElement>> m;
            for (const auto& row : mat) {
                std::vector<RingElement> r;
                for (const auto& e : row) r.push_back(ring_from_json(e));
                m.push_back(std::move(r));
            }
            f.conn.push_back(std::move(m));
        }
    return f;
}

}  // namespace vxcalc
