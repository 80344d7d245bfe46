#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "celldga/dga.hpp"

inline nlohmann::json oracle() {
    static const nlohmann::json j = [] {
        std::ifstream in(ORACLE_FILE);
        return nlohmann::json::parse(in);
    }();
    return j;
}

inline std::string diff_text(const celldga::Dga& d, const std::string& id) {
    const celldga::Generator* g = d.find(id);
    return g ? d.diff.at(g->sym).to_string() : "<missing " + id + ">";
}

inline celldga::Polynomial P(const std::string& s) { return celldga::parse_polynomial(s); }

struct ToyGen {
    std::string id;
    long long degree;
    std::string diff;
};

// A DGA over free generators with hand-written differentials.
inline celldga::Dga toy_dga(const std::vector<ToyGen>& gs, long long m = 0) {
    celldga::Dga d;
    d.m = m;
    for (const auto& g : gs) {
        celldga::Generator x;
        x.id = g.id;
        x.cell = g.id;
        x.kind = "a";
        x.degree = g.degree;
        x.sym = celldga::intern(g.id);
        d.add(x, g.diff.empty() ? celldga::Polynomial::zero() : P(g.diff));
    }
    d.finalize();
    return d;
}
