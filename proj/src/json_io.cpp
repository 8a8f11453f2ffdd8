#include "pillow/json_io.hpp"

namespace pillow {

json to_json(const Partition& p) {
    json a = json::array();
    for (int x : p) a.push_back(x);
    return a;
}

Partition partition_from_json(const json& j) {
    Partition p;
    for (auto& x : j) p.push_back(x.get<int>());
    std::sort(p.rbegin(), p.rend());
    return p;
}

json to_json(const QSeries& s) {
    json coeffs = json::array();
    for (auto& [e, v] : s.terms()) coeffs.push_back(json::array({e, rat_str(v)}));
    return json{{"den", 2}, {"cutoff", s.cutoff2()}, {"coeffs", coeffs}};
}

QSeries qseries_from_json(const json& j) {
    long cutoff = j.contains("cutoff") ? j["cutoff"].get<long>() : 0;
    if (j["den"].get<int>() != 2) throw std::invalid_argument("qseries json: den must be 2");
    if (cutoff == 0)
        for (auto& t : j["coeffs"]) cutoff = std::max(cutoff, t[0].get<long>());
    QSeries s(cutoff);
    for (auto& t : j["coeffs"]) s.set_half(t[0].get<long>(), rat_parse(t[1].get<std::string>()));
    return s;
}

json to_json(const ShiftedSymElement& e) {
    json a = json::array();
    for (auto& [m, c] : e.terms)
        a.push_back(json{{"p", to_json(m.first)}, {"pbar", to_json(m.second)}, {"coeff", rat_str(c)}});
    return a;
}

json to_json(const RamificationProfile& p) {
    json mus = json::array();
    for (int m : p.mus) mus.push_back(json::array({m}));
    return json{{"nu", to_json(p.nu)}, {"mus", mus}};
}

RamificationProfile profile_from_json(const json& j) {
    RamificationProfile p;
    if (j.contains("nu")) p.nu = partition_from_json(j["nu"]);
    if (j.contains("mus"))
        for (auto& m : j["mus"]) {
            if (m.is_array()) {
                if (m.size() != 1)
                    throw std::invalid_argument("profile json: each mu must be a single cycle");
                p.mus.push_back(m[0].get<int>());
            } else {
                p.mus.push_back(m.get<int>());
            }
        }
    p.validate();
    return p;
}

json to_json(const GlobalGraph& g, const std::vector<int>& eplus) {
    json edges = json::array();
    for (auto& e : g.edges) edges.push_back(json::array({e.first, e.second}));
    json ep = json::array();
    for (int i : eplus) ep.push_back(i);
    return json{{"special", g.has_special}, {"n", g.n}, {"edges", edges}, {"Eplus", ep}};
}

GlobalGraph graph_from_json(const json& j, std::vector<int>* eplus) {
    GlobalGraph g;
    g.has_special = j.value("special", false);
    g.n = j["n"].get<int>();
    for (auto& e : j["edges"]) g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    g.canonicalize();
    if (eplus && j.contains("Eplus"))
        for (auto& i : j["Eplus"]) eplus->push_back(i.get<int>());
    return g;
}

json to_json(const QMForm& f) {
    json terms = json::array();
    for (auto& [e, c] : f.terms) {
        json ev = json::array();
        for (int x : e) ev.push_back(x);
        terms.push_back(json::array({ev, rat_str(c)}));
    }
    return json{{"gens", generator_set_name(f.gens)}, {"terms", terms}};
}

QMForm qmform_from_json(const json& j) {
    QMForm f;
    f.gens = generator_set_from_name(j["gens"].get<std::string>());
    for (auto& t : j["terms"]) {
        std::vector<int> e;
        for (auto& x : t[0]) e.push_back(x.get<int>());
        f.terms[e] = rat_parse(t[1].get<std::string>());
    }
    return f;
}

json to_json(const GrowthPolynomial& g) {
    json a = json::array();
    for (auto& [k, c] : g.terms) a.push_back(json::array({k.first, rat_str(c), k.second}));
    return a;
}

json to_json(const QuasiPolynomial& q) {
    json coset = json::array();
    for (int c : q.coset) coset.push_back(c);
    json poly = json::array();
    for (auto& [e, c] : q.poly) {
        json ev = json::array();
        for (int x : e) ev.push_back(x);
        poly.push_back(json::array({ev, rat_str(c)}));
    }
    json out{{"arity", q.arity}, {"coset", coset}, {"global", q.global_ok}, {"poly", poly}};
    if (!q.global_ok && !q.chamber_minmax.empty()) {
        json ch = json::array();
        for (auto& [e, c] : q.chamber_minmax) {
            json ev = json::array();
            for (int x : e) ev.push_back(x);
            ch.push_back(json::array({ev, rat_str(c)}));
        }
        out["piecewise_minmax"] = ch;
    }
    return out;
}

std::string generator_set_name(GeneratorSet g) {
    switch (g) {
        case GeneratorSet::Level1: return "level1";
        case GeneratorSet::Gamma02: return "gamma02";
        case GeneratorSet::Gamma2: return "gamma2";
    }
    throw std::logic_error("generator_set_name");
}

GeneratorSet generator_set_from_name(const std::string& s) {
    if (s == "level1") return GeneratorSet::Level1;
    if (s == "gamma02") return GeneratorSet::Gamma02;
    if (s == "gamma2") return GeneratorSet::Gamma2;
    throw std::invalid_argument("unknown generator set: " + s);
}

}  // namespace pillow
