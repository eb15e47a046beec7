#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwst/constructions.hpp"
#include "qwst/graph.hpp"
#include "qwst/spectral.hpp"
#include "qwst/transfer.hpp"
#include "qwst/weights.hpp"

namespace qwst {

using json = nlohmann::ordered_json;

/*
 * JSON graph format:
 *   {"n": int, "edges": [[a,b],...],
 *    "weights": [{"from":a,"to":b,"re":x,"im":y}, ...]}   (optional)
 * Complex numbers are always re/im pairs. Generators add a "family" tag and
 * their parameters; extra keys are ignored on load. Without weights, the
 * degree-normalized default w_ab = 1/sqrt(deg a) applies.
 */

struct LoadedGraph {
    Graph graph;
    WeightMatrix weights;
    std::optional<std::string> family;
    std::optional<std::pair<int, int>> pair;
};

inline json graph_to_json(const FamilyInstance& fi) {
    json j;
    j["n"] = fi.graph.vertex_count();
    json edges = json::array();
    for (auto [a, b] : fi.graph.edges()) edges.push_back({a, b});
    j["edges"] = edges;
    json weights = json::array();
    const int n = fi.graph.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && fi.graph.has_edge(a, b)) {
                const cplx w = fi.weights(a, b);
                weights.push_back({{"from", a}, {"to", b}, {"re", w.real()}, {"im", w.imag()}});
            }
    j["weights"] = weights;
    j["family"] = fi.family;
    json params;
    for (const auto& [k, v] : fi.params) params[k] = v;
    j["params"] = params;
    j["pair"] = {fi.pair_a, fi.pair_b};
    return j;
}

inline LoadedGraph graph_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: need \"n\" and \"edges\"");
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph g(n, edges);
    std::optional<WeightMatrix> w;
    if (j.contains("weights") && !j.at("weights").empty()) {
        CMatrix m(n, n);
        for (const auto& e : j.at("weights")) {
            const int a = e.at("from").get<int>();
            const int b = e.at("to").get<int>();
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw std::invalid_argument("graph json: weight endpoint out of range");
            m(a, b) = cplx(e.at("re").get<double>(), e.at("im").get<double>());
        }
        w = WeightMatrix(g, std::move(m));
    } else {
        w = degree_normalized_weights(g);
    }
    LoadedGraph out{g, *w, std::nullopt, std::nullopt};
    if (j.contains("family")) out.family = j.at("family").get<std::string>();
    if (j.contains("pair") && j.at("pair").is_array() && j.at("pair").size() == 2)
        out.pair = std::make_pair(j.at("pair").at(0).get<int>(), j.at("pair").at(1).get<int>());
    return out;
}

inline LoadedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return graph_from_json(j);
}

inline void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline json complex_to_json(const cplx& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline json certificate_to_json(const CospectralityCertificate& c) {
    json j;
    j["a"] = c.a;
    j["b"] = c.b;
    j["strongly_cospectral"] = c.cospectral;
    if (!c.cospectral) {
        j["failure"] = c.failure;
        return j;
    }
    json sup = json::array();
    for (size_t i = 0; i < c.support_values.size(); ++i) {
        json e;
        e["lambda"] = c.support_values[i];
        e["alpha"] = complex_to_json(c.alphas[i]);
        if (c.root_of_unity) e["sigma"] = c.residues[i];
        sup.push_back(e);
    }
    j["support"] = sup;
    j["root_of_unity"] = c.root_of_unity;
    if (c.root_of_unity) {
        j["m"] = c.m;
        json part;
        for (const auto& [k, idxs] : c.partition) {
            json cls = json::array();
            for (int i : idxs) cls.push_back(c.support_values[i]);
            part[std::to_string(k)] = cls;
        }
        j["partition"] = part;
    }
    return j;
}

inline json verdict_to_json(const TransferVerdict& v) {
    json j;
    j["kind"] = kind_name(v.kind);
    j["reason"] = v.reason;
    if (v.kind == TransferVerdict::Kind::Pst) {
        j["t"] = v.t;
        j["gamma"] = complex_to_json(v.gamma);
    }
    if (v.m > 0) j["m"] = v.m;
    if (!v.support.empty()) j["support"] = v.support;
    if (!v.residues.empty()) j["residues"] = v.residues;
    if (!v.variables.empty()) j["variables"] = v.variables;
    if (!v.relation_basis.empty()) j["relation_basis"] = v.relation_basis;
    if (!v.violating_l.empty()) j["violating_l"] = v.violating_l;
    if (v.evidence_t >= 0) {
        j["evidence"] = {{"best_t", v.evidence_t}, {"best_fidelity", v.evidence_fidelity}};
    }
    return j;
}

inline json spectrum_to_json(const SpectralData& sd) {
    json arr = json::array();
    for (int g = 0; g < sd.group_count(); ++g) {
        json e;
        e["value"] = sd.eigenvalues[g];
        e["multiplicity"] = sd.multiplicities[g];
        if (sd.tags[g].rational) e["rational"] = sd.tags[g].rational->str();
        else if (sd.tags[g].square)
            e["square"] = std::string(sd.tags[g].negative ? "-sqrt(" : "sqrt(") +
                          sd.tags[g].square->str() + ")";
        arr.push_back(e);
    }
    return arr;
}

/// CSV sweep output: header `t,fidelity`, 17 significant digits.
inline void write_sweep_csv(const SweepResult& sw, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,fidelity\n";
    out << std::setprecision(17);
    for (size_t t = 0; t < sw.fidelities.size(); ++t)
        out << t << "," << sw.fidelities[t] << "\n";
}

}  // namespace qwst
