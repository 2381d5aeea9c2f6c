#include "bpskit/io.hpp"

#include <fstream>

#include "bpskit/error.hpp"

namespace bpskit {

namespace {

Rational rational_field(const Json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InvalidInput(what + " must be a rational string");
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
    if (!j.is_array()) throw InvalidInput(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw InvalidInput(what + " must be an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

}  // namespace

QuiverWithPotential qp_from_json(const Json& j, const std::string& name) {
    if (!j.is_object()) throw InvalidInput("quiver file must hold a JSON object");
    QuiverWithPotential qp;
    qp.name = name;
    const auto vertices = string_list(require(j, "vertices"), "vertices");
    std::vector<Arrow> arrows;
    const Json& ja = require(j, "arrows");
    if (!ja.is_array()) throw InvalidInput("arrows must be an array");
    auto vertex_of = [&](const Json& v) {
        if (!v.is_string()) throw InvalidInput("arrow endpoints must be vertex names");
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v.get<std::string>()) return static_cast<int>(i);
        throw InvalidInput("unknown vertex '" + v.get<std::string>() + "'");
    };
    for (const auto& a : ja) {
        const Json& n = require(a, "name");
        if (!n.is_string()) throw InvalidInput("arrow name must be a string");
        arrows.push_back({n.get<std::string>(), vertex_of(require(a, "from")),
                          vertex_of(require(a, "to"))});
    }
    qp.quiver = Quiver(vertices, std::move(arrows));

    if (j.contains("potential")) {
        const Json& jp = j.at("potential");
        if (!jp.is_array()) throw InvalidInput("potential must be an array of terms");
        for (const auto& t : jp) {
            const Rational c = rational_field(require(t, "coeff"), "coeff");
            qp.potential.add(qp.quiver, parse_path(qp.quiver, string_list(require(t, "cycle"), "cycle")),
                             c);
        }
    }
    if (j.contains("stability")) {
        const Json& js = j.at("stability");
        if (!js.is_object()) throw InvalidInput("stability must map vertex names to rationals");
        qp.stability.assign(vertices.size(), Rational(0));
        std::vector<bool> seen(vertices.size(), false);
        for (const auto& [v, x] : js.items()) {
            const int i = qp.quiver.vertex_index(v);
            qp.stability[i] = rational_field(x, "stability");
            seen[i] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) throw InvalidInput("stability misses vertex '" + vertices[i] + "'");
    }
    if (j.contains("cut")) {
        std::vector<int> cut;
        for (const auto& a : string_list(j.at("cut"), "cut")) cut.push_back(qp.quiver.arrow_index(a));
        qp.cut = std::move(cut);
    }
    return qp;
}

QuiverWithPotential load_qp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
    return qp_from_json(j, path);
}

Json to_json(const Quiver& q, const Potential& w) {
    Json j;
    j["vertices"] = q.vertices();
    j["arrows"] = Json::array();
    for (const auto& a : q.arrows())
        j["arrows"].push_back(
            {{"name", a.name}, {"from", q.vertices()[a.source]}, {"to", q.vertices()[a.target]}});
    j["potential"] = Json::array();
    for (const auto& [p, c] : w.terms()) {
        Json cycle = Json::array();
        for (int a : p) cycle.push_back(q.arrow(a).name);
        j["potential"].push_back({{"coeff", c.get_str()}, {"cycle", cycle}});
    }
    return j;
}

Json to_json(const QuiverWithPotential& qp) {
    Json j = to_json(qp.quiver, qp.potential);
    if (!qp.stability.empty()) {
        Json s = Json::object();
        for (std::size_t i = 0; i < qp.stability.size(); ++i)
            s[qp.quiver.vertices()[i]] = qp.stability[i].get_str();
        j["stability"] = s;
    }
    if (qp.cut) {
        Json c = Json::array();
        for (int a : *qp.cut) c.push_back(qp.quiver.arrow(a).name);
        j["cut"] = c;
    }
    return j;
}

Json to_json(const HalfLaurent& f) {
    Json terms = Json::object();
    for (const auto& [h, c] : f.terms()) terms["h:" + std::to_string(h)] = c.get_str();
    Json j;
    j["terms"] = terms;
    j["known_through"] = f.is_exact() ? Json(nullptr) : Json(f.known_through());
    j["pretty"] = f.str();
    return j;
}

HalfLaurent laurent_from_json(const Json& j) {
    HalfLaurent::Terms terms;
    for (const auto& [k, v] : require(j, "terms").items()) {
        if (k.rfind("h:", 0) != 0) throw InvalidInput("bad Laurent key '" + k + "'");
        int h = 0;
        try {
            std::size_t used = 0;
            h = std::stoi(k.substr(2), &used);
            if (used != k.size() - 2) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw InvalidInput("bad Laurent key '" + k + "'");
        }
        terms[h] = rational_field(v, "Laurent coefficient");
    }
    const Json& kt = j.contains("known_through") ? j.at("known_through") : Json(nullptr);
    if (kt.is_null()) return HalfLaurent::exact(std::move(terms));
    return HalfLaurent::series(std::move(terms), kt.get<int>());
}

Json to_json(const BPSTable& table) {
    Json j = Json::object();
    for (const auto& [d, f] : table) j[d.str()] = to_json(f);
    return j;
}

Json to_json(const TorusElement& z) {
    Json j = Json::object();
    for (const auto& [d, f] : z.coeffs()) j[d.str()] = to_json(f);
    return j;
}

Json to_json(const QPState& s) {
    Json j = to_json(s.quiver, s.potential);
    j["trunc"] = s.trunc;
    j["valid_to"] = s.valid_to;
    return j;
}

}  // namespace bpskit
