#ifndef KVV_SCENARIO_HPP
#define KVV_SCENARIO_HPP

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kvv/lattice.hpp"

namespace kvv {

using json = nlohmann::json;

/// Scenario file: a blow-up construction of a rational surface, a contraction,
/// named divisors on the target (as strict transforms), the witness inputs,
/// an optional pencil request and golden expectations for audit mode.
struct Scenario {
    struct PlaneCurve {
        std::string name;
        long degree = 1;
        friend bool operator==(const PlaneCurve&, const PlaneCurve&) = default;
    };
    struct Stage {
        std::string name;
        std::size_t blowups = 0;
        friend bool operator==(const Stage&, const Stage&) = default;
    };
    struct Witness {
        std::string divisor;
        std::string ample_witness;
        std::string canonical_witness;
        Divisor relative_boundary;
        friend bool operator==(const Witness&, const Witness&) = default;
    };
    struct Pencil {
        long prime = 5;
        int ext_degree = 2;
        friend bool operator==(const Pencil&, const Pencil&) = default;
    };
    struct Expectation {
        std::string path;
        json value;
        std::string note;
        friend bool operator==(const Expectation&, const Expectation&) = default;
    };

    std::string name;
    std::string description;
    std::vector<PlaneCurve> plane_curves;
    std::vector<BlowUpRecord> blowups;
    std::vector<Stage> stages;
    std::vector<std::string> contraction;
    std::map<std::string, Divisor> divisors;
    std::optional<Witness> witness;
    std::optional<Pencil> pencil;
    std::vector<Expectation> expectations;

    friend bool operator==(const Scenario&, const Scenario&) = default;

    SurfaceModel build_surface() const {
        SurfaceModel s = SurfaceModel::projective_plane();
        for (const auto& c : plane_curves) s = s.with_plane_curve(c.name, c.degree);
        for (const auto& b : blowups) s = s.blow_up(b);
        return s;
    }
};

namespace detail {

inline json divisor_to_json(const Divisor& d) {
    json j = json::object();
    for (const auto& [n, c] : d.terms()) j[n] = c.to_string();
    return j;
}

class SchemaReader {
public:
    [[noreturn]] static void fail(const std::string& where, const std::string& what) {
        throw SchemaError((where.empty() ? std::string("/") : where) + ": " + what);
    }

    static void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
        if (!j.is_object()) fail(where, "expected an object");
        for (const auto& [k, _] : j.items()) {
            bool ok = false;
            for (const char* a : keys) ok = ok || k == a;
            if (!ok) fail(where, "unknown key '" + k + "'");
        }
    }

    static const json& need(const json& j, const std::string& where, const char* key) {
        if (!j.contains(key)) fail(where, std::string("missing key '") + key + "'");
        return j.at(key);
    }

    static std::string str(const json& j, const std::string& where) {
        if (!j.is_string()) fail(where, "expected a string");
        return j.get<std::string>();
    }

    static long integer(const json& j, const std::string& where) {
        if (!j.is_number_integer()) fail(where, "expected an integer");
        return j.get<long>();
    }

    static Rational rational(const json& j, const std::string& where) {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (!j.is_string()) fail(where, "expected a rational written as \"n/d\"");
        try {
            return Rational::from_string(j.get<std::string>());
        } catch (const std::exception& e) {
            fail(where, e.what());
        }
    }

    static Divisor divisor(const json& j, const std::string& where) {
        if (!j.is_object()) fail(where, "expected an object of curve -> coefficient");
        Divisor d;
        for (const auto& [k, v] : j.items()) d.add(k, rational(v, where + "/" + k));
        return d;
    }
};

inline std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace detail

inline json to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    if (!s.description.empty()) j["description"] = s.description;
    json surface;
    surface["plane_curves"] = json::array();
    for (const auto& c : s.plane_curves) surface["plane_curves"].push_back({{"name", c.name}, {"degree", c.degree}});
    surface["blowups"] = json::array();
    for (const auto& b : s.blowups) {
        json centers = json::object();
        for (const auto& [n, m] : b.center_multiplicities) centers[n] = m;
        surface["blowups"].push_back({{"name", b.new_class_name}, {"centers", centers}});
    }
    surface["stages"] = json::array();
    for (const auto& st : s.stages) surface["stages"].push_back({{"name", st.name}, {"blowups", st.blowups}});
    j["surface"] = surface;
    j["contraction"] = s.contraction;
    j["divisors"] = json::object();
    for (const auto& [n, d] : s.divisors) j["divisors"][n] = detail::divisor_to_json(d);
    if (s.witness) {
        j["witness"] = {{"divisor", s.witness->divisor},
                        {"ample_witness", s.witness->ample_witness},
                        {"canonical_witness", s.witness->canonical_witness},
                        {"relative_boundary", detail::divisor_to_json(s.witness->relative_boundary)}};
    }
    if (s.pencil) j["pencil"] = {{"prime", s.pencil->prime}, {"ext_degree", s.pencil->ext_degree}};
    j["expectations"] = json::array();
    for (const auto& e : s.expectations) {
        json x = {{"path", e.path}, {"value", e.value}};
        if (!e.note.empty()) x["note"] = e.note;
        j["expectations"].push_back(x);
    }
    return j;
}

/// Validates structure and every curve reference; construction order is
/// enforced, so a blow-up center may only name curves that already exist.
inline Scenario scenario_from_json(const json& j) {
    using R = detail::SchemaReader;
    R::allow_keys(j, "", {"name", "description", "surface", "contraction", "divisors", "witness", "pencil",
                          "expectations"});
    Scenario s;
    s.name = R::str(R::need(j, "", "name"), "/name");
    if (j.contains("description")) s.description = R::str(j["description"], "/description");

    const json& surf = R::need(j, "", "surface");
    R::allow_keys(surf, "/surface", {"plane_curves", "blowups", "stages"});
    std::set<std::string> known;
    const json& pcs = R::need(surf, "/surface", "plane_curves");
    if (!pcs.is_array()) R::fail("/surface/plane_curves", "expected an array");
    for (std::size_t i = 0; i < pcs.size(); ++i) {
        const std::string w = "/surface/plane_curves/" + std::to_string(i);
        R::allow_keys(pcs[i], w, {"name", "degree"});
        Scenario::PlaneCurve c{R::str(R::need(pcs[i], w, "name"), w + "/name"),
                               R::integer(R::need(pcs[i], w, "degree"), w + "/degree")};
        if (c.degree < 1) R::fail(w + "/degree", "degree must be positive");
        if (!known.insert(c.name).second) R::fail(w + "/name", "duplicate curve '" + c.name + "'");
        s.plane_curves.push_back(c);
    }
    const json& bus = R::need(surf, "/surface", "blowups");
    if (!bus.is_array()) R::fail("/surface/blowups", "expected an array");
    for (std::size_t i = 0; i < bus.size(); ++i) {
        const std::string w = "/surface/blowups/" + std::to_string(i);
        R::allow_keys(bus[i], w, {"name", "centers"});
        BlowUpRecord b;
        b.new_class_name = R::str(R::need(bus[i], w, "name"), w + "/name");
        const json& centers = R::need(bus[i], w, "centers");
        if (!centers.is_object()) R::fail(w + "/centers", "expected an object of curve -> multiplicity");
        for (const auto& [k, v] : centers.items()) {
            if (!known.contains(k)) R::fail(w + "/centers", "unknown curve '" + k + "'");
            const long m = R::integer(v, w + "/centers/" + k);
            if (m < 0) R::fail(w + "/centers/" + k, "multiplicity must be non-negative");
            b.center_multiplicities[k] = static_cast<int>(m);
        }
        if (!known.insert(b.new_class_name).second)
            R::fail(w + "/name", "duplicate curve '" + b.new_class_name + "'");
        s.blowups.push_back(std::move(b));
    }
    if (surf.contains("stages")) {
        const json& sts = surf["stages"];
        if (!sts.is_array()) R::fail("/surface/stages", "expected an array");
        for (std::size_t i = 0; i < sts.size(); ++i) {
            const std::string w = "/surface/stages/" + std::to_string(i);
            R::allow_keys(sts[i], w, {"name", "blowups"});
            const long n = R::integer(R::need(sts[i], w, "blowups"), w + "/blowups");
            if (n < 0 || static_cast<std::size_t>(n) > s.blowups.size())
                R::fail(w + "/blowups", "stage refers past the end of the blow-up list");
            s.stages.push_back({R::str(R::need(sts[i], w, "name"), w + "/name"), static_cast<std::size_t>(n)});
        }
    }

    auto check_curve = [&](const std::string& name, const std::string& where) {
        if (!known.contains(name)) R::fail(where, "unknown curve '" + name + "'");
    };

    if (j.contains("contraction")) {
        const json& c = j["contraction"];
        if (!c.is_array()) R::fail("/contraction", "expected an array of curve names");
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::string w = "/contraction/" + std::to_string(i);
            s.contraction.push_back(R::str(c[i], w));
            check_curve(s.contraction.back(), w);
        }
    }
    if (j.contains("divisors")) {
        const json& ds = j["divisors"];
        if (!ds.is_object()) R::fail("/divisors", "expected an object");
        for (const auto& [k, v] : ds.items()) {
            Divisor d = R::divisor(v, "/divisors/" + k);
            for (const auto& [n, _] : d.terms()) check_curve(n, "/divisors/" + k);
            s.divisors.emplace(k, std::move(d));
        }
    }
    if (j.contains("witness")) {
        const json& w = j["witness"];
        R::allow_keys(w, "/witness", {"divisor", "ample_witness", "canonical_witness", "relative_boundary"});
        Scenario::Witness wit;
        wit.divisor = R::str(R::need(w, "/witness", "divisor"), "/witness/divisor");
        if (!s.divisors.contains(wit.divisor)) R::fail("/witness/divisor", "unknown divisor '" + wit.divisor + "'");
        wit.ample_witness = R::str(R::need(w, "/witness", "ample_witness"), "/witness/ample_witness");
        check_curve(wit.ample_witness, "/witness/ample_witness");
        if (w.contains("canonical_witness")) {
            wit.canonical_witness = R::str(w["canonical_witness"], "/witness/canonical_witness");
            check_curve(wit.canonical_witness, "/witness/canonical_witness");
        }
        if (w.contains("relative_boundary")) {
            wit.relative_boundary = R::divisor(w["relative_boundary"], "/witness/relative_boundary");
            for (const auto& [n, _] : wit.relative_boundary.terms()) check_curve(n, "/witness/relative_boundary");
        }
        s.witness = std::move(wit);
    }
    if (j.contains("pencil")) {
        const json& p = j["pencil"];
        R::allow_keys(p, "/pencil", {"prime", "ext_degree"});
        Scenario::Pencil pen;
        pen.prime = R::integer(R::need(p, "/pencil", "prime"), "/pencil/prime");
        if (p.contains("ext_degree")) pen.ext_degree = static_cast<int>(R::integer(p["ext_degree"], "/pencil/ext_degree"));
        if (pen.ext_degree < 1) R::fail("/pencil/ext_degree", "extension degree must be positive");
        s.pencil = pen;
    }
    if (j.contains("expectations")) {
        const json& ex = j["expectations"];
        if (!ex.is_array()) R::fail("/expectations", "expected an array");
        for (std::size_t i = 0; i < ex.size(); ++i) {
            const std::string w = "/expectations/" + std::to_string(i);
            R::allow_keys(ex[i], w, {"path", "value", "note"});
            Scenario::Expectation e;
            e.path = R::str(R::need(ex[i], w, "path"), w + "/path");
            if (e.path.empty() || e.path.front() != '/') R::fail(w + "/path", "path must be a JSON pointer");
            try {
                (void)json::json_pointer(e.path);
            } catch (const json::exception& err) {
                R::fail(w + "/path", err.what());
            }
            e.value = R::need(ex[i], w, "value");
            if (ex[i].contains("note")) e.note = R::str(ex[i]["note"], w + "/note");
            s.expectations.push_back(std::move(e));
        }
    }
    return s;
}

inline Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>") {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError(source + ": empty scenario");
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_and_column(text, e.byte);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
    try {
        return scenario_from_json(j);
    } catch (const SchemaError& e) {
        throw SchemaError(source + ": " + e.what());
    }
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

} // namespace kvv

#endif // KVV_SCENARIO_HPP
