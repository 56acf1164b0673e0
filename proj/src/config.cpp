#include "gacz/config.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gacz {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw config_error("config: " + what); }

void expect_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            bad("unknown key '" + item.key() + "' in " + where);
}

double num(const json& v, const std::string& key) {
    if (!v.is_number()) bad("'" + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) bad("'" + key + "' must be an integer");
    return v.get<int>();
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("top level must be an object");

    static const std::set<std::string> allowed = {
        "schema_version", "preset", "geometry", "num_sites", "dx", "zeta", "g_over_J",
        "omega1_over_J", "omega2_over_J", "alpha1_over_J", "alpha2_over_J", "gamma_q_over_J",
        "gamma_c_over_J", "atom1_start", "atom2_offset", "t_max_J", "dt_J", "tol",
        "calibrate_omega2", "calibration_halfwidth_over_J", "output"};
    expect_keys(doc, allowed, "the top-level object");

    if (doc.contains("schema_version") && integer(doc["schema_version"], "schema_version") != 1)
        bad("unsupported schema_version (this build reads version 1)");

    RunConfig rc;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) bad("'preset' must be a string");
        rc.gate = preset(doc["preset"].get<std::string>());
    }
    GateConfig& g = rc.gate;

    if (doc.contains("geometry")) {
        const std::string kind = doc["geometry"].is_string() ? doc["geometry"].get<std::string>()
                                                             : std::string();
        if (kind == "two-point")
            g.geometry = GeometryKind::TwoPoint;
        else if (kind == "three-point")
            g.geometry = GeometryKind::ThreePoint;
        else
            bad("'geometry' must be \"two-point\" or \"three-point\"");
    }
    if (doc.contains("num_sites")) g.num_sites = integer(doc["num_sites"], "num_sites");
    if (doc.contains("dx")) g.dx = integer(doc["dx"], "dx");
    if (doc.contains("zeta")) g.zeta = num(doc["zeta"], "zeta");
    if (doc.contains("g_over_J")) g.g = num(doc["g_over_J"], "g_over_J");
    if (doc.contains("omega1_over_J")) g.omega1 = num(doc["omega1_over_J"], "omega1_over_J");
    if (doc.contains("omega2_over_J")) g.omega2 = num(doc["omega2_over_J"], "omega2_over_J");
    if (doc.contains("alpha1_over_J")) g.alpha1 = num(doc["alpha1_over_J"], "alpha1_over_J");
    if (doc.contains("alpha2_over_J")) g.alpha2 = num(doc["alpha2_over_J"], "alpha2_over_J");
    if (doc.contains("gamma_q_over_J")) g.gamma_q = num(doc["gamma_q_over_J"], "gamma_q_over_J");
    if (doc.contains("gamma_c_over_J")) g.gamma_c = num(doc["gamma_c_over_J"], "gamma_c_over_J");
    if (doc.contains("atom1_start")) g.atom1_start = integer(doc["atom1_start"], "atom1_start");
    if (doc.contains("atom2_offset")) g.atom2_offset = integer(doc["atom2_offset"], "atom2_offset");
    if (doc.contains("t_max_J")) g.t_max = num(doc["t_max_J"], "t_max_J");
    if (doc.contains("dt_J")) g.dt = num(doc["dt_J"], "dt_J");
    if (doc.contains("tol")) g.tol = num(doc["tol"], "tol");

    if (doc.contains("calibrate_omega2")) {
        if (!doc["calibrate_omega2"].is_boolean()) bad("'calibrate_omega2' must be a boolean");
        rc.calibrate = doc["calibrate_omega2"].get<bool>();
    }
    if (doc.contains("calibration_halfwidth_over_J"))
        rc.calibration_halfwidth =
            num(doc["calibration_halfwidth_over_J"], "calibration_halfwidth_over_J");

    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (!out.is_object()) bad("'output' must be an object");
        expect_keys(out, {"csv", "json", "gnuplot"}, "'output'");
        const auto str = [&](const char* key) -> std::string {
            if (!out.contains(key)) return {};
            if (!out[key].is_string()) bad(std::string("'output.") + key + "' must be a string");
            return out[key].get<std::string>();
        };
        rc.output.csv = str("csv");
        rc.output.json = str("json");
        rc.output.gnuplot = str("gnuplot");
    }

    rc.gate.validate();
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace gacz
