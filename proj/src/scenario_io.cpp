#include "abenergy/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace abenergy {
namespace {

using nlohmann::json;

class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail("must be an object");
        }
    }

    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& item : j_.items()) {
            bool known = false;
            for (const char* k : keys) {
                known = known || item.key() == k;
            }
            if (!known) {
                throw ScenarioError(where(item.key()) + ": unknown key");
            }
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    const json& at(const char* key) const {
        if (!j_.contains(key)) {
            throw ScenarioError(where(key) + ": missing required key");
        }
        return j_.at(key);
    }

    Reader object(const char* key) const { return Reader(at(key), where(key)); }

    double number(const char* key) const { return as_number(at(key), where(key)); }

    double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

    std::string string(const char* key) const {
        const json& v = at(key);
        if (!v.is_string()) {
            throw ScenarioError(where(key) + ": must be a string");
        }
        return v.get<std::string>();
    }

    bool boolean_or(const char* key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json& v = at(key);
        if (!v.is_boolean()) {
            throw ScenarioError(where(key) + ": must be true or false");
        }
        return v.get<bool>();
    }

    Vec3 vec(const char* key) const { return as_vec(at(key), where(key)); }

    std::vector<double> numbers(const char* key) const {
        const json& v = at(key);
        if (!v.is_array()) {
            throw ScenarioError(where(key) + ": must be an array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_number(v[i], where(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    std::vector<Vec3> vecs(const char* key) const {
        const json& v = at(key);
        if (!v.is_array()) {
            throw ScenarioError(where(key) + ": must be an array of [x, y, z] points");
        }
        std::vector<Vec3> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(as_vec(v[i], where(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    [[noreturn]] void fail(const std::string& msg) const { throw ScenarioError(path_ + ": " + msg); }

private:
    static double as_number(const json& v, const std::string& where) {
        if (!v.is_number()) {
            throw ScenarioError(where + ": must be a number");
        }
        return v.get<double>();
    }

    static Vec3 as_vec(const json& v, const std::string& where) {
        if (!v.is_array() || v.size() != 3) {
            throw ScenarioError(where + ": must be an [x, y, z] array");
        }
        return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]"), as_number(v[2], where + "[2]")};
    }

    const json& j_;
    std::string path_;
};

FluxSource read_source(const Reader& r) {
    r.allow({"kind", "center", "axis", "radius", "length", "minor_radius", "B0"});
    FluxSource s;
    const std::string kind = r.string("kind");
    if (kind == "infinite_solenoid") {
        s.kind = SourceKind::infinite_solenoid;
    } else if (kind == "finite_solenoid") {
        s.kind = SourceKind::finite_solenoid;
        s.length = r.number("length");
    } else if (kind == "toroid") {
        s.kind = SourceKind::toroid;
        s.minor_radius = r.number("minor_radius");
    } else {
        throw ScenarioError(r.where("kind") + ": unknown source kind '" + kind + "'");
    }
    if (s.kind != SourceKind::finite_solenoid && r.has("length")) {
        throw ScenarioError(r.where("length") + ": only valid for finite_solenoid");
    }
    if (s.kind != SourceKind::toroid && r.has("minor_radius")) {
        throw ScenarioError(r.where("minor_radius") + ": only valid for toroid");
    }
    if (r.has("center")) {
        s.center = r.vec("center");
    }
    if (r.has("axis")) {
        s.axis = r.vec("axis");
    }
    s.radius = r.number("radius");
    s.B0 = r.number("B0");
    return s;
}

ShieldSpec read_shield(const Reader& r) {
    r.allow({"geometry", "energy_gap", "transmission"});
    ShieldSpec s;
    const std::string geometry = r.string("geometry");
    if (geometry == "full_cylinder") {
        s.geometry = ShieldGeometry::full_cylinder;
    } else if (geometry == "half_space_cylinder") {
        s.geometry = ShieldGeometry::half_space_cylinder;
    } else {
        throw ScenarioError(r.where("geometry") + ": unknown shield geometry '" + geometry + "'");
    }
    s.energy_gap = r.number("energy_gap");
    s.transmission = r.number("transmission");
    return s;
}

BeamPath read_path(const Reader& r) {
    r.allow({"vertices", "speed"});
    return {r.vecs("vertices"), r.number("speed")};
}

Experiment read_experiment(const Reader& r) {
    const std::string kind = r.string("kind");
    if (kind == "two_path") {
        r.allow({"kind", "path_C", "path_D", "charge_q"});
        TwoPathExperiment e;
        e.path_C = read_path(r.object("path_C"));
        e.path_D = read_path(r.object("path_D"));
        e.charge_q = r.number_or("charge_q", kElectronCharge);
        return e;
    }
    if (kind == "squid") {
        r.allow({"kind", "loop_current_I0", "flux_sweep", "quantize_flux"});
        SquidExperiment e;
        e.loop_current_I0 = r.number("loop_current_I0");
        e.flux_sweep = r.numbers("flux_sweep");
        e.quantize_flux = r.boolean_or("quantize_flux", false);
        return e;
    }
    throw ScenarioError(r.where("kind") + ": unknown experiment kind '" + kind + "' (two_path or squid)");
}

QuadratureConfig read_quadrature(const Reader& r) {
    r.allow({"rel_tol", "abs_tol", "max_subdivisions"});
    QuadratureConfig q;
    q.rel_tol = r.number_or("rel_tol", q.rel_tol);
    q.abs_tol = r.number_or("abs_tol", q.abs_tol);
    if (r.has("max_subdivisions")) {
        const json& v = r.at("max_subdivisions");
        if (!v.is_number_unsigned()) {
            throw ScenarioError(r.where("max_subdivisions") + ": must be a non-negative integer");
        }
        q.max_subdivisions = v.get<std::size_t>();
    }
    return q;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json path_json(const BeamPath& p) {
    json vertices = json::array();
    for (const auto& v : p.vertices) {
        vertices.push_back(vec_json(v));
    }
    return {{"vertices", vertices}, {"speed", p.speed}};
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
    const Reader root(doc, "");
    root.allow({"source", "shield", "experiment", "hypothesis", "quadrature", "wave_packet", "verify"});

    Scenario s;
    s.source = read_source(root.object("source"));
    if (root.has("shield")) {
        s.shield = read_shield(root.object("shield"));
    }
    s.experiment = read_experiment(root.object("experiment"));
    if (root.has("hypothesis")) {
        const std::string h = root.string("hypothesis");
        if (h == "vector_potential") {
            s.hypothesis = Hypothesis::vector_potential;
        } else if (h == "superimposed_energy") {
            s.hypothesis = Hypothesis::superimposed_energy;
        } else if (h != "both") {
            throw ScenarioError("hypothesis: must be vector_potential, superimposed_energy or both");
        }
    }
    if (root.has("quadrature")) {
        s.quadrature = read_quadrature(root.object("quadrature"));
    }
    if (root.has("wave_packet")) {
        const Reader wp = root.object("wave_packet");
        wp.allow({"coherence_length", "speed"});
        s.wave_packet = WavePacketSpec{wp.number("coherence_length"), wp.number("speed")};
    }
    if (root.has("verify")) {
        const Reader v = root.object("verify");
        v.allow({"gauge_shift"});
        if (v.has("gauge_shift")) {
            s.verify.gauge_shift = v.vec("gauge_shift");
        }
    }

    const ValidatedScenario checked = validate_scenario(s);
    if (!checked.ok()) {
        std::string msg = "invalid scenario:";
        for (const auto& issue : checked.issues) {
            msg += "\n  " + issue.to_string();
        }
        throw ScenarioError(msg);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot read scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) {
    json doc = json::object();
    json src = {{"kind", to_string(s.source.kind)},
                {"center", vec_json(s.source.center)},
                {"axis", vec_json(s.source.axis)},
                {"radius", s.source.radius},
                {"B0", s.source.B0}};
    if (s.source.kind == SourceKind::finite_solenoid) {
        src["length"] = s.source.length;
    }
    if (s.source.kind == SourceKind::toroid) {
        src["minor_radius"] = s.source.minor_radius;
    }
    doc["source"] = src;
    if (s.shield) {
        doc["shield"] = {{"geometry", to_string(s.shield->geometry)},
                         {"energy_gap", s.shield->energy_gap},
                         {"transmission", s.shield->transmission}};
    }
    if (const auto* tp = std::get_if<TwoPathExperiment>(&s.experiment)) {
        doc["experiment"] = {{"kind", "two_path"},
                             {"path_C", path_json(tp->path_C)},
                             {"path_D", path_json(tp->path_D)},
                             {"charge_q", tp->charge_q}};
    } else {
        const auto& sq = std::get<SquidExperiment>(s.experiment);
        doc["experiment"] = {{"kind", "squid"},
                             {"loop_current_I0", sq.loop_current_I0},
                             {"flux_sweep", sq.flux_sweep},
                             {"quantize_flux", sq.quantize_flux}};
    }
    doc["hypothesis"] = s.hypothesis ? to_string(*s.hypothesis) : std::string("both");
    doc["quadrature"] = {{"rel_tol", s.quadrature.rel_tol},
                         {"abs_tol", s.quadrature.abs_tol},
                         {"max_subdivisions", s.quadrature.max_subdivisions}};
    if (s.wave_packet) {
        doc["wave_packet"] = {{"coherence_length", s.wave_packet->coherence_length},
                              {"speed", s.wave_packet->speed}};
    }
    if (s.verify.gauge_shift) {
        doc["verify"] = {{"gauge_shift", vec_json(*s.verify.gauge_shift)}};
    }
    return doc.dump(2) + "\n";
}

}  // namespace abenergy
