#include "infospace/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infospace/field_io.hpp"

namespace infospace::cli {

using nlohmann::json;

namespace {

constexpr const char* kModule = "cli_harness";

struct Violations {
    std::vector<std::string> items;
    void add(const std::string& path, const std::string& what) {
        items.push_back(path + ": " + what);
    }
    void raise_if_any() const {
        if (items.empty()) return;
        std::string msg = "scenario validation failed";
        for (const auto& v : items) msg += "\n  " + v;
        fail(ErrorCode::scenario_error, kModule, "parse_scenario", msg);
    }
};

bool get_finite_double(const json& j, double& out) {
    if (!j.is_number()) return false;
    out = j.get<double>();
    return std::isfinite(out);
}

bool read_vec(const json& j, std::size_t n, std::vector<double>& out) {
    if (!j.is_array() || j.size() != n) return false;
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!get_finite_double(j[i], out[i])) return false;
    }
    return true;
}

FourVector read_four(const json& j, const std::string& path, Violations& bad) {
    std::vector<double> v;
    if (!read_vec(j, 4, v)) {
        bad.add(path, "expected 4 finite numbers");
        return {};
    }
    return {v[0], v[1], v[2], v[3]};
}

Vec3 read_vec3(const json& j, const std::string& path, Violations& bad) {
    std::vector<double> v;
    if (!read_vec(j, 3, v)) {
        bad.add(path, "expected 3 finite numbers");
        return {0.0, 0.0, 0.0};
    }
    return {v[0], v[1], v[2]};
}

std::optional<Lattice4> read_lattice(const json& j, const std::string& path, Violations& bad) {
    if (!j.is_object()) {
        bad.add(path, "expected an object {extents, spacing, origin}");
        return std::nullopt;
    }
    if (!j.contains("extents") || !j.contains("spacing")) {
        bad.add(path, "missing required extents/spacing");
        return std::nullopt;
    }
    Index4 extents{};
    if (!j["extents"].is_array() || j["extents"].size() != 4) {
        bad.add(path + "/extents", "expected 4 integers");
        return std::nullopt;
    }
    for (int a = 0; a < 4; ++a) {
        if (!j["extents"][a].is_number_integer() || j["extents"][a].get<int>() < 1) {
            bad.add(path + "/extents", "entries must be integers >= 1");
            return std::nullopt;
        }
        extents[a] = j["extents"][a].get<int>();
    }
    std::vector<double> sp;
    if (!read_vec(j["spacing"], 4, sp)) {
        bad.add(path + "/spacing", "expected 4 finite numbers");
        return std::nullopt;
    }
    for (double h : sp) {
        if (!(h > 0.0)) {
            bad.add(path + "/spacing", "spacings must be positive");
            return std::nullopt;
        }
    }
    FourVector origin;
    if (j.contains("origin")) origin = read_four(j["origin"], path + "/origin", bad);
    return Lattice4(extents, {sp[0], sp[1], sp[2], sp[3]}, origin);
}

FieldSource read_field_source(const json& j, const std::string& path, Violations& bad) {
    FieldSource fs;
    fs.source = FieldGenerator{};
    if (!j.is_object() || !j.contains("kind")) {
        bad.add(path, "expected an object with a 'kind'");
        return fs;
    }
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    const int rank = j.value("rank", 0);
    if (rank < 0 || rank > TensorField::default_rank_cap) {
        bad.add(path + "/rank", "rank out of range");
        return fs;
    }
    const std::size_t ncomp = std::size_t{1} << (2 * rank);

    if (kind == "file") {
        if (!j.contains("path") || !j["path"].is_string()) {
            bad.add(path + "/path", "file source needs a string path");
            return fs;
        }
        const std::string base = j["path"].get<std::string>();
        std::ifstream probe(base + ".json");
        if (!probe) {
            bad.add(path + "/path", "referenced field '" + base + "' does not exist");
            return fs;
        }
        fs.source = base;
        return fs;
    }

    FieldGenerator g;
    g.rank = rank;
    g.terms.resize(ncomp);
    if (j.contains("variance")) {
        if (!j["variance"].is_array() || static_cast<int>(j["variance"].size()) != rank) {
            bad.add(path + "/variance", "variance mask length must equal rank");
            return fs;
        }
        for (const auto& v : j["variance"]) {
            g.variance.push_back(v.get<std::string>() == "covariant" ? Variance::covariant
                                                                     : Variance::contravariant);
        }
    }

    if (kind == "constant") {
        std::vector<double> values;
        if (!j.contains("values") || !read_vec(j["values"], ncomp, values)) {
            bad.add(path + "/values", "constant source needs 4^rank finite values");
            return fs;
        }
        for (std::size_t c = 0; c < ncomp; ++c) {
            if (values[c] != 0.0) g.terms[c].push_back({values[c], {0, 0, 0, 0}});
        }
    } else if (kind == "linear") {
        std::vector<double> values(ncomp, 0.0);
        if (j.contains("values") && !read_vec(j["values"], ncomp, values)) {
            bad.add(path + "/values", "linear source values must be 4^rank finite numbers");
            return fs;
        }
        if (!j.contains("slopes") || !j["slopes"].is_array() || j["slopes"].size() != ncomp) {
            bad.add(path + "/slopes", "linear source needs one slope row per component");
            return fs;
        }
        for (std::size_t c = 0; c < ncomp; ++c) {
            std::vector<double> row;
            if (!read_vec(j["slopes"][c], 4, row)) {
                bad.add(path + "/slopes", "each slope row needs 4 finite numbers");
                return fs;
            }
            if (values[c] != 0.0) g.terms[c].push_back({values[c], {0, 0, 0, 0}});
            for (int a = 0; a < 4; ++a) {
                if (row[a] != 0.0) {
                    MonomialTerm t{row[a], {0, 0, 0, 0}};
                    t.powers[a] = 1;
                    g.terms[c].push_back(t);
                }
            }
        }
    } else if (kind == "polynomial") {
        if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].size() != ncomp) {
            bad.add(path + "/terms", "polynomial source needs one term list per component");
            return fs;
        }
        for (std::size_t c = 0; c < ncomp; ++c) {
            for (const auto& tj : j["terms"][c]) {
                MonomialTerm t;
                if (!tj.contains("coeff") || !get_finite_double(tj["coeff"], t.coeff)) {
                    bad.add(path + "/terms", "each term needs a finite 'coeff'");
                    return fs;
                }
                if (tj.contains("powers")) {
                    if (!tj["powers"].is_array() || tj["powers"].size() != 4) {
                        bad.add(path + "/terms", "'powers' must hold 4 integers");
                        return fs;
                    }
                    for (int a = 0; a < 4; ++a) t.powers[a] = tj["powers"][a].get<int>();
                }
                g.terms[c].push_back(t);
            }
        }
    } else {
        bad.add(path + "/kind", "unknown generator kind '" + kind + "'");
        return fs;
    }

    try {
        g.validate();
    } catch (const Error& e) {
        bad.add(path, e.what());
    }
    fs.source = std::move(g);
    return fs;
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::constants: return "constants";
        case Mode::kinematics: return "kinematics";
        case Mode::emotion: return "emotion";
        case Mode::free_transfer: return "free_transfer";
        case Mode::interaction: return "interaction";
        case Mode::minimize_action: return "minimize_action";
        case Mode::maxwell_check: return "maxwell_check";
    }
    return "?";
}

TensorField FieldSource::realize(const Lattice4& lattice) const {
    if (std::holds_alternative<FieldGenerator>(source)) {
        return std::get<FieldGenerator>(source).realize(lattice);
    }
    TensorField f = load_field(std::get<std::string>(source));
    if (!(f.lattice() == lattice)) {
        fail(ErrorCode::shape_mismatch, kModule, "FieldSource",
             "serialized field lattice does not match the scenario lattice");
    }
    return f;
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::scenario_error, kModule, "parse_scenario",
             std::string("not valid JSON: ") + e.what());
    }

    Violations bad;
    Scenario s;

    if (!doc.is_object()) {
        bad.add("/", "document must be a JSON object");
        bad.raise_if_any();
    }

    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
        bad.add("/schema_version", "missing required integer");
    } else {
        s.schema_version = doc["schema_version"].get<int>();
        if (s.schema_version != 1) bad.add("/schema_version", "unsupported schema version");
    }

    if (!doc.contains("mode") || !doc["mode"].is_string()) {
        bad.add("/mode", "missing required string");
    } else {
        const std::string m = doc["mode"].get<std::string>();
        bool found = false;
        for (Mode candidate :
             {Mode::constants, Mode::kinematics, Mode::emotion, Mode::free_transfer,
              Mode::interaction, Mode::minimize_action, Mode::maxwell_check}) {
            if (m == mode_name(candidate)) {
                s.mode = candidate;
                found = true;
                break;
            }
        }
        if (!found) bad.add("/mode", "unknown mode '" + m + "'");
    }

    if (doc.contains("unit_mode")) {
        const std::string u = doc["unit_mode"].is_string() ? doc["unit_mode"].get<std::string>() : "";
        if (u == "SI") {
            s.unit_mode = UnitMode::SI;
        } else if (u == "NATURAL") {
            s.unit_mode = UnitMode::NATURAL;
        } else {
            bad.add("/unit_mode", "must be 'SI' or 'NATURAL'");
        }
    }

    if (doc.contains("constants_override")) {
        const auto& c = doc["constants_override"];
        PhysicalConstants p;
        bool ok = c.is_object() && get_finite_double(c.value("c", json()), p.c) &&
                  get_finite_double(c.value("hbar", json()), p.hbar) &&
                  get_finite_double(c.value("G_N", json()), p.g_n);
        if (!ok || !(p.c > 0.0) || !(p.hbar > 0.0) || !(p.g_n > 0.0)) {
            bad.add("/constants_override", "needs positive finite c, hbar, G_N");
        } else {
            s.constants_override = p;
        }
    }

    if (doc.contains("lattice")) s.lattice = read_lattice(doc["lattice"], "/lattice", bad);

    if (doc.contains("fields")) {
        if (!doc["fields"].is_object()) {
            bad.add("/fields", "must be an object of named field sources");
        } else {
            for (const auto& [name, src] : doc["fields"].items()) {
                s.fields.emplace(name, read_field_source(src, "/fields/" + name, bad));
            }
        }
    }

    const json prob = doc.value("problem", json::object());

    switch (s.mode) {
        case Mode::constants:
            break;
        case Mode::kinematics: {
            if (prob.contains("beta")) s.kinematics.beta = read_vec3(prob["beta"], "/problem/beta", bad);
            if (prob.contains("dt")) get_finite_double(prob["dt"], s.kinematics.dt);
            if (prob.contains("x")) s.kinematics.x = read_four(prob["x"], "/problem/x", bad);
            if (prob.contains("raw_mean"))
                s.kinematics.raw_mean = read_four(prob["raw_mean"], "/problem/raw_mean", bad);
            if (prob.contains("mean_speed_sq"))
                get_finite_double(prob["mean_speed_sq"], s.kinematics.mean_speed_sq);
            break;
        }
        case Mode::emotion: {
            if (!s.lattice) bad.add("/lattice", "emotion mode requires a lattice");
            if (!prob.contains("m") || !prob["m"].is_number_integer()) {
                bad.add("/problem/m", "emotion mode requires the common tensor rank m");
            } else {
                s.emotion.m = prob["m"].get<int>();
            }
            s.emotion.require_bound = prob.value("require_bound", false);
            for (const char* need : {"T", "D"}) {
                if (!s.fields.count(need))
                    bad.add(std::string("/fields/") + need, "emotion mode requires this field");
            }
            break;
        }
        case Mode::free_transfer:
        case Mode::interaction: {
            if (!prob.contains("x_a")) bad.add("/problem/x_a", "missing required endpoint");
            else s.transfer.x_a = read_four(prob["x_a"], "/problem/x_a", bad);
            if (!prob.contains("x_b")) bad.add("/problem/x_b", "missing required endpoint");
            else s.transfer.x_b = read_four(prob["x_b"], "/problem/x_b", bad);
            if (!prob.contains("grid") || !prob["grid"].is_object()) {
                bad.add("/problem/grid", "missing required momentum grid");
            } else {
                const auto& gj = prob["grid"];
                if (!gj.contains("cutoff")) {
                    bad.add("/problem/grid/cutoff", "missing required cutoffs");
                } else {
                    std::vector<double> v;
                    if (!read_vec(gj["cutoff"], 4, v)) {
                        bad.add("/problem/grid/cutoff", "expected 4 finite numbers");
                    } else {
                        s.transfer.grid.cutoff = {v[0], v[1], v[2], v[3]};
                    }
                }
                if (!gj.contains("points")) {
                    bad.add("/problem/grid/points", "missing required point counts");
                } else if (!gj["points"].is_array() || gj["points"].size() != 4) {
                    bad.add("/problem/grid/points", "expected 4 integers");
                } else {
                    for (int a = 0; a < 4; ++a) s.transfer.grid.points[a] = gj["points"][a].get<int>();
                }
            }
            if (prob.contains("Q")) get_finite_double(prob["Q"], s.transfer.q_gie);
            if (prob.contains("mean_speed_sq"))
                get_finite_double(prob["mean_speed_sq"], s.transfer.mean_speed_sq);
            if (prob.contains("end_lattice"))
                s.transfer.end_lattice = read_lattice(prob["end_lattice"], "/problem/end_lattice", bad);
            else if (s.lattice)
                s.transfer.end_lattice = s.lattice;
            if (s.mode == Mode::interaction) {
                if (!prob.contains("interaction") || !prob["interaction"].is_object()) {
                    bad.add("/problem/interaction", "interaction mode requires parameters");
                } else {
                    const auto& ij = prob["interaction"];
                    auto& p = s.transfer.interaction;
                    p.n1 = ij.value("n1", 1.0);
                    p.n2 = ij.value("n2", 1.0);
                    p.q1 = ij.value("q1", 0.0);
                    p.q2 = ij.value("q2", 0.0);
                    if (ij.contains("beta1")) p.beta1 = read_vec3(ij["beta1"], "/problem/interaction/beta1", bad);
                    if (ij.contains("beta2")) p.beta2 = read_vec3(ij["beta2"], "/problem/interaction/beta2", bad);
                    if (p.q_plus() == 0.0)
                        bad.add("/problem/interaction", "combined emotion q_plus must be nonzero");
                }
                bool a_given = false;
                if (prob.contains("potential") && prob["potential"].is_object()) {
                    const auto& pj = prob["potential"];
                    if (pj.contains("a")) {
                        const FourVector a = read_four(pj["a"], "/problem/potential/a", bad);
                        s.transfer.potential.a = a.c;
                        a_given = true;
                    }
                    s.transfer.potential.s_regularizer = pj.value("s_regularizer", 0.0);
                }
                if (!a_given) {
                    // default direction: the source's rest-frame unit vector
                    // seen from the lab frame
                    try {
                        s.transfer.potential.a = four_beta(s.transfer.interaction.beta2).c;
                    } catch (const Error&) {
                        bad.add("/problem/interaction/beta2", "|beta| must be < 1");
                    }
                }
                s.transfer.position_dependent = prob.value("position_dependent", false);
            }
            break;
        }
        case Mode::minimize_action: {
            if (!prob.contains("from")) bad.add("/problem/from", "missing required endpoint");
            else s.minimize.from = read_four(prob["from"], "/problem/from", bad);
            if (!prob.contains("to")) bad.add("/problem/to", "missing required endpoint");
            else s.minimize.to = read_four(prob["to"], "/problem/to", bad);
            s.minimize.segments = prob.value("segments", 8);
            if (s.minimize.segments < 2) bad.add("/problem/segments", "must be >= 2");
            if (prob.contains("Q")) get_finite_double(prob["Q"], s.minimize.q_gie);
            s.minimize.interacting = prob.value("interacting", false);
            s.minimize.flip_action_sign = prob.value("flip_action_sign", false);
            if (s.minimize.interacting && prob.contains("interaction")) {
                const auto& ij = prob["interaction"];
                auto& p = s.minimize.interaction;
                p.n1 = ij.value("n1", 1.0);
                p.n2 = ij.value("n2", 1.0);
                p.q1 = ij.value("q1", 0.0);
                p.q2 = ij.value("q2", 0.0);
                if (ij.contains("beta2")) p.beta2 = read_vec3(ij["beta2"], "/problem/interaction/beta2", bad);
            }
            bool a_given = false;
            if (prob.contains("potential") && prob["potential"].is_object()) {
                const auto& pj = prob["potential"];
                if (pj.contains("a")) {
                    const FourVector a = read_four(pj["a"], "/problem/potential/a", bad);
                    s.minimize.potential.a = a.c;
                    a_given = true;
                }
                s.minimize.potential.s_regularizer = pj.value("s_regularizer", 0.0);
            }
            if (s.minimize.interacting && !a_given) {
                try {
                    s.minimize.potential.a = four_beta(s.minimize.interaction.beta2).c;
                } catch (const Error&) {
                    bad.add("/problem/interaction/beta2", "|beta| must be < 1");
                }
            }
            if (prob.contains("optimizer") && prob["optimizer"].is_object()) {
                const auto& oj = prob["optimizer"];
                s.minimize.optimizer.tol = oj.value("tol", 1e-8);
                s.minimize.optimizer.max_iters = oj.value("max_iters", 20000);
                s.minimize.optimizer.initial_step = oj.value("initial_step", 1.0);
            }
            break;
        }
        case Mode::maxwell_check: {
            if (!s.lattice) bad.add("/lattice", "maxwell_check mode requires a lattice");
            if (!s.fields.count("A")) bad.add("/fields/A", "maxwell_check requires the potential");
            break;
        }
    }

    if (doc.contains("output")) {
        const auto& oj = doc["output"];
        if (oj.is_object()) {
            s.output.json_path = oj.value("json", std::string("report.json"));
            s.output.csv = oj.value("csv", false);
            s.output.stats_only = oj.value("stats_only", false);
        }
    }

    bad.raise_if_any();
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::io_error, kModule, "parse_scenario", "cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace infospace::cli
