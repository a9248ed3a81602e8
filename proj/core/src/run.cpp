#include <cmath>
#include <memory>
#include <numbers>

#include <json.hpp>

#include "infospace/emotion.hpp"
#include "infospace/path_integral.hpp"
#include "infospace/reduction.hpp"
#include "infospace/report.hpp"
#include "report_detail.hpp"

namespace infospace::cli {

using nlohmann::ordered_json;

namespace {

ordered_json four_json(const FourVector& v) {
    return ordered_json::array({v[0], v[1], v[2], v[3]});
}

ordered_json stats_json(const TensorField& f) {
    const FieldStats st = compute_stats(std::span<const double>(f.data()));
    ordered_json j;
    j["min"] = st.min;
    j["max"] = st.max;
    j["mean"] = st.mean;
    j["l2"] = st.l2;
    return j;
}

ordered_json lattice_json(const Lattice4& lat) {
    ordered_json j;
    j["extents"] = lat.extents;
    j["spacing"] = lat.spacing;
    j["origin"] = four_json(lat.origin);
    return j;
}

ordered_json constants_json_obj(const InfoConstants& k) {
    ordered_json j;
    const char* mode = k.mode == UnitMode::SI ? "SI" : "NATURAL";
    const auto entry = [&](double value, const char* units) {
        ordered_json e;
        e["value"] = value;
        e["value_base2"] = format_binary_exponent(value);
        e["units"] = units;
        e["mode"] = mode;
        return e;
    };
    j["lambda_c"] = entry(k.lambda_c, "bit");
    j["nu_c"] = entry(k.nu_c, "bit/s");
    j["Q_c"] = entry(k.q_c, "bit^3/s");
    j["hbar_c"] = entry(k.hbar_c, "bit^5/s^2");
    j["t_P"] = entry(k.t_p, "s");
    j["l_P"] = entry(k.l_p, "m");
    return j;
}

/// CSV dump of a scalar field: coordinates then the value, one site per row.
std::string scalar_field_csv(const TensorField& f) {
    const Lattice4& lat = f.lattice();
    std::string out;
    for (std::size_t s = 0; s < lat.site_count(); ++s) {
        const FourVector x = lat.coordinate(lat.unflat(s));
        for (int a = 0; a < 4; ++a) {
            out += detail::format_g17(x[a]);
            out += ',';
        }
        out += detail::format_g17(f.value(s));
        out += '\n';
    }
    return out;
}

void add_gate(RunReport& report, ordered_json& gates, const std::string& name, bool passed,
              double value, double threshold) {
    report.gates.push_back({name, passed, value, threshold});
    ordered_json g;
    g["name"] = name;
    g["passed"] = passed;
    g["value"] = value;
    g["threshold"] = threshold;
    gates.push_back(g);
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

ordered_json scenario_echo(const Scenario& s) {
    ordered_json j;
    j["schema_version"] = s.schema_version;
    j["mode"] = mode_name(s.mode);
    j["unit_mode"] = s.unit_mode == UnitMode::SI ? "SI" : "NATURAL";
    if (s.lattice) j["lattice"] = lattice_json(*s.lattice);
    if (!s.fields.empty()) {
        ordered_json f;
        for (const auto& [name, src] : s.fields) {
            if (std::holds_alternative<std::string>(src.source)) {
                f[name] = "file:" + std::get<std::string>(src.source);
            } else {
                const auto& g = std::get<FieldGenerator>(src.source);
                f[name] = "generator(rank=" + std::to_string(g.rank) + ")";
            }
        }
        j["fields"] = f;
    }
    return j;
}

TensorField realize_or_default(const Scenario& s, const std::string& name, const Lattice4& lat,
                               const FieldGenerator& fallback) {
    const auto it = s.fields.find(name);
    if (it == s.fields.end()) return fallback.realize(lat);
    return it->second.realize(lat);
}

void run_constants(const Scenario&, const InfoConstants& k, ordered_json& results,
                   ordered_json& gates, RunReport& report) {
    results["table"] = constants_json_obj(k);
    const double qc_identity = rel_err(k.q_c, k.nu_c * k.lambda_c * k.lambda_c);
    add_gate(report, gates, "q_c_equals_nu_c_lambda_c_sq", qc_identity <= 1e-12, qc_identity,
             1e-12);
    const double hbar_identity =
        rel_err(k.hbar_c, k.q_c * k.nu_c * k.nu_c * k.t_p / (2.0 * std::numbers::pi));
    add_gate(report, gates, "hbar_c_identity", hbar_identity <= 1e-12, hbar_identity, 1e-12);
    const double nu_identity = rel_err(k.nu_c, k.lambda_c / k.t_p);
    add_gate(report, gates, "nu_c_equals_lambda_c_over_t_p", nu_identity <= 1e-12, nu_identity,
             1e-12);
}

void run_kinematics(const Scenario& s, const InfoConstants& k, ordered_json& results,
                    ordered_json& gates, RunReport& report) {
    const auto& p = s.kinematics;
    const LorentzMap boost = boost_from_beta(p.beta);
    const FourVector v = four_velocity(p.beta, k);
    const double vv = minkowski_dot(v, v);

    results["gamma"] = lorentz_gamma(p.beta);
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 4; ++i) rows.push_back(boost.lambda[i]);
    results["boost_matrix"] = rows;
    results["four_velocity"] = four_json(v);
    results["four_velocity_self_dot"] = vv;
    results["proper_time"] = proper_time(p.dt, p.beta);
    results["x_self_dot"] = minkowski_dot(p.x, p.x);
    const QuantizedDisplacement q = quantize_displacement(p.raw_mean, p.mean_speed_sq, k);
    results["quantized"] = ordered_json{{"n", q.n}, {"mean_dt", q.mean_dt},
                                        {"residuals", q.residuals}};

    add_gate(report, gates, "boost_metric_preservation", boost.metric_defect() <= 1e-12,
             boost.metric_defect(), 1e-12);
    const double vv_err = std::abs(vv - k.nu_c * k.nu_c) / (k.nu_c * k.nu_c);
    add_gate(report, gates, "four_velocity_normalization", vv_err <= 1e-12, vv_err, 1e-12);
}

void run_emotion(const Scenario& s, const InfoConstants& k, ordered_json& results,
                 ordered_json& gates, RunReport& report) {
    const Lattice4& lat = *s.lattice;
    emotion::TextPair pair;
    pair.m = s.emotion.m;
    pair.text = s.fields.at("T").realize(lat);
    pair.perception = s.fields.at("D").realize(lat);
    pair.n_field = realize_or_default(s, "n", lat, FieldGenerator::constant_scalar_value(1.0));
    const emotion::Breakdown b = emotion::assemble_gie(pair, k);

    results["mu"] = stats_json(b.mu);
    ordered_json psi;
    for (const auto& [name, field] : b.psi_terms) psi[name] = stats_json(field);
    results["psi_terms"] = psi;
    results["psi"] = stats_json(b.psi);
    ordered_json gamma;
    for (const auto& [name, field] : b.gamma_terms) gamma[name] = stats_json(field);
    results["gamma_terms"] = gamma;
    results["gamma"] = stats_json(b.gamma);
    results["q"] = stats_json(b.q);
    results["Q"] = stats_json(b.q_field);

    ordered_json viol = ordered_json::array();
    const std::size_t cap = 1000;
    for (std::size_t i = 0; i < b.bound_violations.size() && i < cap; ++i) {
        const std::size_t site = b.bound_violations[i];
        ordered_json v;
        v["site"] = site;
        v["coordinate"] = four_json(lat.coordinate(lat.unflat(site)));
        v["q"] = b.q.value(site);
        viol.push_back(v);
    }
    results["bound_violations"] = viol;
    results["bound_violation_count"] = b.bound_violations.size();
    results["bound_violations_truncated"] = b.bound_violations.size() > cap;

    // Consistency of the reported sums with an independent re-summation.
    TensorField psi_sum = TensorField::scalar(lat);
    for (const auto& [name, field] : b.psi_terms) psi_sum = add(psi_sum, field);
    TensorField gamma_sum = TensorField::scalar(lat);
    for (const auto& [name, field] : b.gamma_terms) gamma_sum = add(gamma_sum, field);
    const double psi_defect = max_abs(sub(psi_sum, b.psi));
    const double gamma_defect = max_abs(sub(gamma_sum, b.gamma));
    const double q_defect = max_abs(sub(b.q, add(add(b.mu, b.gamma), b.psi)));
    add_gate(report, gates, "psi_equals_term_sum", psi_defect <= 1e-12, psi_defect, 1e-12);
    add_gate(report, gates, "gamma_equals_term_sum", gamma_defect <= 1e-12, gamma_defect, 1e-12);
    add_gate(report, gates, "q_equals_mu_gamma_psi", q_defect <= 1e-12, q_defect, 1e-12);
    if (s.emotion.require_bound) {
        add_gate(report, gates, "q_bound", b.bound_violations.empty(),
                 static_cast<double>(b.bound_violations.size()), 0.0);
    }

    if (!report.output.stats_only) {
        report.csv_files.push_back({"mu.csv", scalar_field_csv(b.mu)});
        report.csv_files.push_back({"psi.csv", scalar_field_csv(b.psi)});
        report.csv_files.push_back({"gamma.csv", scalar_field_csv(b.gamma)});
        report.csv_files.push_back({"q.csv", scalar_field_csv(b.q)});
    }
}

void run_transfer(const Scenario& s, const InfoConstants& k, ordered_json& results,
                  ordered_json& gates, RunReport& report) {
    const auto& t = s.transfer;
    pathint::TransferProblem problem;
    problem.kind = s.mode == Mode::interaction ? pathint::TransferKind::INTERACTING
                                               : pathint::TransferKind::FREE;
    problem.x_a = t.x_a;
    problem.x_b = t.x_b;
    problem.q_gie = t.q_gie;
    problem.params = t.interaction;
    problem.potential = t.potential;
    problem.position_dependent = t.position_dependent;
    problem.grid = t.grid;
    problem.end_lattice = t.end_lattice;
    problem.mean_speed_sq = t.mean_speed_sq;

    const double ratio = pathint::phase_sampling_ratio(problem, k);
    add_gate(report, gates, "phase_sampling", ratio <= 1.0, ratio, 1.0);
    if (ratio > 1.0) {
        results["skipped"] = "momentum grid undersamples the phase";
        return;
    }

    const pathint::TransferResult res = pathint::compute_transfer(problem, k);
    results["K"] = ordered_json{{"re", res.amplitude.real()}, {"im", res.amplitude.imag()}};
    results["Omega"] = res.omega;
    results["N_norm"] = res.n_norm;
    results["mean_displacement"] = four_json(res.mean_displacement);
    results["quantized"] =
        ordered_json{{"n", res.quantized.n},
                     {"mean_dt", res.quantized.mean_dt},
                     {"residuals", res.quantized.residuals}};

    if (problem.end_lattice) {
        std::vector<double> mass(res.rho.data().size());
        for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = res.rho.data()[i];
        const double total = pairwise_sum(std::span<const double>(mass)) *
                             problem.end_lattice->cell_volume();
        results["total_probability"] = total;
        add_gate(report, gates, "unitarity", std::abs(total - 1.0) <= 1e-9,
                 std::abs(total - 1.0), 1e-9);
        if (!report.output.stats_only) {
            report.csv_files.push_back({"rho.csv", scalar_field_csv(res.rho)});
        }
    }
}

void run_minimize(const Scenario& s, const InfoConstants& k, ordered_json& results,
                  ordered_json& gates, RunReport& report) {
    const auto& m = s.minimize;
    std::unique_ptr<dynamics::Lagrangian> lagrangian;
    if (m.interacting) {
        lagrangian = std::make_unique<dynamics::InteractionLagrangian>(m.interaction, m.potential,
                                                                       k, m.flip_action_sign);
    } else {
        lagrangian = std::make_unique<dynamics::FreeLagrangian>(m.q_gie, k);
    }

    const dynamics::Path4 straight = dynamics::straight_path(m.from, m.to, m.segments);
    const double s_initial = dynamics::action(straight, *lagrangian, k);
    results["S_initial"] = s_initial;

    dynamics::MinimizeResult res;
    bool converged = true;
    try {
        res = dynamics::minimize_action(m.from, m.to, *lagrangian, m.segments, m.optimizer, k);
    } catch (const dynamics::ConvergenceError& e) {
        res = e.best();
        converged = false;
    }
    results["S_final"] = res.action_value;
    results["grad_max_norm"] = res.grad_max_norm;
    results["iterations"] = res.iterations;
    results["converged"] = converged;
    ordered_json nodes = ordered_json::array();
    for (const auto& n : res.path.nodes) nodes.push_back(four_json(n));
    results["path"] = nodes;
    ordered_json trace = ordered_json::array();
    const std::size_t stride = std::max<std::size_t>(1, res.action_trace.size() / 200);
    for (std::size_t i = 0; i < res.action_trace.size(); i += stride) {
        trace.push_back(res.action_trace[i]);
    }
    results["action_trace"] = trace;
    results["action_trace_stride"] = stride;
    results["optimizer"] = ordered_json{{"tol", m.optimizer.tol},
                                        {"max_iters", m.optimizer.max_iters},
                                        {"initial_step", m.optimizer.initial_step}};

    add_gate(report, gates, "optimizer_converged", converged, res.grad_max_norm, m.optimizer.tol);
    add_gate(report, gates, "action_not_increased", res.action_value <= s_initial + 1e-12,
             res.action_value - s_initial, 1e-12);
}

void run_maxwell(const Scenario& s, const InfoConstants& k, ordered_json& results,
                 ordered_json& gates, RunReport& report) {
    const Lattice4& lat = *s.lattice;
    const TensorField a = s.fields.at("A").realize(lat);
    dynamics::CurrentDensity current;
    current.rho_q = realize_or_default(s, "rho", lat, FieldGenerator::constant_scalar_value(0.0));
    FieldGenerator zero_vec = FieldGenerator::constant(1, {0.0, 0.0, 0.0, 0.0});
    current.j_dimensionless = realize_or_default(s, "j", lat, zero_vec);

    const dynamics::MaxwellResiduals res = dynamics::maxwell_residuals(a, current, k);
    results["res1"] = stats_json(res.res1);
    results["res2"] = stats_json(res.res2);
    results["continuity"] = stats_json(res.continuity);
    results["res2_max_interior"] = max_abs_interior(res.res2);

    const bool finite =
        res.res1.all_finite() && res.res2.all_finite() && res.continuity.all_finite();
    add_gate(report, gates, "residuals_finite", finite, finite ? 0.0 : 1.0, 0.0);

    if (!report.output.stats_only) {
        TensorField res2_mag = TensorField::scalar(lat);
        for (std::size_t site = 0; site < lat.site_count(); ++site) {
            auto row = res.res2.site_components(site);
            double m2 = 0.0;
            for (double v : row) m2 += v * v;
            res2_mag.value(site) = std::sqrt(m2);
        }
        report.csv_files.push_back({"res2_magnitude.csv", scalar_field_csv(res2_mag)});
    }
}

}  // namespace

RunReport run(const Scenario& scenario) {
    RunReport report;
    report.output = scenario.output;

    const PhysicalConstants phys = scenario.constants_override.value_or(codata2002());
    const InfoConstants k = derive_constants(phys, scenario.unit_mode);

    ordered_json body;
    body["tool"] = "infospace";
    body["version"] = tool_version();
    body["mode"] = mode_name(scenario.mode);
    body["scenario"] = scenario_echo(scenario);
    body["constants"] = constants_json_obj(k);

    ordered_json results = ordered_json::object();
    ordered_json gates = ordered_json::array();

    switch (scenario.mode) {
        case Mode::constants: run_constants(scenario, k, results, gates, report); break;
        case Mode::kinematics: run_kinematics(scenario, k, results, gates, report); break;
        case Mode::emotion: run_emotion(scenario, k, results, gates, report); break;
        case Mode::free_transfer:
        case Mode::interaction: run_transfer(scenario, k, results, gates, report); break;
        case Mode::minimize_action: run_minimize(scenario, k, results, gates, report); break;
        case Mode::maxwell_check: run_maxwell(scenario, k, results, gates, report); break;
    }

    body["results"] = results;
    body["gates"] = gates;
    body["all_gates_passed"] = report.all_gates_passed();
    report.json_text = detail::dump_deterministic(body);
    return report;
}

}  // namespace infospace::cli
