// scenario.cpp — config parsing and the four scenario runners.

#include "acflux/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "acflux/adiabatic.hpp"
#include "acflux/errors.hpp"
#include "acflux/harmonic_fluxes.hpp"
#include "acflux/scattering.hpp"

namespace acflux {

using ojson = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    const char* begin = v.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(x)) {
        throw ConfigError("key '" + key + "': expected a finite number, got '" + v + "'");
    }
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"model.epsilon0", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.epsilon0 = parse_double(k, v); }},
        {"model.v_ac", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.v_ac = parse_double(k, v); }},
        {"model.omega", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.omega = parse_double(k, v); }},
        {"model.gamma", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.gamma = parse_double(k, v); }},
        {"model.mu", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.mu = parse_double(k, v); }},
        {"model.temperature", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.temperature = parse_double(k, v); }},
        {"model.band_cutoff", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.model.band_cutoff = parse_double(k, v); }},
        {"run", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.run = parse_run_kind(v); }},
        {"n_times", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.n_times = parse_int(k, v); }},
        {"quadrature.abs_tol", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.quadrature.abs_tol = parse_double(k, v); }},
        {"quadrature.rel_tol", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.quadrature.rel_tol = parse_double(k, v); }},
        {"quadrature.cutoff", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.quadrature.cutoff = parse_double(k, v); }},
        {"quadrature.max_intervals", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.quadrature.max_intervals = parse_int(k, v); }},
        {"quadrature.resonance_width", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.quadrature.resonance_width = parse_double(k, v); }},
        {"truncation.tol", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.truncation.tol = parse_double(k, v); }},
        {"truncation.n_max", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.truncation.n_max_override = parse_int(k, v); }},
        {"engine.tolerance", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.tolerance = parse_double(k, v); }},
        {"engine.threads", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.engine.threads = parse_int(k, v); }},
        {"output.dir", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
        {"output.format", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.format = parse_format(v); }},
        {"fig2.amplitudes", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.fig2_amplitudes = parse_list(k, v); }},
        {"adiabatic.exact", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.adiabatic_exact = parse_bool(k, v); }},
    };
    return table;
}

ojson model_json(const ModelParams& p) {
    return ojson{{"epsilon0", p.epsilon0}, {"v_ac", p.v_ac},         {"omega", p.omega},
                 {"gamma", p.gamma},       {"mu", p.mu},             {"temperature", p.temperature},
                 {"band_cutoff", p.cutoff()}, {"alpha", p.alpha()}};
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<const std::vector<double>*>& cols) {
    std::string out;
    for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
    out += '\n';
    const std::size_t n = cols.empty() ? 0 : cols.front()->size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j) out += ',';
            out += format_number((*cols[j])[i]);
        }
        out += '\n';
    }
    return out;
}

ojson json_table(const std::vector<std::string>& header, const std::vector<const std::vector<double>*>& cols) {
    ojson j;
    for (std::size_t k = 0; k < header.size(); ++k) j[header[k]] = *cols[k];
    return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::vector<double> over_period(const std::vector<double>& times, const ModelParams& p) {
    std::vector<double> x(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) x[i] = times[i] / p.period();
    return x;
}

} // namespace

RunKind parse_run_kind(const std::string& s) {
    if (s == "trace") return RunKind::trace;
    if (s == "adiabatic") return RunKind::adiabatic;
    if (s == "audit") return RunKind::audit;
    if (s == "fig2") return RunKind::fig2;
    throw ConfigError("run must be one of trace|adiabatic|audit|fig2, got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("output format must be csv or json, got '" + s + "'");
}

std::string to_string(RunKind k) {
    switch (k) {
    case RunKind::trace: return "trace";
    case RunKind::adiabatic: return "adiabatic";
    case RunKind::audit: return "audit";
    case RunKind::fig2: return "fig2";
    }
    return "?";
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void ScenarioConfig::validate() const {
    try {
        engine.validate(model);
    } catch (const InvalidParams& e) {
        throw ConfigError(e.what());
    }
    if (n_times < 16) throw ConfigError("n_times must be >= 16, got " + std::to_string(n_times));
    if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
    if (fig2_amplitudes.empty()) throw ConfigError("fig2.amplitudes must list at least one amplitude");
    for (double a : fig2_amplitudes) {
        if (!(a > 0.0)) throw ConfigError("fig2.amplitudes must be positive");
        ModelParams q = model;
        q.v_ac = a;
        try {
            engine.validate(q);
        } catch (const InvalidParams& e) {
            throw ConfigError(std::string("fig2 amplitude ") + format_number(a) + ": " + e.what());
        }
    }
}

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        try {
            it->second(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

// ---------------------------------------------------------------- trace

namespace {

ojson trace_summary(const FluxTrace& tr, const EngineConfig& eng) {
    const TraceChecks& c = tr.checks;
    ojson s;
    s["model"] = model_json(tr.params);
    s["n_times"] = tr.size();
    s["n_max"] = eng.truncation.n_max(tr.params.alpha());
    s["w_e_source"] = tr.w_e_source == EnergyFluxSource::scattering ? "scattering" : "identity";
    s["averages"] = ojson{{"i_c", period_mean(tr.i_c)}, {"w_c", period_mean(tr.w_c)},     {"w_t", period_mean(tr.w_t)},
                          {"w_d", period_mean(tr.w_d)}, {"w_e", period_mean(tr.w_e)},     {"power", period_mean(tr.power)},
                          {"q_dot", period_mean(tr.q_dot)}, {"q_tilde_dot", period_mean(tr.q_tilde_dot)},
                          {"n_d", period_mean(tr.n_d)}};
    s["max_residuals"] = ojson{{"conservation", max_abs(tr.residual_conservation)},
                               {"reactance", max_abs(tr.residual_reactance)}};
    s["relative_checks"] = ojson{{"conservation", c.conservation}, {"reactance", c.reactance},
                                 {"mean_w_t", c.mean_w_t},         {"mean_q_vs_p", c.mean_q_vs_p},
                                 {"mean_q_vs_q_tilde", c.mean_q_vs_q_tilde}, {"mean_i_c", c.mean_i_c}};
    s["tolerance"] = tr.tolerance;
    s["tail_estimate"] = tr.tail_estimate;
    s["integrand_evaluations"] = tr.evaluations;
    return s;
}

const std::vector<std::string> kTraceHeader = {"t_over_period", "i_c", "w_c", "w_t", "w_d", "w_e", "power",
                                               "q_dot", "q_tilde_dot", "n_d", "res_conservation", "res_reactance"};

} // namespace

RunOutput run_trace(const ScenarioConfig& cfg) {
    const FluxTrace tr = trace_period(cfg.model, cfg.engine, cfg.n_times);
    const std::vector<double> x = over_period(tr.times, tr.params);
    const std::vector<const std::vector<double>*> cols = {&x,    &tr.i_c,   &tr.w_c,         &tr.w_t,
                                                          &tr.w_d, &tr.w_e, &tr.power,       &tr.q_dot,
                                                          &tr.q_tilde_dot, &tr.n_d, &tr.residual_conservation,
                                                          &tr.residual_reactance};
    RunOutput out;
    if (cfg.format == OutputFormat::csv) out.files["trace.csv"] = csv_table(kTraceHeader, cols);
    else out.files["trace.json"] = dump(json_table(kTraceHeader, cols));
    out.files["summary.json"] = dump(trace_summary(tr, cfg.engine));
    char buf[256];
    std::snprintf(buf, sizeof buf, "trace: %zu points, max|W_C+W_T+W_D|/max|W_D| = %.3e, mean(W_T)/max|W_T| = %.3e\n",
                  tr.size(), tr.checks.conservation, tr.checks.mean_w_t);
    out.summary = buf;
    return out;
}

// ---------------------------------------------------------------- adiabatic

RunOutput run_adiabatic(const ScenarioConfig& cfg) {
    FluxTrace exact;
    const FluxTrace* ex = nullptr;
    if (cfg.adiabatic_exact) {
        exact = trace_period(cfg.model, cfg.engine, cfg.n_times);
        ex = &exact;
    }
    const AdiabaticReport r = adiabatic_report(cfg.model, cfg.engine.quadrature, cfg.n_times, ex, cfg.engine.threads);
    const std::vector<double> x = over_period(r.times, r.params);
    std::vector<double> rt(r.times.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> mask(r.times.size(), 0.0);
    for (std::size_t i = 0; i < rt.size(); ++i) {
        if (r.r_tilde[i]) {
            rt[i] = *r.r_tilde[i];
            mask[i] = 1.0;
        }
    }
    const std::vector<std::string> header = {"t_over_period", "ic1", "ic2", "q1", "q2", "wt1", "wt2",
                                             "we1", "we2", "p_lowfreq", "r_tilde", "r_tilde_valid"};
    const std::vector<const std::vector<double>*> cols = {&x, &r.ic1, &r.ic2, &r.q1, &r.q2, &r.wt1, &r.wt2,
                                                          &r.we1, &r.we2, &r.p_lowfreq, &rt, &mask};
    RunOutput out;
    if (cfg.format == OutputFormat::csv) {
        // Masked R~ entries are empty fields.
        std::string csv = csv_table(header, cols);
        std::string cleaned;
        std::istringstream rows(csv);
        std::string row;
        const std::string nan = "," + format_number(std::numeric_limits<double>::quiet_NaN()) + ",";
        while (std::getline(rows, row)) {
            const auto at = row.find(nan);
            if (at != std::string::npos) row.replace(at, nan.size(), ",,");
            cleaned += row + "\n";
        }
        out.files["adiabatic.csv"] = cleaned;
    } else {
        ojson j = json_table(header, cols);
        ojson arr = ojson::array();
        for (const auto& v : r.r_tilde) arr.push_back(v ? ojson(*v) : ojson(nullptr));
        j["r_tilde"] = arr;
        out.files["adiabatic.json"] = dump(j);
    }
    ojson s;
    s["model"] = model_json(r.params);
    s["n_times"] = r.times.size();
    s["fit_source"] = r.exact_inputs ? "exact" : "expansion";
    s["r_fit"] = ojson{{"slope", r.r_fit.slope}, {"r_q", kResistanceQuantum},
                       {"relative_deviation", std::abs(r.r_fit.slope - kResistanceQuantum) / kResistanceQuantum},
                       {"max_residual", r.r_fit.max_residual}};
    double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
    for (const auto& v : r.r_tilde) {
        if (v) {
            rmin = std::min(rmin, *v);
            rmax = std::max(rmax, *v);
        }
    }
    s["r_tilde_range"] = ojson{{"min", rmin}, {"max", rmax}};
    s["averages"] = ojson{{"ic1", period_mean(r.ic1)}, {"ic2", period_mean(r.ic2)}, {"q2", period_mean(r.q2)},
                          {"wt1", period_mean(r.wt1)}, {"wt2", period_mean(r.wt2)}, {"p_lowfreq", period_mean(r.p_lowfreq)}};
    out.files["adiabatic_summary.json"] = dump(s);
    char buf[200];
    std::snprintf(buf, sizeof buf, "adiabatic: R fit = %.10g (R_q = %.10g), %s inputs\n", r.r_fit.slope,
                  kResistanceQuantum, r.exact_inputs ? "exact" : "expansion");
    out.summary = buf;
    return out;
}

// ---------------------------------------------------------------- audit

namespace {

struct AuditItem {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string message;
};

constexpr double kAuditIdentityTol = 1e-6;

} // namespace

RunOutput run_audit(const ScenarioConfig& cfg) {
    std::vector<AuditItem> items;
    auto record = [&](const std::string& name, double tol, const std::function<double()>& fn) {
        AuditItem it;
        it.name = name;
        it.tolerance = tol;
        try {
            it.residual = fn();
            it.pass = it.residual <= tol;
            if (!it.pass) {
                char buf[200];
                std::snprintf(buf, sizeof buf, "%s residual %.3e exceeds tolerance %.1e", name.c_str(), it.residual, tol);
                it.message = buf;
            }
        } catch (const Error& e) {
            it.pass = false;
            it.residual = std::numeric_limits<double>::infinity();
            it.message = e.what();
        }
        items.push_back(it);
    };

    const ModelParams p = cfg.engine.quadrature.apply(cfg.model);
    const double tol = cfg.engine.tolerance;
    std::optional<FluxTrace> trace;
    std::string trace_error;
    try {
        trace = trace_period(p, cfg.engine, cfg.n_times);
    } catch (const Error& e) {
        trace_error = e.what();
    }
    auto need_trace = [&]() -> const FluxTrace& {
        if (!trace) throw QuadratureFailure("trace unavailable: " + trace_error);
        return *trace;
    };
    record("conservation", tol, [&] { return need_trace().checks.conservation; });
    record("reactance_identity", kAuditIdentityTol, [&] {
        const FluxTrace& tr = need_trace();
        if (tr.w_e_source != EnergyFluxSource::scattering) {
            throw AlphaTooLarge("reactance identity needs W_E from the scattering path (alpha <= 200)");
        }
        return tr.checks.reactance;
    });
    record("mean_w_t", tol, [&] { return need_trace().checks.mean_w_t; });
    record("mean_q_equals_mean_p", tol, [&] { return need_trace().checks.mean_q_vs_p; });
    record("mean_q_equals_mean_q_tilde", tol, [&] { return need_trace().checks.mean_q_vs_q_tilde; });

    record("unitarity_defect", kAuditIdentityTol, [&] {
        const int nm = cfg.engine.truncation.n_max(p.alpha());
        const FloquetHarmonics h = harmonics_unchecked(p, cfg.engine.truncation, sideband_grid(p, nm));
        const double defect = unitarity_defect(build_smatrix(h, std::numeric_limits<double>::infinity()));
        if (defect > kAuditIdentityTol) {
            char buf[260];
            std::snprintf(buf, sizeof buf,
                          "Floquet S matrix is not unitary: defect %.3e exceeds %.1e with n_max=%d "
                          "(|J_n_max(alpha)| = %.3e); increase truncation.n_max or remove the override",
                          defect, kAuditIdentityTol, nm, std::abs(h.bessel(nm)));
            throw TruncationUnconverged(buf);
        }
        return defect;
    });

    std::optional<DualPathReport> dual;
    std::string dual_error;
    try {
        dual = compare_paths(p, cfg.engine, std::min(cfg.n_times, 64));
    } catch (const Error& e) {
        dual_error = e.what();
    }
    auto need_dual = [&]() -> const DualPathReport& {
        if (!dual) throw QuadratureFailure("dual-path comparison unavailable: " + dual_error);
        return *dual;
    };
    record("dual_path_i_c", kAuditIdentityTol, [&] { return need_dual().i_c.relative(); });
    record("dual_path_w_c", kAuditIdentityTol, [&] { return need_dual().w_c.relative(); });
    record("harmonic_conservation", kAuditIdentityTol, [&] { return need_dual().harmonic_conservation; });

    bool all = true;
    ojson arr = ojson::array();
    RunOutput out;
    for (const auto& it : items) {
        all = all && it.pass;
        ojson j{{"name", it.name}, {"pass", it.pass}, {"tolerance", it.tolerance}};
        j["residual"] = std::isfinite(it.residual) ? ojson(it.residual) : ojson(nullptr);
        if (!it.message.empty()) j["message"] = it.message;
        arr.push_back(j);
        char buf[400];
        std::snprintf(buf, sizeof buf, "%-28s %s  residual=%.3e  tol=%.1e%s%s\n", it.name.c_str(), it.pass ? "PASS" : "FAIL",
                      it.residual, it.tolerance, it.message.empty() ? "" : "  ", it.message.c_str());
        out.summary += buf;
    }
    ojson doc;
    doc["model"] = model_json(p);
    doc["n_times"] = cfg.n_times;
    doc["n_max"] = cfg.engine.truncation.n_max(p.alpha());
    doc["all_pass"] = all;
    doc["audits"] = arr;
    out.files["audit.json"] = dump(doc);
    out.exit_code = all ? kExitOk : kExitNumerical;
    return out;
}

// ---------------------------------------------------------------- fig2

RunOutput run_fig2(const ScenarioConfig& cfg) {
    std::vector<double> sc_i2, sc_q, sc_qt, sc_v;
    std::vector<double> in_t, in_v, in_i, in_q, in_qt;
    ojson branches = ojson::array();
    RunOutput out;
    for (double amp : cfg.fig2_amplitudes) {
        ModelParams p = cfg.model;
        p.v_ac = amp;
        const FluxTrace tr = trace_period(p, cfg.engine, cfg.n_times);
        for (std::size_t i = 0; i < tr.size(); ++i) {
            sc_i2.push_back(tr.i_c[i] * tr.i_c[i]);
            sc_q.push_back(tr.q_dot[i]);
            sc_qt.push_back(tr.q_tilde_dot[i]);
            sc_v.push_back(amp);
            in_t.push_back(tr.times[i] / tr.params.period());
            in_v.push_back(amp);
            in_i.push_back(tr.i_c[i]);
            in_q.push_back(tr.q_dot[i]);
            in_qt.push_back(tr.q_tilde_dot[i]);
        }
        const JouleFit fit = joule_fit(tr.q_dot, tr.i_c);
        const JouleFit fit_t = joule_fit(tr.q_tilde_dot, tr.i_c);
        const double dev = std::abs(fit.slope - kResistanceQuantum) / kResistanceQuantum;
        double qmin = std::numeric_limits<double>::infinity(), qtmin = qmin;
        for (std::size_t i = 0; i < tr.size(); ++i) {
            qmin = std::min(qmin, tr.q_dot[i]);
            qtmin = std::min(qtmin, tr.q_tilde_dot[i]);
        }
        branches.push_back(ojson{{"v_ac", amp},
                                 {"slope", fit.slope},
                                 {"r_q", kResistanceQuantum},
                                 {"relative_deviation", dev},
                                 {"max_residual", fit.max_residual},
                                 {"q_tilde_slope", fit_t.slope},
                                 {"min_q_dot", qmin},
                                 {"min_q_tilde_dot", qtmin},
                                 {"mean_q_dot", period_mean(tr.q_dot)},
                                 {"mean_q_tilde_dot", period_mean(tr.q_tilde_dot)},
                                 {"mean_power", period_mean(tr.power)}});
        char buf[200];
        std::snprintf(buf, sizeof buf, "fig2: V_ac=%g slope=%.10g (R_q=%.10g, rel dev %.3e), min Qdot=%.3e, min Qtilde_dot=%.3e\n",
                      amp, fit.slope, kResistanceQuantum, dev, qmin, qtmin);
        out.summary += buf;
    }
    const std::vector<std::string> sh = {"i_c_squared", "q_dot", "q_tilde_dot", "v_ac"};
    const std::vector<std::string> ih = {"t_over_period", "v_ac", "i_c", "q_dot", "q_tilde_dot"};
    if (cfg.format == OutputFormat::csv) {
        out.files["fig2_scatter.csv"] = csv_table(sh, {&sc_i2, &sc_q, &sc_qt, &sc_v});
        out.files["fig2_inset.csv"] = csv_table(ih, {&in_t, &in_v, &in_i, &in_q, &in_qt});
    } else {
        out.files["fig2_scatter.json"] = dump(json_table(sh, {&sc_i2, &sc_q, &sc_qt, &sc_v}));
        out.files["fig2_inset.json"] = dump(json_table(ih, {&in_t, &in_v, &in_i, &in_q, &in_qt}));
    }
    ojson fit;
    fit["model"] = model_json(cfg.engine.quadrature.apply(cfg.model));
    fit["n_times"] = cfg.n_times;
    fit["r_q"] = kResistanceQuantum;
    fit["branches"] = branches;
    out.files["fit.json"] = dump(fit);
    return out;
}

RunOutput run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    switch (cfg.run) {
    case RunKind::trace: return run_trace(cfg);
    case RunKind::adiabatic: return run_adiabatic(cfg);
    case RunKind::audit: return run_audit(cfg);
    case RunKind::fig2: return run_fig2(cfg);
    }
    throw ConfigError("unknown run kind");
}

void write_outputs(const ScenarioConfig& cfg, const RunOutput& out) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
    for (const auto& [name, contents] : out.files) {
        const fs::path path = fs::path(cfg.output_dir) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + path.string() + "'");
        f << contents;
    }
}

} // namespace acflux
